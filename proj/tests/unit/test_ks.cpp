#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"
#include "specialprimes/config.hpp"
#include "specialprimes/ks.hpp"

using namespace testing_helpers;

namespace {

std::vector<std::string> printed(const std::vector<PrimeRecord>& v) {
  std::vector<std::string> out;
  for (const auto& r : v) out.push_back(r.ideal.to_string());
  return out;
}

}  // namespace

TEST_SUITE("ks") {

TEST_CASE("compatibility criterion") {
  auto R = ring(2, {"x", "y"});
  CHECK(is_compatible(I(R, {"x"}), P(R, "x"), 1));
  CHECK_FALSE(is_compatible(I(R, {"y"}), P(R, "x"), 1));
  CHECK(is_compatible(I(R, {"y"}), Poly(R), 1));
  CHECK_FALSE(is_compatible(I(R, {"x+y"}), P(R, "x*y"), 1));
  CHECK(is_compatible(I(R, {"x", "y"}), P(R, "x*y"), 1));
}

TEST_CASE("single steps") {
  auto R = ring(2, {"x", "y"});
  KSProblem prob{P(R, "x*y"), 1};
  CHECK(printed(ks_step({zero_ideal(R), "seed", true}, prob)) == std::vector<std::string>{"(x)", "(y)"});
  CHECK(printed(ks_step({I(R, {"x"}), "", true}, prob)) == std::vector<std::string>{"(x, y)"});
  CHECK(ks_step({I(R, {"x", "y"}), "", true}, prob).empty());
}

TEST_CASE("golden runs") {
  auto R = ring(2, {"x", "y"});
  auto res = ks_run({P(R, "x*y"), 1});
  CHECK(printed(res.primes) == std::vector<std::string>{"(0)", "(x)", "(y)", "(x, y)"});
  CHECK(res.excluded_locus.is_full());
  auto R1 = ring(2, {"x"});
  CHECK(printed(ks_run({P(R1, "x^2"), 1}).primes) == std::vector<std::string>{"(0)"});
  CHECK(printed(ks_run({P(R1, "1"), 1}).primes) == std::vector<std::string>{"(0)"});
  CHECK(printed(ks_run({P(R1, "x"), 1}).primes) == std::vector<std::string>{"(0)", "(x)"});
  CHECK_THROWS_AS(ks_run({Poly(R1), 1}), MathError);
}

TEST_CASE("higher Frobenius exponent") {
  auto R = ring(2, {"x", "y"});
  // x^3 y^3 = (xy)^3: for q = 4 the map is compatible with the coordinate axes.
  auto res = ks_run({P(R, "x^3*y^3"), 2});
  CHECK(printed(res.primes) == std::vector<std::string>{"(0)", "(x)", "(y)", "(x, y)"});
  for (const auto& r : res.primes) CHECK(is_compatible(r.ideal, P(R, "x^3*y^3"), 2));
}

TEST_CASE("brute-force completeness on monomials of degree at most 3") {
  auto R = ring(2, {"x", "y"});
  auto cands = candidate_primes_f2(R);
  for (unsigned d = 0; d <= 3; ++d)
    for (unsigned a = 0; a <= d; ++a) {
      Poly u = P(R, "x").pow(a) * P(R, "y").pow(d - a);
      CAPTURE(u.to_string());
      auto res = ks_run({u, 1});
      CHECK(prime_strings(res.primes) == ks_oracle(cands, u, 1));
      for (const auto& r : res.primes) {
        CHECK(is_compatible(r.ideal, u, 1));
        CHECK_FALSE(r.ideal.contains(res.excluded_locus));
      }
    }
}

TEST_CASE("soundness and oracle agreement on non-monomial u") {
  auto R = ring(2, {"x", "y"});
  auto cands = candidate_primes_f2(R);
  for (const char* s : {"x*y*(x+y)", "x^2+y^3", "x*y*(x+1)", "y^2+x^3+x^2"}) {
    Poly u = P(R, s);
    CAPTURE(s);
    auto res = ks_run({u, 1});
    for (const auto& r : res.primes) CHECK(is_compatible(r.ideal, u, 1));
    auto oracle = ks_oracle(cands, u, 1);
    auto got = prime_strings(res.primes);
    for (const auto& o : oracle) CHECK(got.count(o) == 1);
  }
}

TEST_CASE("sum closure when the map is surjective") {
  auto R = ring(2, {"x", "y", "z"});
  for (const char* s : {"x*y*z", "x*y", "x*y*(x+y+z)"}) {
    auto res = ks_run({P(R, s), 1});
    REQUIRE(res.excluded_locus.is_full());
    auto got = prime_strings(res.primes);
    for (const auto& a : res.primes)
      for (const auto& b : res.primes) {
        Ideal S = a.ideal + b.ideal;
        if (S.is_full()) continue;
        for (const auto& q : minimal_primes(S)) CHECK(got.count(q.ideal.to_string()) == 1);
      }
  }
}

TEST_CASE("localization commutes with the run") {
  auto R = ring(2, {"x", "y"});
  for (const char* us : {"x*y", "x*y*(x+y)", "x*y*(y+1)"})
    for (const char* as : {"x", "y+1", "x+y"}) {
      Poly u = P(R, us), a = P(R, as);
      auto full = ks_run({u, 1});
      auto local = ks_run({u, 1}, Localization{a});
      std::set<std::string> expect;
      for (const auto& r : full.primes)
        if (!ideal_contains(r.ideal, a)) expect.insert(r.ideal.to_string());
      CAPTURE(us);
      CAPTURE(as);
      CHECK(prime_strings(local.primes) == expect);
    }
}

TEST_CASE("thread count does not change the result") {
  auto R = ring(2, {"x", "y", "z"});
  Poly u = P(R, "x*y*z*(x+y+z)");
  set_thread_count(1);
  auto a = printed(ks_run({u, 1}).primes);
  set_thread_count(4);
  auto b = printed(ks_run({u, 1}).primes);
  set_thread_count(1);
  CHECK(a == b);
}

}
