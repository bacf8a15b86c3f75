#include <optional>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "oracles.hpp"
#include "random_objects.hpp"
#include "specialprimes/config.hpp"
#include "specialprimes/kz.hpp"

using namespace testing_helpers;

namespace {

std::vector<std::string> printed(const std::vector<PrimeRecord>& v) {
  std::vector<std::string> out;
  for (const auto& r : v) out.push_back(r.ideal.to_string());
  return out;
}

}  // namespace

TEST_SUITE("kz") {

TEST_CASE("U-special test") {
  auto R1 = ring(2, {"x"});
  CHECK(is_u_special(I(R1, {"x"}), Mat(R1, {{"x"}})));
  auto R = ring(2, {"x", "y"});
  CHECK_FALSE(is_u_special(I(R, {"y"}), Mat(R, {{"x"}})));
  CHECK(is_u_special(zero_ideal(R), Mat(R, {{"x", "y"}, {"1", "x*y"}})));
  auto D = PolyMatrix::diagonal(R, {P(R, "x"), P(R, "y")});
  CHECK(is_u_special(I(R, {"x"}), D));
  CHECK(is_u_special(I(R, {"y"}), D));
  CHECK_FALSE(is_u_special(I(R, {"x", "y"}), D));
}

TEST_CASE("unit entry reduction") {
  auto R = ring(2, {"x", "y"});
  Poly a = P(R, "x+1");
  for (const auto& w : {V(R, {"0", "x+1"}), V(R, {"x+1", "0"}), V(R, {"y", "x+1"})}) {
    // diag(w) U-stabilizes the span of w.
    auto U = PolyMatrix::diagonal(R, w);
    Submodule Ws(R, 2, {w});
    auto red = unit_entry_reduction(Ws, a, U);
    CHECK(red.W1.contains(unit_vector(R, 2, 1)));
    CHECK(is_stable(red.W1, red.U1, 1));
    CHECK(saturate(annihilator(red.W1), a) == saturate(annihilator(Ws), a));
  }
  std::mt19937 rng(13);
  int tried = 0;
  for (int t = 0; t < 30 && tried < 8; ++t) {
    auto U = random_matrix(R, rng, 2, 2);
    Submodule Ws = star_closure(random_submodule(R, rng, 2, 1, 2), U, 1);
    if (Ws.is_full() || Ws.is_zero()) continue;
    std::optional<Poly> a2;
    for (const auto& g : Ws.gb())
      for (const auto& f : g)
        if (!f.is_zero() && !f.is_constant() && !a2) a2 = f;
    if (!a2) continue;
    ++tried;
    auto red = unit_entry_reduction(Ws, *a2, U);
    CHECK(red.W1.contains(unit_vector(R, 2, 1)));
    CHECK(is_stable(red.W1, red.U1, 1));
    CHECK(saturate(annihilator(red.W1), *a2) == saturate(annihilator(Ws), *a2));
  }
  auto U = Mat(R, {{"x", "y"}, {"0", "x*y"}});
  // Entry already in last position with a constant pivot: nothing changes.
  auto W = Submodule(R, 2, {V(R, {"0", "1"})});
  auto red = unit_entry_reduction(W, P(R, "1"), PolyMatrix::identity(R, 2));
  CHECK(red.nu == 0);
  CHECK(red.U1 == PolyMatrix::identity(R, 2));
  CHECK_THROWS_AS(unit_entry_reduction(W, P(R, "x"), U), MathError);
}

TEST_CASE("conjugation clears denominators minimally") {
  auto R = ring(3, {"x", "y"});
  auto U = Mat(R, {{"x", "y^2"}, {"x*y", "1"}});
  auto X = complete_with_vector(V(R, {"y", "x"}), 1);
  auto L = conjugate_by(U, X);
  // base^nu * (X^[p] U X^-1) = cleared; check by multiplying back.
  PolyMatrix lhs = L.cleared().scaled(X.det.pow(3)) * adjugate(X.inverse);
  PolyMatrix rhs = adjugate(X.inverse).frobenius(1) * U;
  Poly c = Poly::constant(R, R->inv(X.det.lead_coeff()));
  rhs = rhs.scaled(X.det.monic().pow(L.exponent()) * c * X.det);
  CHECK(lhs == rhs.scaled(Poly::constant(R, 1)));
  CHECK(L.exponent() <= 3);
}

TEST_CASE("rank-one generator") {
  auto R1 = ring(2, {"x"});
  auto r = rank_one_generator(I(R1, {"x"}));
  CHECK(r.g == P(R1, "x"));
  CHECK(r.a1.is_one());
  auto R = ring(2, {"x", "y"});
  r = rank_one_generator(I(R, {"x", "y"}));
  CHECK(r.g == P(R, "x*y"));
  CHECK(r.a1.is_one());
  r = rank_one_generator(zero_ideal(R));
  CHECK(r.g.is_one());
  auto R3 = ring(3, {"x", "y", "z"});
  for (const char* s : {"x*y-z^2", "x^2+y^2+z^2", "x^3-y^2"}) {
    Ideal Pp = I(R3, {s});
    auto rr = rank_one_generator(Pp);
    Ideal C = fedder_colon(Pp, 1);
    CHECK(ideal_contains(C, rr.g));
    CHECK_FALSE(ideal_contains(frobenius_power(Pp, 1), rr.g));
    CHECK_FALSE(ideal_contains(Pp, rr.a1));
  }
}

TEST_CASE("congruent decomposition") {
  auto R1 = ring(2, {"x"});
  auto cd = congruent_decomposition(Mat(R1, {{"x"}}), I(R1, {"x"}), P(R1, "x"), P(R1, "1"));
  CHECK(cd.mu == 0);
  CHECK(cd.V == Mat(R1, {{"1"}}));
  // x^2 already lies in P^[2], so the zero matrix is a valid answer.
  cd = congruent_decomposition(Mat(R1, {{"x^2"}}), I(R1, {"x"}), P(R1, "x"), P(R1, "1"));
  CHECK(ideal_contains(I(R1, {"x^2"}), P(R1, "x^2") - P(R1, "x") * cd.V.at(0, 0)));
  cd = congruent_decomposition(PolyMatrix(R1, 2, 2), I(R1, {"x"}), P(R1, "x"), P(R1, "1"));
  CHECK(cd.V.is_zero());
  auto R = ring(3, {"x", "y", "z"});
  Ideal Pp = I(R, {"x*y-z^2"});
  auto r = rank_one_generator(Pp);
  Ideal C = fedder_colon(Pp, 1);
  auto b = ideal_basis(C);
  PolyMatrix U = PolyMatrix::from_rows(R, {{b[0], b.back()}, {Poly(R), b[0] * P(R, "x")}});
  cd = congruent_decomposition(U, Pp, r.g, r.a1);
  PolyMatrix diff = U.scaled(r.a1.pow(cd.mu)) - cd.V.scaled(r.g);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(ideal_contains(frobenius_power(Pp, 1), diff.at(i, j)));
}

TEST_CASE("kernel vector modulo P") {
  auto R1 = ring(2, {"x"});
  CHECK(kernel_vector_mod_p(Mat(R1, {{"0"}}), I(R1, {"x"})) == V(R1, {"1"}));
  auto R = ring(2, {"x", "y"});
  CHECK(kernel_vector_mod_p(Mat(R, {{"x", "0"}, {"0", "1"}}), I(R, {"x"})) == V(R, {"1", "0"}));
  CHECK(kernel_vector_mod_p(Mat(R, {{"1", "1"}, {"1", "1"}}), I(R, {"x"})) == V(R, {"1", "1"}));
  auto Vm = Mat(R, {{"x+y", "y^2"}, {"x", "x*y"}});
  Ideal Pp = I(R, {"x"});
  auto y = kernel_vector_mod_p(Vm, Pp);
  CHECK(extend_ideal(Pp, 2).contains(Submodule(R, 2, {Vm * y})));
  CHECK_FALSE(extend_ideal(Pp, 2).contains(y));
}

TEST_CASE("last-column-zero branch") {
  auto R = ring(2, {"x", "y"});
  auto out = last_column_zero_branch(zero_ideal(R), Mat(R, {{"0", "0"}, {"y", "0"}}));
  CHECK(printed(out) == std::vector<std::string>{"(y)"});
  auto out2 = last_column_zero_branch(zero_ideal(R), Mat(R, {{"x", "0"}, {"0", "0"}}));
  for (const auto& r : out2) CHECK(r.ideal != zero_ideal(R));
  CHECK(last_column_zero_branch(I(R, {"x", "y"}), Mat(R, {{"x", "0"}, {"y", "0"}})).empty());
}

TEST_CASE("golden runs") {
  auto R1 = ring(2, {"x"});
  CHECK(printed(kz_run({Mat(R1, {{"x"}})}).primes) == std::vector<std::string>{"(0)", "(x)"});
  auto R = ring(2, {"x", "y"});
  auto D = PolyMatrix::diagonal(R, {P(R, "x"), P(R, "y")});
  auto res = kz_run({D});
  CHECK(printed(res.primes) == std::vector<std::string>{"(0)", "(x)", "(y)"});
  // x^2 on F_2[x]: (x) contains the stable kernel and is dropped.
  CHECK(printed(kz_run({Mat(R1, {{"x^2"}})}).primes) == std::vector<std::string>{"(0)"});
  CHECK_THROWS_AS(kz_run({PolyMatrix(R, 2, 2)}), MathError);
}

TEST_CASE("single step from the zero ideal") {
  auto R = ring(2, {"x", "y"});
  auto D = PolyMatrix::diagonal(R, {P(R, "x"), P(R, "y")});
  auto s = printed(kz_step({zero_ideal(R), "seed", true}, {D}));
  CHECK(std::set<std::string>(s.begin(), s.end()).count("(x)") == 1);
  CHECK(std::set<std::string>(s.begin(), s.end()).count("(y)") == 1);
  auto R1 = ring(2, {"x", "y"});
  KZProblem one{Mat(R1, {{"x*y"}})};
  CHECK(printed(kz_step({zero_ideal(R1), "", true}, one)) == printed(ks_step({zero_ideal(R1), "", true}, {P(R1, "x*y"), 1})));
}

TEST_CASE("rank one agrees with the compatible-prime run") {
  std::mt19937 rng(3);
  auto R = ring(2, {"x", "y"});
  for (int t = 0; t < 10; ++t) {
    Poly u = random_poly(R, rng, 3, 3, false);
    if (u.is_zero()) continue;
    CAPTURE(u.to_string());
    CHECK(printed(kz_run({PolyMatrix::from_rows(R, {{u}})}).primes) == printed(ks_run({u, 1}).primes));
  }
}

TEST_CASE("monomial-submodule brute force") {
  auto R = ring(2, {"x", "y"});
  for (const auto& U : {PolyMatrix::diagonal(R, {P(R, "x"), P(R, "y")}), Mat(R, {{"x*y", "0"}, {"0", "x"}}),
                        Mat(R, {{"x", "y"}, {"0", "x*y"}})}) {
    CAPTURE(U.to_string());
    auto res = kz_run({U});
    auto got = printed(res.primes);
    std::set<std::string> got_set(got.begin(), got.end());
    for (const auto& r : res.primes) {
      CHECK(is_u_special(r.ideal, U));
      CHECK_FALSE(extend_ideal(r.ideal, 2).contains(res.stable_kernel));
    }
    for (const auto& q : monomial_submodule_oracle(U)) CHECK(got_set.count(q) == 1);
    CHECK(res.depth <= 2);
  }
}

TEST_CASE("diagonal closure") {
  auto R = ring(2, {"x", "y"});
  for (const auto& pair : std::vector<std::pair<const char*, const char*>>{{"x", "y"}, {"x*y", "x"}, {"x*y", "x+y"}}) {
    auto D = PolyMatrix::diagonal(R, {P(R, pair.first), P(R, pair.second)});
    auto res = kz_run({D});
    auto got = printed(res.primes);
    std::set<std::string> got_set(got.begin(), got.end());
    for (const char* u : {pair.first, pair.second})
      for (const auto& r : ks_run({P(R, u), 1}).primes)
        if (!extend_ideal(r.ideal, 2).contains(res.stable_kernel)) CHECK(got_set.count(r.ideal.to_string()) == 1);
  }
}

TEST_CASE("thread count does not change the result") {
  auto R = ring(2, {"x", "y"});
  auto U = Mat(R, {{"x*y", "y"}, {"0", "x"}});
  set_thread_count(1);
  auto a = printed(kz_run({U}).primes);
  set_thread_count(4);
  auto b = printed(kz_run({U}).primes);
  set_thread_count(1);
  CHECK(a == b);
}

}
