#include "specialprimes/fmodules.hpp"

#include "specialprimes/config.hpp"
#include "specialprimes/error.hpp"

namespace sprimes {

RootData validate_root(const PolyMatrix& A, const PolyMatrix& U) {
  if (!U.ring() || !U.is_square() || U.rows() == 0) throw ContextError("root data: U must be a nonempty square matrix");
  if (!A.ring() || A.rows() != U.rows()) throw ContextError("root data: A must have as many rows as U");
  check_same_ring(*A.ring(), *U.ring());
  Submodule target = image(A.frobenius(1));
  for (const auto& c : A.columns())
    if (!target.contains(U * c)) throw MathError("root data: U im(A) is not contained in im(A^[p])");
  return {A, U};
}

std::vector<PrimeRecord> corank_positive_primes(const RootData& rd) {
  std::size_t n = rd.U.rows();
  Submodule imA = image(rd.A);
  KZResult kz = kz_run({rd.U});
  std::vector<PrimeRecord> out;
  std::vector<char> keep(kz.primes.size(), 0);
  parallel_for(kz.primes.size(), [&](std::size_t i) {
    const Ideal& P = kz.primes[i].ideal;
    Submodule W = star_closure(imA + extend_ideal(P, n), rd.U, 1);
    keep[i] = P.contains(annihilator(W)) ? 1 : 0;
  });
  for (std::size_t i = 0; i < kz.primes.size(); ++i) {
    trace("# corank " + kz.primes[i].ideal.to_string() + (keep[i] ? ": positive" : ": zero"));
    if (keep[i]) {
      PrimeRecord r = kz.primes[i];
      r.provenance = "corank:" + r.provenance;
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace sprimes
