#pragma once

#include <vector>

#include "specialprimes/kz.hpp"

namespace sprimes {

// Root data of an F-finite F-module: M = coker A (A is alpha x beta) with a
// map U: coker A -> coker A^{[p]} given by an alpha x alpha matrix.
struct RootData {
  PolyMatrix A;
  PolyMatrix U;
};

// Checks U im(A) contained in im(A^{[p]}). Injectivity of U on coker A is
// not checked. Throws ContextError on shape mismatch and MathError when the
// containment fails.
RootData validate_root(const PolyMatrix& A, const PolyMatrix& U);

// Primes P from kz_run(U) with (im A + P R^alpha)^{*U} proper after
// localizing at P, decided as ann(R^alpha / closure) contained in P.
std::vector<PrimeRecord> corank_positive_primes(const RootData& rd);

}  // namespace sprimes
