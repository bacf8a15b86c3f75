#pragma once

#include <cstddef>
#include <vector>

#include "specialprimes/ks.hpp"
#include "specialprimes/matrix.hpp"

namespace sprimes {

// Frobenius action on R^alpha given by a square matrix U (with e = 1).
struct KZProblem {
  PolyMatrix U;
};

struct KZResult {
  std::vector<PrimeRecord> primes;  // canonical order
  Submodule stable_kernel;
  std::size_t expansions = 0;
  std::size_t depth = 0;  // longest chain of expansions from (0)
};

// ann(R^alpha / (P R^alpha)^{*U}) == P.
bool is_u_special(const Ideal& P, const PolyMatrix& U);

// Change of basis X over R_a with X^{-1} polynomial: the columns of X^{-1}
// are standard basis vectors followed by a chosen vector y, so X y = e_alpha.
struct BasisChange {
  PolyMatrix inverse;  // X^{-1}
  Poly det;            // det X^{-1}, a unit of R_det
};

// Completion of y using the coordinate at `pivot` (which must be nonzero).
BasisChange complete_with_vector(const FreeVector& y, std::size_t pivot);

// base^nu X^{[p]} U X^{-1} with the smallest nu clearing all denominators.
LocalizedMatrix conjugate_by(const PolyMatrix& U, const BasisChange& X);

struct EntryReduction {
  PolyMatrix U1;
  Submodule W1;  // X W_a intersected with R^alpha; contains e_alpha
  BasisChange X;
  std::size_t nu = 0;
};

// Moves a generator of W whose entry is a constant multiple of a to e_alpha.
// Throws MathError when no generator exposes a.
EntryReduction unit_entry_reduction(const Submodule& W, const Poly& a, const PolyMatrix& U);

struct RankOneGenerator {
  Poly g;   // in (P^{[p]} : P) but not in P^{[p]}
  Poly a1;  // outside P; the colon is generated by g after inverting a1
};

// Throws MathError("rank-one generator not found") when no basis element of
// the Fedder colon works.
RankOneGenerator rank_one_generator(const Ideal& P);

struct CongruentDecomposition {
  std::size_t mu = 0;
  PolyMatrix V;  // a1^mu U - g V has entries in P^{[p]}
};

CongruentDecomposition congruent_decomposition(const PolyMatrix& U, const Ideal& P, const Poly& g,
                                               const Poly& a1);

// y with V y in P R^alpha and y outside P R^alpha. Requires det V in P.
FreeVector kernel_vector_mod_p(const PolyMatrix& V, const Ideal& P);

// U-special primes produced from P when the last column of U1 vanishes and
// P R^alpha is U1-stable.
std::vector<PrimeRecord> last_column_zero_branch(const Ideal& P, const PolyMatrix& U1);

// U-special primes strictly containing P found by one expansion of P.
std::vector<PrimeRecord> kz_step(const PrimeRecord& P, const KZProblem& prob);

// All U-special primes P with the stable kernel not contained in P R^alpha.
// A zero stable kernel is a MathError.
KZResult kz_run(const KZProblem& prob);

}  // namespace sprimes
