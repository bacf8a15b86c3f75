#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "specialprimes/matrix.hpp"

namespace sprimes {

// Optional element a modelling computations over R_a: every submodule built
// by the fixed-point loops is replaced by its saturation at a.
struct Localization {
  std::optional<Poly> at;

  Submodule operator()(const Submodule& V) const { return at ? saturate(V, *at) : V; }
  // True when a lies in P, i.e. P disappears in R_a.
  bool kills(const Ideal& P) const { return at && ideal_contains(P, *at); }
};

// K^{[p^e]}: generated by the entrywise p^e-th powers of the generators.
Submodule frobenius_power(const Submodule& K, unsigned e);

// v = sum over keys b of (u_b)^{[p^e]} * b, with every exponent of b below p^e.
struct FrobeniusExpansion {
  std::vector<std::pair<Monomial, FreeVector>> entries;  // sorted by decreasing key
};

FrobeniusExpansion ie_expand(const FreeVector& v, unsigned e);
FreeVector ie_reconstruct(const RingPtr& ring, const FrobeniusExpansion& x, unsigned e);

// Smallest L with K contained in L^{[p^e]}.
Submodule ie_operation(const Submodule& K, unsigned e);

// Smallest W containing V with U W contained in W^{[p^e]}.
Submodule star_closure(const Submodule& V, const PolyMatrix& U, unsigned e, const Localization& loc = {});
Ideal star_closure(const Ideal& V, const Poly& u, unsigned e, const Localization& loc = {});

struct StableKernel {
  Submodule kernel;             // stable value
  std::vector<Submodule> chain; // K_1, K_2, ..., K_s with K_s = K_{s+1}
};

// K_1 = I_1(U R^alpha), K_{e+1} = I_1(U K_e), iterated until it stabilizes.
StableKernel stable_kernel_chain(const PolyMatrix& U, const Localization& loc = {});
Submodule stable_kernel(const PolyMatrix& U, const Localization& loc = {});

// U^{[p^{e-1}]} ... U^{[p]} U.
PolyMatrix frobenius_product(const PolyMatrix& U, unsigned e);

// (I^{[p^e]} : I).
Ideal fedder_colon(const Ideal& I, unsigned e);

// True when U W is contained in W^{[p^e]}.
bool is_stable(const Submodule& W, const PolyMatrix& U, unsigned e);

}  // namespace sprimes
