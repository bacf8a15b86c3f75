#pragma once

#include <utility>
#include <vector>

#include "specialprimes/poly.hpp"

namespace sprimes {

// f = unit * prod factors[i].first ^ factors[i].second, with monic irreducible
// factors sorted by compare_polys.
struct Factorization {
  Coeff unit = 1;
  std::vector<std::pair<Poly, unsigned>> factors;
};

// Factorization of a polynomial involving at most one variable. Throws
// MathError on zero or multivariate input.
Factorization factor_univariate(const Poly& f);

// Complete factorization of a multivariate polynomial: monomial content is
// split off, then the Kronecker substitution reduces to the univariate case
// and candidate factors are recovered by trial division. Throws
// ResourceError when the search exceeds its cap.
Factorization factor(const Poly& f);

}  // namespace sprimes
