#pragma once

#include <string>
#include <vector>

#include "specialprimes/matrix.hpp"

namespace testing_helpers {

using namespace sprimes;

inline RingPtr ring(std::uint32_t p, std::vector<std::string> vars, const std::string& order = "grevlex") {
  return Ring::make(p, std::move(vars), order);
}

inline Poly P(const RingPtr& R, const std::string& s) { return parse_poly(R, s); }

inline Ideal I(const RingPtr& R, std::vector<std::string> gens) {
  std::vector<Poly> g;
  for (const auto& s : gens) g.push_back(parse_poly(R, s));
  return make_ideal(R, std::move(g));
}

inline FreeVector V(const RingPtr& R, std::vector<std::string> comps) {
  FreeVector v;
  for (const auto& s : comps) v.push_back(parse_poly(R, s));
  return v;
}

inline Submodule M(const RingPtr& R, std::size_t rank, std::vector<std::vector<std::string>> gens) {
  std::vector<FreeVector> g;
  for (auto& c : gens) g.push_back(V(R, c));
  return Submodule(R, rank, std::move(g));
}

// Matrix from rows of printed entries.
inline PolyMatrix Mat(const RingPtr& R, std::vector<std::vector<std::string>> rows) {
  std::vector<std::vector<Poly>> r;
  for (auto& row : rows) r.push_back(V(R, row));
  return PolyMatrix::from_rows(R, r);
}

}  // namespace testing_helpers
