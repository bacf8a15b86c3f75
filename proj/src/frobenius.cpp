#include "specialprimes/frobenius.hpp"

#include <algorithm>

#include "specialprimes/config.hpp"

namespace sprimes {

Submodule frobenius_power(const Submodule& K, unsigned e) {
  std::vector<FreeVector> g;
  for (const auto& v : K.generators()) g.push_back(frobenius_vector(v, e));
  return Submodule(K.ring(), K.rank(), std::move(g));
}

FrobeniusExpansion ie_expand(const FreeVector& v, unsigned e) {
  RingPtr R;
  for (const auto& c : v)
    if (c.ring()) R = c.ring();
  FrobeniusExpansion out;
  if (!R) return out;
  std::uint64_t q = R->frobenius_q(e);
  const MonomialOrder& ord = R->order();
  std::vector<std::pair<Monomial, std::vector<std::vector<Term>>>> acc;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].ring()) continue;
    for (const auto& t : v[i].terms()) {
      Monomial key, quo;
      for (std::size_t k = 0; k < R->nvars(); ++k) {
        key.set(k, static_cast<Exponent>(t.mon[k] % q));
        quo.set(k, static_cast<Exponent>(t.mon[k] / q));
      }
      auto it = std::find_if(acc.begin(), acc.end(), [&](const auto& pr) { return pr.first == key; });
      if (it == acc.end()) {
        acc.push_back({key, std::vector<std::vector<Term>>(v.size())});
        it = acc.end() - 1;
      }
      it->second[i].push_back({quo, t.coeff});
    }
  }
  std::sort(acc.begin(), acc.end(), [&](const auto& a, const auto& b) { return ord.compare(a.first, b.first) > 0; });
  for (auto& [key, parts] : acc) {
    FreeVector u;
    for (auto& p : parts) u.push_back(Poly::from_terms(R, std::move(p)));
    out.entries.push_back({key, std::move(u)});
  }
  return out;
}

FreeVector ie_reconstruct(const RingPtr& ring, const FrobeniusExpansion& x, unsigned e) {
  if (x.entries.empty()) throw ContextError("empty expansion has no rank");
  FreeVector v = zero_vector(ring, x.entries[0].second.size());
  for (const auto& [key, u] : x.entries)
    for (std::size_t i = 0; i < u.size(); ++i) v[i] += u[i].frobenius(e).times_term(key, 1);
  return v;
}

Submodule ie_operation(const Submodule& K, unsigned e) {
  std::vector<FreeVector> gens;
  for (const auto& g : K.generators())
    for (auto& [key, u] : ie_expand(g, e).entries) gens.push_back(std::move(u));
  return Submodule(K.ring(), K.rank(), std::move(gens));
}

bool is_stable(const Submodule& W, const PolyMatrix& U, unsigned e) {
  return frobenius_power(W, e).contains(apply(U, W));
}

Submodule star_closure(const Submodule& V, const PolyMatrix& U, unsigned e, const Localization& loc) {
  if (!U.is_square() || U.rows() != V.rank()) throw ContextError("matrix size does not match the submodule rank");
  std::size_t cap = limits().star_iterations;
  Submodule cur = loc(V);
  for (std::size_t i = 0; i < cap; ++i) {
    if (cur.is_full()) return cur;
    Submodule next = loc(ie_operation(apply(U, cur), e) + cur);
    if (next == cur) {
      if (!is_stable(cur, U, e)) throw MathError("star-closure fixed point is not stable");
      return Submodule(cur.ring(), cur.rank(), cur.gb());
    }
    cur = std::move(next);
  }
  throw ResourceError("star-closure did not stabilize within " + std::to_string(cap) + " steps");
}

Ideal star_closure(const Ideal& V, const Poly& u, unsigned e, const Localization& loc) {
  return star_closure(V, PolyMatrix::from_rows(V.ring(), {{u}}), e, loc);
}

StableKernel stable_kernel_chain(const PolyMatrix& U, const Localization& loc) {
  if (!U.is_square()) throw ContextError("stable kernel needs a square matrix");
  std::size_t cap = limits().kernel_iterations;
  StableKernel out;
  Submodule cur = loc(ie_operation(image(U), 1));
  out.chain.push_back(cur);
  for (std::size_t i = 0; i < cap; ++i) {
    Submodule next = loc(ie_operation(apply(U, cur), 1));
    if (next == cur) {
      out.kernel = Submodule(cur.ring(), cur.rank(), cur.gb());
      return out;
    }
    cur = std::move(next);
    out.chain.push_back(cur);
  }
  throw ResourceError("stable kernel did not stabilize within " + std::to_string(cap) + " steps");
}

Submodule stable_kernel(const PolyMatrix& U, const Localization& loc) { return stable_kernel_chain(U, loc).kernel; }

PolyMatrix frobenius_product(const PolyMatrix& U, unsigned e) {
  if (e == 0) throw MathError("Frobenius exponent e must be positive");
  PolyMatrix acc = U;
  for (unsigned k = 1; k < e; ++k) acc = U.frobenius(k) * acc;
  return acc;
}

Ideal fedder_colon(const Ideal& I, unsigned e) {
  if (I.rank() != 1) throw ContextError("expected an ideal");
  return quotient(frobenius_power(I, e), I);
}

}  // namespace sprimes
