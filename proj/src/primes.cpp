#include "specialprimes/primes.hpp"

#include <algorithm>
#include <set>

#include "specialprimes/config.hpp"
#include "specialprimes/factor.hpp"
#include "specialprimes/matrix.hpp"

namespace sprimes {

bool prime_less(const Ideal& a, const Ideal& b) {
  auto ga = ideal_basis(a), gb = ideal_basis(b);
  if (ga.size() != gb.size()) return ga.size() < gb.size();
  for (std::size_t i = 0; i < ga.size(); ++i) {
    std::string sa = ga[i].to_string(), sb = gb[i].to_string();
    if (sa != sb) return sa < sb;
  }
  return false;
}

void sort_primes(std::vector<PrimeRecord>& primes) {
  std::stable_sort(primes.begin(), primes.end(),
                   [](const PrimeRecord& a, const PrimeRecord& b) { return prime_less(a.ideal, b.ideal); });
}

void canonicalize_primes(std::vector<PrimeRecord>& primes) {
  sort_primes(primes);
  std::vector<PrimeRecord> out;
  for (auto& p : primes)
    if (out.empty() || out.back().ideal != p.ideal) out.push_back(std::move(p));
  primes = std::move(out);
}

std::vector<PrimeRecord> minimal_elements(std::vector<PrimeRecord> primes) {
  canonicalize_primes(primes);
  std::vector<PrimeRecord> out;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < primes.size() && minimal; ++j)
      if (i != j && primes[i].ideal.contains(primes[j].ideal)) minimal = false;
    if (minimal) out.push_back(primes[i]);
  }
  return out;
}

Ideal intersect_all(const RingPtr& ring, const std::vector<Ideal>& ideals) {
  if (ideals.empty()) return unit_ideal(ring);
  Ideal acc = ideals[0];
  for (std::size_t i = 1; i < ideals.size(); ++i) acc = intersect(acc, ideals[i]);
  return acc;
}

namespace {

constexpr std::size_t kMaxStandardMonomials = 20000;

Ideal add_poly(const Ideal& I, const Poly& f) { return I + make_ideal(I.ring(), {f}); }

// Reduced basis whose leading monomials are distinct variables: the quotient
// is a polynomial ring in the remaining variables.
bool is_linear_prime(const Ideal& I) {
  std::set<std::size_t> leads;
  for (const auto& g : ideal_basis(I)) {
    const Monomial& m = g.lead_monomial();
    if (m.degree() != 1) return false;
    for (std::size_t i = 0; i < I.ring()->nvars(); ++i)
      if (m[i]) leads.insert(i);
  }
  for (const auto& g : ideal_basis(I))
    for (std::size_t k = 1; k < g.terms().size(); ++k)
      for (std::size_t v : leads)
        if (g.terms()[k].mon[v]) return false;
  return true;
}

class Decomposer {
 public:
  explicit Decomposer(const RingPtr& ring) : R_(ring) {}

  void run(const Ideal& I) {
    if (I.is_full()) return;
    if (I.is_zero() || is_linear_prime(I)) {
      found_.push_back(I);
      return;
    }
    for (const auto& g : ideal_basis(I)) {
      auto F = factor(g);
      if (F.factors.size() > 1 || F.factors[0].second > 1) {
        for (const auto& [f, m] : F.factors) run(add_poly(I, f));
        return;
      }
    }
    certify_or_split(I);
  }

  std::vector<Ideal> results() const { return found_; }

 private:
  void certify_or_split(const Ideal& I) {
    std::size_t n = R_->nvars();
    std::vector<std::size_t> u = independent_set(I);
    std::vector<std::size_t> xp;
    for (std::size_t i = 0; i < n; ++i)
      if (!std::binary_search(u.begin(), u.end(), i)) xp.push_back(i);

    // Block order with the dependent variables first.
    std::vector<std::string> names;
    std::vector<std::size_t> to_block(n), from_block;
    for (std::size_t i : xp) {
      to_block[i] = names.size();
      names.push_back(R_->name(i));
      from_block.push_back(i);
    }
    for (std::size_t i : u) {
      to_block[i] = names.size();
      names.push_back(R_->name(i));
      from_block.push_back(i);
    }
    auto S = Ring::make(R_->characteristic(), names, MonomialOrder::blocks({xp.size(), u.size()}));
    std::size_t k = xp.size();

    std::vector<Monomial> leads;
    std::vector<Poly> hfactors;
    for (const auto& g : ideal_basis(I.mapped(S, to_block))) {
      Monomial lx;
      for (std::size_t i = 0; i < k; ++i) lx.set(i, g.lead_monomial()[i]);
      leads.push_back(lx);
      std::vector<Term> coeff;
      for (const auto& t : g.terms()) {
        bool same = true;
        for (std::size_t i = 0; i < k && same; ++i) same = t.mon[i] == lx[i];
        if (!same) continue;
        Monomial um;
        for (std::size_t i = k; i < n; ++i) um.set(from_block[i], t.mon[i]);
        coeff.push_back({um, t.coeff});
      }
      Poly c = Poly::from_terms(R_, coeff);
      if (c.is_constant()) continue;
      for (const auto& [f, m] : factor(c).factors)
        if (std::find(hfactors.begin(), hfactors.end(), f) == hfactors.end()) hfactors.push_back(f);
    }
    std::size_t dim_a = count_standard(leads, k);

    for (const Poly& l : candidate_forms(xp, u)) {
      auto [q, T] = minimal_polynomial(I, l, xp, u);
      std::size_t tvar = k;
      std::vector<std::size_t> back(n + 1);
      for (std::size_t i = 0; i < k; ++i) back[i] = from_block[i];
      for (std::size_t i = k; i < n; ++i) back[i + 1] = from_block[i];
      auto F = factor(q);
      std::vector<std::pair<Poly, unsigned>> tpos;
      for (const auto& fm : F.factors)
        if (fm.first.degree_in(tvar) > 0) tpos.push_back(fm);
      auto substitute = [&](const Poly& f) {
        // f(t, u) evaluated at t = l.
        Poly acc(R_);
        for (const auto& t : f.terms()) {
          Monomial um;
          for (std::size_t i = k + 1; i <= n; ++i) um.set(back[i], t.mon[i]);
          acc += l.pow(t.mon[tvar]).times_term(um, t.coeff);
        }
        return acc;
      };
      if (tpos.size() > 1 || (tpos.size() == 1 && tpos[0].second > 1)) {
        for (const auto& [f, m] : F.factors) run(add_poly(I, substitute(f)));
        return;
      }
      if (tpos.size() == 1 && tpos[0].first.degree_in(tvar) == dim_a) {
        Ideal P = I;
        if (!hfactors.empty()) {
          Poly h = Poly::constant(R_, 1);
          for (const auto& f : hfactors) h *= f;
          P = saturate(I, h);
        }
        found_.push_back(P);
        for (const auto& f : hfactors) run(add_poly(I, f));
        return;
      }
    }
    throw ResourceError("primality certification failed: no primitive element among the candidate forms");
  }

  std::size_t count_standard(const std::vector<Monomial>& leads, std::size_t k) const {
    auto standard = [&](const Monomial& m) {
      return std::none_of(leads.begin(), leads.end(), [&](const Monomial& l) { return l.divides(m); });
    };
    std::vector<Monomial> level;
    if (standard(Monomial{})) level.push_back(Monomial{});
    std::size_t total = level.size();
    while (!level.empty()) {
      std::vector<Monomial> next;
      for (const auto& m : level)
        for (std::size_t i = 0; i < k; ++i) {
          Monomial c = m * Monomial::variable(i);
          if (!standard(c)) continue;
          if (std::find(next.begin(), next.end(), c) == next.end()) next.push_back(c);
        }
      total += next.size();
      if (total > kMaxStandardMonomials) throw ResourceError("zero-dimensional quotient too large");
      level = std::move(next);
    }
    return total;
  }

  std::vector<Poly> candidate_forms(const std::vector<std::size_t>& xp, const std::vector<std::size_t>& u) const {
    std::vector<Poly> out;
    auto var = [&](std::size_t i) { return Poly::variable(R_, i); };
    std::uint32_t p = R_->characteristic();
    for (std::size_t i : xp) out.push_back(var(i));
    std::uint32_t cmax = std::min<std::uint32_t>(p - 1, 3);
    for (std::size_t a = 0; a < xp.size(); ++a)
      for (std::size_t b = a + 1; b < xp.size(); ++b)
        for (std::uint32_t c = 1; c <= cmax; ++c) out.push_back(var(xp[a]) + var(xp[b]).scaled(c));
    if (xp.size() > 2) {
      Poly s(R_);
      for (std::size_t a = 0; a < xp.size(); ++a) s += var(xp[a]).scaled(static_cast<Coeff>(a % (p - 1) + 1));
      out.push_back(s);
    }
    for (std::size_t a = 0; a < xp.size(); ++a)
      for (std::size_t j : u) out.push_back(var(xp[a]) + var(xp[(a + 1) % xp.size()]) * var(j));
    for (std::size_t a = 0; a < xp.size(); ++a)
      for (std::size_t b = 0; b < xp.size(); ++b)
        if (a != b) out.push_back(var(xp[a]) + var(xp[b]).pow(2));
    for (std::size_t a = 0; a < xp.size(); ++a)
      for (std::size_t b = a + 1; b < xp.size(); ++b) {
        out.push_back(var(xp[a]) * var(xp[b]) + var(xp[a]));
        out.push_back(var(xp[a]) * var(xp[b]) + var(xp[a]) + var(xp[b]));
      }
    return out;
  }

  // Element of (I + (t - l)) meeting F_p[t, u] of least positive t-degree, in
  // a ring ordered dependent variables > t > independent variables.
  std::pair<Poly, RingPtr> minimal_polynomial(const Ideal& I, const Poly& l, const std::vector<std::size_t>& xp,
                                              const std::vector<std::size_t>& u) const {
    std::size_t n = R_->nvars();
    std::string tname = "t_";
    while (R_->index_of(tname) >= 0) tname += "_";
    std::vector<std::string> names;
    std::vector<std::size_t> to(n);
    for (std::size_t i : xp) {
      to[i] = names.size();
      names.push_back(R_->name(i));
    }
    names.push_back(tname);
    for (std::size_t i : u) {
      to[i] = names.size();
      names.push_back(R_->name(i));
    }
    auto T = Ring::make(R_->characteristic(), names, MonomialOrder::blocks({xp.size(), 1, u.size()}));
    std::size_t tvar = xp.size();
    Ideal J = I.mapped(T, to) + make_ideal(T, {Poly::variable(T, tvar) - l.mapped(T, to)});
    std::optional<Poly> best;
    for (const auto& g : ideal_basis(J)) {
      bool free = true;
      for (std::size_t i = 0; i < xp.size() && free; ++i) free = g.degree_in(i) == 0;
      if (!free || g.degree_in(tvar) == 0) continue;
      if (!best || g.degree_in(tvar) < best->degree_in(tvar)) best = g;
    }
    if (!best) throw MathError("no eliminant found for a zero-dimensional extension");
    return {*best, T};
  }

  RingPtr R_;
  std::vector<Ideal> found_;
};

}  // namespace

std::vector<PrimeRecord> minimal_primes(const Ideal& I, const std::string& provenance) {
  if (I.rank() != 1) throw ContextError("minimal primes need an ideal");
  if (I.is_full()) throw MathError("the unit ideal has no minimal primes");
  GbBudget budget(limits().max_gb);
  Decomposer d(I.ring());
  d.run(I);
  std::vector<PrimeRecord> recs;
  for (auto& P : d.results()) recs.push_back({P, provenance, true});
  return minimal_elements(std::move(recs));
}

std::vector<PrimeRecord> minimal_primes_or_empty(const Ideal& I, const std::string& provenance) {
  if (I.is_full()) return {};
  return minimal_primes(I, provenance);
}

bool is_prime(const Ideal& I) {
  auto mp = minimal_primes(I);
  return mp.size() == 1 && mp[0].ideal == I;
}

Ideal singular_locus_ideal(const Ideal& P) {
  const RingPtr& R = P.ring();
  if (P.is_full()) throw MathError("singular locus of the unit ideal");
  if (P.is_zero()) return unit_ideal(R);
  std::size_t d = krull_dimension(P);
  if (d == 0) return unit_ideal(R);
  std::size_t n = R->nvars();
  std::size_t c = n - d;
  auto gens = ideal_basis(P);
  PolyMatrix jac(R, gens.size(), n);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) jac.at(i, j) = gens[i].derivative(j);
  std::vector<Poly> extra;
  for (auto& m : minors(jac, c))
    if (!m.is_zero() && !ideal_contains(P, m)) extra.push_back(m);
  return P + make_ideal(R, extra);
}

}  // namespace sprimes
