#include "specialprimes/factor.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace sprimes {

namespace {

constexpr std::size_t kMaxImageDegree = 40000;
constexpr std::size_t kMaxCandidates = 1u << 16;

// Dense univariate polynomial over F_p, coefficients from low to high degree.
struct UPoly {
  std::vector<std::uint64_t> c;

  std::size_t size() const { return c.size(); }
  bool zero() const { return c.empty(); }
  long deg() const { return static_cast<long>(c.size()) - 1; }
  std::uint64_t lc() const { return c.back(); }
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool operator==(const UPoly& o) const { return c == o.c; }
};

class Field {
 public:
  explicit Field(std::uint64_t p) : p_(p) {}
  std::uint64_t p() const { return p_; }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return a * b % p_; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p_; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p_ - b) % p_; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t k) const {
    std::uint64_t r = 1 % p_;
    while (k) {
      if (k & 1) r = mul(r, a);
      a = mul(a, a);
      k >>= 1;
    }
    return r;
  }
  std::uint64_t inv(std::uint64_t a) const { return pow(a, p_ - 2); }

  UPoly one() const { return UPoly{{1}}; }
  UPoly x() const { return UPoly{{0, 1}}; }

  UPoly add(const UPoly& a, const UPoly& b) const {
    UPoly r;
    r.c.resize(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
      r.c[i] = add(i < a.size() ? a.c[i] : 0, i < b.size() ? b.c[i] : 0);
    r.trim();
    return r;
  }
  UPoly sub(const UPoly& a, const UPoly& b) const {
    UPoly r;
    r.c.resize(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i)
      r.c[i] = sub(i < a.size() ? a.c[i] : 0, i < b.size() ? b.c[i] : 0);
    r.trim();
    return r;
  }
  UPoly mul(const UPoly& a, const UPoly& b) const {
    if (a.zero() || b.zero()) return {};
    UPoly r;
    r.c.assign(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!a.c[i]) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r.c[i + j] = (r.c[i + j] + a.c[i] * b.c[j]) % p_;
    }
    r.trim();
    return r;
  }
  // a = q*b + r.
  void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) const {
    r = a;
    q.c.clear();
    if (b.zero()) throw DivisionByZero();
    if (a.deg() < b.deg()) return;
    q.c.assign(static_cast<std::size_t>(a.deg() - b.deg() + 1), 0);
    std::uint64_t li = inv(b.lc());
    for (long k = a.deg() - b.deg(); k >= 0; --k) {
      std::uint64_t coef = mul(r.c[static_cast<std::size_t>(k + b.deg())], li);
      q.c[static_cast<std::size_t>(k)] = coef;
      if (!coef) continue;
      for (std::size_t j = 0; j < b.size(); ++j) {
        std::size_t idx = static_cast<std::size_t>(k) + j;
        r.c[idx] = sub(r.c[idx], mul(coef, b.c[j]));
      }
    }
    r.trim();
    q.trim();
  }
  UPoly mod(const UPoly& a, const UPoly& b) const {
    UPoly q, r;
    divmod(a, b, q, r);
    return r;
  }
  UPoly div(const UPoly& a, const UPoly& b) const {
    UPoly q, r;
    divmod(a, b, q, r);
    return q;
  }
  UPoly monic(UPoly a) const {
    if (a.zero()) return a;
    std::uint64_t li = inv(a.lc());
    for (auto& v : a.c) v = mul(v, li);
    return a;
  }
  UPoly gcd(UPoly a, UPoly b) const {
    while (!b.zero()) {
      UPoly r = mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }
  UPoly derivative(const UPoly& a) const {
    UPoly r;
    for (std::size_t i = 1; i < a.size(); ++i) r.c.push_back(mul(a.c[i], i % p_));
    r.trim();
    return r;
  }
  UPoly mulmod(const UPoly& a, const UPoly& b, const UPoly& m) const { return mod(mul(a, b), m); }
  UPoly powmod(UPoly a, std::uint64_t k, const UPoly& m) const {
    UPoly r = mod(one(), m);
    a = mod(a, m);
    while (k) {
      if (k & 1) r = mulmod(r, a, m);
      k >>= 1;
      if (k) a = mulmod(a, a, m);
    }
    return r;
  }
  // g with g^p = a; requires a' = 0.
  UPoly pth_root(const UPoly& a) const {
    UPoly r;
    for (std::size_t i = 0; i < a.size(); i += p_) r.c.push_back(a.c[i]);
    r.trim();
    return r;
  }

 private:
  std::uint64_t p_;
};

bool is_one(const UPoly& a) { return a.size() == 1 && a.c[0] == 1; }

// Squarefree decomposition of a monic polynomial.
void squarefree(const Field& F, const UPoly& f, unsigned mult, std::vector<std::pair<UPoly, unsigned>>& out) {
  if (f.deg() <= 0) return;
  UPoly c = F.gcd(f, F.derivative(f));
  UPoly w = F.div(f, c);
  unsigned i = 1;
  while (!is_one(w)) {
    UPoly y = F.gcd(w, c);
    UPoly z = F.div(w, y);
    if (!is_one(z)) out.push_back({F.monic(z), i * mult});
    ++i;
    w = y;
    c = F.div(c, y);
  }
  if (!is_one(c) && !c.zero()) squarefree(F, F.monic(F.pth_root(c)), mult * static_cast<unsigned>(F.p()), out);
}

void equal_degree(const Field& F, const UPoly& g, long d, std::mt19937_64& rng, std::vector<UPoly>& out) {
  if (g.deg() == d) {
    out.push_back(g);
    return;
  }
  std::uniform_int_distribution<std::uint64_t> coef(0, F.p() - 1);
  while (true) {
    UPoly a;
    for (long i = 0; i < g.deg(); ++i) a.c.push_back(coef(rng));
    a.trim();
    if (a.deg() <= 0) continue;
    UPoly t;
    if (F.p() == 2) {
      UPoly s = a;
      t = a;
      for (long i = 1; i < d; ++i) {
        s = F.mulmod(s, s, g);
        t = F.add(t, s);
      }
    } else {
      UPoly b = a, s = a;
      for (long i = 1; i < d; ++i) {
        s = F.powmod(s, F.p(), g);
        b = F.mulmod(b, s, g);
      }
      t = F.sub(F.powmod(b, (F.p() - 1) / 2, g), F.one());
    }
    UPoly s = F.gcd(g, t);
    if (s.deg() > 0 && s.deg() < g.deg()) {
      equal_degree(F, s, d, rng, out);
      equal_degree(F, F.monic(F.div(g, s)), d, rng, out);
      return;
    }
  }
}

// Irreducible factors of a monic squarefree polynomial.
std::vector<UPoly> distinct_degree(const Field& F, UPoly f, std::mt19937_64& rng) {
  std::vector<UPoly> out;
  UPoly h = F.x();
  for (long d = 1; 2 * d <= f.deg(); ++d) {
    h = F.powmod(h, F.p(), f);
    UPoly g = F.gcd(f, F.sub(h, F.x()));
    if (g.deg() > 0) {
      equal_degree(F, g, d, rng, out);
      f = F.monic(F.div(f, g));
      h = F.mod(h, f);
    }
  }
  if (f.deg() > 0) out.push_back(f);
  return out;
}

// All irreducible factors with multiplicity of a nonzero polynomial, monic.
std::vector<std::pair<UPoly, unsigned>> factor_dense(const Field& F, const UPoly& f) {
  std::mt19937_64 rng(0x5eedULL);
  std::vector<std::pair<UPoly, unsigned>> sqf;
  squarefree(F, F.monic(f), 1, sqf);
  std::vector<std::pair<UPoly, unsigned>> out;
  for (const auto& [g, m] : sqf)
    for (auto& h : distinct_degree(F, g, rng)) out.push_back({h, m});
  return out;
}

Factorization finish(Coeff unit, std::vector<std::pair<Poly, unsigned>> parts) {
  std::sort(parts.begin(), parts.end(),
            [](const auto& a, const auto& b) { return compare_polys(a.first, b.first) < 0; });
  Factorization res;
  res.unit = unit;
  for (auto& [g, m] : parts) {
    if (!res.factors.empty() && res.factors.back().first == g) {
      res.factors.back().second += m;
    } else {
      res.factors.push_back({g, m});
    }
  }
  return res;
}

}  // namespace

Factorization factor_univariate(const Poly& f) {
  if (f.is_zero()) throw MathError("cannot factor the zero polynomial");
  auto sup = f.support();
  if (sup.size() > 1) throw MathError("factor_univariate called on a multivariate polynomial");
  const RingPtr& R = f.ring();
  if (sup.empty()) return Factorization{f.lead_coeff(), {}};
  std::size_t v = sup[0];
  Field F(R->characteristic());
  UPoly u;
  u.c.assign(f.degree_in(v) + 1, 0);
  for (const auto& t : f.terms()) u.c[t.mon[v]] = t.coeff;
  std::vector<std::pair<Poly, unsigned>> parts;
  for (const auto& [g, m] : factor_dense(F, u)) {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (g.c[i]) terms.push_back({Monomial::variable(v, static_cast<Exponent>(i)), static_cast<Coeff>(g.c[i])});
    parts.push_back({Poly::from_terms(R, terms), m});
  }
  return finish(f.lead_coeff(), std::move(parts));
}

Factorization factor(const Poly& f) {
  if (f.is_zero()) throw MathError("cannot factor the zero polynomial");
  const RingPtr& R = f.ring();
  Coeff unit = f.lead_coeff();
  Poly g = f.monic();

  std::vector<std::pair<Poly, unsigned>> parts;
  Monomial content = g.terms().front().mon;
  for (const auto& t : g.terms()) content = content.gcd(t.mon);
  for (std::size_t i = 0; i < R->nvars(); ++i)
    if (content[i]) parts.push_back({Poly::variable(R, i), content[i]});
  if (!content.is_one()) {
    std::vector<Term> terms;
    for (const auto& t : g.terms()) terms.push_back({t.mon / content, t.coeff});
    g = Poly::from_sorted_terms(R, std::move(terms));
  }
  if (g.is_constant()) return finish(unit, std::move(parts));

  auto sup = g.support();
  if (sup.size() == 1) {
    for (auto& pr : factor_univariate(g).factors) parts.push_back(pr);
    return finish(unit, std::move(parts));
  }

  // Kronecker substitution x_{sup[k]} -> t^{w_k}.
  std::vector<std::uint64_t> weight, radix;
  std::uint64_t total = 1;
  for (std::size_t v : sup) {
    weight.push_back(total);
    radix.push_back(g.degree_in(v) + 1);
    total *= g.degree_in(v) + 1;
    if (total > kMaxImageDegree) throw ResourceError("polynomial too large for Kronecker factorization");
  }
  Field F(R->characteristic());
  auto image = [&](const Poly& h) {
    UPoly u;
    u.c.assign(total, 0);
    for (const auto& t : h.terms()) {
      std::uint64_t k = 0;
      for (std::size_t j = 0; j < sup.size(); ++j) k += t.mon[sup[j]] * weight[j];
      u.c[k] = t.coeff;
    }
    u.trim();
    return u;
  };
  auto preimage = [&](const UPoly& u) {
    std::vector<Term> terms;
    for (std::size_t k = 0; k < u.size(); ++k) {
      if (!u.c[k]) continue;
      Monomial m;
      std::uint64_t rest = k;
      for (std::size_t j = 0; j < sup.size(); ++j) {
        m.set(sup[j], static_cast<Exponent>(rest % radix[j]));
        rest /= radix[j];
      }
      if (rest) return Poly(R);
      terms.push_back({m, static_cast<Coeff>(u.c[k])});
    }
    return Poly::from_terms(R, std::move(terms));
  };

  std::vector<UPoly> pieces;
  std::vector<unsigned> avail;
  for (auto& [h, m] : factor_dense(F, image(g))) {
    pieces.push_back(h);
    avail.push_back(m);
  }

  while (!g.is_constant()) {
    // Sub-multisets of the remaining univariate factors, by increasing degree.
    std::vector<std::vector<unsigned>> combos{{}};
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      std::vector<std::vector<unsigned>> next;
      for (const auto& c : combos)
        for (unsigned k = 0; k <= avail[i]; ++k) {
          auto d = c;
          d.push_back(k);
          next.push_back(std::move(d));
          if (next.size() > kMaxCandidates) throw ResourceError("factor search exceeded its cap");
        }
      combos = std::move(next);
    }
    auto degree_of = [&](const std::vector<unsigned>& c) {
      long d = 0;
      for (std::size_t i = 0; i < c.size(); ++i) d += c[i] * pieces[i].deg();
      return d;
    };
    std::stable_sort(combos.begin(), combos.end(),
                     [&](const auto& a, const auto& b) { return degree_of(a) < degree_of(b); });
    long full = image(g).deg();
    bool found = false;
    for (const auto& c : combos) {
      long d = degree_of(c);
      if (d == 0) continue;
      if (d >= full) break;
      UPoly prod = F.one();
      for (std::size_t i = 0; i < c.size(); ++i)
        for (unsigned k = 0; k < c[i]; ++k) prod = F.mul(prod, pieces[i]);
      Poly h = preimage(prod);
      if (h.is_zero() || h.is_constant()) continue;
      auto q = g.divide_exact(h);
      if (!q) continue;
      parts.push_back({h.monic(), 1});
      g = q->monic();
      for (std::size_t i = 0; i < c.size(); ++i) avail[i] -= c[i];
      found = true;
      break;
    }
    if (!found) {
      parts.push_back({g, 1});
      break;
    }
  }
  return finish(unit, std::move(parts));
}

}  // namespace sprimes
