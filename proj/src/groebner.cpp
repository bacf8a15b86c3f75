#include "specialprimes/groebner.hpp"

#include <algorithm>
#include <bit>

#include "specialprimes/config.hpp"

namespace sprimes {

// ---------------------------------------------------------------------------
// Free vectors

FreeVector zero_vector(const RingPtr& ring, std::size_t rank) { return FreeVector(rank, Poly(ring)); }

FreeVector unit_vector(const RingPtr& ring, std::size_t rank, std::size_t i) {
  FreeVector v = zero_vector(ring, rank);
  v.at(i) = Poly::constant(ring, 1);
  return v;
}

bool is_zero_vector(const FreeVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Poly& f) { return f.is_zero(); });
}

FreeVector scale_vector(const FreeVector& v, const Poly& f) {
  FreeVector r;
  r.reserve(v.size());
  for (const auto& c : v) r.push_back(c * f);
  return r;
}

FreeVector add_vectors(const FreeVector& a, const FreeVector& b) {
  if (a.size() != b.size()) throw ContextError("vector rank mismatch");
  FreeVector r;
  r.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r.push_back(a[i] + b[i]);
  return r;
}

FreeVector frobenius_vector(const FreeVector& v, unsigned e) {
  FreeVector r;
  r.reserve(v.size());
  for (const auto& c : v) r.push_back(c.frobenius(e));
  return r;
}

std::string vector_to_string(const FreeVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].to_string();
  }
  return s + ")";
}

// ---------------------------------------------------------------------------
// Budget

namespace {
thread_local GbBudget* t_budget = nullptr;
}

GbBudget::GbBudget(std::size_t cap) : prev_(t_budget), cap_(cap) { t_budget = this; }

GbBudget::~GbBudget() { t_budget = prev_; }

std::size_t GbBudget::used() const { return used_; }

void charge_gb_budget() {
  for (GbBudget* b = t_budget; b; b = b->prev_) {
    if (++b->used_ > b->cap_)
      throw ResourceError("Groebner computation budget of " + std::to_string(b->cap_) + " exceeded");
  }
}

// ---------------------------------------------------------------------------
// Engine

namespace {

struct VTerm {
  Monomial mon;
  std::uint32_t comp;
  Coeff coeff;
};

using Vec = std::vector<VTerm>;

class Engine {
 public:
  Engine(const Ring& ring, std::size_t rank) : R_(ring), ord_(ring.order()), rank_(rank) {}

  int cmp(const Monomial& am, std::uint32_t ac, const Monomial& bm, std::uint32_t bc) const {
    if (ac != bc) return ac < bc ? 1 : -1;
    return ord_.compare(am, bm);
  }
  int cmp(const VTerm& a, const VTerm& b) const { return cmp(a.mon, a.comp, b.mon, b.comp); }

  Vec from_vector(const FreeVector& v) const {
    Vec out;
    for (std::size_t i = 0; i < v.size(); ++i)
      for (const auto& t : v[i].terms()) out.push_back({t.mon, static_cast<std::uint32_t>(i), t.coeff});
    return out;
  }

  FreeVector to_vector(const RingPtr& ring, const Vec& v) const {
    std::vector<std::vector<Term>> parts(rank_);
    for (const auto& t : v) parts[t.comp].push_back({t.mon, t.coeff});
    FreeVector out;
    out.reserve(rank_);
    for (auto& p : parts) out.push_back(Poly::from_sorted_terms(ring, std::move(p)));
    return out;
  }

  // Tail of f starting at `from`, minus c*m*g.
  Vec sub_mul(const Vec& f, std::size_t from, Coeff c, const Monomial& m, const Vec& g) const {
    Vec out;
    out.reserve(f.size() - from + g.size());
    std::size_t i = from, j = 0;
    Coeff nc = R_.neg(c);
    while (i < f.size() && j < g.size()) {
      Monomial gm = g[j].mon * m;
      int s = cmp(f[i].mon, f[i].comp, gm, g[j].comp);
      if (s > 0) {
        out.push_back(f[i++]);
      } else if (s < 0) {
        out.push_back({gm, g[j].comp, R_.mul(nc, g[j].coeff)});
        ++j;
      } else {
        Coeff v = R_.add(f[i].coeff, R_.mul(nc, g[j].coeff));
        if (v) out.push_back({f[i].mon, f[i].comp, v});
        ++i;
        ++j;
      }
    }
    for (; i < f.size(); ++i) out.push_back(f[i]);
    for (; j < g.size(); ++j) out.push_back({g[j].mon * m, g[j].comp, R_.mul(nc, g[j].coeff)});
    return out;
  }

  void make_monic(Vec& v) const {
    if (v.empty() || v.front().coeff == 1) return;
    Coeff inv = R_.inv(v.front().coeff);
    for (auto& t : v) t.coeff = R_.mul(t.coeff, inv);
  }

  // Full reduction by the reducers (all monic).
  Vec reduce(Vec f, const std::vector<const Vec*>& reducers, bool tail = true) const {
    Vec result;
    std::size_t pos = 0;
    while (pos < f.size()) {
      const VTerm& t = f[pos];
      const Vec* red = nullptr;
      for (const Vec* g : reducers) {
        const VTerm& l = g->front();
        if (l.comp == t.comp && l.mon.divides(t.mon)) {
          red = g;
          break;
        }
      }
      if (red) {
        Monomial m = t.mon / red->front().mon;
        f = sub_mul(f, pos, t.coeff, m, *red);
        pos = 0;
      } else {
        result.push_back(t);
        ++pos;
        if (!tail) {
          result.insert(result.end(), f.begin() + static_cast<std::ptrdiff_t>(pos), f.end());
          break;
        }
      }
    }
    return result;
  }

  static std::uint32_t degree_of(const Vec& v) {
    std::uint32_t d = 0;
    for (const auto& t : v) d = std::max(d, t.mon.degree());
    return d;
  }

  std::vector<Vec> groebner(std::vector<Vec> input) {
    charge_gb_budget();
    for (auto& f : input) {
      if (f.empty()) continue;
      std::vector<const Vec*> reds = active_reducers();
      Vec h = reduce(std::move(f), reds);
      if (h.empty()) continue;
      make_monic(h);
      std::uint32_t sugar = degree_of(h);
      add_element(std::move(h), sugar);
    }
    while (!pairs_.empty()) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < pairs_.size(); ++k)
        if (pair_less(pairs_[k], pairs_[best])) best = k;
      Pair pr = pairs_[best];
      pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(best));
      const Vec& gi = basis_[pr.i].v;
      const Vec& gj = basis_[pr.j].v;
      Vec s = sub_mul(Vec{}, 0, R_.neg(1), pr.lcm / gi.front().mon, gi);
      s = sub_mul(s, 0, 1, pr.lcm / gj.front().mon, gj);
      std::vector<const Vec*> reds = active_reducers();
      Vec h = reduce(std::move(s), reds);
      if (h.empty()) continue;
      make_monic(h);
      std::uint32_t sugar = pr.sugar;
      add_element(std::move(h), sugar);
    }
    std::vector<Vec> out;
    for (const auto& e : basis_)
      if (!e.redundant) out.push_back(e.v);
    std::vector<Vec> reduced;
    reduced.reserve(out.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
      std::vector<const Vec*> reds;
      for (std::size_t l = 0; l < out.size(); ++l)
        if (l != k) reds.push_back(&out[l]);
      Vec lead{out[k].front()};
      Vec tail(out[k].begin() + 1, out[k].end());
      Vec t = reduce(std::move(tail), reds);
      lead.insert(lead.end(), t.begin(), t.end());
      reduced.push_back(std::move(lead));
    }
    std::sort(reduced.begin(), reduced.end(),
              [&](const Vec& a, const Vec& b) { return cmp(a.front(), b.front()) > 0; });
    return reduced;
  }

 private:
  struct Elem {
    Vec v;
    std::uint32_t sugar;
    bool redundant = false;
  };
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
    std::uint32_t comp;
    std::uint32_t sugar;
  };

  bool pair_less(const Pair& a, const Pair& b) const {
    if (a.sugar != b.sugar) return a.sugar < b.sugar;
    int c = cmp(a.lcm, a.comp, b.lcm, b.comp);
    if (c) return c < 0;
    if (a.j != b.j) return a.j < b.j;
    return a.i < b.i;
  }

  std::vector<const Vec*> active_reducers() const {
    std::vector<const Vec*> r;
    for (const auto& e : basis_)
      if (!e.redundant) r.push_back(&e.v);
    return r;
  }

  bool product_criterion(const Monomial& a, const Monomial& b) const { return rank_ == 1 && a.coprime(b); }

  // Gebauer-Moeller update for a new element h.
  void add_element(Vec h, std::uint32_t sugar) {
    std::size_t hi = basis_.size();
    basis_.push_back({std::move(h), sugar, false});
    const VTerm& lh = basis_[hi].v.front();

    std::vector<Pair> cand;
    for (std::size_t g = 0; g < hi; ++g) {
      if (basis_[g].redundant) continue;
      const VTerm& lg = basis_[g].v.front();
      if (lg.comp != lh.comp) continue;
      Monomial l = lg.mon.lcm(lh.mon);
      std::uint32_t s = std::max(basis_[g].sugar + (l.degree() - lg.mon.degree()),
                                 basis_[hi].sugar + (l.degree() - lh.mon.degree()));
      cand.push_back({g, hi, l, lh.comp, s});
    }
    std::vector<Pair> kept;
    for (std::size_t k = 0; k < cand.size(); ++k) {
      const Pair& c = cand[k];
      bool keep = product_criterion(basis_[c.i].v.front().mon, lh.mon);
      if (!keep) {
        keep = true;
        for (std::size_t m = k + 1; m < cand.size() && keep; ++m)
          if (cand[m].lcm.divides(c.lcm)) keep = false;
        for (std::size_t m = 0; m < kept.size() && keep; ++m)
          if (kept[m].lcm.divides(c.lcm)) keep = false;
      }
      if (keep) kept.push_back(c);
    }
    std::vector<Pair> fresh;
    for (const auto& c : kept)
      if (!product_criterion(basis_[c.i].v.front().mon, lh.mon)) fresh.push_back(c);

    std::vector<Pair> old;
    for (const auto& pr : pairs_) {
      bool drop = pr.comp == lh.comp && lh.mon.divides(pr.lcm) &&
                  basis_[pr.i].v.front().mon.lcm(lh.mon) != pr.lcm &&
                  basis_[pr.j].v.front().mon.lcm(lh.mon) != pr.lcm;
      if (!drop) old.push_back(pr);
    }
    pairs_ = std::move(old);
    pairs_.insert(pairs_.end(), fresh.begin(), fresh.end());

    for (std::size_t g = 0; g < hi; ++g) {
      const VTerm& lg = basis_[g].v.front();
      if (!basis_[g].redundant && lg.comp == lh.comp && lh.mon.divides(lg.mon)) basis_[g].redundant = true;
    }
  }

  const Ring& R_;
  const MonomialOrder& ord_;
  std::size_t rank_;
  std::vector<Elem> basis_;
  std::vector<Pair> pairs_;
};

FreeVector normalize_vector(const RingPtr& ring, FreeVector v) {
  for (auto& c : v) {
    if (!c.ring()) {
      c = Poly(ring);
    } else {
      check_same_ring(*c.ring(), *ring);
    }
  }
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// Submodule

Submodule::Submodule(RingPtr ring, std::size_t rank, std::vector<FreeVector> gens)
    : ring_(std::move(ring)), rank_(rank), cache_(std::make_shared<Cache>()) {
  if (!ring_) throw ContextError("submodule without a ring");
  if (rank == 0) throw ContextError("submodule rank must be positive");
  for (auto& g : gens) {
    if (g.size() != rank) throw ContextError("generator rank mismatch");
    g = normalize_vector(ring_, std::move(g));
    if (!is_zero_vector(g)) gens_.push_back(std::move(g));
  }
}

Submodule Submodule::zero(RingPtr ring, std::size_t rank) { return Submodule(std::move(ring), rank, {}); }

Submodule Submodule::full(RingPtr ring, std::size_t rank) {
  std::vector<FreeVector> gens;
  for (std::size_t i = 0; i < rank; ++i) gens.push_back(unit_vector(ring, rank, i));
  return Submodule(std::move(ring), rank, std::move(gens));
}

const std::vector<FreeVector>& Submodule::gb() const {
  if (!cache_) throw ContextError("empty submodule handle");
  std::call_once(cache_->once, [this] {
    Engine eng(*ring_, rank_);
    std::vector<Vec> in;
    in.reserve(gens_.size());
    for (const auto& g : gens_) in.push_back(eng.from_vector(g));
    // Sorting inputs by leading term makes the computation independent of the
    // order in which generators were supplied.
    std::vector<std::size_t> idx(in.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return eng.cmp(in[a].front(), in[b].front()) < 0;
    });
    std::vector<Vec> sorted;
    for (std::size_t i : idx) sorted.push_back(std::move(in[i]));
    auto res = eng.groebner(std::move(sorted));
    for (const auto& v : res) cache_->gb.push_back(eng.to_vector(ring_, v));
  });
  return cache_->gb;
}

bool Submodule::is_zero() const { return gens_.empty(); }

bool Submodule::is_full() const {
  std::vector<bool> seen(rank_, false);
  for (const auto& g : gb()) {
    for (std::size_t i = 0; i < rank_; ++i) {
      if (g[i].is_zero()) continue;
      if (g[i].lead_monomial().is_one()) seen[i] = true;
      break;
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

FreeVector Submodule::normal_form(const FreeVector& v) const {
  if (v.size() != rank_) throw ContextError("vector rank mismatch");
  FreeVector w = normalize_vector(ring_, v);
  Engine eng(*ring_, rank_);
  const auto& basis = gb();
  std::vector<Vec> conv;
  conv.reserve(basis.size());
  for (const auto& g : basis) conv.push_back(eng.from_vector(g));
  std::vector<const Vec*> reds;
  for (const auto& g : conv) reds.push_back(&g);
  return eng.to_vector(ring_, eng.reduce(eng.from_vector(w), reds));
}

bool Submodule::contains(const FreeVector& v) const { return is_zero_vector(normal_form(v)); }

bool Submodule::contains(const Submodule& o) const {
  if (o.rank_ != rank_) throw ContextError("submodule rank mismatch");
  check_same_ring(*ring_, *o.ring_);
  if (is_full()) return true;
  for (const auto& g : o.gens_)
    if (!contains(g)) return false;
  return true;
}

Submodule Submodule::operator+(const Submodule& o) const {
  if (o.rank_ != rank_) throw ContextError("submodule rank mismatch");
  check_same_ring(*ring_, *o.ring_);
  std::vector<FreeVector> g = gens_;
  g.insert(g.end(), o.gens_.begin(), o.gens_.end());
  return Submodule(ring_, rank_, std::move(g));
}

bool Submodule::operator==(const Submodule& o) const {
  if (o.rank_ != rank_) return false;
  check_same_ring(*ring_, *o.ring_);
  const auto& a = gb();
  const auto& b = o.gb();
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t c = 0; c < rank_; ++c)
      if (a[i][c] != b[i][c]) return false;
  return true;
}

Submodule Submodule::mapped(const RingPtr& target, const std::vector<std::size_t>& var_map) const {
  std::vector<FreeVector> g;
  for (const auto& v : gens_) {
    FreeVector w;
    for (const auto& c : v) w.push_back(c.mapped(target, var_map));
    g.push_back(std::move(w));
  }
  return Submodule(target, rank_, std::move(g));
}

std::string Submodule::to_string() const {
  const auto& basis = gb();
  if (basis.empty()) return "(0)";
  std::string s;
  if (rank_ == 1) {
    s = "(";
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (i) s += ", ";
      s += basis[i][0].to_string();
    }
    return s + ")";
  }
  s = "<";
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (i) s += ", ";
    s += vector_to_string(basis[i]);
  }
  return s + ">";
}

// ---------------------------------------------------------------------------
// Ideals

Ideal make_ideal(const RingPtr& ring, std::vector<Poly> gens) {
  std::vector<FreeVector> g;
  g.reserve(gens.size());
  for (auto& f : gens) g.push_back({std::move(f)});
  return Submodule(ring, 1, std::move(g));
}

Ideal unit_ideal(const RingPtr& ring) { return Submodule::full(ring, 1); }

Ideal zero_ideal(const RingPtr& ring) { return Submodule::zero(ring, 1); }

std::vector<Poly> ideal_basis(const Ideal& I) {
  if (I.rank() != 1) throw ContextError("expected an ideal");
  std::vector<Poly> out;
  for (const auto& v : I.gb()) out.push_back(v[0]);
  return out;
}

bool ideal_contains(const Ideal& I, const Poly& f) { return I.contains(FreeVector{f}); }

Poly ideal_normal_form(const Ideal& I, const Poly& f) { return I.normal_form(FreeVector{f})[0]; }

Submodule extend_ideal(const Ideal& I, std::size_t rank) {
  if (I.rank() != 1) throw ContextError("expected an ideal");
  std::vector<FreeVector> g;
  for (const auto& f : ideal_basis(I))
    for (std::size_t i = 0; i < rank; ++i) {
      FreeVector v = zero_vector(I.ring(), rank);
      v[i] = f;
      g.push_back(std::move(v));
    }
  return Submodule(I.ring(), rank, std::move(g));
}

// ---------------------------------------------------------------------------
// Derived operations

FreeVector normal_form(const FreeVector& v, const Submodule& G) { return G.normal_form(v); }

Submodule buchberger(const RingPtr& ring, std::size_t rank, const std::vector<FreeVector>& gens) {
  Submodule S(ring, rank, gens);
  return Submodule(ring, rank, S.gb());
}

bool submodule_equal(const Submodule& a, const Submodule& b) { return a == b; }

Submodule eliminate_components(const RingPtr& ring, std::size_t total_rank,
                               const std::vector<FreeVector>& gens, std::size_t k) {
  if (k >= total_rank) throw ContextError("nothing left after eliminating components");
  Submodule S(ring, total_rank, gens);
  std::vector<FreeVector> out;
  for (const auto& g : S.gb()) {
    bool head_zero = true;
    for (std::size_t i = 0; i < k && head_zero; ++i) head_zero = g[i].is_zero();
    if (head_zero) out.emplace_back(g.begin() + static_cast<std::ptrdiff_t>(k), g.end());
  }
  return Submodule(ring, total_rank - k, std::move(out));
}

Submodule intersect(const Submodule& a, const Submodule& b) {
  if (a.rank() != b.rank()) throw ContextError("submodule rank mismatch");
  check_same_ring(*a.ring(), *b.ring());
  const RingPtr& R = a.ring();
  std::size_t n = a.rank();
  if (a.is_zero() || b.is_zero()) return Submodule::zero(R, n);
  if (a.is_full()) return b;
  if (b.is_full()) return a;
  std::vector<FreeVector> gens;
  for (const auto& v : a.gb()) {
    FreeVector w = v;
    w.insert(w.end(), v.begin(), v.end());
    gens.push_back(std::move(w));
  }
  for (const auto& v : b.gb()) {
    FreeVector w = v;
    FreeVector z = zero_vector(R, n);
    w.insert(w.end(), z.begin(), z.end());
    gens.push_back(std::move(w));
  }
  return eliminate_components(R, 2 * n, gens, n);
}

Submodule quotient(const Submodule& V, const Poly& f) {
  const RingPtr& R = V.ring();
  std::size_t n = V.rank();
  if (f.is_zero()) return Submodule::full(R, n);
  check_same_ring(*R, *f.ring());
  if (V.is_full()) return V;
  if (f.is_constant()) return V;
  std::vector<FreeVector> gens;
  for (std::size_t i = 0; i < n; ++i) {
    FreeVector w = zero_vector(R, 2 * n);
    w[i] = f;
    w[n + i] = Poly::constant(R, 1);
    gens.push_back(std::move(w));
  }
  for (const auto& v : V.gb()) {
    FreeVector w = v;
    FreeVector z = zero_vector(R, n);
    w.insert(w.end(), z.begin(), z.end());
    gens.push_back(std::move(w));
  }
  return eliminate_components(R, 2 * n, gens, n);
}

Submodule quotient(const Submodule& V, const Ideal& J) {
  if (J.rank() != 1) throw ContextError("expected an ideal");
  check_same_ring(*V.ring(), *J.ring());
  std::vector<Poly> g = ideal_basis(J);
  if (g.empty()) return Submodule::full(V.ring(), V.rank());
  Submodule acc = quotient(V, g[0]);
  for (std::size_t i = 1; i < g.size(); ++i) acc = intersect(acc, quotient(V, g[i]));
  return acc;
}

Ideal module_quotient(const Submodule& V, const Submodule& W) {
  if (V.rank() != W.rank()) throw ContextError("submodule rank mismatch");
  check_same_ring(*V.ring(), *W.ring());
  const RingPtr& R = V.ring();
  std::size_t n = V.rank();
  if (V.contains(W)) return unit_ideal(R);
  std::optional<Ideal> acc;
  for (const auto& w : W.gb()) {
    if (V.contains(w)) continue;
    std::vector<FreeVector> gens;
    FreeVector head = w;
    head.push_back(Poly::constant(R, 1));
    gens.push_back(std::move(head));
    for (const auto& v : V.gb()) {
      FreeVector x = v;
      x.push_back(Poly(R));
      gens.push_back(std::move(x));
    }
    Ideal part = eliminate_components(R, n + 1, gens, n);
    acc = acc ? intersect(*acc, part) : part;
  }
  return *acc;
}

Ideal annihilator(const Submodule& V) { return module_quotient(V, Submodule::full(V.ring(), V.rank())); }

Submodule saturate(const Submodule& V, const Poly& a) {
  if (a.is_zero()) throw MathError("cannot saturate at zero");
  check_same_ring(*V.ring(), *a.ring());
  if (a.is_constant()) return V;
  std::size_t cap = limits().saturation_iterations;
  Submodule cur = V;
  for (std::size_t k = 0; k < cap; ++k) {
    Submodule next = quotient(cur, a);
    if (next == cur) return cur;
    cur = std::move(next);
  }
  throw ResourceError("saturation did not stabilize within " + std::to_string(cap) + " steps");
}

std::vector<std::size_t> independent_set(const Ideal& I) {
  if (I.rank() != 1) throw ContextError("expected an ideal");
  if (I.is_full()) throw MathError("unit ideal has no dimension");
  std::size_t n = I.ring()->nvars();
  std::vector<std::uint32_t> supports;
  for (const auto& f : ideal_basis(I)) {
    std::uint32_t s = 0;
    const Monomial& m = f.lead_monomial();
    for (std::size_t i = 0; i < n; ++i)
      if (m[i]) s |= 1u << i;
    supports.push_back(s);
  }
  std::uint32_t best = 0;
  int best_size = -1;
  for (std::uint32_t mask = (1u << n); mask-- > 0;) {
    int size = std::popcount(mask);
    if (size <= best_size) continue;
    bool ok = std::none_of(supports.begin(), supports.end(),
                           [&](std::uint32_t s) { return (s & ~mask) == 0; });
    if (ok) {
      best = mask;
      best_size = size;
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (best & (1u << i)) out.push_back(i);
  return out;
}

std::size_t krull_dimension(const Ideal& I) { return independent_set(I).size(); }

std::optional<std::vector<Poly>> lift(const FreeVector& v, const std::vector<FreeVector>& gens) {
  if (gens.empty()) {
    if (is_zero_vector(v)) return std::vector<Poly>{};
    return std::nullopt;
  }
  RingPtr R;
  for (const auto& g : gens)
    for (const auto& c : g)
      if (c.ring()) R = c.ring();
  for (const auto& c : v)
    if (c.ring()) R = c.ring();
  if (!R) throw ContextError("cannot determine ring for lift");
  std::size_t n = v.size();
  std::size_t m = gens.size();
  std::vector<FreeVector> aug;
  for (std::size_t i = 0; i < m; ++i) {
    if (gens[i].size() != n) throw ContextError("vector rank mismatch");
    FreeVector w = normalize_vector(R, gens[i]);
    FreeVector e = unit_vector(R, m, i);
    w.insert(w.end(), e.begin(), e.end());
    aug.push_back(std::move(w));
  }
  Submodule S(R, n + m, std::move(aug));
  FreeVector target = normalize_vector(R, v);
  FreeVector z = zero_vector(R, m);
  target.insert(target.end(), z.begin(), z.end());
  FreeVector nf = S.normal_form(target);
  for (std::size_t i = 0; i < n; ++i)
    if (!nf[i].is_zero()) return std::nullopt;
  std::vector<Poly> out;
  for (std::size_t i = 0; i < m; ++i) out.push_back(-nf[n + i]);
  return out;
}

}  // namespace sprimes
