#include "specialprimes/kz.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>

#include "specialprimes/config.hpp"
#include "specialprimes/error.hpp"

namespace sprimes {

namespace {

constexpr std::size_t kMaxLiftPower = 64;

PolyMatrix top_left(const PolyMatrix& U) { return U.block(0, 0, U.rows() - 1, U.cols() - 1); }

// Smallest entry outside P, by compare_polys; ties keep the first entry in
// row-major order of the matrix whose columns are cols.
std::optional<Poly> smallest_entry_outside(const std::vector<FreeVector>& cols, std::size_t rank, const Ideal& P) {
  std::optional<Poly> best;
  for (std::size_t i = 0; i < rank; ++i)
    for (const auto& c : cols) {
      const Poly& f = c[i];
      if (f.is_zero() || ideal_contains(P, f)) continue;
      if (!best || compare_polys(f, *best) < 0) best = f;
    }
  return best;
}

std::vector<PrimeRecord> tagged(std::vector<PrimeRecord> v, const std::string& tag) {
  for (auto& r : v) r.provenance = tag;
  return v;
}

void append_strict(std::vector<PrimeRecord>& out, std::vector<PrimeRecord> found, const Ideal& P) {
  for (auto& Q : found)
    if (Q.ideal.contains(P) && Q.ideal != P) out.push_back(std::move(Q));
}

// Minimal primes of ann(R^alpha / ((P + a) R^alpha)^{*U}).
std::vector<PrimeRecord> annihilator_branch(const Ideal& P, const Poly& a, const PolyMatrix& U,
                                            const std::string& tag) {
  Ideal Pa = P + make_ideal(P.ring(), {a});
  if (Pa.is_full()) return {};
  Submodule W = star_closure(extend_ideal(Pa, U.rows()), U, 1);
  return minimal_primes_or_empty(annihilator(W), tag);
}

// Special primes of a smaller matrix, found by a full run.
std::vector<PrimeRecord> sub_run(const PolyMatrix& U0, const std::string& tag) {
  if (U0.rows() == 1) {
    const Poly& u = U0.at(0, 0);
    if (u.is_zero()) return {};
    return tagged(ks_run({u, 1}).primes, tag);
  }
  if (stable_kernel(U0).is_zero()) return {};
  return tagged(kz_run({U0}).primes, tag);
}

std::size_t pivot_outside(const FreeVector& y, const Ideal& P) {
  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < y.size(); ++k) {
    if (y[k].is_zero() || ideal_contains(P, y[k])) continue;
    if (!best || compare_polys(y[k], y[*best]) < 0) best = k;
  }
  if (!best) throw MathError("kernel vector lies in P R^alpha");
  return *best;
}

void check_square(const PolyMatrix& U) {
  if (!U.ring() || !U.is_square() || U.rows() == 0) throw ContextError("expected a nonempty square matrix");
}

}  // namespace

bool is_u_special(const Ideal& P, const PolyMatrix& U) {
  check_square(U);
  if (P.is_full()) throw MathError("is_u_special: P must be proper");
  Submodule W = star_closure(extend_ideal(P, U.rows()), U, 1);
  return annihilator(W) == P;
}

BasisChange complete_with_vector(const FreeVector& y, std::size_t pivot) {
  std::size_t n = y.size();
  if (pivot >= n || y[pivot].is_zero()) throw MathError("completion pivot must be a nonzero entry");
  const RingPtr& R = y[pivot].ring();
  PolyMatrix Xinv(R, n, n);
  std::size_t col = 0;
  for (std::size_t j = 0; j < n; ++j)
    if (j != pivot) Xinv.at(j, col++) = Poly::constant(R, 1);
  for (std::size_t i = 0; i < n; ++i) Xinv.at(i, n - 1) = y[i];
  Poly det = determinant(Xinv);
  return {Xinv, det};
}

LocalizedMatrix conjugate_by(const PolyMatrix& U, const BasisChange& X) {
  const RingPtr& R = U.ring();
  PolyMatrix num = adjugate(X.inverse).frobenius(1) * U * X.inverse;
  // det^p = c^p m^p = c m^p for the monic part m.
  Coeff c = X.det.lead_coeff();
  num = num.scaled(Poly::constant(R, R->inv(c)));
  return LocalizedMatrix(num, X.det.monic(), R->characteristic());
}

EntryReduction unit_entry_reduction(const Submodule& W, const Poly& a, const PolyMatrix& U) {
  check_square(U);
  if (a.is_zero()) throw MathError("unit_entry_reduction: a = 0");
  std::size_t n = U.rows();
  Poly am = a.monic();
  const FreeVector* chosen = nullptr;
  std::size_t pivot = 0;
  for (const auto* list : {&W.gb(), &W.generators()}) {
    for (const auto& w : *list) {
      for (std::size_t k = 0; k < n && !chosen; ++k)
        if (!w[k].is_zero() && w[k].monic() == am) {
          chosen = &w;
          pivot = k;
        }
      if (chosen) break;
    }
    if (chosen) break;
  }
  if (!chosen) throw MathError("no generator exposes " + a.to_string() + " as an entry");

  EntryReduction red;
  red.X = complete_with_vector(*chosen, pivot);
  LocalizedMatrix L = conjugate_by(U, red.X);
  red.U1 = L.cleared();
  red.nu = L.exponent();
  Submodule image_w = apply(adjugate(red.X.inverse), W);
  red.W1 = red.X.det.is_constant() ? image_w : saturate(image_w, red.X.det.monic());
  if (!red.W1.contains(unit_vector(U.ring(), n, n - 1)))
    throw MathError("unit_entry_reduction: e_alpha not in the reduced submodule");
  if (!is_stable(red.W1, red.U1, 1)) throw MathError("unit_entry_reduction: reduced submodule is not stable");
  return red;
}

RankOneGenerator rank_one_generator(const Ideal& P) {
  if (P.is_full()) throw MathError("rank_one_generator: P must be proper");
  const RingPtr& R = P.ring();
  Ideal Pq = frobenius_power(P, 1);
  Ideal C = fedder_colon(P, 1);
  std::vector<Poly> colon = ideal_basis(C);
  std::vector<Poly> cands = colon;
  std::sort(cands.begin(), cands.end(), [](const Poly& x, const Poly& y) { return compare_polys(x, y) < 0; });
  for (const auto& g : cands) {
    if (ideal_contains(Pq, g)) continue;
    Ideal base = make_ideal(R, {g}) + Pq;
    Poly a1 = Poly::constant(R, 1);
    bool ok = true;
    for (const auto& h : colon) {
      std::optional<Poly> c;
      for (const auto& f : ideal_basis(quotient(base, h)))
        if (!ideal_contains(P, f) && (!c || compare_polys(f, *c) < 0)) c = f;
      if (!c) {
        ok = false;
        break;
      }
      if (!c->is_constant()) a1 *= c->monic();
    }
    if (ok) return {g, a1};
  }
  throw MathError("rank-one generator not found for " + P.to_string());
}

CongruentDecomposition congruent_decomposition(const PolyMatrix& U, const Ideal& P, const Poly& g,
                                               const Poly& a1) {
  check_square(U);
  const RingPtr& R = U.ring();
  Ideal Pq = frobenius_power(P, 1);
  std::vector<FreeVector> gens{{g}};
  for (const auto& f : ideal_basis(Pq)) gens.push_back({f});
  std::size_t n = U.rows();
  std::vector<std::size_t> w(n * n, 0);
  std::vector<Poly> r(n * n, Poly(R));
  CongruentDecomposition out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Poly f = U.at(i, j);
      if (f.is_zero()) continue;
      std::size_t k = 0;
      for (;; ++k) {
        if (auto cof = lift({f}, gens)) {
          r[i * n + j] = (*cof)[0];
          break;
        }
        if (a1.is_constant() || k == kMaxLiftPower)
          throw MathError("congruent_decomposition: entry " + U.at(i, j).to_string() + " is not a multiple of g");
        f *= a1;
      }
      w[i * n + j] = k;
      out.mu = std::max(out.mu, k);
    }
  out.V = PolyMatrix(R, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.V.at(i, j) = a1.pow(out.mu - w[i * n + j]) * r[i * n + j];
  PolyMatrix diff = U.scaled(a1.pow(out.mu)) - out.V.scaled(g);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!ideal_contains(Pq, diff.at(i, j))) throw MathError("congruent_decomposition: residue outside P^[p]");
  return out;
}

FreeVector kernel_vector_mod_p(const PolyMatrix& V, const Ideal& P) {
  check_square(V);
  const RingPtr& R = V.ring();
  std::size_t n = V.rows();
  std::vector<FreeVector> gens;
  for (std::size_t j = 0; j < n; ++j) {
    FreeVector v = V.column(j);
    FreeVector e = unit_vector(R, n, j);
    v.insert(v.end(), e.begin(), e.end());
    gens.push_back(v);
  }
  for (const auto& f : ideal_basis(P))
    for (std::size_t i = 0; i < n; ++i) {
      FreeVector v = unit_vector(R, 2 * n, i);
      v[i] = f;
      gens.push_back(v);
    }
  Submodule K = eliminate_components(R, 2 * n, gens, n);
  Submodule PR = extend_ideal(P, n);
  const auto& basis = K.gb();
  for (auto it = basis.rbegin(); it != basis.rend(); ++it)
    if (!PR.contains(*it)) return *it;
  throw MathError("every kernel vector lies in P R^alpha (is det V outside P?)");
}

std::vector<PrimeRecord> last_column_zero_branch(const Ideal& P, const PolyMatrix& U1) {
  check_square(U1);
  std::size_t n = U1.rows();
  for (std::size_t i = 0; i < n; ++i)
    if (!U1.at(i, n - 1).is_zero()) throw ContextError("last_column_zero_branch: last column must vanish");
  if (n < 2) return {};
  const RingPtr& R = U1.ring();
  PolyMatrix U0 = top_left(U1);
  StableKernel sk = stable_kernel_chain(U0);
  Submodule PR0 = extend_ideal(P, n - 1);
  std::vector<PrimeRecord> out;

  if (PR0.contains(sk.kernel)) {
    unsigned e = 0;
    for (std::size_t i = 0; i < sk.chain.size() && e == 0; ++i)
      if (PR0.contains(sk.chain[i])) e = static_cast<unsigned>(i + 1);
    if (e == 0) e = static_cast<unsigned>(sk.chain.size());
    note("last column zero, K_0 in P: last row at e = " + std::to_string(e));
    PolyMatrix prod = frobenius_product(U1, e);
    Ideal Pq = frobenius_power(P, e);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const Poly& gi = prod.at(n - 1, i);
      if (gi.is_zero() || ideal_contains(Pq, gi)) continue;
      append_strict(out, tagged(ks_run({gi, e}).primes, "kz:last-row"), P);
    }
  } else {
    std::vector<PrimeRecord> above;
    append_strict(above, kz_step({P, "", true}, {U0}), P);
    std::vector<Ideal> mins;
    for (const auto& r : minimal_elements(above)) mins.push_back(r.ideal);
    Ideal tau = intersect_all(R, mins);
    std::vector<FreeVector> gens;
    for (const auto& t : ideal_basis(tau))
      for (const auto& k : sk.kernel.generators()) {
        FreeVector v = scale_vector(k, t);
        v.push_back(Poly(R));
        gens.push_back(v);
      }
    Submodule lifted(R, n, gens);
    Submodule Mp = star_closure(ie_operation(apply(U1, lifted), 1), U1, 1);
    auto a = smallest_entry_outside(Mp.gb(), n, P);
    if (!a) throw MathError("all entries of the closure generated over tau K_0 lie in P");
    note("last column zero, K_0 not in P: tau = " + tau.to_string() + ", entry a' = " + a->to_string());
    append_strict(out, annihilator_branch(P, *a, U1, "kz:tau-ann"), P);
    EntryReduction red = unit_entry_reduction(Mp, *a, U1);
    append_strict(out, sub_run(top_left(red.U1), "kz:tau-reduce"), P);
  }
  canonicalize_primes(out);
  return out;
}

std::vector<PrimeRecord> kz_step(const PrimeRecord& rec, const KZProblem& prob) {
  const PolyMatrix& U = prob.U;
  check_square(U);
  std::size_t n = U.rows();
  if (n == 1) return ks_step(rec, {U.at(0, 0), 1});
  const Ideal& P = rec.ideal;
  const RingPtr& R = U.ring();
  std::vector<PrimeRecord> cands;

  Submodule W = star_closure(extend_ideal(P, n), U, 1);
  if (auto a = smallest_entry_outside(W.gb(), n, P)) {
    note("case 1: closure " + W.to_string() + ", entry a = " + a->to_string());
    append_strict(cands, annihilator_branch(P, *a, U, "kz:entry-ann"), P);
    EntryReduction red = unit_entry_reduction(W, *a, U);
    append_strict(cands, sub_run(top_left(red.U1), "kz:entry-reduce"), P);
  } else {
    RankOneGenerator r1 = rank_one_generator(P);
    CongruentDecomposition cd = congruent_decomposition(U, P, r1.g, r1.a1);
    Poly d = determinant(cd.V);
    note("case 2: g = " + r1.g.to_string() + ", a1 = " + r1.a1.to_string() + ", mu = " + std::to_string(cd.mu) +
         ", d = " + d.to_string());
    if (!r1.a1.is_constant()) append_strict(cands, annihilator_branch(P, r1.a1, U, "kz:a1-ann"), P);
    if (ideal_contains(P, d)) {
      FreeVector y = kernel_vector_mod_p(cd.V, P);
      BasisChange X = complete_with_vector(y, pivot_outside(y, P));
      note("case 2a: kernel vector " + vector_to_string(y) + ", a2 = " + X.det.to_string());
      if (!X.det.is_constant()) append_strict(cands, annihilator_branch(P, X.det, U, "kz:a2-ann"), P);
      PolyMatrix U1 = conjugate_by(U, X).cleared();
      // The last column lies in P^[p]; it acts as zero on every submodule containing P R^alpha.
      Ideal Pq = frobenius_power(P, 1);
      for (std::size_t i = 0; i < n; ++i) {
        if (!ideal_contains(Pq, U1.at(i, n - 1))) throw MathError("kz: last column of the reduced matrix is outside P^[p]");
        U1.at(i, n - 1) = Poly(R);
      }
      append_strict(cands, last_column_zero_branch(P, U1), P);
    } else {
      note("case 2b: d outside P");
      append_strict(cands, annihilator_branch(P, d, U, "kz:det-ann"), P);
      append_strict(cands, tagged(ks_run({r1.g, 1}).primes, "kz:det-ks"), P);
    }
  }

  canonicalize_primes(cands);
  std::vector<PrimeRecord> out;
  for (auto& Q : cands)
    if (is_u_special(Q.ideal, U)) {
      Q.certified = true;
      out.push_back(std::move(Q));
    }
  return out;
}

KZResult kz_run(const KZProblem& prob) {
  const PolyMatrix& U = prob.U;
  check_square(U);
  const RingPtr& R = U.ring();
  std::size_t n = U.rows();
  KZResult res;
  res.stable_kernel = stable_kernel(U);
  if (res.stable_kernel.is_zero()) throw MathError("kz: the stable kernel is zero");
  if (n == 1) {
    KSResult ks = ks_run({U.at(0, 0), 1});
    res.primes = ks.primes;
    res.expansions = ks.expansions;
    return res;
  }

  std::map<std::string, PrimeRecord> found;
  std::map<std::string, std::size_t> depth;
  std::map<std::string, bool> done;
  found.emplace("(0)", PrimeRecord{zero_ideal(R), "seed", true});
  depth["(0)"] = 0;
  auto degenerate = [&](const Ideal& P) { return extend_ideal(P, n).contains(res.stable_kernel); };

  std::size_t round = 0;
  while (true) {
    std::vector<PrimeRecord> batch;
    for (const auto& [key, rec] : found)
      if (!done.count(key)) batch.push_back(rec);
    if (batch.empty()) break;
    sort_primes(batch);
    ++round;
    trace("# kz round " + std::to_string(round) + ": expanding " + std::to_string(batch.size()) + " prime(s)");
    std::vector<std::vector<PrimeRecord>> results(batch.size());
    std::vector<char> skipped(batch.size(), 0);
    std::vector<std::vector<std::string>> notes(batch.size());
    parallel_for(batch.size(), [&](std::size_t i) {
      if (degenerate(batch[i].ideal)) {
        skipped[i] = 1;
        return;
      }
      NoteCapture capture(notes[i]);
      results[i] = kz_step(batch[i], prob);
    });
    for (std::size_t i = 0; i < batch.size(); ++i) {
      std::string pkey = batch[i].ideal.to_string();
      done[pkey] = true;
      if (skipped[i]) {
        trace("#   " + pkey + " contains the stable kernel; not expanded");
        continue;
      }
      ++res.expansions;
      for (const auto& line : notes[i]) trace("#   " + pkey + ": " + line);
      for (auto& Q : results[i]) {
        std::string key = Q.ideal.to_string();
        if (!found.emplace(key, Q).second) continue;
        std::size_t dq = depth[pkey] + 1;
        depth[key] = dq;
        res.depth = std::max(res.depth, dq);
        if (dq > R->nvars()) throw MathError("kz: expansion chain longer than the dimension of R");
        trace("#   " + pkey + " -> " + key + " [" + Q.provenance + "]");
      }
    }
  }

  for (auto& [key, rec] : found)
    if (!degenerate(rec.ideal)) res.primes.push_back(rec);
  sort_primes(res.primes);
  return res;
}

}  // namespace sprimes
