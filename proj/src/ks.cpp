#include "specialprimes/ks.hpp"

#include <map>
#include <string>

#include "specialprimes/config.hpp"
#include "specialprimes/error.hpp"

namespace sprimes {

namespace {

void check_problem(const KSProblem& prob) {
  if (!prob.u.ring()) throw ContextError("ks: u has no ring");
  if (prob.u.is_zero()) throw MathError("ks: u = 0 makes every prime compatible");
  if (prob.e == 0) throw MathError("ks: e must be positive");
}

void add_branch(std::vector<PrimeRecord>& out, const Ideal& P, const Ideal& closure, const std::string& tag,
                const Localization& loc) {
  if (closure.is_full()) return;
  for (auto& Q : minimal_primes(closure, tag))
    if (Q.ideal.contains(P) && Q.ideal != P && !loc.kills(Q.ideal)) out.push_back(std::move(Q));
}

}  // namespace

bool is_compatible(const Ideal& P, const Poly& u, unsigned e) {
  if (u.is_zero()) return true;
  Submodule Pq = frobenius_power(P, e);
  for (const auto& g : ideal_basis(P))
    if (!ideal_contains(Pq, u * g)) return false;
  return true;
}

std::vector<PrimeRecord> ks_step(const PrimeRecord& rec, const KSProblem& prob, const Localization& loc) {
  check_problem(prob);
  const Ideal& P = rec.ideal;
  const RingPtr& R = prob.u.ring();
  std::vector<PrimeRecord> out;

  Ideal J = singular_locus_ideal(P);
  if (J.is_full()) {
    note("singular locus empty");
  } else {
    Ideal S = star_closure(loc(J), prob.u, prob.e, loc);
    note("singular locus " + J.to_string() + ", closure " + S.to_string());
    add_branch(out, P, S, "ks:singular", loc);
  }

  Ideal Pq = frobenius_power(P, prob.e);
  Ideal B = quotient(make_ideal(R, {prob.u}) + Pq, fedder_colon(P, prob.e));
  if (B.is_full()) {
    note("colon ideal B = (1)");
  } else {
    Ideal S = star_closure(loc(B), prob.u, prob.e, loc);
    note("colon ideal B = " + B.to_string() + ", closure " + S.to_string());
    add_branch(out, P, S, "ks:colon", loc);
  }

  canonicalize_primes(out);
  return out;
}

KSResult ks_run(const KSProblem& prob, const Localization& loc) {
  check_problem(prob);
  const RingPtr& R = prob.u.ring();
  KSResult res;
  res.excluded_locus = ie_operation(make_ideal(R, {prob.u}), prob.e);

  std::map<std::string, PrimeRecord> found;
  std::map<std::string, bool> done;
  PrimeRecord seed{zero_ideal(R), "seed", true};
  found.emplace(seed.ideal.to_string(), seed);

  std::size_t round = 0;
  while (true) {
    std::vector<PrimeRecord> batch;
    for (const auto& [key, rec] : found)
      if (!done.count(key)) batch.push_back(rec);
    if (batch.empty()) break;
    sort_primes(batch);
    ++round;
    trace("# ks round " + std::to_string(round) + ": expanding " + std::to_string(batch.size()) + " prime(s)");
    std::vector<std::vector<PrimeRecord>> results(batch.size());
    std::vector<std::vector<std::string>> notes(batch.size());
    parallel_for(batch.size(), [&](std::size_t i) {
      NoteCapture capture(notes[i]);
      results[i] = ks_step(batch[i], prob, loc);
    });
    for (std::size_t i = 0; i < batch.size(); ++i) {
      done[batch[i].ideal.to_string()] = true;
      ++res.expansions;
      for (const auto& line : notes[i]) trace("#   " + batch[i].ideal.to_string() + ": " + line);
      for (auto& Q : results[i]) {
        std::string key = Q.ideal.to_string();
        if (found.emplace(key, Q).second) trace("#   " + batch[i].ideal.to_string() + " -> " + key + " [" + Q.provenance + "]");
      }
    }
  }

  for (auto& [key, rec] : found) {
    if (rec.ideal.contains(res.excluded_locus)) continue;
    if (loc.kills(rec.ideal)) continue;
    res.primes.push_back(rec);
  }
  sort_primes(res.primes);
  return res;
}

}  // namespace sprimes
