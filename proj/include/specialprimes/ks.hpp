#pragma once

#include <vector>

#include "specialprimes/frobenius.hpp"
#include "specialprimes/primes.hpp"

namespace sprimes {

// The map F_*^e R -> R given by premultiplication with u followed by the trace.
struct KSProblem {
  Poly u;
  unsigned e = 1;
};

struct KSResult {
  std::vector<PrimeRecord> primes;  // canonical order
  Ideal excluded_locus;             // I_e(uR)
  std::size_t expansions = 0;       // worklist items processed
};

// u P contained in P^{[p^e]}.
bool is_compatible(const Ideal& P, const Poly& u, unsigned e);

// Compatible primes produced from P by the singular-locus and colon branches,
// each strictly containing P.
std::vector<PrimeRecord> ks_step(const PrimeRecord& P, const KSProblem& prob, const Localization& loc = {});

// All compatible primes not containing I_e(uR). With a localization, primes
// containing the inverted element are dropped and every closure is computed
// after saturation.
KSResult ks_run(const KSProblem& prob, const Localization& loc = {});

}  // namespace sprimes
