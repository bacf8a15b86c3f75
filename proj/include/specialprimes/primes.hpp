#pragma once

#include <string>
#include <vector>

#include "specialprimes/groebner.hpp"

namespace sprimes {

// A prime ideal together with the branch that produced it.
struct PrimeRecord {
  Ideal ideal;
  std::string provenance;
  bool certified = false;
};

// Canonical order for prime lists: number of reduced basis elements, then the
// printed generators compared lexicographically.
bool prime_less(const Ideal& a, const Ideal& b);
void sort_primes(std::vector<PrimeRecord>& primes);
// Sorts and removes duplicates (equal ideals keep the first provenance).
void canonicalize_primes(std::vector<PrimeRecord>& primes);
// Keeps the elements that contain no other element of the list.
std::vector<PrimeRecord> minimal_elements(std::vector<PrimeRecord> primes);

// Minimal primes over I, certified and canonically sorted. The unit ideal is
// a MathError; exhausting the Groebner budget (limits().max_gb) is a
// ResourceError.
std::vector<PrimeRecord> minimal_primes(const Ideal& I, const std::string& provenance = "minprimes");

// Minimal primes of I, or nothing when I is the unit ideal.
std::vector<PrimeRecord> minimal_primes_or_empty(const Ideal& I, const std::string& provenance);

bool is_prime(const Ideal& I);

// P plus the c x c minors of the Jacobian of the reduced basis of P, where c
// is the height of P. Regular quotients (P = 0 or P maximal) give the unit
// ideal.
Ideal singular_locus_ideal(const Ideal& P);

// Intersection of the given ideals (the unit ideal for an empty list).
Ideal intersect_all(const RingPtr& ring, const std::vector<Ideal>& ideals);

}  // namespace sprimes
