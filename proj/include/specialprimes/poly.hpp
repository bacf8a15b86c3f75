#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "specialprimes/ring.hpp"

namespace sprimes {

struct Term {
  Monomial mon;
  Coeff coeff;
};

// Sparse polynomial in canonical form: terms strictly descending in the ring
// order, no zero coefficients. Zero is the empty term list.
class Poly {
 public:
  Poly() = default;
  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

  static Poly constant(RingPtr ring, std::int64_t c);
  static Poly variable(RingPtr ring, std::size_t index);
  static Poly term(RingPtr ring, const Monomial& m, Coeff c);
  // Sorts, merges duplicates and drops zeros.
  static Poly from_terms(RingPtr ring, std::vector<Term> terms);
  // Caller guarantees canonical order.
  static Poly from_sorted_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mon.is_one()); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].mon.is_one() && terms_[0].coeff == 1; }
  bool is_monomial() const { return terms_.size() == 1; }

  const Monomial& lead_monomial() const { return terms_.front().mon; }
  Coeff lead_coeff() const { return terms_.front().coeff; }
  std::uint32_t total_degree() const;
  Exponent degree_in(std::size_t var) const;
  // Variables that occur with positive exponent.
  std::vector<std::size_t> support() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scaled(Coeff c) const;
  Poly times_term(const Monomial& m, Coeff c) const;
  Poly pow(std::uint64_t k) const;
  Poly monic() const;
  // f^(p^e), computed by scaling exponents; coefficients are fixed by Frobenius on F_p.
  Poly frobenius(unsigned e) const;

  // Partial derivative with respect to variable var.
  Poly derivative(std::size_t var) const;

  // Exact quotient if g divides *this, otherwise nullopt.
  std::optional<Poly> divide_exact(const Poly& g) const;

  // Same polynomial expressed in another ring; var_map[i] is the target index
  // of source variable i.
  Poly mapped(RingPtr target, const std::vector<std::size_t>& var_map) const;

  // Canonical text: descending terms, no whitespace, e.g. "x^3*y+2*z".
  std::string to_string() const;

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

 private:
  RingPtr ring_;
  std::vector<Term> terms_;
};

// Grammar: poly := ['-'] term (('+'|'-') term)*, term := factor ('*' factor)*,
// factor := integer | name ['^' integer] | '(' poly ')' ['^' integer].
// Whitespace is ignored. Parenthesized subexpressions are accepted as an
// extension of the printed syntax.
Poly parse_poly(const RingPtr& ring, std::string_view text);

// Ordering used for canonical tie-breaking: total degree, then the ring order
// of the leading monomial, then the remaining terms.
int compare_polys(const Poly& a, const Poly& b);

}  // namespace sprimes
