#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "specialprimes/error.hpp"

namespace sprimes {

inline constexpr std::size_t kMaxVars = 12;
inline constexpr std::uint32_t kMaxExponent = 1u << 28;

using Exponent = std::uint32_t;
using Coeff = std::uint32_t;

// Exponent vector. Unused slots beyond the ring's variable count stay zero, so
// equality and hashing never need the ring.
class Monomial {
 public:
  Monomial() = default;

  static Monomial from_exponents(const std::vector<Exponent>& exps);
  static Monomial variable(std::size_t index, Exponent power = 1);

  Exponent operator[](std::size_t i) const { return exp_[i]; }
  void set(std::size_t i, Exponent value);
  std::uint32_t degree() const { return deg_; }
  bool is_one() const { return deg_ == 0; }

  // Overflow-checked product.
  Monomial operator*(const Monomial& o) const;
  // Requires divides(o, *this).
  Monomial operator/(const Monomial& o) const;
  // Every exponent multiplied by q (the exponent map of f -> f^q).
  Monomial scaled(std::uint64_t q) const;

  bool divides(const Monomial& o) const;
  bool coprime(const Monomial& o) const;
  Monomial lcm(const Monomial& o) const;
  Monomial gcd(const Monomial& o) const;

  bool operator==(const Monomial& o) const { return deg_ == o.deg_ && exp_ == o.exp_; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }

  std::size_t hash() const;

 private:
  std::array<Exponent, kMaxVars> exp_{};
  std::uint32_t deg_ = 0;
};

// Block order: variables are split into consecutive blocks, blocks are compared
// left to right, and inside a block monomials are compared by degree, then
// reverse lexicographically. lex is all blocks of size one; grevlex is a single
// block; elimination(k) is blocks {k, n-k}.
class MonomialOrder {
 public:
  enum class Kind { Lex, Grevlex, Block };

  MonomialOrder() = default;
  static MonomialOrder lex(std::size_t n);
  static MonomialOrder grevlex(std::size_t n);
  static MonomialOrder blocks(std::vector<std::size_t> sizes);
  static MonomialOrder elimination(std::size_t k, std::size_t n);

  Kind kind() const { return kind_; }
  const std::vector<std::size_t>& block_sizes() const { return blocks_; }
  std::string name() const;

  // -1, 0, 1 for a < b, a == b, a > b.
  int compare(const Monomial& a, const Monomial& b) const;

  bool operator==(const MonomialOrder& o) const { return kind_ == o.kind_ && blocks_ == o.blocks_; }

 private:
  Kind kind_ = Kind::Grevlex;
  std::vector<std::size_t> blocks_;
};

bool is_prime_number(std::uint64_t p);

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

// F_p[x_1..x_n] with a fixed monomial order. Immutable after construction.
class Ring {
 public:
  static RingPtr make(std::uint32_t p, std::vector<std::string> names,
                      const std::string& order = "grevlex");
  static RingPtr make(std::uint32_t p, std::vector<std::string> names, MonomialOrder order);

  std::uint32_t characteristic() const { return p_; }
  std::size_t nvars() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const MonomialOrder& order() const { return order_; }
  // Index of a variable name, or -1.
  int index_of(const std::string& name) const;

  // Structural identity; objects over equal rings may be mixed.
  bool same_as(const Ring& o) const;

  Coeff reduce(std::int64_t v) const;
  Coeff add(Coeff a, Coeff b) const { return static_cast<Coeff>((std::uint64_t{a} + b) % p_); }
  Coeff sub(Coeff a, Coeff b) const { return static_cast<Coeff>((std::uint64_t{a} + p_ - b) % p_); }
  Coeff neg(Coeff a) const { return a == 0 ? 0 : p_ - a; }
  Coeff mul(Coeff a, Coeff b) const { return static_cast<Coeff>((std::uint64_t{a} * b) % p_); }
  Coeff pow(Coeff a, std::uint64_t k) const;
  // Throws DivisionByZero on 0.
  Coeff inv(Coeff a) const;

  // p^e, overflow-checked against the exponent bound.
  std::uint64_t frobenius_q(unsigned e) const;

  std::string ring_line() const;

 private:
  Ring(std::uint32_t p, std::vector<std::string> names, MonomialOrder order);

  std::uint32_t p_;
  std::vector<std::string> names_;
  MonomialOrder order_;
};

void check_same_ring(const Ring& a, const Ring& b);

}  // namespace sprimes
