#pragma once

#include <string>
#include <vector>

#include "specialprimes/groebner.hpp"

namespace sprimes {

// Dense rows x cols matrix over R.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols);

  static PolyMatrix identity(RingPtr ring, std::size_t n);
  static PolyMatrix from_rows(RingPtr ring, const std::vector<std::vector<Poly>>& rows);
  static PolyMatrix from_columns(RingPtr ring, std::size_t rows, const std::vector<FreeVector>& cols);
  static PolyMatrix diagonal(RingPtr ring, const std::vector<Poly>& entries);

  const RingPtr& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  const Poly& at(std::size_t i, std::size_t j) const { return data_.at(i * cols_ + j); }
  Poly& at(std::size_t i, std::size_t j) { return data_.at(i * cols_ + j); }

  FreeVector column(std::size_t j) const;
  FreeVector row(std::size_t i) const;
  std::vector<FreeVector> columns() const;

  PolyMatrix operator*(const PolyMatrix& o) const;
  PolyMatrix operator+(const PolyMatrix& o) const;
  PolyMatrix operator-(const PolyMatrix& o) const;
  FreeVector operator*(const FreeVector& v) const;
  PolyMatrix scaled(const Poly& f) const;
  // Entrywise p^e-th powers.
  PolyMatrix frobenius(unsigned e) const;
  PolyMatrix transpose() const;
  PolyMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  bool is_zero() const;

  bool operator==(const PolyMatrix& o) const;
  bool operator!=(const PolyMatrix& o) const { return !(*this == o); }

  // "[[a, b], [c, d]]"
  std::string to_string() const;

 private:
  RingPtr ring_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Poly> data_;
};

// Column span of M as a submodule of R^rows.
Submodule image(const PolyMatrix& M);
// U * K: the submodule generated by U g for the generators g of K.
Submodule apply(const PolyMatrix& U, const Submodule& K);

Poly determinant(const PolyMatrix& M);
// All c x c minors, rows and columns taken in lexicographic order.
std::vector<Poly> minors(const PolyMatrix& M, std::size_t c);
PolyMatrix adjugate(const PolyMatrix& M);

// numerator / base^exponent over the localization R_base. Kept normalized:
// while the exponent is positive, not every entry is divisible by base.
class LocalizedMatrix {
 public:
  LocalizedMatrix(PolyMatrix numerator, Poly base, std::size_t exponent = 0);

  const PolyMatrix& numerator() const { return num_; }
  const Poly& base() const { return base_; }
  std::size_t exponent() const { return exp_; }

  LocalizedMatrix operator*(const LocalizedMatrix& o) const;
  LocalizedMatrix frobenius(unsigned e) const;

  // base^exponent times the matrix: the entries clear all denominators with
  // the smallest possible power.
  const PolyMatrix& cleared() const { return num_; }

 private:
  void normalize();

  PolyMatrix num_;
  Poly base_;
  std::size_t exp_;
};

}  // namespace sprimes
