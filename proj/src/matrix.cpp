#include "specialprimes/matrix.hpp"

#include <algorithm>
#include <numeric>

namespace sprimes {

PolyMatrix::PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, Poly(ring_)) {}

PolyMatrix PolyMatrix::identity(RingPtr ring, std::size_t n) {
  PolyMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Poly::constant(ring, 1);
  return m;
}

PolyMatrix PolyMatrix::from_rows(RingPtr ring, const std::vector<std::vector<Poly>>& rows) {
  std::size_t nc = rows.empty() ? 0 : rows[0].size();
  PolyMatrix m(ring, rows.size(), nc);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != nc) throw ContextError("ragged matrix rows");
    for (std::size_t j = 0; j < nc; ++j) {
      const Poly& f = rows[i][j];
      if (f.ring()) check_same_ring(*f.ring(), *ring);
      m.at(i, j) = f.ring() ? f : Poly(ring);
    }
  }
  return m;
}

PolyMatrix PolyMatrix::from_columns(RingPtr ring, std::size_t rows, const std::vector<FreeVector>& cols) {
  PolyMatrix m(ring, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw ContextError("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i)
      if (cols[j][i].ring()) m.at(i, j) = cols[j][i];
  }
  return m;
}

PolyMatrix PolyMatrix::diagonal(RingPtr ring, const std::vector<Poly>& entries) {
  PolyMatrix m(ring, entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m.at(i, i) = entries[i];
  return m;
}

FreeVector PolyMatrix::column(std::size_t j) const {
  FreeVector v;
  for (std::size_t i = 0; i < rows_; ++i) v.push_back(at(i, j));
  return v;
}

FreeVector PolyMatrix::row(std::size_t i) const {
  FreeVector v;
  for (std::size_t j = 0; j < cols_; ++j) v.push_back(at(i, j));
  return v;
}

std::vector<FreeVector> PolyMatrix::columns() const {
  std::vector<FreeVector> out;
  for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
  return out;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
  if (cols_ != o.rows_) throw ContextError("matrix dimension mismatch in product");
  check_same_ring(*ring_, *o.ring_);
  PolyMatrix r(ring_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Poly& a = at(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        if (!o.at(k, j).is_zero()) r.at(i, j) += a * o.at(k, j);
    }
  return r;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ContextError("matrix dimension mismatch in sum");
  PolyMatrix r = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] += o.data_[k];
  return r;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ContextError("matrix dimension mismatch in difference");
  PolyMatrix r = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] -= o.data_[k];
  return r;
}

FreeVector PolyMatrix::operator*(const FreeVector& v) const {
  if (v.size() != cols_) throw ContextError("matrix-vector dimension mismatch");
  FreeVector r = zero_vector(ring_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero() && v[j].ring() && !v[j].is_zero()) r[i] += at(i, j) * v[j];
  return r;
}

PolyMatrix PolyMatrix::scaled(const Poly& f) const {
  PolyMatrix r = *this;
  for (auto& x : r.data_) x = x * f;
  return r;
}

PolyMatrix PolyMatrix::frobenius(unsigned e) const {
  PolyMatrix r = *this;
  for (auto& x : r.data_) x = x.frobenius(e);
  return r;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix r(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

PolyMatrix PolyMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw ContextError("block out of range");
  PolyMatrix r(ring_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) r.at(i, j) = at(r0 + i, c0 + j);
  return r;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Poly& f) { return f.is_zero(); });
}

bool PolyMatrix::operator==(const PolyMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

std::string PolyMatrix::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) s += ", ";
    s += "[";
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) s += ", ";
      s += at(i, j).to_string();
    }
    s += "]";
  }
  return s + "]";
}

Submodule image(const PolyMatrix& M) { return Submodule(M.ring(), M.rows(), M.columns()); }

Submodule apply(const PolyMatrix& U, const Submodule& K) {
  if (U.cols() != K.rank()) throw ContextError("matrix does not act on this submodule");
  std::vector<FreeVector> g;
  for (const auto& v : K.generators()) g.push_back(U * v);
  return Submodule(K.ring(), U.rows(), std::move(g));
}

namespace {

Poly det_expand(const PolyMatrix& M) {
  std::size_t n = M.rows();
  if (n == 0) return Poly::constant(M.ring(), 1);
  if (n == 1) return M.at(0, 0);
  if (n == 2) return M.at(0, 0) * M.at(1, 1) - M.at(0, 1) * M.at(1, 0);
  Poly d(M.ring());
  for (std::size_t j = 0; j < n; ++j) {
    if (M.at(0, j).is_zero()) continue;
    PolyMatrix minor(M.ring(), n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, c = 0; k < n; ++k)
        if (k != j) minor.at(i - 1, c++) = M.at(i, k);
    Poly term = M.at(0, j) * det_expand(minor);
    d = (j % 2 == 0) ? d + term : d - term;
  }
  return d;
}

Poly det_bareiss(PolyMatrix M) {
  std::size_t n = M.rows();
  bool negate = false;
  Poly prev = Poly::constant(M.ring(), 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M.at(k, k).is_zero()) {
      std::size_t r = k + 1;
      while (r < n && M.at(r, k).is_zero()) ++r;
      if (r == n) return Poly(M.ring());
      for (std::size_t j = 0; j < n; ++j) std::swap(M.at(k, j), M.at(r, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly num = M.at(i, j) * M.at(k, k) - M.at(i, k) * M.at(k, j);
        auto q = num.divide_exact(prev);
        if (!q) throw MathError("Bareiss elimination produced an inexact division");
        M.at(i, j) = *q;
      }
    prev = M.at(k, k);
  }
  Poly d = M.at(n - 1, n - 1);
  return negate ? -d : d;
}

}  // namespace

Poly determinant(const PolyMatrix& M) {
  if (!M.is_square()) throw ContextError("determinant of a non-square matrix");
  if (M.rows() <= 3) return det_expand(M);
  return det_bareiss(M);
}

std::vector<Poly> minors(const PolyMatrix& M, std::size_t c) {
  std::vector<Poly> out;
  if (c == 0 || c > M.rows() || c > M.cols()) return out;
  std::vector<std::size_t> rows(c), cols(c);
  auto first = [](std::vector<std::size_t>& v) { std::iota(v.begin(), v.end(), std::size_t{0}); };
  auto next = [](std::vector<std::size_t>& v, std::size_t n) {
    std::size_t k = v.size();
    for (std::size_t i = k; i-- > 0;) {
      if (v[i] < n - k + i) {
        ++v[i];
        for (std::size_t j = i + 1; j < k; ++j) v[j] = v[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  first(rows);
  do {
    first(cols);
    do {
      PolyMatrix sub(M.ring(), c, c);
      for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j) sub.at(i, j) = M.at(rows[i], cols[j]);
      out.push_back(determinant(sub));
    } while (next(cols, M.cols()));
  } while (next(rows, M.rows()));
  return out;
}

PolyMatrix adjugate(const PolyMatrix& M) {
  if (!M.is_square()) throw ContextError("adjugate of a non-square matrix");
  std::size_t n = M.rows();
  PolyMatrix adj(M.ring(), n, n);
  if (n == 1) {
    adj.at(0, 0) = Poly::constant(M.ring(), 1);
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      PolyMatrix sub(M.ring(), n - 1, n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          sub.at(rr, cc++) = M.at(r, c);
        }
        ++rr;
      }
      Poly d = determinant(sub);
      adj.at(j, i) = ((i + j) % 2 == 0) ? d : -d;
    }
  return adj;
}

LocalizedMatrix::LocalizedMatrix(PolyMatrix numerator, Poly base, std::size_t exponent)
    : num_(std::move(numerator)), base_(std::move(base)), exp_(exponent) {
  if (base_.is_zero()) throw MathError("cannot localize at zero");
  normalize();
}

void LocalizedMatrix::normalize() {
  if (base_.is_constant()) {
    // A unit denominator is absorbed into the numerator.
    const RingPtr& R = num_.ring();
    if (exp_ > 0) num_ = num_.scaled(Poly::term(R, Monomial{}, R->inv(R->pow(base_.lead_coeff(), exp_))));
    exp_ = 0;
    return;
  }
  while (exp_ > 0) {
    PolyMatrix next = num_;
    bool ok = true;
    for (std::size_t i = 0; i < num_.rows() && ok; ++i)
      for (std::size_t j = 0; j < num_.cols() && ok; ++j) {
        auto q = num_.at(i, j).divide_exact(base_);
        if (q) {
          next.at(i, j) = *q;
        } else {
          ok = false;
        }
      }
    if (!ok) break;
    num_ = std::move(next);
    --exp_;
  }
}

LocalizedMatrix LocalizedMatrix::operator*(const LocalizedMatrix& o) const {
  if (base_ != o.base_) throw ContextError("localized matrices over different localizations");
  return LocalizedMatrix(num_ * o.num_, base_, exp_ + o.exp_);
}

LocalizedMatrix LocalizedMatrix::frobenius(unsigned e) const {
  std::uint64_t q = num_.ring()->frobenius_q(e);
  return LocalizedMatrix(num_.frobenius(e), base_, exp_ * q);
}

}  // namespace sprimes
