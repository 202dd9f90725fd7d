#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nangle/errors.hpp"
#include "nangle/field.hpp"

namespace nangle {

/// Dense row-major matrix over a field F. Vectors are 1 x n matrices.
template <class F>
class Matrix {
 public:
  using value_type = typename F::value_type;

  Matrix() = default;
  Matrix(const F& f, std::size_t rows, std::size_t cols)
      : field_(f), rows_(rows), cols_(cols), data_(rows * cols, f.zero()) {}

  static Matrix identity(const F& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = f.one();
    return m;
  }

  static Matrix from_ints(const F& f, const std::vector<std::vector<std::int64_t>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows[0].size();
    Matrix m(f, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw InputError("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = f.from_int(rows[i][j]);
    }
    return m;
  }

  /// Standard basis row vector e_i of length n.
  static Matrix unit_row(const F& f, std::size_t n, std::size_t i) {
    Matrix m(f, 1, n);
    m(0, i) = f.one();
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  value_type* row_ptr(std::size_t i) { return data_.data() + i * cols_; }
  const value_type* row_ptr(std::size_t i) const { return data_.data() + i * cols_; }
  const std::vector<value_type>& data() const { return data_; }

  Matrix row(std::size_t i) const {
    Matrix r(field_, 1, cols_);
    std::copy(row_ptr(i), row_ptr(i) + cols_, r.data_.begin());
    return r;
  }
  void set_row(std::size_t i, const Matrix& v) {
    if (v.rows_ != 1 || v.cols_ != cols_) throw std::invalid_argument("set_row: shape mismatch");
    std::copy(v.data_.begin(), v.data_.end(), row_ptr(i));
  }
  Matrix select_rows(const std::vector<std::size_t>& idx) const {
    Matrix r(field_, idx.size(), cols_);
    for (std::size_t k = 0; k < idx.size(); ++k) std::copy(row_ptr(idx[k]), row_ptr(idx[k]) + cols_, r.row_ptr(k));
    return r;
  }
  Matrix select_cols(const std::vector<std::size_t>& idx) const {
    Matrix r(field_, rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < idx.size(); ++k) r(i, k) = (*this)(i, idx[k]);
    return r;
  }
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix r(field_, nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
    return r;
  }
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
    for (std::size_t i = 0; i < b.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    for (const auto& v : data_)
      if (!field_.is_zero(v)) return false;
    return true;
  }
  bool is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != (i == j ? field_.one() : field_.zero())) return false;
    return true;
  }

  bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] = field_.add(data_[k], o.data_[k]);
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] = field_.sub(data_[k], o.data_[k]);
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) {
    for (auto& v : a.data_) v = a.field_.neg(v);
    return a;
  }
  Matrix scaled(const value_type& s) const {
    Matrix r = *this;
    for (auto& v : r.data_) v = field_.mul(v, s);
    return r;
  }
  /// this += s * o
  void add_scaled(const Matrix& o, const value_type& s) {
    check_same_shape(o);
    if (field_.is_zero(s)) return;
    for (std::size_t k = 0; k < data_.size(); ++k)
      if (!field_.is_zero(o.data_[k])) data_[k] = field_.add(data_[k], field_.mul(o.data_[k], s));
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
      throw std::invalid_argument("matrix product shape mismatch: " + std::to_string(a.rows_) + "x" +
                                  std::to_string(a.cols_) + " * " + std::to_string(b.rows_) + "x" +
                                  std::to_string(b.cols_));
    const F& f = a.field_;
    Matrix r(f, a.rows_, b.cols_);
    if constexpr (std::is_same_v<F, PrimeField>) {
      const std::uint64_t p = f.characteristic();
      std::vector<std::uint64_t> acc(b.cols_);
      for (std::size_t i = 0; i < a.rows_; ++i) {
        std::fill(acc.begin(), acc.end(), 0);
        const auto* ar = a.row_ptr(i);
        for (std::size_t k = 0; k < a.cols_; ++k) {
          std::uint64_t x = ar[k];
          if (x == 0) continue;
          const auto* br = b.row_ptr(k);
          for (std::size_t j = 0; j < b.cols_; ++j) acc[j] = (acc[j] + x * br[j]) % p;
        }
        auto* rr = r.row_ptr(i);
        for (std::size_t j = 0; j < b.cols_; ++j) rr[j] = static_cast<value_type>(acc[j]);
      }
    } else {
      for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
          const auto& x = a(i, k);
          if (f.is_zero(x)) continue;
          for (std::size_t j = 0; j < b.cols_; ++j)
            if (!f.is_zero(b(k, j))) r(i, j) = f.add(r(i, j), f.mul(x, b(k, j)));
        }
    }
    return r;
  }

  static Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) throw std::invalid_argument("hstack: row mismatch");
    Matrix r(a.field_, a.rows_, a.cols_ + b.cols_);
    r.set_block(0, 0, a);
    r.set_block(0, a.cols_, b);
    return r;
  }
  static Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.cols_) throw std::invalid_argument("vstack: column mismatch");
    Matrix r(a.field_, a.rows_ + b.rows_, a.cols_);
    r.set_block(0, 0, a);
    r.set_block(a.rows_, 0, b);
    return r;
  }
  static Matrix block_diag(const Matrix& a, const Matrix& b) {
    Matrix r(a.field_, a.rows_ + b.rows_, a.cols_ + b.cols_);
    r.set_block(0, 0, a);
    r.set_block(a.rows_, a.cols_, b);
    return r;
  }
  static Matrix kron(const Matrix& a, const Matrix& b) {
    const F& f = a.field_;
    Matrix r(f, a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < a.cols_; ++j) {
        const auto& x = a(i, j);
        if (f.is_zero(x)) continue;
        for (std::size_t k = 0; k < b.rows_; ++k)
          for (std::size_t l = 0; l < b.cols_; ++l) r(i * b.rows_ + k, j * b.cols_ + l) = f.mul(x, b(k, l));
      }
    return r;
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  }

  F field_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<value_type> data_;
};

/// Reduced row echelon form restricted to its nonzero rows.
template <class F>
struct Echelon {
  Matrix<F> reduced;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

namespace detail {

/// In-place Gauss-Jordan elimination. Pivots are searched only among the first
/// `pivot_cols` columns: leftmost column first, topmost available row within it.
template <class F>
std::vector<std::size_t> gauss_jordan(Matrix<F>& m, std::size_t pivot_cols) {
  const F& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  const std::size_t nc = m.cols();
  for (std::size_t c = 0; c < pivot_cols && rank < m.rows(); ++c) {
    std::size_t r = rank;
    while (r < m.rows() && f.is_zero(m(r, c))) ++r;
    if (r == m.rows()) continue;
    if (r != rank)
      for (std::size_t j = 0; j < nc; ++j) std::swap(m(r, j), m(rank, j));
    auto* pr = m.row_ptr(rank);
    if (!f.is_one(pr[c])) {
      auto s = f.inv(pr[c]);
      for (std::size_t j = c; j < nc; ++j) pr[j] = f.mul(pr[j], s);
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == rank) continue;
      auto* ri = m.row_ptr(i);
      if (f.is_zero(ri[c])) continue;
      auto factor = ri[c];
      if constexpr (std::is_same_v<F, PrimeField>) {
        const std::uint64_t p = f.characteristic();
        const std::uint64_t nf = p - factor;
        for (std::size_t j = c; j < nc; ++j)
          if (pr[j] != 0) ri[j] = static_cast<typename F::value_type>((ri[j] + nf * pr[j]) % p);
      } else {
        for (std::size_t j = c; j < nc; ++j)
          if (!f.is_zero(pr[j])) ri[j] = f.sub(ri[j], f.mul(factor, pr[j]));
      }
    }
    pivots.push_back(c);
    ++rank;
  }
  return pivots;
}

}  // namespace detail

template <class F>
Echelon<F> rref(Matrix<F> m) {
  auto piv = detail::gauss_jordan(m, m.cols());
  std::vector<std::size_t> keep(piv.size());
  for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;
  return {m.select_rows(keep), std::move(piv)};
}

template <class F>
std::size_t rank(const Matrix<F>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Matrix<F> c = m;
  return detail::gauss_jordan(c, c.cols()).size();
}

/// Canonical basis (reduced echelon rows) of the row space.
template <class F>
Matrix<F> row_space(const Matrix<F>& m) {
  return rref(m).reduced;
}

/// Basis of the left kernel {x : xM = 0}, as canonical reduced echelon rows.
template <class F>
Matrix<F> kernel_basis(const Matrix<F>& m) {
  const F& f = m.field();
  const std::size_t n = m.rows();
  Matrix<F> t = m.transpose();
  auto piv = detail::gauss_jordan(t, t.cols());
  std::vector<bool> is_pivot(n, false);
  for (auto c : piv) is_pivot[c] = true;
  Matrix<F> basis(f, n - piv.size(), n);
  std::size_t k = 0;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    basis(k, free) = f.one();
    for (std::size_t r = 0; r < piv.size(); ++r) basis(k, piv[r]) = f.neg(t(r, free));
    ++k;
  }
  return rref(std::move(basis)).reduced;
}

/// Solves X A = B for all rows of B at once; nullopt if some row has no solution.
/// Each row of X is the back-substitution solution with free variables set to zero.
template <class F>
std::optional<Matrix<F>> solve_many(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.cols() != b.cols())
    throw InputError("solve: right-hand side has " + std::to_string(b.cols()) + " columns, expected " +
                     std::to_string(a.cols()));
  const F& f = a.field();
  Matrix<F> aug = Matrix<F>::hstack(a.transpose(), b.transpose());
  auto piv = detail::gauss_jordan(aug, a.rows());
  for (std::size_t r = piv.size(); r < aug.rows(); ++r)
    for (std::size_t j = a.rows(); j < aug.cols(); ++j)
      if (!f.is_zero(aug(r, j))) return std::nullopt;
  Matrix<F> x(f, b.rows(), a.rows());
  for (std::size_t r = 0; r < piv.size(); ++r)
    for (std::size_t i = 0; i < b.rows(); ++i) x(i, piv[r]) = aug(r, a.rows() + i);
  return x;
}

template <class F>
struct LinearSolution {
  Matrix<F> particular;
  Matrix<F> kernel;
};

/// Solves x A = b for a row vector b; returns one solution and the kernel basis of A.
template <class F>
std::optional<LinearSolution<F>> solve_linear(const Matrix<F>& a, const Matrix<F>& b) {
  if (b.rows() != 1) throw InputError("solve_linear: b must be a single row");
  auto x = solve_many(a, b);
  if (!x) return std::nullopt;
  return LinearSolution<F>{std::move(*x), kernel_basis(a)};
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  if (rank(a) != a.rows()) return std::nullopt;
  return solve_many(a, Matrix<F>::identity(a.field(), a.rows()));
}

/// Coordinates of the rows of v with respect to an echelon basis (rows of `basis`
/// with the given pivot columns). Assumes the rows of v lie in the row space.
template <class F>
Matrix<F> echelon_coordinates(const Echelon<F>& basis, const Matrix<F>& v) {
  return v.select_cols(basis.pivots);
}

/// Reduces each row of v modulo the row space of an echelon basis.
template <class F>
Matrix<F> reduce_modulo(const Echelon<F>& basis, Matrix<F> v) {
  const F& f = v.field();
  for (std::size_t i = 0; i < v.rows(); ++i)
    for (std::size_t r = 0; r < basis.pivots.size(); ++r) {
      auto c = v(i, basis.pivots[r]);
      if (f.is_zero(c)) continue;
      for (std::size_t j = 0; j < v.cols(); ++j)
        if (!f.is_zero(basis.reduced(r, j))) v(i, j) = f.sub(v(i, j), f.mul(c, basis.reduced(r, j)));
    }
  return v;
}

template <class F>
bool in_row_space(const Echelon<F>& basis, const Matrix<F>& v) {
  return reduce_modulo(basis, v).is_zero();
}

/// Growing echelon basis used for greedy selection of independent vectors.
template <class F>
class IncrementalBasis {
 public:
  IncrementalBasis(const F& f, std::size_t dim) : field_(f), dim_(dim) {}

  /// Adds v (1 x dim) if independent of the current span; returns whether it was added.
  bool insert(const Matrix<F>& v) {
    Matrix<F> w = v;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      auto c = w(0, pivots_[r]);
      if (field_.is_zero(c)) continue;
      w.add_scaled(rows_[r], field_.neg(c));
    }
    std::size_t p = 0;
    while (p < dim_ && field_.is_zero(w(0, p))) ++p;
    if (p == dim_) return false;
    w = w.scaled(field_.inv(w(0, p)));
    for (auto& row : rows_) {
      auto c = row(0, p);
      if (!field_.is_zero(c)) row.add_scaled(w, field_.neg(c));
    }
    rows_.push_back(std::move(w));
    pivots_.push_back(p);
    return true;
  }
  bool contains(const Matrix<F>& v) const {
    Matrix<F> w = v;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      auto c = w(0, pivots_[r]);
      if (!field_.is_zero(c)) w.add_scaled(rows_[r], field_.neg(c));
    }
    return w.is_zero();
  }
  std::size_t size() const { return rows_.size(); }

 private:
  F field_;
  std::size_t dim_;
  std::vector<Matrix<F>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace nangle
