#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "nangle/errors.hpp"
#include "nangle/matrix.hpp"

namespace nangle {

template <class F>
using SparseVector = std::vector<std::pair<std::size_t, typename F::value_type>>;

/// Structure data of a finite-dimensional basic algebra with a homogeneous basis:
/// every basis element b satisfies e_{left(b)} b = b = b e_{right(b)}.
template <class F>
struct AlgebraData {
  F field;
  std::size_t dim = 0;
  std::vector<std::vector<SparseVector<F>>> mult;  // mult[i][j] = b_i * b_j
  std::vector<std::size_t> idempotents;            // basis index of e_v per vertex v
  std::vector<std::size_t> radical_generators;     // basis indices generating J (arrows)
  std::vector<std::size_t> left_vertex, right_vertex;
  std::vector<std::string> labels;
};

template <class F>
class Algebra;

template <class F>
using AlgebraPtr = std::shared_ptr<const Algebra<F>>;

namespace detail {
template <class F>
struct AlgebraPair;
}

template <class F>
class Algebra {
 public:
  using value_type = typename F::value_type;

  const F& field() const { return data_.field; }
  std::size_t dim() const { return data_.dim; }
  std::size_t vertex_count() const { return data_.idempotents.size(); }
  const SparseVector<F>& product(std::size_t i, std::size_t j) const { return data_.mult[i][j]; }
  std::size_t idempotent(std::size_t v) const { return data_.idempotents[v]; }
  const std::vector<std::size_t>& idempotents() const { return data_.idempotents; }
  const std::vector<std::size_t>& radical_generators() const { return data_.radical_generators; }
  std::size_t left_vertex(std::size_t b) const { return data_.left_vertex[b]; }
  std::size_t right_vertex(std::size_t b) const { return data_.right_vertex[b]; }
  const std::string& label(std::size_t b) const { return data_.labels[b]; }
  const std::vector<std::string>& labels() const { return data_.labels; }
  const AlgebraData<F>& data() const { return data_; }

  /// Non-null when this is an enveloping algebra A^op ⊗ A; basis pair (u, v) has index u * dim(A) + v.
  const AlgebraPtr<F>& base() const { return base_; }
  bool is_enveloping() const { return base_ != nullptr; }

  Matrix<F> basis_vector(std::size_t i) const { return Matrix<F>::unit_row(field(), dim(), i); }
  Matrix<F> unit() const {
    Matrix<F> u(field(), 1, dim());
    for (auto e : data_.idempotents) u(0, e) = field().one();
    return u;
  }

  /// Product of two elements given as coordinate rows.
  Matrix<F> multiply(const Matrix<F>& a, const Matrix<F>& b) const {
    const F& f = field();
    Matrix<F> r(f, 1, dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      if (f.is_zero(a(0, i))) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (f.is_zero(b(0, j))) continue;
        auto c = f.mul(a(0, i), b(0, j));
        for (const auto& [k, v] : data_.mult[i][j]) r(0, k) = f.add(r(0, k), f.mul(c, v));
      }
    }
    return r;
  }

  /// Matrix of x -> c * x (row i = c * b_i).
  Matrix<F> left_multiplication(const Matrix<F>& c) const {
    const F& f = field();
    Matrix<F> m(f, dim(), dim());
    for (std::size_t k = 0; k < dim(); ++k) {
      if (f.is_zero(c(0, k))) continue;
      for (std::size_t i = 0; i < dim(); ++i)
        for (const auto& [t, v] : data_.mult[k][i]) m(i, t) = f.add(m(i, t), f.mul(c(0, k), v));
    }
    return m;
  }
  /// Matrix of x -> x * c (row i = b_i * c).
  Matrix<F> right_multiplication(const Matrix<F>& c) const {
    const F& f = field();
    Matrix<F> m(f, dim(), dim());
    for (std::size_t k = 0; k < dim(); ++k) {
      if (f.is_zero(c(0, k))) continue;
      for (std::size_t i = 0; i < dim(); ++i)
        for (const auto& [t, v] : data_.mult[i][k]) m(i, t) = f.add(m(i, t), f.mul(c(0, k), v));
    }
    return m;
  }

  /// Checks associativity on all basis triples, the idempotent relations and 1 = Σ e_v.
  void validate() const {
    const F& f = field();
    const std::size_t d = dim();
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        if (data_.mult[i][j].empty()) continue;
        for (std::size_t k = 0; k < d; ++k) {
          std::vector<value_type> lhs(d, f.zero()), rhs(d, f.zero());
          for (const auto& [t, v] : data_.mult[i][j])
            for (const auto& [s, w] : data_.mult[t][k]) lhs[s] = f.add(lhs[s], f.mul(v, w));
          for (const auto& [t, v] : data_.mult[j][k])
            for (const auto& [s, w] : data_.mult[i][t]) rhs[s] = f.add(rhs[s], f.mul(v, w));
          if (lhs != rhs)
            throw MathError("multiplication is not associative on (" + label(i) + ", " + label(j) + ", " +
                            label(k) + ")");
        }
      }
    Matrix<F> one = unit();
    for (std::size_t i = 0; i < d; ++i) {
      auto b = basis_vector(i);
      if (multiply(one, b) != b || multiply(b, one) != b) throw MathError("sum of idempotents is not a unit");
    }
    for (std::size_t v = 0; v < vertex_count(); ++v)
      for (std::size_t w = 0; w < vertex_count(); ++w) {
        auto p = multiply(basis_vector(idempotent(v)), basis_vector(idempotent(w)));
        auto expect = v == w ? basis_vector(idempotent(v)) : Matrix<F>(f, 1, d);
        if (p != expect) throw MathError("trivial paths are not orthogonal idempotents");
      }
  }

 private:
  friend struct detail::AlgebraPair<F>;
  template <class G>
  friend AlgebraPtr<G> opposite(const AlgebraPtr<G>&);

  Algebra() = default;

  AlgebraData<F> data_;
  const Algebra* opposite_ = nullptr;
  AlgebraPtr<F> base_;
};

namespace detail {

/// An algebra and its opposite share one allocation so each can reach the other.
template <class F>
struct AlgebraPair {
  Algebra<F> primary, op;

  AlgebraPair(AlgebraData<F> data, AlgebraPtr<F> base, AlgebraPtr<F> op_base) {
    AlgebraData<F> od = data;
    for (std::size_t i = 0; i < data.dim; ++i)
      for (std::size_t j = 0; j < data.dim; ++j) od.mult[i][j] = data.mult[j][i];
    std::swap(od.left_vertex, od.right_vertex);
    primary.data_ = std::move(data);
    op.data_ = std::move(od);
    primary.opposite_ = &op;
    op.opposite_ = &primary;
    primary.base_ = std::move(base);
    op.base_ = std::move(op_base);
  }
};

}  // namespace detail

template <class F>
AlgebraPtr<F> make_algebra(AlgebraData<F> data, AlgebraPtr<F> base = nullptr) {
  if (data.mult.size() != data.dim) throw InputError("structure constant table has wrong size");
  auto pair = std::make_shared<detail::AlgebraPair<F>>(std::move(data), base, nullptr);
  return AlgebraPtr<F>(pair, &pair->primary);
}

/// The opposite algebra, sharing ownership with the given one.
template <class F>
AlgebraPtr<F> opposite(const AlgebraPtr<F>& a) {
  return AlgebraPtr<F>(a, a->opposite_);
}

/// Enveloping algebra A^e = A^op ⊗ A with (u⊗v)(u'⊗v') = (u'u)⊗(vv').
/// Vertex (s, t) has index s * V + t and idempotent e_s ⊗ e_t.
template <class F>
AlgebraPtr<F> enveloping(const AlgebraPtr<F>& a) {
  const F& f = a->field();
  const std::size_t d = a->dim(), nv = a->vertex_count();
  AlgebraData<F> e;
  e.field = f;
  e.dim = d * d;
  e.mult.assign(e.dim, std::vector<SparseVector<F>>(e.dim));
  for (std::size_t u = 0; u < d; ++u)
    for (std::size_t v = 0; v < d; ++v)
      for (std::size_t u2 = 0; u2 < d; ++u2) {
        const auto& left = a->product(u2, u);
        if (left.empty()) continue;
        for (std::size_t v2 = 0; v2 < d; ++v2) {
          const auto& right = a->product(v, v2);
          if (right.empty()) continue;
          auto& out = e.mult[u * d + v][u2 * d + v2];
          for (const auto& [k, x] : left)
            for (const auto& [l, y] : right) out.emplace_back(k * d + l, f.mul(x, y));
        }
      }
  e.idempotents.resize(nv * nv);
  for (std::size_t s = 0; s < nv; ++s)
    for (std::size_t t = 0; t < nv; ++t) e.idempotents[s * nv + t] = a->idempotent(s) * d + a->idempotent(t);
  for (auto r : a->radical_generators())
    for (std::size_t t = 0; t < nv; ++t) e.radical_generators.push_back(r * d + a->idempotent(t));
  for (std::size_t s = 0; s < nv; ++s)
    for (auto r : a->radical_generators()) e.radical_generators.push_back(a->idempotent(s) * d + r);
  e.left_vertex.resize(e.dim);
  e.right_vertex.resize(e.dim);
  e.labels.resize(e.dim);
  for (std::size_t u = 0; u < d; ++u)
    for (std::size_t v = 0; v < d; ++v) {
      e.left_vertex[u * d + v] = a->right_vertex(u) * nv + a->left_vertex(v);
      e.right_vertex[u * d + v] = a->left_vertex(u) * nv + a->right_vertex(v);
      e.labels[u * d + v] = a->label(u) + "⊗" + a->label(v);
    }
  return make_algebra(std::move(e), a);
}

/// Verified algebra automorphism; row i of `matrix` holds σ(b_i).
template <class F>
class Automorphism {
 public:
  Automorphism(AlgebraPtr<F> alg, Matrix<F> m, Matrix<F> inv)
      : algebra_(std::move(alg)), matrix_(std::move(m)), inverse_(std::move(inv)) {}

  const AlgebraPtr<F>& algebra() const { return algebra_; }
  const Matrix<F>& matrix() const { return matrix_; }
  const Matrix<F>& inverse_matrix() const { return inverse_; }

  Matrix<F> apply(const Matrix<F>& x) const { return x * matrix_; }
  Automorphism inverse() const { return Automorphism(algebra_, inverse_, matrix_); }
  /// x -> this(other(x)).
  Automorphism after(const Automorphism& other) const {
    return Automorphism(algebra_, other.matrix_ * matrix_, inverse_ * other.inverse_);
  }
  Automorphism power(long long k) const {
    Automorphism base = k < 0 ? inverse() : *this;
    unsigned long long e = k < 0 ? static_cast<unsigned long long>(-k) : static_cast<unsigned long long>(k);
    Automorphism r = identity(algebra_);
    while (e--) r = base.after(r);
    return r;
  }
  bool is_identity() const { return matrix_.is_identity(); }
  bool operator==(const Automorphism& o) const { return matrix_ == o.matrix_; }

  /// Vertex permutation π with σ(e_v) ≡ e_{π(v)} modulo the radical.
  std::vector<std::size_t> vertex_action() const {
    const F& f = algebra_->field();
    std::vector<std::size_t> pi(algebra_->vertex_count());
    for (std::size_t v = 0; v < pi.size(); ++v) {
      std::size_t found = pi.size();
      for (std::size_t w = 0; w < pi.size(); ++w)
        if (!f.is_zero(matrix_(algebra_->idempotent(v), algebra_->idempotent(w)))) found = w;
      pi[v] = found;
    }
    return pi;
  }

  static Automorphism identity(const AlgebraPtr<F>& a) {
    auto id = Matrix<F>::identity(a->field(), a->dim());
    return Automorphism(a, id, id);
  }

 private:
  AlgebraPtr<F> algebra_;
  Matrix<F> matrix_, inverse_;
};

/// Accepts a square matrix iff it defines a unital, multiplicative, invertible map.
template <class F>
Automorphism<F> verify_automorphism(const AlgebraPtr<F>& a, const Matrix<F>& m) {
  using Reason = typename NotAutomorphism::Reason;
  const std::size_t d = a->dim();
  if (m.rows() != d || m.cols() != d) throw NotAutomorphism(Reason::wrong_shape, "matrix has wrong shape");
  auto one = a->unit();
  if (one * m != one) throw NotAutomorphism(Reason::not_unital, "map does not fix the unit");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Matrix<F> prod(a->field(), 1, d);
      for (const auto& [k, v] : a->product(i, j)) prod(0, k) = v;
      auto lhs = prod * m;
      auto rhs = a->multiply(m.row(i), m.row(j));
      if (lhs != rhs)
        throw NotAutomorphism(Reason::not_multiplicative,
                              "map is not multiplicative on (" + a->label(i) + ", " + a->label(j) + ")");
    }
  auto inv = inverse(m);
  if (!inv) throw NotAutomorphism(Reason::singular, "map is singular");
  return Automorphism<F>(a, m, *inv);
}

}  // namespace nangle
