#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "nangle/algebra.hpp"
#include "nangle/errors.hpp"
#include "nangle/matrix.hpp"

namespace nangle {

/// Finite-dimensional right module: one action matrix per algebra basis element,
/// acting on row vectors (v -> v * action[b]).
template <class F>
class Module {
 public:
  Module(AlgebraPtr<F> alg, std::size_t dim, std::vector<Matrix<F>> action)
      : algebra_(std::move(alg)), dim_(dim), action_(std::move(action)) {
    if (action_.size() != algebra_->dim()) throw std::invalid_argument("module: wrong number of action matrices");
  }

  const AlgebraPtr<F>& algebra() const { return algebra_; }
  const F& field() const { return algebra_->field(); }
  std::size_t dim() const { return dim_; }
  const Matrix<F>& action(std::size_t b) const { return action_[b]; }
  const std::vector<Matrix<F>>& actions() const { return action_; }

  /// Action of an algebra element given in coordinates.
  Matrix<F> act(const Matrix<F>& c) const {
    Matrix<F> m(field(), dim_, dim_);
    for (std::size_t b = 0; b < algebra_->dim(); ++b) m.add_scaled(action_[b], c(0, b));
    return m;
  }

  /// Checks action(1) = id and the multiplication rule on all basis pairs.
  bool satisfies_axioms() const {
    const F& f = field();
    if (!act(algebra_->unit()).is_identity()) return false;
    for (std::size_t i = 0; i < algebra_->dim(); ++i)
      for (std::size_t j = 0; j < algebra_->dim(); ++j) {
        Matrix<F> rhs(f, dim_, dim_);
        for (const auto& [k, v] : algebra_->product(i, j)) rhs.add_scaled(action_[k], v);
        if (action_[i] * action_[j] != rhs) return false;
      }
    return true;
  }

 private:
  AlgebraPtr<F> algebra_;
  std::size_t dim_;
  std::vector<Matrix<F>> action_;
};

template <class F>
using ModulePtr = std::shared_ptr<const Module<F>>;

template <class F>
ModulePtr<F> make_module(AlgebraPtr<F> alg, std::size_t dim, std::vector<Matrix<F>> action) {
  return std::make_shared<const Module<F>>(std::move(alg), dim, std::move(action));
}

template <class F>
ModulePtr<F> zero_module(const AlgebraPtr<F>& alg) {
  return make_module(alg, 0, std::vector<Matrix<F>>(alg->dim(), Matrix<F>(alg->field(), 0, 0)));
}

/// The regular right module A_A.
template <class F>
ModulePtr<F> regular_module(const AlgebraPtr<F>& alg) {
  std::vector<Matrix<F>> act;
  for (std::size_t b = 0; b < alg->dim(); ++b) act.push_back(alg->right_multiplication(alg->basis_vector(b)));
  return make_module(alg, alg->dim(), std::move(act));
}

/// Module homomorphism source -> target, matrix of shape dim(source) x dim(target).
template <class F>
struct Morphism {
  ModulePtr<F> source, target;
  Matrix<F> matrix;

  Morphism(ModulePtr<F> s, ModulePtr<F> t, Matrix<F> m) : source(std::move(s)), target(std::move(t)), matrix(std::move(m)) {
    if (matrix.rows() != source->dim() || matrix.cols() != target->dim())
      throw std::invalid_argument("morphism matrix has shape " + std::to_string(matrix.rows()) + "x" +
                                  std::to_string(matrix.cols()) + ", expected " + std::to_string(source->dim()) +
                                  "x" + std::to_string(target->dim()));
  }

  static Morphism zero(ModulePtr<F> s, ModulePtr<F> t) {
    Matrix<F> m(s->field(), s->dim(), t->dim());
    return Morphism(std::move(s), std::move(t), std::move(m));
  }
  static Morphism identity(ModulePtr<F> m) {
    auto id = Matrix<F>::identity(m->field(), m->dim());
    return Morphism(m, m, std::move(id));
  }

  bool is_module_map() const {
    for (std::size_t b = 0; b < source->algebra()->dim(); ++b)
      if (source->action(b) * matrix != matrix * target->action(b)) return false;
    return true;
  }
  bool is_zero() const { return matrix.is_zero(); }

  Morphism operator+(const Morphism& o) const { return Morphism(source, target, matrix + o.matrix); }
  Morphism operator-(const Morphism& o) const { return Morphism(source, target, matrix - o.matrix); }
  Morphism operator-() const { return Morphism(source, target, -matrix); }
  Morphism scaled(const typename F::value_type& s) const { return Morphism(source, target, matrix.scaled(s)); }
};

/// g ∘ f (apply f first).
template <class F>
Morphism<F> compose(const Morphism<F>& g, const Morphism<F>& f) {
  if (f.target->dim() != g.source->dim()) throw std::invalid_argument("compose: incompatible morphisms");
  return Morphism<F>(f.source, g.target, f.matrix * g.matrix);
}

template <class F>
struct DirectSum {
  ModulePtr<F> module;
  std::vector<Morphism<F>> inclusions, projections;
};

template <class F>
DirectSum<F> direct_sum(const std::vector<ModulePtr<F>>& parts, const AlgebraPtr<F>& alg) {
  const F& f = alg->field();
  std::size_t total = 0;
  std::vector<std::size_t> off;
  for (const auto& p : parts) {
    off.push_back(total);
    total += p->dim();
  }
  std::vector<Matrix<F>> act;
  for (std::size_t b = 0; b < alg->dim(); ++b) {
    Matrix<F> m(f, total, total);
    for (std::size_t k = 0; k < parts.size(); ++k) m.set_block(off[k], off[k], parts[k]->action(b));
    act.push_back(std::move(m));
  }
  DirectSum<F> ds{make_module(alg, total, std::move(act)), {}, {}};
  for (std::size_t k = 0; k < parts.size(); ++k) {
    Matrix<F> inc(f, parts[k]->dim(), total), proj(f, total, parts[k]->dim());
    for (std::size_t i = 0; i < parts[k]->dim(); ++i) {
      inc(i, off[k] + i) = f.one();
      proj(off[k] + i, i) = f.one();
    }
    ds.inclusions.emplace_back(parts[k], ds.module, std::move(inc));
    ds.projections.emplace_back(ds.module, parts[k], std::move(proj));
  }
  return ds;
}

template <class F>
DirectSum<F> direct_sum(const ModulePtr<F>& a, const ModulePtr<F>& b) {
  return direct_sum<F>({a, b}, a->algebra());
}

/// f1 ⊕ f2 between direct sums.
template <class F>
Morphism<F> direct_sum_map(const Morphism<F>& f1, const Morphism<F>& f2, const ModulePtr<F>& src,
                           const ModulePtr<F>& tgt) {
  return Morphism<F>(src, tgt, Matrix<F>::block_diag(f1.matrix, f2.matrix));
}

/// A submodule given by an echelon basis of its ambient coordinates, with its inclusion.
template <class F>
struct Submodule {
  ModulePtr<F> module;
  Morphism<F> inclusion;
  Echelon<F> basis;

  /// Coordinates (w.r.t. the submodule basis) of ambient rows lying in the submodule.
  Matrix<F> coordinates(const Matrix<F>& rows) const { return rows.select_cols(basis.pivots); }
};

/// Submodule spanned by the given rows (which must span an invariant subspace).
template <class F>
Submodule<F> submodule(const ModulePtr<F>& m, const Matrix<F>& rows) {
  auto ech = rref(rows);
  const auto& alg = m->algebra();
  std::vector<Matrix<F>> act;
  act.reserve(alg->dim());
  for (std::size_t b = 0; b < alg->dim(); ++b) act.push_back((ech.reduced * m->action(b)).select_cols(ech.pivots));
  auto sub = make_module(alg, ech.rank(), std::move(act));
  Morphism<F> inc(sub, m, ech.reduced);
  return Submodule<F>{sub, std::move(inc), std::move(ech)};
}

/// Smallest submodule containing the given rows.
template <class F>
Submodule<F> generated_submodule(const ModulePtr<F>& m, const Matrix<F>& gens) {
  const auto& alg = m->algebra();
  Matrix<F> all(m->field(), 0, m->dim());
  for (std::size_t b = 0; b < alg->dim(); ++b) all = Matrix<F>::vstack(all, gens * m->action(b));
  return submodule(m, all);
}

template <class F>
struct Quotient {
  ModulePtr<F> module;
  Morphism<F> projection;
  Matrix<F> lift;  // section of the projection on the level of vector spaces (dim Q x dim M)
};

/// Quotient of m by the subspace spanned by `rows` (assumed invariant).
template <class F>
Quotient<F> quotient(const ModulePtr<F>& m, const Matrix<F>& rows) {
  const F& f = m->field();
  auto ech = rref(rows);
  std::vector<bool> piv(m->dim(), false);
  for (auto p : ech.pivots) piv[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < m->dim(); ++c)
    if (!piv[c]) free.push_back(c);
  Matrix<F> proj(f, m->dim(), free.size());
  for (std::size_t k = 0; k < free.size(); ++k) proj(free[k], k) = f.one();
  for (std::size_t r = 0; r < ech.pivots.size(); ++r)
    for (std::size_t k = 0; k < free.size(); ++k) proj(ech.pivots[r], k) = f.neg(ech.reduced(r, free[k]));
  Matrix<F> lift(f, free.size(), m->dim());
  for (std::size_t k = 0; k < free.size(); ++k) lift(k, free[k]) = f.one();
  const auto& alg = m->algebra();
  std::vector<Matrix<F>> act;
  for (std::size_t b = 0; b < alg->dim(); ++b) act.push_back(lift * m->action(b) * proj);
  auto q = make_module(alg, free.size(), std::move(act));
  return Quotient<F>{q, Morphism<F>(m, q, proj), lift};
}

template <class F>
Submodule<F> kernel(const Morphism<F>& f) {
  return submodule(f.source, kernel_basis(f.matrix));
}

/// Image of f as a submodule of the target, plus the corestriction source ->> image.
template <class F>
struct Image {
  Submodule<F> sub;
  Morphism<F> corestriction;
};

template <class F>
Image<F> image(const Morphism<F>& f) {
  auto sub = submodule(f.target, f.matrix);
  Morphism<F> co(f.source, sub.module, sub.coordinates(f.matrix));
  return Image<F>{std::move(sub), std::move(co)};
}

template <class F>
Quotient<F> cokernel(const Morphism<F>& f) {
  return quotient(f.target, f.matrix);
}

/// Given an epi p: X ->> Y and g: X -> Z vanishing on ker p, the unique h: Y -> Z with g = h ∘ p.
template <class F>
Morphism<F> factor_through_epi(const Morphism<F>& p, const Morphism<F>& g) {
  auto x = solve_many(p.matrix.transpose(), g.matrix.transpose());
  if (!x) throw HypothesisViolated("map does not factor through the epimorphism");
  Morphism<F> h(p.target, g.target, x->transpose());
  if (p.matrix * h.matrix != g.matrix) throw HypothesisViolated("map does not factor through the epimorphism");
  return h;
}

/// Given a mono i: Y >-> Z and g: X -> Z with image inside im i, the unique h with g = i ∘ h.
template <class F>
Morphism<F> factor_through_mono(const Morphism<F>& i, const Morphism<F>& g) {
  auto x = solve_many(i.matrix, g.matrix);
  if (!x) throw HypothesisViolated("map does not factor through the monomorphism");
  return Morphism<F>(g.source, i.source, *x);
}

/// Subspace M e_v as echelon rows.
template <class F>
Echelon<F> vertex_part(const Module<F>& m, std::size_t v) {
  return rref(m.action(m.algebra()->idempotent(v)));
}

/// Radical MJ (span of images of the radical generators).
template <class F>
Matrix<F> radical(const Module<F>& m) {
  Matrix<F> all(m.field(), 0, m.dim());
  for (auto r : m.algebra()->radical_generators()) all = Matrix<F>::vstack(all, m.action(r));
  return row_space(all);
}

/// Socle {x : x r = 0 for every radical generator r}.
template <class F>
Matrix<F> socle(const Module<F>& m) {
  const auto& gens = m.algebra()->radical_generators();
  if (gens.empty()) return Matrix<F>::identity(m.field(), m.dim());
  Matrix<F> big(m.field(), m.dim(), 0);
  for (auto r : gens) big = Matrix<F>::hstack(big, m.action(r));
  return kernel_basis(big);
}

/// Dimensions of the radical layers M J^k / M J^{k+1} per vertex.
template <class F>
std::vector<std::vector<std::size_t>> radical_fingerprint(const ModulePtr<F>& m) {
  std::vector<std::vector<std::size_t>> out;
  auto cur = m;
  while (cur->dim() > 0) {
    auto rad = radical(*cur);
    auto top = quotient(cur, rad);
    std::vector<std::size_t> layer;
    for (std::size_t v = 0; v < cur->algebra()->vertex_count(); ++v) layer.push_back(vertex_part(*top.module, v).rank());
    out.push_back(layer);
    if (rad.rows() == cur->dim()) break;
    cur = submodule(cur, rad).module;
  }
  return out;
}

/// Dual module D M = Hom_k(M, k), a right module over the opposite algebra.
template <class F>
ModulePtr<F> dual(const ModulePtr<F>& m) {
  std::vector<Matrix<F>> act;
  for (std::size_t b = 0; b < m->algebra()->dim(); ++b) act.push_back(m->action(b).transpose());
  return make_module(opposite(m->algebra()), m->dim(), std::move(act));
}

/// D f : D N -> D M, given the already-dualized modules.
template <class F>
Morphism<F> dual(const Morphism<F>& f, const ModulePtr<F>& dn, const ModulePtr<F>& dm) {
  return Morphism<F>(dn, dm, f.matrix.transpose());
}

/// Right twist M_τ: same space, b acts as τ(b).
template <class F>
ModulePtr<F> twist(const ModulePtr<F>& m, const Automorphism<F>& tau) {
  std::vector<Matrix<F>> act;
  const auto& t = tau.matrix();
  for (std::size_t b = 0; b < m->algebra()->dim(); ++b) act.push_back(m->act(t.row(b)));
  return make_module(m->algebra(), m->dim(), std::move(act));
}

// Bimodules are right modules over A^e; (u, v) acts by m -> u m v.

template <class F>
Matrix<F> bimodule_left_action(const Module<F>& b, const Matrix<F>& u) {
  const auto& base = b.algebra()->base();
  const std::size_t d = base->dim();
  Matrix<F> m(b.field(), b.dim(), b.dim());
  for (std::size_t x = 0; x < d; ++x) {
    if (b.field().is_zero(u(0, x))) continue;
    for (auto e : base->idempotents()) m.add_scaled(b.action(x * d + e), u(0, x));
  }
  return m;
}

template <class F>
Matrix<F> bimodule_right_action(const Module<F>& b, const Matrix<F>& c) {
  const auto& base = b.algebra()->base();
  const std::size_t d = base->dim();
  Matrix<F> m(b.field(), b.dim(), b.dim());
  for (std::size_t y = 0; y < d; ++y) {
    if (b.field().is_zero(c(0, y))) continue;
    for (auto e : base->idempotents()) m.add_scaled(b.action(e * d + y), c(0, y));
  }
  return m;
}

namespace detail {

template <class F>
ModulePtr<F> retwist_bimodule(const ModulePtr<F>& b, const Matrix<F>& left, const Matrix<F>& right) {
  const auto& ae = b->algebra();
  const std::size_t d = ae->base()->dim();
  const F& f = b->field();
  std::vector<Matrix<F>> act;
  act.reserve(d * d);
  for (std::size_t u = 0; u < d; ++u)
    for (std::size_t v = 0; v < d; ++v) {
      Matrix<F> m(f, b->dim(), b->dim());
      for (std::size_t x = 0; x < d; ++x) {
        if (f.is_zero(left(u, x))) continue;
        for (std::size_t y = 0; y < d; ++y) {
          if (f.is_zero(right(v, y))) continue;
          m.add_scaled(b->action(x * d + y), f.mul(left(u, x), right(v, y)));
        }
      }
      act.push_back(std::move(m));
    }
  return make_module(ae, b->dim(), std::move(act));
}

}  // namespace detail

/// Left twist _ρB: u acts on the left as ρ(u).
template <class F>
ModulePtr<F> left_twist(const ModulePtr<F>& b, const Automorphism<F>& rho) {
  return detail::retwist_bimodule(b, rho.matrix(), Matrix<F>::identity(b->field(), rho.matrix().rows()));
}

/// Right twist B_ρ: v acts on the right as ρ(v).
template <class F>
ModulePtr<F> right_twist(const ModulePtr<F>& b, const Automorphism<F>& rho) {
  return detail::retwist_bimodule(b, Matrix<F>::identity(b->field(), rho.matrix().rows()), rho.matrix());
}

/// ₁A_σ as a right A^e-module: (u, v) sends a to u a σ(v).
template <class F>
ModulePtr<F> twisted_bimodule(const AlgebraPtr<F>& ae, const Automorphism<F>& sigma) {
  const auto& a = ae->base();
  const std::size_t d = a->dim();
  std::vector<Matrix<F>> lefts, rights;
  for (std::size_t u = 0; u < d; ++u) lefts.push_back(a->left_multiplication(a->basis_vector(u)));
  for (std::size_t v = 0; v < d; ++v) rights.push_back(a->right_multiplication(sigma.matrix().row(v)));
  std::vector<Matrix<F>> act;
  act.reserve(d * d);
  for (std::size_t u = 0; u < d; ++u)
    for (std::size_t v = 0; v < d; ++v) act.push_back(lefts[u] * rights[v]);
  return make_module(ae, d, std::move(act));
}

template <class F>
ModulePtr<F> regular_bimodule(const AlgebraPtr<F>& ae) {
  return twisted_bimodule(ae, Automorphism<F>::identity(ae->base()));
}

}  // namespace nangle
