#pragma once

#include <optional>
#include <vector>

#include "nangle/module.hpp"

namespace nangle {

namespace detail {

/// Basis of M adapted to the vertex decomposition M = ⊕ M e_v.
template <class F>
struct VertexBasis {
  std::vector<Echelon<F>> parts;
  std::vector<std::size_t> offset;  // offset of each part in the adapted basis
  Matrix<F> change;                 // rows = adapted basis vectors in ambient coordinates
  Matrix<F> change_inverse;

  explicit VertexBasis(const Module<F>& m) : change(m.field(), 0, m.dim()), change_inverse(m.field(), 0, 0) {
    std::size_t off = 0;
    for (std::size_t v = 0; v < m.algebra()->vertex_count(); ++v) {
      parts.push_back(vertex_part(m, v));
      offset.push_back(off);
      off += parts.back().rank();
      change = Matrix<F>::vstack(change, parts.back().reduced);
    }
    if (off != m.dim()) throw MathError("module is not the sum of its vertex parts");
    change_inverse = *inverse(change);
  }
};

}  // namespace detail

/// Basis of Hom_A(M, N): unknown blocks M e_v -> N e_v, one intertwining equation per radical generator.
template <class F>
std::vector<Morphism<F>> hom_space(const ModulePtr<F>& m, const ModulePtr<F>& n) {
  const F& f = m->field();
  std::vector<Morphism<F>> out;
  if (m->dim() == 0 || n->dim() == 0) return out;
  const auto& alg = m->algebra();
  detail::VertexBasis<F> bm(*m), bn(*n);
  const std::size_t nv = alg->vertex_count();
  std::vector<std::size_t> uoff(nv + 1, 0);
  for (std::size_t v = 0; v < nv; ++v) uoff[v + 1] = uoff[v] + bm.parts[v].rank() * bn.parts[v].rank();
  const std::size_t unknowns = uoff[nv];
  if (unknowns == 0) return out;

  // Equation blocks, one per radical generator r: e_s r e_t: A_r X_t - X_s B_r = 0.
  std::vector<Matrix<F>> eq_blocks;
  for (auto r : alg->radical_generators()) {
    std::size_t s = alg->left_vertex(r), t = alg->right_vertex(r);
    std::size_t ms = bm.parts[s].rank(), mt = bm.parts[t].rank();
    std::size_t ns = bn.parts[s].rank(), nt = bn.parts[t].rank();
    if (ms * nt == 0) continue;
    Matrix<F> am = bm.parts[t].reduced.rows() ? (bm.parts[s].reduced * m->action(r)).select_cols(bm.parts[t].pivots)
                                              : Matrix<F>(f, ms, 0);
    Matrix<F> bnm = bn.parts[t].reduced.rows()
                        ? (bn.parts[s].reduced * n->action(r)).select_cols(bn.parts[t].pivots)
                        : Matrix<F>(f, ns, 0);
    Matrix<F> block(f, unknowns, ms * nt);
    // + A_r X_t: entry (p, j) gets A[p][i] * X_t[i][j]
    for (std::size_t p = 0; p < ms; ++p)
      for (std::size_t i = 0; i < mt; ++i) {
        if (f.is_zero(am(p, i))) continue;
        for (std::size_t j = 0; j < nt; ++j) {
          auto& c = block(uoff[t] + i * nt + j, p * nt + j);
          c = f.add(c, am(p, i));
        }
      }
    // - X_s B_r: entry (i, j) gets X_s[i][q] * B[q][j]
    for (std::size_t i = 0; i < ms; ++i)
      for (std::size_t q = 0; q < ns; ++q)
        for (std::size_t j = 0; j < nt; ++j) {
          if (f.is_zero(bnm(q, j))) continue;
          auto& c = block(uoff[s] + i * ns + q, i * nt + j);
          c = f.sub(c, bnm(q, j));
        }
    eq_blocks.push_back(std::move(block));
  }
  Matrix<F> coef(f, unknowns, 0);
  for (const auto& b : eq_blocks) coef = Matrix<F>::hstack(coef, b);
  Matrix<F> ker = coef.cols() ? kernel_basis(coef) : Matrix<F>::identity(f, unknowns);
  for (std::size_t k = 0; k < ker.rows(); ++k) {
    Matrix<F> x(f, m->dim(), n->dim());
    for (std::size_t v = 0; v < nv; ++v) {
      std::size_t mv = bm.parts[v].rank(), nvv = bn.parts[v].rank();
      for (std::size_t i = 0; i < mv; ++i)
        for (std::size_t j = 0; j < nvv; ++j) x(bm.offset[v] + i, bn.offset[v] + j) = ker(k, uoff[v] + i * nvv + j);
    }
    out.emplace_back(m, n, bm.change_inverse * x * bn.change);
  }
  return out;
}

template <class F>
Morphism<F> combine(const std::vector<Morphism<F>>& basis, const std::vector<typename F::value_type>& coeffs,
                    const ModulePtr<F>& src, const ModulePtr<F>& tgt) {
  Matrix<F> m(src->field(), src->dim(), tgt->dim());
  for (std::size_t i = 0; i < basis.size(); ++i) m.add_scaled(basis[i].matrix, coeffs[i]);
  return Morphism<F>(src, tgt, std::move(m));
}

/// Returns an isomorphism M -> N if one exists, nullopt if none exists. Falls back to an
/// exhaustive search over small hom-spaces; for large spaces over which the randomized
/// search failed, the fingerprint test decides only in the negative direction.
template <class F>
std::optional<Morphism<F>> iso_test(const ModulePtr<F>& m, const ModulePtr<F>& n, std::uint64_t seed = 0x5eed) {
  const F& f = m->field();
  if (m->dim() != n->dim()) return std::nullopt;
  if (m->dim() == 0) return Morphism<F>::zero(m, n);
  auto h = hom_space(m, n);
  auto hb = hom_space(n, m);
  if (h.size() != hb.size() || h.empty()) return std::nullopt;
  for (const auto& g : h)
    if (rank(g.matrix) == m->dim()) return g;
  Rng rng(seed);
  std::vector<typename F::value_type> c(h.size());
  for (int draw = 0; draw < 1000; ++draw) {
    for (auto& x : c) x = f.random(rng);
    auto g = combine(h, c, m, n);
    if (rank(g.matrix) == m->dim()) return g;
  }
  if (radical_fingerprint(m) != radical_fingerprint(n)) return std::nullopt;
  // Exhaustive search when |k|^dim Hom is small.
  std::uint64_t q = f.size();
  if (q == 0) return std::nullopt;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < h.size(); ++i) {
    total *= q;
    if (total > (1u << 20)) return std::nullopt;
  }
  for (std::uint64_t code = 1; code < total; ++code) {
    std::uint64_t x = code;
    for (auto& v : c) {
      v = f.from_int(static_cast<std::int64_t>(x % q));
      x /= q;
    }
    auto g = combine(h, c, m, n);
    if (rank(g.matrix) == m->dim()) return g;
  }
  return std::nullopt;
}

/// M ⊗_A B for a right A-module (or bimodule) M and a bimodule B, realized as
/// V = ⊕_v M e_v ⊗ e_v B modulo the relations m α ⊗ b - m ⊗ α b for arrows α.
template <class F>
struct TensorProduct {
  ModulePtr<F> left, right;
  std::vector<Echelon<F>> left_parts, right_parts;
  std::vector<std::size_t> offset;  // offset of block v in V
  std::size_t v_dim = 0;
  Matrix<F> projection;  // V -> Q
  Matrix<F> lift;        // Q -> V
  ModulePtr<F> module;

  /// Coordinates in V of (m ⊗ b) for m in M e_v and b in e_v B, given in ambient coordinates.
  Matrix<F> pure_tensor(std::size_t v, const Matrix<F>& m, const Matrix<F>& b) const {
    Matrix<F> out(m.field(), 1, v_dim);
    auto cm = m.select_cols(left_parts[v].pivots);
    auto cb = b.select_cols(right_parts[v].pivots);
    std::size_t nb = right_parts[v].rank();
    for (std::size_t i = 0; i < cm.cols(); ++i)
      for (std::size_t j = 0; j < nb; ++j) out(0, offset[v] + i * nb + j) = m.field().mul(cm(0, i), cb(0, j));
    return out;
  }
};

namespace detail {

template <class F>
TensorProduct<F> tensor_structure(const ModulePtr<F>& m, const ModulePtr<F>& b, bool bimodule_result) {
  const auto& ae = b->algebra();
  const auto& a = ae->base();
  const F& f = b->field();
  const std::size_t nv = a->vertex_count();
  TensorProduct<F> t;
  t.left = m;
  t.right = b;
  for (std::size_t v = 0; v < nv; ++v) {
    if (bimodule_result)
      t.left_parts.push_back(rref(bimodule_right_action(*m, a->basis_vector(a->idempotent(v)))));
    else
      t.left_parts.push_back(vertex_part(*m, v));
    t.right_parts.push_back(rref(bimodule_left_action(*b, a->basis_vector(a->idempotent(v)))));
    t.offset.push_back(t.v_dim);
    t.v_dim += t.left_parts[v].rank() * t.right_parts[v].rank();
  }
  auto right_act_m = [&](const Matrix<F>& c) {
    return bimodule_result ? bimodule_right_action(*m, c) : m->act(c);
  };

  std::vector<Matrix<F>> rows;
  for (auto alpha : a->radical_generators()) {
    std::size_t s = a->left_vertex(alpha), tt = a->right_vertex(alpha);
    const auto& ms = t.left_parts[s];
    const auto& bt = t.right_parts[tt];
    if (ms.rank() == 0 || bt.rank() == 0) continue;
    auto ma = (ms.reduced * right_act_m(a->basis_vector(alpha))).select_cols(t.left_parts[tt].pivots);
    auto ab = (bt.reduced * bimodule_left_action(*b, a->basis_vector(alpha))).select_cols(t.right_parts[s].pivots);
    std::size_t nbt = bt.rank(), nbs = t.right_parts[s].rank();
    for (std::size_t i = 0; i < ms.rank(); ++i)
      for (std::size_t j = 0; j < nbt; ++j) {
        Matrix<F> r(f, 1, t.v_dim);
        for (std::size_t i2 = 0; i2 < ma.cols(); ++i2)
          if (!f.is_zero(ma(i, i2))) r(0, t.offset[tt] + i2 * nbt + j) = ma(i, i2);
        for (std::size_t j2 = 0; j2 < nbs; ++j2)
          if (!f.is_zero(ab(j, j2))) {
            auto& c = r(0, t.offset[s] + i * nbs + j2);
            c = f.sub(c, ab(j, j2));
          }
        rows.push_back(std::move(r));
      }
  }
  Matrix<F> relm(f, rows.size(), t.v_dim);
  for (std::size_t i = 0; i < rows.size(); ++i) relm.set_row(i, rows[i]);
  auto ech = rref(std::move(relm));
  std::vector<bool> piv(t.v_dim, false);
  for (auto p : ech.pivots) piv[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t c = 0; c < t.v_dim; ++c)
    if (!piv[c]) free.push_back(c);
  t.projection = Matrix<F>(f, t.v_dim, free.size());
  for (std::size_t k = 0; k < free.size(); ++k) t.projection(free[k], k) = f.one();
  for (std::size_t r = 0; r < ech.pivots.size(); ++r)
    for (std::size_t k = 0; k < free.size(); ++k) t.projection(ech.pivots[r], k) = f.neg(ech.reduced(r, free[k]));
  t.lift = Matrix<F>(f, free.size(), t.v_dim);
  for (std::size_t k = 0; k < free.size(); ++k) t.lift(k, free[k]) = f.one();
  return t;
}

/// Matrix on V of (x ⊗ y) -> (x L) ⊗ (y R) blockwise, with L, R given per vertex part.
template <class F>
Matrix<F> tensor_block_map(const TensorProduct<F>& t, const std::vector<Matrix<F>>& lmaps,
                           const std::vector<Matrix<F>>& rmaps, const TensorProduct<F>& target) {
  Matrix<F> out(t.left->field(), t.v_dim, target.v_dim);
  for (std::size_t v = 0; v < t.offset.size(); ++v) {
    auto k = Matrix<F>::kron(lmaps[v], rmaps[v]);
    out.set_block(t.offset[v], target.offset[v], k);
  }
  return out;
}

}  // namespace detail

/// M ⊗_A B as a right A-module.
template <class F>
TensorProduct<F> tensor(const ModulePtr<F>& m, const ModulePtr<F>& b) {
  auto t = detail::tensor_structure(m, b, false);
  const auto& a = b->algebra()->base();
  const std::size_t nv = a->vertex_count();
  std::vector<Matrix<F>> act;
  for (std::size_t c = 0; c < a->dim(); ++c) {
    auto rc = bimodule_right_action(*b, a->basis_vector(c));
    std::vector<Matrix<F>> lm, rm;
    for (std::size_t v = 0; v < nv; ++v) {
      lm.push_back(Matrix<F>::identity(m->field(), t.left_parts[v].rank()));
      rm.push_back((t.right_parts[v].reduced * rc).select_cols(t.right_parts[v].pivots));
    }
    auto vmap = detail::tensor_block_map(t, lm, rm, t);
    act.push_back(t.lift * vmap * t.projection);
  }
  t.module = make_module(a, t.lift.rows(), std::move(act));
  return t;
}

/// M ⊗_A B for two bimodules, as a bimodule.
template <class F>
TensorProduct<F> tensor_bimodules(const ModulePtr<F>& m, const ModulePtr<F>& b) {
  auto t = detail::tensor_structure(m, b, true);
  const auto& ae = b->algebra();
  const auto& a = ae->base();
  const std::size_t nv = a->vertex_count(), d = a->dim();
  std::vector<std::vector<Matrix<F>>> lper(d), rper(d);
  for (std::size_t u = 0; u < d; ++u) {
    auto lu = bimodule_left_action(*m, a->basis_vector(u));
    auto ru = bimodule_right_action(*b, a->basis_vector(u));
    for (std::size_t v = 0; v < nv; ++v) {
      lper[u].push_back((t.left_parts[v].reduced * lu).select_cols(t.left_parts[v].pivots));
      rper[u].push_back((t.right_parts[v].reduced * ru).select_cols(t.right_parts[v].pivots));
    }
  }
  std::vector<Matrix<F>> act;
  act.reserve(d * d);
  for (std::size_t u = 0; u < d; ++u)
    for (std::size_t c = 0; c < d; ++c) {
      auto vmap = detail::tensor_block_map(t, lper[u], rper[c], t);
      act.push_back(t.lift * vmap * t.projection);
    }
  t.module = make_module(ae, t.lift.rows(), std::move(act));
  return t;
}

/// f ⊗ id_B : M ⊗ B -> M' ⊗ B.
template <class F>
Morphism<F> tensor_map_left(const Morphism<F>& f, const TensorProduct<F>& src, const TensorProduct<F>& tgt) {
  std::vector<Matrix<F>> lm, rm;
  for (std::size_t v = 0; v < src.offset.size(); ++v) {
    lm.push_back((src.left_parts[v].reduced * f.matrix).select_cols(tgt.left_parts[v].pivots));
    rm.push_back(Matrix<F>::identity(f.matrix.field(), src.right_parts[v].rank()));
  }
  auto vmap = detail::tensor_block_map(src, lm, rm, tgt);
  return Morphism<F>(src.module, tgt.module, src.lift * vmap * tgt.projection);
}

/// id_M ⊗ g : M ⊗ B -> M ⊗ B'.
template <class F>
Morphism<F> tensor_map_right(const Morphism<F>& g, const TensorProduct<F>& src, const TensorProduct<F>& tgt) {
  std::vector<Matrix<F>> lm, rm;
  for (std::size_t v = 0; v < src.offset.size(); ++v) {
    lm.push_back(Matrix<F>::identity(g.matrix.field(), src.left_parts[v].rank()));
    rm.push_back((src.right_parts[v].reduced * g.matrix).select_cols(tgt.right_parts[v].pivots));
  }
  auto vmap = detail::tensor_block_map(src, lm, rm, tgt);
  return Morphism<F>(src.module, tgt.module, src.lift * vmap * tgt.projection);
}

/// Canonical map M ⊗_A B -> N given a balanced formula on pure tensors:
/// value(v, m_row, b_row) must return the image of m ⊗ b (1 x dim N).
template <class F, class Fn>
Matrix<F> tensor_map_from_formula(const TensorProduct<F>& t, std::size_t target_dim, Fn value) {
  const F& f = t.left->field();
  Matrix<F> vm(f, t.v_dim, target_dim);
  for (std::size_t v = 0; v < t.offset.size(); ++v) {
    std::size_t nb = t.right_parts[v].rank();
    for (std::size_t i = 0; i < t.left_parts[v].rank(); ++i)
      for (std::size_t j = 0; j < nb; ++j)
        vm.set_row(t.offset[v] + i * nb + j, value(v, t.left_parts[v].reduced.row(i), t.right_parts[v].reduced.row(j)));
  }
  return t.lift * vm;
}

/// Pullback of f: X -> Z and g: Y -> Z.
template <class F>
struct Pullback {
  ModulePtr<F> module;
  Morphism<F> to_x, to_y;
  Submodule<F> sub;  // inside X ⊕ Y
};

template <class F>
Pullback<F> pullback(const Morphism<F>& f, const Morphism<F>& g) {
  auto sum = direct_sum(f.source, g.source);
  Morphism<F> diff(sum.module, f.target, Matrix<F>::vstack(f.matrix, -g.matrix));
  auto k = kernel(diff);
  auto px = compose(sum.projections[0], k.inclusion);
  auto py = compose(sum.projections[1], k.inclusion);
  return Pullback<F>{k.module, px, py, k};
}

}  // namespace nangle
