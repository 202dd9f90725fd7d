#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nangle/hom.hpp"
#include "nangle/module.hpp"

namespace nangle {

/// P = ⊕_k e_{v_k} A with the basis of each block given by the algebra basis elements starting at v_k.
template <class F>
struct StandardProjective {
  AlgebraPtr<F> algebra;
  std::vector<std::size_t> vertices;
  std::vector<std::vector<std::size_t>> block_basis;
  std::vector<std::size_t> offset;
  ModulePtr<F> module;

  /// Module coordinate of the generator e_{v_k} of block k.
  std::size_t generator(std::size_t k) const {
    const auto& bb = block_basis[k];
    for (std::size_t i = 0; i < bb.size(); ++i)
      if (bb[i] == algebra->idempotent(vertices[k])) return offset[k] + i;
    throw std::logic_error("generator not found");
  }
};

template <class F>
StandardProjective<F> standard_projective(const AlgebraPtr<F>& alg, const std::vector<std::size_t>& vertices) {
  const F& f = alg->field();
  StandardProjective<F> p;
  p.algebra = alg;
  p.vertices = vertices;
  std::size_t total = 0;
  std::vector<std::vector<long>> pos;
  for (auto v : vertices) {
    std::vector<std::size_t> bb;
    std::vector<long> where(alg->dim(), -1);
    for (std::size_t b = 0; b < alg->dim(); ++b)
      if (alg->left_vertex(b) == v) {
        where[b] = static_cast<long>(bb.size());
        bb.push_back(b);
      }
    p.offset.push_back(total);
    total += bb.size();
    p.block_basis.push_back(std::move(bb));
    pos.push_back(std::move(where));
  }
  std::vector<Matrix<F>> act;
  act.reserve(alg->dim());
  for (std::size_t c = 0; c < alg->dim(); ++c) {
    Matrix<F> m(f, total, total);
    for (std::size_t k = 0; k < vertices.size(); ++k)
      for (std::size_t i = 0; i < p.block_basis[k].size(); ++i)
        for (const auto& [t, v] : alg->product(p.block_basis[k][i], c))
          m(p.offset[k] + i, p.offset[k] + static_cast<std::size_t>(pos[k][t])) = v;
    act.push_back(std::move(m));
  }
  p.module = make_module(alg, total, std::move(act));
  return p;
}

/// The indecomposable projective e_v A.
template <class F>
ModulePtr<F> projective_module(const AlgebraPtr<F>& alg, std::size_t v) {
  return standard_projective(alg, {v}).module;
}

/// The map P -> N sending the generator of block k to images[k] (which must lie in N e_{v_k}).
template <class F>
Morphism<F> map_from_standard(const StandardProjective<F>& p, const ModulePtr<F>& n,
                              const std::vector<Matrix<F>>& images) {
  Matrix<F> m(n->field(), p.module->dim(), n->dim());
  for (std::size_t k = 0; k < p.vertices.size(); ++k)
    for (std::size_t i = 0; i < p.block_basis[k].size(); ++i)
      m.set_row(p.offset[k] + i, images[k] * n->action(p.block_basis[k][i]));
  return Morphism<F>(p.module, n, std::move(m));
}

/// Pinned choices for covers and hulls. The alternative choice walks candidate top
/// elements in reverse order; it is used to probe dependence of results on the choice.
struct Choices {
  bool perturbed = false;
};

template <class F>
struct Cover {
  StandardProjective<F> projective;
  Morphism<F> map;  // P ->> M
  std::vector<Matrix<F>> tops;
};

/// Minimal projective cover: top representatives chosen greedily per vertex from the
/// echelon basis of M e_v, skipping vectors in MJ + span(previous choices).
template <class F>
Cover<F> projective_cover(const ModulePtr<F>& m, Choices ch = {}) {
  const auto& alg = m->algebra();
  const F& f = m->field();
  IncrementalBasis<F> span(f, m->dim());
  auto rad = radical(*m);
  for (std::size_t i = 0; i < rad.rows(); ++i) span.insert(rad.row(i));
  std::vector<std::size_t> verts;
  std::vector<Matrix<F>> tops;
  for (std::size_t v = 0; v < alg->vertex_count(); ++v) {
    auto part = vertex_part(*m, v);
    for (std::size_t r = 0; r < part.rank(); ++r) {
      std::size_t i = ch.perturbed ? part.rank() - 1 - r : r;
      auto cand = part.reduced.row(i);
      if (ch.perturbed && i + 1 < part.rank()) cand += part.reduced.row(i + 1);
      if (span.insert(cand)) {
        verts.push_back(v);
        tops.push_back(cand);
      }
    }
  }
  if (span.size() != m->dim()) {
    // The perturbed candidates may fail to span the top; fall back to the pinned order.
    if (ch.perturbed) return projective_cover(m, Choices{});
    throw MathError("projective cover: top selection did not span");
  }
  auto p = standard_projective(alg, verts);
  auto map = map_from_standard(p, m, tops);
  return Cover<F>{std::move(p), std::move(map), std::move(tops)};
}

template <class F>
bool is_projective(const ModulePtr<F>& m) {
  return projective_cover(m).projective.module->dim() == m->dim();
}

/// Ω M = ker(P ->> M).
template <class F>
Submodule<F> syzygy(const ModulePtr<F>& m, Choices ch = {}) {
  return kernel(projective_cover(m, ch).map);
}

/// Basis of Hom(X, N) for a projective X, parametrized by generator images of its cover.
template <class F>
struct ProjectiveHom {
  Cover<F> cover;              // iso P -> X
  Matrix<F> cover_inverse;     // X -> P
  std::vector<Morphism<F>> basis;
};

template <class F>
ProjectiveHom<F> hom_from_projective(const ModulePtr<F>& x, const ModulePtr<F>& n) {
  auto cov = projective_cover(x);
  if (cov.projective.module->dim() != x->dim()) throw HypothesisViolated("module is not projective");
  auto inv = *inverse(cov.map.matrix);
  ProjectiveHom<F> h{cov, inv, {}};
  const auto& p = h.cover.projective;
  for (std::size_t k = 0; k < p.vertices.size(); ++k) {
    auto part = vertex_part(*n, p.vertices[k]);
    for (std::size_t r = 0; r < part.rank(); ++r) {
      std::vector<Matrix<F>> imgs;
      for (std::size_t j = 0; j < p.vertices.size(); ++j) imgs.emplace_back(n->field(), 1, n->dim());
      imgs[k] = part.reduced.row(r);
      auto g = map_from_standard(p, n, imgs);
      h.basis.emplace_back(x, n, inv * g.matrix);
    }
  }
  return h;
}

/// For projective X, a map f: X -> N and an epi p: N' ->> N, returns g: X -> N' with p ∘ g = f.
template <class F>
Morphism<F> lift_through_epi(const Morphism<F>& f, const Morphism<F>& p) {
  const auto& x = f.source;
  const auto& np = p.source;
  auto cov = projective_cover(x);
  if (cov.projective.module->dim() != x->dim()) throw HypothesisViolated("lift: source is not projective");
  const auto& q = cov.projective;
  auto through = cov.map.matrix * f.matrix;  // P -> N
  Matrix<F> rhs(x->field(), q.vertices.size(), f.target->dim());
  for (std::size_t k = 0; k < q.vertices.size(); ++k) rhs.set_row(k, through.row(q.generator(k)));
  auto z = solve_many(p.matrix, rhs);
  if (!z) throw HypothesisViolated("lift: map is not an epimorphism onto the required image");
  std::vector<Matrix<F>> imgs;
  for (std::size_t k = 0; k < q.vertices.size(); ++k)
    imgs.push_back(z->row(k) * np->action(x->algebra()->idempotent(q.vertices[k])));
  auto g = map_from_standard(q, np, imgs);
  return Morphism<F>(x, np, *inverse(cov.map.matrix) * g.matrix);
}

/// For a mono u: K >-> E and t: K -> I with I injective, returns g: E -> I with g ∘ u = t.
template <class F>
Morphism<F> extend_into_injective(const Morphism<F>& u, const Morphism<F>& t) {
  auto dk = dual(u.source);
  auto de = dual(u.target);
  auto di = dual(t.target);
  auto du = dual(u, de, dk);
  auto dt = dual(t, di, dk);
  auto g = lift_through_epi(dt, du);  // DI -> DE
  Morphism<F> out(u.target, t.target, g.matrix.transpose());
  if (u.matrix * out.matrix != t.matrix) throw MathError("extension into injective failed");
  return out;
}

template <class F>
struct Hull {
  ModulePtr<F> injective;
  Morphism<F> map;  // M >-> I
};

/// Injective hull via duality: I = D(projective cover of DM over the opposite algebra).
template <class F>
Hull<F> injective_hull(const ModulePtr<F>& m, Choices ch = {}) {
  auto dm = dual(m);
  auto cov = projective_cover(dm, ch);
  auto inj = dual(cov.projective.module);
  Morphism<F> iota(m, inj, cov.map.matrix.transpose());
  return Hull<F>{inj, std::move(iota)};
}

template <class F>
struct CosyzygyStep {
  Hull<F> hull;
  Quotient<F> quotient;  // I ->> Ω^{-1} M
};

template <class F>
CosyzygyStep<F> cosyzygy(const ModulePtr<F>& m, Choices ch = {}) {
  auto h = injective_hull(m, ch);
  auto q = cokernel(h.map);
  return CosyzygyStep<F>{std::move(h), std::move(q)};
}

/// A resolution with terms, maps between consecutive terms and an augmentation.
template <class F>
struct Resolution {
  enum class Kind { projective, injective };
  Kind kind;
  std::vector<ModulePtr<F>> terms;
  std::vector<Morphism<F>> maps;  // injective: terms[j] -> terms[j+1]; projective: terms[j+1] -> terms[j]
  Morphism<F> augmentation;       // injective: M -> terms[0]; projective: terms[0] -> M
};

/// The pinned standard injective resolution 0 -> M -> I_0 -> I_1 -> ... built from iterated hulls.
template <class F>
struct StandardResolution {
  std::vector<ModulePtr<F>> cosyzygies;  // L_0 = M, L_1 = Ω^{-1} M, ...
  std::vector<CosyzygyStep<F>> steps;    // step j: L_j >-> I_j ->> L_{j+1}

  std::size_t length() const { return steps.size(); }
  const ModulePtr<F>& cosyzygy(std::size_t j) const { return cosyzygies[j]; }
  const Hull<F>& hull(std::size_t j) const { return steps[j].hull; }
  const Morphism<F>& to_next(std::size_t j) const { return steps[j].quotient.projection; }

  Resolution<F> as_resolution() const {
    Resolution<F> r{Resolution<F>::Kind::injective, {}, {}, hull(0).map};
    for (const auto& s : steps) r.terms.push_back(s.hull.injective);
    for (std::size_t j = 0; j + 1 < steps.size(); ++j) r.maps.push_back(compose(hull(j + 1).map, to_next(j)));
    return r;
  }
};

template <class F>
StandardResolution<F> standard_resolution(const ModulePtr<F>& m, std::size_t length, Choices ch = {}) {
  StandardResolution<F> r;
  r.cosyzygies.push_back(m);
  for (std::size_t j = 0; j < length; ++j) {
    r.steps.push_back(cosyzygy(r.cosyzygies.back(), ch));
    r.cosyzygies.push_back(r.steps.back().quotient.module);
  }
  return r;
}

template <class F>
Resolution<F> injective_resolution(const ModulePtr<F>& m, std::size_t length, Choices ch = {}) {
  return standard_resolution(m, length, ch).as_resolution();
}

/// Exactness of a resolution by rank bookkeeping; returns an empty string or a description of the defect.
template <class F>
std::string resolution_defect(const Resolution<F>& r) {
  using Kind = typename Resolution<F>::Kind;
  auto fail = [](std::size_t pos, const char* what) { return "position " + std::to_string(pos) + ": " + what; };
  const bool inj = r.kind == Kind::injective;
  const auto& aug = r.augmentation;
  // Injective: 0 -> M -> T0 -> T1 -> ...; projective: ... -> T1 -> T0 -> M -> 0.
  std::size_t aug_rank = rank(aug.matrix);
  std::size_t mdim = inj ? aug.source->dim() : aug.target->dim();
  if (aug_rank != mdim) return fail(0, inj ? "augmentation is not injective" : "augmentation is not surjective");
  for (std::size_t j = 0; j < r.terms.size(); ++j) {
    std::size_t in_rank = j == 0 ? aug_rank : rank(r.maps[j - 1].matrix);
    if (j < r.maps.size()) {
      const auto& out = r.maps[j];
      auto comp = inj ? (j == 0 ? aug.matrix * out.matrix : r.maps[j - 1].matrix * out.matrix)
                      : (j == 0 ? out.matrix * aug.matrix : out.matrix * r.maps[j - 1].matrix);
      if (!comp.is_zero()) return fail(j, "composite is not zero");
      if (in_rank + rank(out.matrix) != r.terms[j]->dim()) return fail(j, "not exact");
    }
  }
  return {};
}

/// f = w ∘ ι_M through the injective hull of the source.
template <class F>
struct StableFactorization {
  Hull<F> hull;
  Morphism<F> through;  // w: I_M -> N
};

namespace detail {

template <class F>
Matrix<F> flatten(const Matrix<F>& m) {
  Matrix<F> row(m.field(), 1, m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) row(0, i * m.cols() + j) = m(i, j);
  return row;
}

}  // namespace detail

/// Coefficients x such that Σ x_k basis[k] - rhs factors through the injective hull of `source`
/// (all matrices are maps source -> target).
template <class F>
std::optional<std::vector<typename F::value_type>> stable_solve(const std::vector<Matrix<F>>& basis,
                                                                const ModulePtr<F>& source,
                                                                const ModulePtr<F>& target, const Matrix<F>& rhs) {
  const F& f = source->field();
  const std::size_t cells = source->dim() * target->dim();
  auto hull = injective_hull(source);
  auto homs = hom_from_projective(hull.injective, target);
  Matrix<F> coef(f, basis.size() + homs.basis.size(), cells);
  for (std::size_t k = 0; k < basis.size(); ++k) coef.set_row(k, detail::flatten(basis[k]));
  for (std::size_t l = 0; l < homs.basis.size(); ++l)
    coef.set_row(basis.size() + l, detail::flatten(hull.map.matrix * homs.basis[l].matrix));
  if (cells == 0) return std::vector<typename F::value_type>(basis.size(), f.zero());
  auto x = solve_many(coef, detail::flatten(rhs));
  if (!x) return std::nullopt;
  std::vector<typename F::value_type> out(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) out[k] = (*x)(0, k);
  return out;
}

template <class F>
std::optional<StableFactorization<F>> stable_factorization(const Morphism<F>& f) {
  auto hull = injective_hull(f.source);
  if (f.is_zero()) return StableFactorization<F>{hull, Morphism<F>::zero(hull.injective, f.target)};
  auto homs = hom_from_projective(hull.injective, f.target);
  std::vector<Matrix<F>> through;
  for (const auto& h : homs.basis) through.push_back(hull.map.matrix * h.matrix);
  Matrix<F> coef(f.matrix.field(), through.size(), f.source->dim() * f.target->dim());
  for (std::size_t k = 0; k < through.size(); ++k) coef.set_row(k, detail::flatten(through[k]));
  auto x = solve_many(coef, detail::flatten(f.matrix));
  if (!x) return std::nullopt;
  Matrix<F> w(f.matrix.field(), hull.injective->dim(), f.target->dim());
  for (std::size_t k = 0; k < homs.basis.size(); ++k) w.add_scaled(homs.basis[k].matrix, (*x)(0, k));
  Morphism<F> wm(hull.injective, f.target, std::move(w));
  return StableFactorization<F>{std::move(hull), std::move(wm)};
}

/// Witness w: I_M -> N with w ∘ ι_M = f, if f factors through an injective module.
template <class F>
std::optional<Morphism<F>> factors_through_injective(const Morphism<F>& f) {
  auto s = stable_factorization(f);
  if (!s) return std::nullopt;
  return s->through;
}

template <class F>
bool stable_equal(const Morphism<F>& f, const Morphism<F>& g) {
  return static_cast<bool>(factors_through_injective(f - g));
}

/// f: X -> Y is invertible modulo maps factoring through injectives (checked on both sides).
template <class F>
bool is_stable_iso(const Morphism<F>& f) {
  const auto& x = f.source;
  const auto& y = f.target;
  auto back = hom_space(y, x);
  std::vector<Matrix<F>> left, right;
  for (const auto& g : back) {
    left.push_back(f.matrix * g.matrix);
    right.push_back(g.matrix * f.matrix);
  }
  return stable_solve(left, x, x, Matrix<F>::identity(f.matrix.field(), x->dim())).has_value() &&
         stable_solve(right, y, y, Matrix<F>::identity(f.matrix.field(), y->dim())).has_value();
}

/// Induced map on cosyzygies: given f: M -> N and hulls, returns (c: I_M -> I_N, Ω^{-1} f).
template <class F>
std::pair<Morphism<F>, Morphism<F>> cosyzygy_map(const Morphism<F>& f, const CosyzygyStep<F>& sm,
                                                  const CosyzygyStep<F>& sn) {
  auto c = extend_into_injective(sm.hull.map, compose(sn.hull.map, f));
  auto om = factor_through_epi(sm.quotient.projection, compose(sn.quotient.projection, c));
  return {c, om};
}

}  // namespace nangle
