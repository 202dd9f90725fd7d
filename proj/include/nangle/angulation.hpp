#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nangle/periodicity.hpp"

namespace nangle {

/// Σ = - ⊗_A A_τ on mod A, realized strictly as the right twist M -> M_τ (same matrices on maps).
template <class F>
struct Suspension {
  AlgebraPtr<F> algebra;
  Automorphism<F> tau;

  ModulePtr<F> apply(const ModulePtr<F>& m) const { return twist(m, tau); }
  ModulePtr<F> unapply(const ModulePtr<F>& m) const { return twist(m, tau.inverse()); }
  Morphism<F> apply(const Morphism<F>& f) const { return Morphism<F>(apply(f.source), apply(f.target), f.matrix); }

  /// j = object_map()[i] with Σ(e_i A) ≅ e_j A.
  std::vector<std::size_t> object_map() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < algebra->vertex_count(); ++i) {
      auto s = apply(projective_module(algebra, i));
      std::size_t found = algebra->vertex_count();
      for (std::size_t j = 0; j < algebra->vertex_count() && found == algebra->vertex_count(); ++j)
        if (iso_test(s, projective_module(algebra, j))) found = j;
      out.push_back(found);
    }
    return out;
  }
};

template <class F>
Suspension<F> suspension(const Automorphism<F>& sigma, std::size_t m) {
  return Suspension<F>{sigma.algebra(), sigma.power(-static_cast<long long>(m))};
}

/// 0 -> Id -> X^1 -> ... -> X^N -> Σ -> 0 with X^i = - ⊗_A B^i, N = m * quasi-period.
template <class F>
struct FunctorSequence {
  AlgebraPtr<F> algebra;
  AlgebraPtr<F> enveloping;
  std::size_t quasi_period = 0;
  std::size_t m = 1;
  Automorphism<F> sigma;
  std::vector<ModulePtr<F>> bimodules;  // B^1 .. B^N
  std::vector<Morphism<F>> maps;        // B^i -> B^{i+1}
  Morphism<F> unit;                     // A -> B^1
  Morphism<F> counit;                   // B^N -> ₁A_τ
  Suspension<F> sigma_functor;
  Choices choices;

  std::size_t n() const { return bimodules.size(); }
};

/// Tensors the m-fold iterated sequence with ₁A_{σ^{-m}}; on P this twists the left action by σ^m.
template <class F>
FunctorSequence<F> functor_sequence(const PeriodicityReport<F>& rep, std::size_t m, Choices ch = {}) {
  if (m == 0) throw std::invalid_argument("functor sequence: m must be positive");
  if (rep.quasi_period * m < 3)
    throw HypothesisViolated("angulation needs m * quasi-period >= 3, got " + std::to_string(rep.quasi_period * m));
  auto seq = iterated_sequence(rep, m);
  const auto& sigma = rep.twist.sigma;
  const auto& ae = rep.resolution.enveloping;
  const std::size_t total = rep.quasi_period * m;
  auto up = sigma.power(static_cast<long long>(m));
  auto tau = sigma.power(-static_cast<long long>(m));
  std::vector<ModulePtr<F>> bims;
  for (std::size_t i = 1; i <= total; ++i) bims.push_back(left_twist(seq.modules[i], up));
  std::vector<Morphism<F>> maps;
  for (std::size_t i = 1; i < total; ++i) maps.emplace_back(bims[i - 1], bims[i], seq.maps[i].matrix);
  auto reg = rep.resolution.regular;
  Morphism<F> unit(reg, bims.front(), up.matrix() * seq.maps[0].matrix);
  Morphism<F> counit(bims.back(), twisted_bimodule(ae, tau), seq.maps[total].matrix * tau.matrix());
  return FunctorSequence<F>{rep.resolution.algebra, ae, rep.quasi_period, m, sigma, std::move(bims),
                            std::move(maps), std::move(unit), std::move(counit),
                            Suspension<F>{rep.resolution.algebra, tau}, ch};
}

/// The functor sequence evaluated at a module M.
template <class F>
struct Evaluation {
  ModulePtr<F> module;
  std::vector<TensorProduct<F>> terms;  // X^i M
  std::vector<Morphism<F>> maps;        // X^i M -> X^{i+1} M
  Morphism<F> unit;                     // M -> X^1 M
  Morphism<F> counit;                   // X^N M -> Σ M
  ModulePtr<F> suspended;

  const ModulePtr<F>& term(std::size_t i) const { return terms[i - 1].module; }
};

template <class F>
Evaluation<F> evaluate(const FunctorSequence<F>& fs, const ModulePtr<F>& m) {
  const auto& a = fs.algebra;
  const F& f = a->field();
  std::vector<TensorProduct<F>> terms;
  for (const auto& b : fs.bimodules) terms.push_back(tensor(m, b));
  std::vector<Morphism<F>> maps;
  for (std::size_t i = 0; i + 1 < terms.size(); ++i) maps.push_back(tensor_map_right(fs.maps[i], terms[i], terms[i + 1]));

  // unit: x -> Σ_v (x e_v) ⊗ (e_v u(1))
  const auto& t1 = terms.front();
  auto u1 = a->unit() * fs.unit.matrix;
  Matrix<F> um(f, m->dim(), t1.module->dim());
  for (std::size_t v = 0; v < a->vertex_count(); ++v) {
    auto ev = a->basis_vector(a->idempotent(v));
    auto b = u1 * bimodule_left_action(*fs.bimodules.front(), ev);
    if (t1.right_parts[v].rank() == 0) continue;
    auto mev = m->act(ev);
    for (std::size_t i = 0; i < m->dim(); ++i) {
      auto x = Matrix<F>::unit_row(f, m->dim(), i) * mev;
      if (x.is_zero()) continue;
      um.set_row(i, um.row(i) + t1.pure_tensor(v, x, b) * t1.projection);
    }
  }
  // counit: x ⊗ b -> x · c(b)
  auto sm = fs.sigma_functor.apply(m);
  const auto& tn = terms.back();
  const auto& cmat = fs.counit.matrix;
  auto cm = tensor_map_from_formula(tn, m->dim(), [&](std::size_t, const Matrix<F>& x, const Matrix<F>& b) {
    return x * m->act(b * cmat);
  });
  Evaluation<F> e{m, std::move(terms), std::move(maps), Morphism<F>(m, t1.module, um), Morphism<F>(tn.module, sm, cm), sm};
  return e;
}

/// X_1 -> X_2 -> ... -> X_N -> Σ X_1.
template <class F>
struct NSigmaSequence {
  std::vector<ModulePtr<F>> objects;
  std::vector<Morphism<F>> maps;  // maps.back(): X_N -> Σ X_1

  std::size_t size() const { return objects.size(); }
  bool operator==(const NSigmaSequence& o) const {
    if (objects.size() != o.objects.size()) return false;
    for (std::size_t i = 0; i < objects.size(); ++i)
      if (objects[i]->actions() != o.objects[i]->actions() || maps[i].matrix != o.maps[i].matrix) return false;
    return true;
  }
};

template <class F>
NSigmaSequence<F> standard_angle(const FunctorSequence<F>& fs, const Evaluation<F>& e) {
  NSigmaSequence<F> x;
  for (const auto& t : e.terms) x.objects.push_back(t.module);
  x.maps = e.maps;
  auto target = fs.sigma_functor.apply(x.objects.front());
  x.maps.emplace_back(x.objects.back(), target, e.counit.matrix * e.unit.matrix);
  return x;
}

template <class F>
NSigmaSequence<F> standard_angle(const FunctorSequence<F>& fs, const ModulePtr<F>& m) {
  return standard_angle(fs, evaluate(fs, m));
}

/// X -1-> X -> 0 -> ... -> 0 -> Σ X.
template <class F>
NSigmaSequence<F> trivial_angle(const FunctorSequence<F>& fs, const ModulePtr<F>& x) {
  NSigmaSequence<F> s;
  auto zero = zero_module(fs.algebra);
  s.objects.push_back(x);
  s.objects.push_back(x);
  for (std::size_t i = 2; i < fs.n(); ++i) s.objects.push_back(zero);
  s.maps.push_back(Morphism<F>::identity(x));
  for (std::size_t i = 1; i + 1 < fs.n(); ++i) s.maps.push_back(Morphism<F>::zero(s.objects[i], s.objects[i + 1]));
  s.maps.push_back(Morphism<F>::zero(s.objects.back(), fs.sigma_functor.apply(x)));
  return s;
}

template <class F>
NSigmaSequence<F> direct_sum(const FunctorSequence<F>& fs, const NSigmaSequence<F>& x, const NSigmaSequence<F>& y) {
  NSigmaSequence<F> s;
  for (std::size_t i = 0; i < x.size(); ++i) s.objects.push_back(direct_sum(x.objects[i], y.objects[i]).module);
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto tgt = i + 1 < x.size() ? s.objects[i + 1] : fs.sigma_functor.apply(s.objects.front());
    s.maps.push_back(direct_sum_map(x.maps[i], y.maps[i], s.objects[i], tgt));
  }
  return s;
}

/// The summand of a direct sum sequence selected by coordinate ranges [lo_i, lo_i + dim_i) in each object.
template <class F>
NSigmaSequence<F> summand(const FunctorSequence<F>& fs, const NSigmaSequence<F>& s,
                          const std::vector<std::size_t>& lo, const std::vector<std::size_t>& dims) {
  NSigmaSequence<F> out;
  auto range = [](std::size_t a, std::size_t d) {
    std::vector<std::size_t> r(d);
    for (std::size_t i = 0; i < d; ++i) r[i] = a + i;
    return r;
  };
  const auto& alg = fs.algebra;
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto idx = range(lo[i], dims[i]);
    std::vector<Matrix<F>> act;
    for (std::size_t b = 0; b < alg->dim(); ++b) act.push_back(s.objects[i]->action(b).select_rows(idx).select_cols(idx));
    out.objects.push_back(make_module(alg, dims[i], std::move(act)));
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::size_t j = (i + 1) % s.size();
    auto tgt = i + 1 < s.size() ? out.objects[j] : fs.sigma_functor.apply(out.objects.front());
    auto m = s.maps[i].matrix.select_rows(range(lo[i], dims[i])).select_cols(range(lo[j], dims[j]));
    out.maps.emplace_back(out.objects[i], tgt, std::move(m));
  }
  return out;
}

enum class Direction { left, right };

/// Left: X_2 -> ... -> X_N -> Σ X_1 -> Σ X_2 with last map (-1)^N Σ f_1. Right is its inverse.
template <class F>
NSigmaSequence<F> rotate(const FunctorSequence<F>& fs, const NSigmaSequence<F>& x, Direction d) {
  const std::size_t n = x.size();
  const auto& s = fs.sigma_functor;
  const bool odd = n % 2 == 1;
  NSigmaSequence<F> r;
  if (d == Direction::left) {
    for (std::size_t i = 1; i < n; ++i) r.objects.push_back(x.objects[i]);
    r.objects.push_back(s.apply(x.objects.front()));
    for (std::size_t i = 1; i + 1 < n; ++i) r.maps.push_back(x.maps[i]);
    r.maps.emplace_back(x.objects.back(), r.objects.back(), x.maps.back().matrix);
    auto last = odd ? -x.maps.front().matrix : x.maps.front().matrix;
    r.maps.emplace_back(r.objects.back(), s.apply(x.objects[1]), last);
  } else {
    auto first = s.unapply(x.objects.back());
    r.objects.push_back(first);
    for (std::size_t i = 0; i + 1 < n; ++i) r.objects.push_back(x.objects[i]);
    auto m0 = odd ? -x.maps.back().matrix : x.maps.back().matrix;
    r.maps.emplace_back(first, x.objects.front(), m0);
    for (std::size_t i = 0; i + 2 < n; ++i) r.maps.push_back(x.maps[i]);
    r.maps.emplace_back(x.objects[n - 2], s.apply(first), x.maps[n - 2].matrix);
  }
  return r;
}

/// Exactness of the periodic extension at all N positions; empty string when exact.
template <class F>
std::string exactness_defect(const NSigmaSequence<F>& x) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& in = x.maps[(i + n - 1) % n];  // Σ^{-1} f_N at position 1 has the matrix of f_N
    const auto& out = x.maps[i];
    if (!(in.matrix * out.matrix).is_zero())
      return "position " + std::to_string(i + 1) + ": composite is not zero";
    if (rank(in.matrix) + rank(out.matrix) != x.objects[i]->dim())
      return "position " + std::to_string(i + 1) + ": not exact";
  }
  return {};
}

template <class F>
bool is_exact(const NSigmaSequence<F>& x) {
  return exactness_defect(x).empty();
}

/// Maps are module maps, objects are projective and the last map lands in Σ X_1.
template <class F>
std::string structure_defect(const FunctorSequence<F>& fs, const NSigmaSequence<F>& x) {
  if (x.size() != fs.n()) return "expected " + std::to_string(fs.n()) + " objects";
  if (x.maps.back().target->actions() != fs.sigma_functor.apply(x.objects.front())->actions())
    return "last map does not land in the suspension of the first object";
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x.maps[i].is_module_map()) return "map " + std::to_string(i + 1) + " is not a module homomorphism";
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!is_projective(x.objects[i])) return "object " + std::to_string(i + 1) + " is not projective";
  return {};
}

/// Comparison ladder between an exact row M -> T_1 -> ... -> T_k ->> E (t.size() == k + 1)
/// and the standard injective resolution of M. Returns the rungs T_j -> I_{j-1} and E -> Ω^{-k} M.
template <class F>
struct Ladder {
  std::vector<Morphism<F>> rungs;
  Morphism<F> end;
};

template <class F>
Ladder<F> comparison_ladder(const std::vector<Morphism<F>>& t, const StandardResolution<F>& res) {
  const std::size_t k = t.size() - 1;
  if (res.length() < k) throw std::invalid_argument("comparison ladder: resolution too short");
  auto first = image(t[0]);
  auto kappa = Morphism<F>(first.sub.module, res.cosyzygy(0), *inverse(first.corestriction.matrix));
  auto z = first.sub;
  std::vector<Morphism<F>> rungs;
  for (std::size_t j = 0; j < k; ++j) {
    auto c = extend_into_injective(z.inclusion, compose(res.hull(j).map, kappa));
    rungs.push_back(c);
    auto down = compose(res.to_next(j), c);
    if (j + 1 == k) return Ladder<F>{std::move(rungs), factor_through_epi(t[k], down)};
    auto im = image(t[j + 1]);
    kappa = factor_through_epi(im.corestriction, down);
    z = im.sub;
  }
  throw std::logic_error("unreachable");
}

/// α_M: Σ M -> Ω^{-N} M from the ladder of the functor sequence evaluated at M.
template <class F>
Morphism<F> alpha(const FunctorSequence<F>&, const Evaluation<F>& e, const StandardResolution<F>& res) {
  std::vector<Morphism<F>> t{e.unit};
  for (const auto& m : e.maps) t.push_back(m);
  t.push_back(e.counit);
  return comparison_ladder(t, res).end;
}

template <class F>
Morphism<F> alpha(const FunctorSequence<F>& fs, const ModulePtr<F>& m) {
  return alpha(fs, evaluate(fs, m), standard_resolution(m, fs.n(), fs.choices));
}

/// f_N = Σl ∘ π_N with π_N: X_N ->> Σ M, M = ker f_1.
template <class F>
struct KernelData {
  Submodule<F> kernel;
  ModulePtr<F> suspended;
  Morphism<F> pi;  // X_N -> Σ M
};

template <class F>
KernelData<F> kernel_data(const FunctorSequence<F>& fs, const NSigmaSequence<F>& x) {
  auto k = kernel(x.maps.front());
  auto sm = fs.sigma_functor.apply(k.module);
  Morphism<F> sl(sm, x.maps.back().target, k.inclusion.matrix);
  auto pi = factor_through_mono(sl, x.maps.back());
  return KernelData<F>{std::move(k), std::move(sm), std::move(pi)};
}

/// β_M: Σ M -> Ω^{-N} M reading the exact sequence as the start of an injective resolution of M.
template <class F>
Morphism<F> beta(const NSigmaSequence<F>& x, const KernelData<F>& kd, const StandardResolution<F>& res) {
  std::vector<Morphism<F>> t{kd.kernel.inclusion};
  for (std::size_t i = 0; i + 1 < x.size(); ++i) t.push_back(x.maps[i]);
  t.push_back(kd.pi);
  return comparison_ladder(t, res).end;
}

template <class F>
struct PhiCertificate {
  bool verdict = false;
  std::string defect;  // structural or exactness defect, empty when exact
  ModulePtr<F> kernel;
  std::optional<Morphism<F>> alpha, beta;
};

template <class F>
PhiCertificate<F> phi_member(const FunctorSequence<F>& fs, const NSigmaSequence<F>& x) {
  PhiCertificate<F> c;
  c.defect = structure_defect(fs, x);
  if (c.defect.empty()) c.defect = exactness_defect(x);
  if (!c.defect.empty()) return c;
  auto kd = kernel_data(fs, x);
  c.kernel = kd.kernel.module;
  auto res = standard_resolution(c.kernel, fs.n(), fs.choices);
  auto e = evaluate(fs, c.kernel);
  c.alpha = alpha(fs, e, res);
  Morphism<F> b = beta(x, kd, res);
  c.beta = Morphism<F>(c.alpha->source, c.alpha->target, b.matrix);
  c.verdict = stable_equal(*c.alpha, *c.beta);
  return c;
}

/// Morphism of n-Σ-sequences (φ_1, ..., φ_N).
template <class F>
using SequenceMorphism = std::vector<Morphism<F>>;

/// Empty string when every square commutes, including g_N φ_N = Σφ_1 f_N.
template <class F>
std::string morphism_defect(const NSigmaSequence<F>& x, const NSigmaSequence<F>& y, const SequenceMorphism<F>& phi) {
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& next = phi[(i + 1) % n].matrix;  // Σφ_1 has the matrix of φ_1
    if (x.maps[i].matrix * next != phi[i].matrix * y.maps[i].matrix)
      return "square " + std::to_string(i + 1) + " does not commute";
  }
  for (std::size_t i = 0; i < n; ++i)
    if (!phi[i].is_module_map()) return "component " + std::to_string(i + 1) + " is not a module homomorphism";
  return {};
}

namespace detail {

/// Given φ_{i} with commuting square behind it, φ_{i+1}: X_{i+1} -> Y_{i+1} with φ_{i+1} f_i = g_i φ_i.
template <class F>
Morphism<F> extend_square(const Morphism<F>& f, const Morphism<F>& g, const Morphism<F>& phi,
                          const ModulePtr<F>& target) {
  auto im = image(f);
  Morphism<F> down(f.source, target, phi.matrix * g.matrix);
  auto on_image = factor_through_epi(im.corestriction, down);
  return extend_into_injective(im.sub.inclusion, on_image);
}

/// h: X_{i+1} -> Y with h f = d, for d vanishing on ker f and Y injective.
template <class F>
Morphism<F> divide_on_left(const Morphism<F>& f, const Morphism<F>& d) {
  auto im = image(f);
  return extend_into_injective(im.sub.inclusion, factor_through_epi(im.corestriction, d));
}

}  // namespace detail

/// Completes a commuting square (φ_1, φ_2) between sequences in Φ to an n-Σ-periodic morphism,
/// correcting φ_N by c a π_N so that the boundary square commutes.
template <class F>
SequenceMorphism<F> fill_morphism(const FunctorSequence<F>& fs, const NSigmaSequence<F>& x,
                                  const NSigmaSequence<F>& y, const Morphism<F>& phi1, const Morphism<F>& phi2) {
  const std::size_t n = x.size();
  if (x.maps[0].matrix * phi2.matrix != phi1.matrix * y.maps[0].matrix)
    throw HypothesisViolated("fill: the given square does not commute");
  SequenceMorphism<F> phi{phi1, phi2};
  for (std::size_t i = 2; i < n; ++i)
    phi.push_back(detail::extend_square(x.maps[i - 1], y.maps[i - 1], phi[i - 1], y.objects[i]));

  auto kx = kernel_data(fs, x);
  auto ky = kernel_data(fs, y);
  auto h = factor_through_mono(ky.kernel.inclusion, compose(phi1, kx.kernel.inclusion));
  auto p = factor_through_epi(kx.pi, compose(ky.pi, phi.back()));
  Morphism<F> sh(kx.suspended, ky.suspended, h.matrix);
  auto sf = stable_factorization(p - sh);
  if (!sf) throw HypothesisViolated("fill: induced map is not stably Σh; are both sequences in Φ?");
  auto c = lift_through_epi(sf->through, ky.pi);
  auto corr = kx.pi.matrix * sf->hull.map.matrix * c.matrix;
  phi.back() = Morphism<F>(phi.back().source, phi.back().target, phi.back().matrix - corr);
  auto defect = morphism_defect(x, y, phi);
  if (!defect.empty()) throw MathError("fill: " + defect);
  return phi;
}

/// Homotopy equivalence X -> T_M for X in Φ with M = ker f_1.
template <class F>
SequenceMorphism<F> to_standard(const FunctorSequence<F>& fs, const NSigmaSequence<F>& x, const Submodule<F>& k,
                                const Evaluation<F>& e, const NSigmaSequence<F>& t) {
  auto phi1 = extend_into_injective(k.inclusion, Morphism<F>(k.module, t.objects[0], e.unit.matrix));
  auto phi2 = detail::extend_square(x.maps[0], t.maps[0], phi1, t.objects[1]);
  return fill_morphism(fs, x, t, phi1, phi2);
}

/// Homotopy equivalence T_N -> Y for Y in Φ with N = ker g_1.
template <class F>
SequenceMorphism<F> from_standard(const FunctorSequence<F>& fs, const NSigmaSequence<F>& y, const Submodule<F>& k,
                                  const Evaluation<F>& e, const NSigmaSequence<F>& t) {
  auto phi1 = extend_into_injective(Morphism<F>(k.module, t.objects[0], e.unit.matrix), k.inclusion);
  auto phi2 = detail::extend_square(t.maps[0], y.maps[0], phi1, y.objects[1]);
  return fill_morphism(fs, t, y, phi1, phi2);
}

template <class F>
struct FillAndCone {
  SequenceMorphism<F> phi;
  NSigmaSequence<F> cone;
};

/// Mapping cone: X_{i+1} ⊕ Y_i with maps [[-f_{i+1}, φ_{i+1}], [0, g_i]] (row convention).
template <class F>
NSigmaSequence<F> mapping_cone(const FunctorSequence<F>& fs, const NSigmaSequence<F>& x, const NSigmaSequence<F>& y,
                               const SequenceMorphism<F>& phi) {
  const std::size_t n = x.size();
  const auto& s = fs.sigma_functor;
  NSigmaSequence<F> c;
  for (std::size_t i = 0; i < n; ++i) {
    auto xi = i + 1 < n ? x.objects[i + 1] : s.apply(x.objects[0]);
    c.objects.push_back(direct_sum(xi, y.objects[i]).module);
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = (i + 1) % n;  // f_{i+1}, φ_{i+1} (Σf_1, Σφ_1 at the end)
    const auto& fx = x.maps[j].matrix;
    const auto& ph = phi[j].matrix;
    const auto& gy = y.maps[i].matrix;
    Matrix<F> top = Matrix<F>::hstack(-fx, ph);
    Matrix<F> bottom = Matrix<F>::hstack(Matrix<F>(fx.field(), gy.rows(), fx.cols()), gy);
    auto tgt = i + 1 < n ? c.objects[i + 1] : s.apply(c.objects[0]);
    c.maps.emplace_back(c.objects[i], tgt, Matrix<F>::vstack(top, bottom));
  }
  return c;
}

/// The good fill of the N4 construction: ϕ = b ∘ T(h) ∘ a corrected by the homotopy (0, h_2, h_3, 0, ...).
template <class F>
FillAndCone<F> good_fill_and_cone(const FunctorSequence<F>& fs, const NSigmaSequence<F>& x,
                                  const NSigmaSequence<F>& y, const Morphism<F>& phi1, const Morphism<F>& phi2) {
  const std::size_t n = x.size();
  if (x.maps[0].matrix * phi2.matrix != phi1.matrix * y.maps[0].matrix)
    throw HypothesisViolated("good fill: the given square does not commute");
  auto kx = kernel(x.maps[0]);
  auto ky = kernel(y.maps[0]);
  auto em = evaluate(fs, kx.module);
  auto en = evaluate(fs, ky.module);
  auto tm = standard_angle(fs, em);
  auto tn = standard_angle(fs, en);
  auto a = to_standard(fs, x, kx, em, tm);
  auto b = from_standard(fs, y, ky, en, tn);
  auto h = factor_through_mono(ky.inclusion, compose(phi1, kx.inclusion));

  SequenceMorphism<F> vphi;
  for (std::size_t i = 0; i < n; ++i) {
    auto th = tensor_map_left(h, em.terms[i], en.terms[i]);
    vphi.emplace_back(x.objects[i], y.objects[i], a[i].matrix * th.matrix * b[i].matrix);
  }
  Morphism<F> d1(x.objects[0], y.objects[0], phi1.matrix - vphi[0].matrix);
  auto h2 = detail::divide_on_left(x.maps[0], d1);
  Morphism<F> d2(x.objects[1], y.objects[1], phi2.matrix - vphi[1].matrix - h2.matrix * y.maps[0].matrix);
  auto h3 = detail::divide_on_left(x.maps[1], d2);

  SequenceMorphism<F> phi{phi1, phi2};
  phi.emplace_back(x.objects[2], y.objects[2], vphi[2].matrix + h3.matrix * y.maps[1].matrix);
  for (std::size_t i = 3; i < n; ++i) phi.push_back(vphi[i]);
  auto defect = morphism_defect(x, y, phi);
  if (!defect.empty()) throw MathError("good fill: " + defect);
  return FillAndCone<F>{phi, mapping_cone(fs, x, y, phi)};
}

/// N1c: completes f_1: X_1 -> X_2 to a sequence in Φ via the pullback of h and p_C.
template <class F>
NSigmaSequence<F> complete_morphism(const FunctorSequence<F>& fs, const Morphism<F>& f1) {
  const std::size_t n = fs.n();
  const auto& s = fs.sigma_functor;
  auto ka = kernel(f1);
  auto coker = cokernel(f1);
  NSigmaSequence<F> x;
  x.objects = {f1.source, f1.target};
  x.maps = {f1};
  Morphism<F> last = coker.projection;  // into C when n = 3
  if (n > 3) {
    auto eb = evaluate(fs, coker.module);
    x.objects.push_back(eb.term(1));
    x.maps.push_back(compose(eb.unit, coker.projection));
    for (std::size_t i = 1; i + 3 < n; ++i) {
      x.objects.push_back(eb.term(i + 1));
      x.maps.push_back(eb.maps[i - 1]);
    }
    last = cokernel(x.maps.back()).projection;
  }
  const auto& cq = last.target;

  // Ladder of 0 -> A -> X_1 -> ... -> E_{N-1} -> C -> 0 against the resolution of A.
  auto res = standard_resolution(ka.module, n, fs.choices);
  std::vector<Morphism<F>> t{ka.inclusion};
  for (const auto& m : x.maps) t.push_back(m);
  t.push_back(last);
  auto g = comparison_ladder(t, res).end;  // C -> Ω^{1-N} A

  auto step_c = cosyzygy(cq, fs.choices);
  auto omega_g = cosyzygy_map(g, step_c, res.steps[n - 1]).second;  // Ω^{-1}C -> Ω^{-N}A
  auto ea = evaluate(fs, ka.module);
  auto al = alpha(fs, ea, res);

  // h: ΣA -> Ω^{-1}C with (Ω^{-1}g) h = α_A stably.
  const auto& sa = ea.suspended;
  auto hb = hom_space(sa, step_c.quotient.module);
  std::vector<Matrix<F>> lhs;
  for (const auto& hk : hb) lhs.push_back(hk.matrix * omega_g.matrix);
  auto coeffs = stable_solve(lhs, sa, al.target, al.matrix);
  if (!coeffs) throw MathError("complete_morphism: comparison map is not a stable isomorphism");
  auto hmap = combine(hb, *coeffs, sa, step_c.quotient.module);

  auto pb = pullback(hmap, step_c.quotient.projection);
  const auto& sum = pb.sub.inclusion.target;
  Matrix<F> into(f1.matrix.field(), cq->dim(), sum->dim());
  into.set_block(0, sa->dim(), step_c.hull.map.matrix);
  auto l_last = factor_through_mono(pb.sub.inclusion, Morphism<F>(cq, sum, into));
  x.objects.push_back(pb.module);
  x.maps.push_back(compose(l_last, last));
  x.maps.emplace_back(pb.module, s.apply(f1.source), pb.to_x.matrix * ka.inclusion.matrix);
  return x;
}

/// An n-Σ-periodic homotopy (h_1, ..., h_N), h_i: X_i -> X_{i-1} (h_1: X_1 -> Σ^{-1} X_N),
/// with f_{i-1} h_i + h_{i+1} f_i = 1, if the sequence is contractible.
template <class F>
std::optional<SequenceMorphism<F>> contractible_test(const FunctorSequence<F>& fs, const NSigmaSequence<F>& x) {
  if (!is_exact(x)) return std::nullopt;
  const std::size_t n = x.size();
  const F& f = fs.algebra->field();
  // Z_i = ker f_i; the sequence is contractible iff every Z_i is projective (hence injective).
  std::vector<Submodule<F>> z;
  for (std::size_t i = 0; i < n; ++i) {
    z.push_back(kernel(x.maps[i]));
    if (!is_projective(z.back().module)) return std::nullopt;
  }
  // r_i: X_i -> Z_i retraction; s_i: Z_{i+1} -> X_i section of the corestriction with r_i s_i = 0.
  std::vector<Morphism<F>> r, sec;
  for (std::size_t i = 0; i < n; ++i)
    r.push_back(extend_into_injective(z[i].inclusion, Morphism<F>::identity(z[i].module)));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& zn = z[(i + 1) % n];
    auto zm = i + 1 < n ? zn.module : fs.sigma_functor.apply(zn.module);
    Morphism<F> q(x.objects[i], zm, zn.coordinates(x.maps[i].matrix));
    auto s0 = lift_through_epi(Morphism<F>::identity(zm), q);
    auto proj = Matrix<F>::identity(f, x.objects[i]->dim()) - r[i].matrix * z[i].inclusion.matrix;
    sec.emplace_back(zm, x.objects[i], s0.matrix * proj);
  }
  SequenceMorphism<F> h;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t prev = (i + n - 1) % n;
    auto tgt = i == 0 ? fs.sigma_functor.unapply(x.objects[prev]) : x.objects[prev];
    h.emplace_back(x.objects[i], tgt, r[i].matrix * sec[prev].matrix);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& fin = x.maps[(i + n - 1) % n].matrix;
    auto lhs = h[i].matrix * fin + x.maps[i].matrix * h[(i + 1) % n].matrix;
    if (!lhs.is_identity()) throw MathError("contractible_test: homotopy check failed at " + std::to_string(i + 1));
  }
  return h;
}

/// An n-Σ-periodic homotopy for φ: X -> Y (φ_i = g_{i-1} h_i + h_{i+1} f_i), if one exists.
template <class F>
std::optional<SequenceMorphism<F>> null_homotopy(const FunctorSequence<F>& fs, const NSigmaSequence<F>& x,
                                                 const NSigmaSequence<F>& y, const SequenceMorphism<F>& phi) {
  const std::size_t n = x.size();
  const F& f = x.objects[0]->field();
  std::vector<ModulePtr<F>> tgt;  // Y_{i-1}, with Σ^{-1} Y_N for i = 1
  for (std::size_t i = 0; i < n; ++i)
    tgt.push_back(i == 0 ? fs.sigma_functor.unapply(y.objects[n - 1]) : y.objects[i - 1]);
  std::vector<std::vector<Morphism<F>>> bases(n);  // h_i: X_i -> Y_{i-1}
  for (std::size_t i = 0; i < n; ++i) bases[i] = hom_space(x.objects[i], tgt[i]);
  std::size_t unknowns = 0;
  std::vector<std::size_t> off;
  for (const auto& b : bases) {
    off.push_back(unknowns);
    unknowns += b.size();
  }
  std::size_t cells = 0;
  for (std::size_t i = 0; i < n; ++i) cells += x.objects[i]->dim() * y.objects[i]->dim();
  Matrix<F> coef(f, unknowns, cells), rhs(f, 1, cells);
  std::size_t col = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t w = x.objects[i]->dim() * y.objects[i]->dim();
    rhs.set_block(0, col, detail::flatten(phi[i].matrix));
    const auto& gprev = y.maps[(i + n - 1) % n].matrix;
    for (std::size_t k = 0; k < bases[i].size(); ++k)
      coef.set_block(off[i] + k, col, detail::flatten(bases[i][k].matrix * gprev));
    std::size_t nx = (i + 1) % n;
    for (std::size_t k = 0; k < bases[nx].size(); ++k) {
      auto prod = x.maps[i].matrix * bases[nx][k].matrix;
      auto cur = coef.block(off[nx] + k, col, 1, w);
      coef.set_block(off[nx] + k, col, cur + detail::flatten(prod));
    }
    col += w;
  }
  if (unknowns == 0) {
    if (rhs.is_zero()) {
      SequenceMorphism<F> h;
      for (std::size_t i = 0; i < n; ++i) h.push_back(Morphism<F>::zero(x.objects[i], tgt[i]));
      return h;
    }
    return std::nullopt;
  }
  auto sol = solve_many(coef, rhs);
  if (!sol) return std::nullopt;
  SequenceMorphism<F> h;
  for (std::size_t i = 0; i < n; ++i) {
    Matrix<F> m(f, x.objects[i]->dim(), tgt[i]->dim());
    for (std::size_t k = 0; k < bases[i].size(); ++k) m.add_scaled(bases[i][k].matrix, (*sol)(0, off[i] + k));
    h.emplace_back(x.objects[i], tgt[i], std::move(m));
  }
  return h;
}

/// P = ⊕ e_{v_k} A with 1 to max_summands random summands.
template <class F>
ModulePtr<F> random_projective(const AlgebraPtr<F>& a, Rng& rng, std::size_t max_summands = 2) {
  std::vector<std::size_t> vs(1 + rng() % max_summands);
  for (auto& v : vs) v = rng() % a->vertex_count();
  return standard_projective(a, vs).module;
}

template <class F>
Morphism<F> random_morphism(const ModulePtr<F>& m, const ModulePtr<F>& n, Rng& rng) {
  auto basis = hom_space(m, n);
  std::vector<typename F::value_type> c(basis.size());
  for (auto& x : c) x = m->field().random(rng);
  return combine(basis, c, m, n);
}

/// A random quotient of a random projective by the submodule generated by up to two random elements.
template <class F>
ModulePtr<F> random_module(const AlgebraPtr<F>& a, Rng& rng) {
  auto p = random_projective(a, rng);
  const F& f = a->field();
  Matrix<F> gens(f, rng() % 3, p->dim());
  for (std::size_t i = 0; i < gens.rows(); ++i)
    for (std::size_t j = 0; j < gens.cols(); ++j) gens(i, j) = f.random(rng);
  auto sub = generated_submodule(p, gens);
  return quotient(p, sub.basis.reduced).module;
}

}  // namespace nangle
