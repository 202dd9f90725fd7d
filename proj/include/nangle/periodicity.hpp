#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "nangle/homological.hpp"

namespace nangle {

/// Minimal projective resolution of A over A^e: ... -> P_2 -> P_1 -> A -> 0.
template <class F>
struct BimoduleResolution {
  AlgebraPtr<F> algebra;
  AlgebraPtr<F> enveloping;
  ModulePtr<F> regular;               // A as a bimodule
  std::vector<Cover<F>> covers;       // covers[i]: P_{i+1} ->> Ω^i (Ω^0 = A)
  std::vector<Submodule<F>> kernels;  // kernels[i] = Ω^{i+1} inside P_{i+1}

  std::size_t length() const { return covers.size(); }
  const ModulePtr<F>& term(std::size_t i) const { return covers[i - 1].projective.module; }
  const ModulePtr<F>& syzygy(std::size_t i) const { return i == 0 ? regular : kernels[i - 1].module; }

  /// d_i : P_i -> P_{i-1} (i >= 2); d_1 is the augmentation P_1 -> A.
  Morphism<F> differential(std::size_t i) const {
    if (i == 1) return covers[0].map;
    return compose(kernels[i - 2].inclusion, covers[i - 1].map);
  }

  Resolution<F> as_resolution() const {
    Resolution<F> r{Resolution<F>::Kind::projective, {}, {}, covers.front().map};
    for (std::size_t i = 1; i <= length(); ++i) r.terms.push_back(term(i));
    for (std::size_t i = 2; i <= length(); ++i) r.maps.push_back(differential(i));
    return r;
  }
};

inline constexpr std::size_t kSyzygyDimensionLimit = 10000;

/// Ω^1 .. Ω^{max_n} of A over A^e via minimal covers.
template <class F>
BimoduleResolution<F> bimodule_syzygies(const AlgebraPtr<F>& a, std::size_t max_n, Choices ch = {}) {
  BimoduleResolution<F> r;
  r.algebra = a;
  r.enveloping = enveloping(a);
  r.regular = regular_bimodule(r.enveloping);
  auto cur = r.regular;
  for (std::size_t i = 0; i < max_n; ++i) {
    auto cov = projective_cover(cur, ch);
    if (cov.projective.module->dim() > kSyzygyDimensionLimit)
      throw ResourceLimit("bimodule resolution term " + std::to_string(i + 1) + " exceeds " +
                          std::to_string(kSyzygyDimensionLimit) + " dimensions");
    auto k = kernel(cov.map);
    cur = k.module;
    r.covers.push_back(std::move(cov));
    r.kernels.push_back(std::move(k));
  }
  return r;
}

/// σ together with the bimodule isomorphism φ: ₁A_σ -> M, a -> a·g.
template <class F>
struct TwistWitness {
  Automorphism<F> sigma;
  Morphism<F> iso;
  Matrix<F> generator;  // g in ambient coordinates of M
};

/// Detects M ≅ ₁A_σ. The generator g = Σ_i g_i takes, for each vertex, the first echelon
/// vector of e_i M outside J M; σ is then read off from g·b = σ(b)·g.
template <class F>
std::optional<TwistWitness<F>> detect_twist(const ModulePtr<F>& m) {
  const auto& ae = m->algebra();
  const auto& a = ae->base();
  const F& f = m->field();
  const std::size_t d = a->dim();
  if (m->dim() != d) return std::nullopt;
  Matrix<F> jm(f, 0, d);
  for (auto r : a->radical_generators()) jm = Matrix<F>::vstack(jm, bimodule_left_action(*m, a->basis_vector(r)));
  auto jech = rref(jm);
  Matrix<F> g(f, 1, d);
  for (std::size_t v = 0; v < a->vertex_count(); ++v) {
    auto part = rref(bimodule_left_action(*m, a->basis_vector(a->idempotent(v))));
    IncrementalBasis<F> span(f, d);
    for (std::size_t i = 0; i < jech.rank(); ++i) span.insert(jech.reduced.row(i));
    std::size_t top = 0;
    std::optional<Matrix<F>> gi;
    for (std::size_t i = 0; i < part.rank(); ++i)
      if (span.insert(part.reduced.row(i))) {
        ++top;
        if (!gi) gi = part.reduced.row(i);
      }
    if (top != 1) return std::nullopt;
    g += *gi;
  }
  Matrix<F> phi(f, d, d);
  for (std::size_t b = 0; b < d; ++b) phi.set_row(b, g * bimodule_left_action(*m, a->basis_vector(b)));
  auto phi_inv = inverse(phi);
  if (!phi_inv) return std::nullopt;
  Matrix<F> s(f, d, d);
  for (std::size_t b = 0; b < d; ++b) s.set_row(b, g * bimodule_right_action(*m, a->basis_vector(b)) * *phi_inv);
  std::optional<Automorphism<F>> sigma;
  try {
    sigma = verify_automorphism(a, s);
  } catch (const NotAutomorphism&) {
    return std::nullopt;
  }
  Morphism<F> iso(twisted_bimodule(ae, *sigma), m, phi);
  if (!iso.is_module_map()) return std::nullopt;
  return TwistWitness<F>{*sigma, std::move(iso), std::move(g)};
}

/// A unit u with u b = σ(b) u for all b, if σ is inner.
template <class F>
std::optional<Matrix<F>> inner_witness(const Automorphism<F>& sigma, std::uint64_t seed = 0x1a2b) {
  const auto& a = sigma.algebra();
  const F& f = a->field();
  const std::size_t d = a->dim();
  Matrix<F> eqs(f, d, 0);
  for (std::size_t b = 0; b < d; ++b)
    eqs = Matrix<F>::hstack(eqs, a->right_multiplication(a->basis_vector(b)) -
                                     a->left_multiplication(sigma.matrix().row(b)));
  auto sol = kernel_basis(eqs);
  if (sol.rows() == 0) return std::nullopt;
  auto is_unit = [&](const Matrix<F>& u) { return rank(a->left_multiplication(u)) == d; };
  for (std::size_t i = 0; i < sol.rows(); ++i)
    if (is_unit(sol.row(i))) return sol.row(i);
  Rng rng(seed);
  for (int draw = 0; draw < 200; ++draw) {
    Matrix<F> u(f, 1, d);
    for (std::size_t i = 0; i < sol.rows(); ++i) u.add_scaled(sol.row(i), f.random(rng));
    if (is_unit(u)) return u;
  }
  return std::nullopt;
}

template <class F>
bool is_inner(const Automorphism<F>& sigma) {
  return static_cast<bool>(inner_witness(sigma));
}

inline constexpr std::size_t kTwistOrderBound = 64;

template <class F>
struct PeriodicityReport {
  std::size_t quasi_period = 0;
  TwistWitness<F> twist;
  std::optional<std::size_t> twist_order;  // smallest l with σ^l = id
  std::optional<std::size_t> inner_order;  // smallest l with σ^l inner
  std::optional<std::size_t> period;       // quasi_period * inner_order
  bool minimal = true;                     // false when the quasi-period was fixed by the caller
  BimoduleResolution<F> resolution;
};

/// Smallest n <= max_n with Ω^n ≅ ₁A_σ, or exactly the given n when `fixed_n` is set.
template <class F>
std::optional<PeriodicityReport<F>> quasi_period_scan(const AlgebraPtr<F>& a, std::size_t max_n,
                                                      std::optional<std::size_t> fixed_n = std::nullopt,
                                                      Choices ch = {}) {
  const std::size_t top = fixed_n ? *fixed_n : max_n;
  auto res = bimodule_syzygies(a, top, ch);
  for (std::size_t n = fixed_n ? *fixed_n : 1; n <= top; ++n) {
    auto w = detect_twist(res.syzygy(n));
    if (!w) continue;
    PeriodicityReport<F> rep{n, std::move(*w), std::nullopt, std::nullopt, std::nullopt, !fixed_n, {}};
    auto p = Automorphism<F>::identity(a);
    for (std::size_t l = 1; l <= kTwistOrderBound; ++l) {
      p = rep.twist.sigma.after(p);
      if (!rep.inner_order && is_inner(p)) rep.inner_order = l;
      if (p.is_identity()) {
        rep.twist_order = l;
        break;
      }
    }
    if (rep.inner_order) rep.period = n * *rep.inner_order;
    // Keep only the segment P_1 .. P_n.
    res.covers.erase(res.covers.begin() + static_cast<long>(n), res.covers.end());
    res.kernels.erase(res.kernels.begin() + static_cast<long>(n), res.kernels.end());
    rep.resolution = std::move(res);
    return rep;
  }
  return std::nullopt;
}

/// A finite sequence of modules and maps M_0 -> M_1 -> ... -> M_k.
template <class F>
struct ModuleSequence {
  std::vector<ModulePtr<F>> modules;
  std::vector<Morphism<F>> maps;  // maps[i]: modules[i] -> modules[i+1]
};

/// Exactness of 0 -> M_0 -> ... -> M_k -> 0; empty string when exact.
template <class F>
std::string exactness_defect(const ModuleSequence<F>& s) {
  const auto& ms = s.modules;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    std::size_t in = i == 0 ? 0 : rank(s.maps[i - 1].matrix);
    std::size_t out = i + 1 < ms.size() ? rank(s.maps[i].matrix) : 0;
    if (i > 0 && i + 1 < ms.size() && !(s.maps[i - 1].matrix * s.maps[i].matrix).is_zero())
      return "position " + std::to_string(i) + ": composite is not zero";
    if (in + out != ms[i]->dim()) return "position " + std::to_string(i) + ": not exact";
  }
  for (const auto& f : s.maps)
    if (!f.is_module_map()) return "a map is not a module homomorphism";
  return {};
}

/// 0 -> ₁A_{σ^m} -> Q_{mn} -> ... -> Q_1 -> A -> 0 with Q_{kn+i} = ₁A_{σ^k} ⊗ P_i, realized as
/// P_i with the left action twisted by σ^{-k}; maps keep their matrices.
template <class F>
ModuleSequence<F> iterated_sequence(const PeriodicityReport<F>& rep, std::size_t m) {
  if (m == 0) throw std::invalid_argument("iterated sequence: m must be positive");
  const auto& res = rep.resolution;
  const std::size_t n = rep.quasi_period;
  const auto& sigma = rep.twist.sigma;
  const auto& ae = res.enveloping;
  auto s = sigma.matrix();
  auto psi = compose(res.kernels[n - 1].inclusion, rep.twist.iso);  // ₁A_σ -> P_n
  auto eps = res.differential(1);

  // Blocks k = m-1 down to 0, each P_n .. P_1.
  auto block_module = [&](std::size_t k, std::size_t i) {
    return k == 0 ? res.term(i) : left_twist(res.term(i), sigma.power(-static_cast<long>(k)));
  };
  ModuleSequence<F> out;
  out.modules.push_back(twisted_bimodule(ae, sigma.power(static_cast<long>(m))));
  for (std::size_t kk = m; kk-- > 0;)
    for (std::size_t i = n; i >= 1; --i) out.modules.push_back(block_module(kk, i));
  out.modules.push_back(res.regular);

  // Start: ₁A_{σ^m} -> Q_{mn} is a -> σ^{-(m-1)}(a) followed by ψ.
  auto start = sigma.power(-static_cast<long>(m - 1)).matrix() * psi.matrix;
  out.maps.emplace_back(out.modules[0], out.modules[1], start);
  std::size_t pos = 1;
  for (std::size_t kk = m; kk-- > 0;) {
    for (std::size_t i = n; i >= 2; --i, ++pos)
      out.maps.emplace_back(out.modules[pos], out.modules[pos + 1], res.differential(i).matrix);
    // Q_{kn+1} -> Q_{kn}: augmentation, then a -> σ(a), then ψ; the last block ends in A.
    if (kk > 0)
      out.maps.emplace_back(out.modules[pos], out.modules[pos + 1], eps.matrix * s * psi.matrix);
    else
      out.maps.emplace_back(out.modules[pos], out.modules[pos + 1], eps.matrix);
    ++pos;
  }
  return out;
}

}  // namespace nangle
