#pragma once

#include <string>

#include "nangle/io.hpp"
#include "nangle/quiver.hpp"

namespace nangle::testing {

inline std::string fixture(const std::string& name) {
  return read_file(std::string(NANGLE_FIXTURE_DIR) + "/" + name);
}

inline QuiverAlgebra<PrimeField> load(const std::string& name) {
  auto spec = parse_algebra(fixture(name + ".json"));
  return compute_basis(spec, PrimeField(spec.characteristic));
}

/// Hom_A(M, N) by brute-force linear algebra: all dim M * dim N unknowns, one equation
/// block per algebra basis element.
template <class F>
std::size_t hom_dimension_oracle(const Module<F>& m, const Module<F>& n) {
  const F& f = m.field();
  const std::size_t a = m.dim(), b = n.dim();
  if (a * b == 0) return 0;
  const std::size_t d = m.algebra()->dim();
  Matrix<F> coef(f, a * b, d * a * b);
  for (std::size_t e = 0; e < d; ++e) {
    const auto& ma = m.action(e);
    const auto& na = n.action(e);
    // (M_e X - X N_e)(i, j) = sum_k M_e(i,k) X(k,j) - sum_k X(i,k) N_e(k,j)
    for (std::size_t i = 0; i < a; ++i)
      for (std::size_t j = 0; j < b; ++j) {
        std::size_t col = e * a * b + i * b + j;
        for (std::size_t k = 0; k < a; ++k)
          if (!f.is_zero(ma(i, k))) coef(k * b + j, col) = f.add(coef(k * b + j, col), ma(i, k));
        for (std::size_t k = 0; k < b; ++k)
          if (!f.is_zero(na(k, j))) coef(i * b + k, col) = f.sub(coef(i * b + k, col), na(k, j));
      }
  }
  return a * b - rank(coef);
}

/// dim M ⊗_A B from the full presentation M ⊗_k B / (m a ⊗ b - m ⊗ a b) over all basis elements a.
template <class F>
std::size_t tensor_dimension_oracle(const Module<F>& m, const Module<F>& bimod) {
  const F& f = m.field();
  const auto& a = m.algebra();
  const std::size_t d = a->dim(), mm = m.dim(), bb = bimod.dim();
  std::vector<Matrix<F>> left(d);
  for (std::size_t x = 0; x < d; ++x) left[x] = bimodule_left_action(bimod, a->basis_vector(x));
  Matrix<F> rel(f, d * mm * bb, mm * bb);
  std::size_t r = 0;
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t i = 0; i < mm; ++i)
      for (std::size_t j = 0; j < bb; ++j, ++r) {
        for (std::size_t k = 0; k < mm; ++k) {
          auto c = m.action(x)(i, k);
          if (!f.is_zero(c)) rel(r, k * bb + j) = f.add(rel(r, k * bb + j), c);
        }
        for (std::size_t k = 0; k < bb; ++k) {
          auto c = left[x](j, k);
          if (!f.is_zero(c)) rel(r, i * bb + k) = f.sub(rel(r, i * bb + k), c);
        }
      }
  return mm * bb - rank(rel);
}

}  // namespace nangle::testing
