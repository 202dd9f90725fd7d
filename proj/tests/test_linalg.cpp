#include <gtest/gtest.h>

#include "nangle/matrix.hpp"

using namespace nangle;

namespace {

constexpr std::size_t kIterations = 200;

template <class F>
Matrix<F> random_matrix(const F& f, std::size_t r, std::size_t c, Rng& rng) {
  Matrix<F> m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = f.random(rng);
  return m;
}

// All vectors of length n over F_p, as integer codes.
Matrix<PrimeField> vector_from_code(const PrimeField& f, std::size_t n, std::uint64_t code) {
  Matrix<PrimeField> v(f, 1, n);
  for (std::size_t i = 0; i < n; ++i) {
    v(0, i) = static_cast<std::uint32_t>(code % f.characteristic());
    code /= f.characteristic();
  }
  return v;
}

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

TEST(PrimeField, ArithmeticIsCanonical) {
  PrimeField f(7);
  EXPECT_EQ(f.from_int(-1), 6u);
  EXPECT_EQ(f.mul(3, 5), 1u);
  EXPECT_EQ(f.inv(3), 5u);
  EXPECT_EQ(f.neg(0), 0u);
  for (std::uint32_t a = 1; a < 7; ++a) EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
  EXPECT_THROW(PrimeField(6), InputError);
  EXPECT_THROW(PrimeField(1), InputError);
}

TEST(RationalField, ReducedFractions) {
  RationalField q;
  auto half = q.inv(q.from_int(2));
  EXPECT_EQ(q.to_string(q.add(half, half)), "1");
  EXPECT_EQ(q.to_string(q.mul(q.from_int(4), q.inv(q.from_int(6)))), "2/3");
}

TEST(KernelBasis, IdentityHasNoKernel) {
  PrimeField f(5);
  EXPECT_EQ(kernel_basis(Matrix<PrimeField>::identity(f, 3)).rows(), 0u);
}

TEST(KernelBasis, ZeroMatrixKernelIsEverything) {
  PrimeField f(5);
  auto k = kernel_basis(Matrix<PrimeField>(f, 2, 2));
  EXPECT_EQ(k, Matrix<PrimeField>::identity(f, 2));
}

TEST(KernelBasis, SmallF3MatrixAgainstEnumeration) {
  PrimeField f(3);
  auto m = Matrix<PrimeField>::from_ints(f, {{1, 2}, {2, 1}});
  // Brute force: count x in F_3^2 with xM = 0.
  std::size_t count = 0;
  for (std::uint64_t code = 0; code < 9; ++code)
    if ((vector_from_code(f, 2, code) * m).is_zero()) ++count;
  auto k = kernel_basis(m);
  EXPECT_EQ(ipow(3, k.rows()), count);
  // det = 1 - 4 = -3 = 0 in F_3, so the kernel is one-dimensional.
  EXPECT_EQ(k.rows(), 1u);
  EXPECT_TRUE((k * m).is_zero());
}

TEST(KernelBasis, RankNullityAndEnumerationOracle) {
  PrimeField f(3);
  Rng rng(11);
  for (std::size_t it = 0; it < kIterations; ++it) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    auto m = random_matrix(f, r, c, rng);
    if (rng() % 3 == 0) m.set_row(0, Matrix<PrimeField>(f, 1, c));
    auto k = kernel_basis(m);
    EXPECT_EQ(rank(m) + k.rows(), r);
    EXPECT_TRUE((k * m).is_zero());
    std::size_t count = 0;
    for (std::uint64_t code = 0; code < ipow(3, r); ++code)
      if ((vector_from_code(f, r, code) * m).is_zero()) ++count;
    EXPECT_EQ(ipow(3, k.rows()), count);
    // Canonical form: the kernel basis is its own reduced echelon form.
    EXPECT_EQ(row_space(k), k);
  }
}

TEST(SolveLinear, IdentityReturnsRightHandSide) {
  PrimeField f(5);
  auto b = Matrix<PrimeField>::from_ints(f, {{1, 2, 3}});
  auto s = solve_linear(Matrix<PrimeField>::identity(f, 3), b);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->particular, b);
  EXPECT_EQ(s->kernel.rows(), 0u);
}

TEST(SolveLinear, ZeroMatrixNonzeroRhsHasNoSolution) {
  PrimeField f(5);
  auto b = Matrix<PrimeField>::from_ints(f, {{0, 1}});
  EXPECT_FALSE(solve_linear(Matrix<PrimeField>(f, 3, 2), b));
}

TEST(SolveLinear, DimensionMismatchIsInputError) {
  PrimeField f(5);
  EXPECT_THROW(solve_linear(Matrix<PrimeField>(f, 3, 2), Matrix<PrimeField>(f, 1, 3)), InputError);
}

TEST(SolveLinear, RandomF5SystemsAgainstExhaustiveSearch) {
  PrimeField f(5);
  Rng rng(2024);
  for (std::size_t it = 0; it < 60; ++it) {
    auto a = random_matrix(f, 4, 3, rng);
    if (it % 4 == 0) a.set_row(1, a.row(0));
    if (it % 5 == 0) a = Matrix<PrimeField>(f, 4, 3);
    auto b = random_matrix(f, 1, 3, rng);
    auto s = solve_linear(a, b);
    bool exists = false;
    for (std::uint64_t code = 0; code < ipow(5, 4) && !exists; ++code)
      if (vector_from_code(f, 4, code) * a == b) exists = true;
    EXPECT_EQ(static_cast<bool>(s), exists);
    if (s) {
      EXPECT_EQ(s->particular * a, b);
      EXPECT_EQ(s->kernel.rows(), 4 - rank(a));
    }
  }
}

TEST(SolveLinear, NoSolutionConfirmedOnSixDimensionalSearch) {
  PrimeField f(5);
  Rng rng(99);
  std::size_t checked = 0;
  for (std::size_t it = 0; it < 40 && checked < 5; ++it) {
    auto a = random_matrix(f, 6, 7, rng);
    for (std::size_t i = 3; i < 6; ++i) a.set_row(i, a.row(i - 3).scaled(f.from_int(static_cast<std::int64_t>(i))));
    auto b = random_matrix(f, 1, 7, rng);
    if (solve_linear(a, b)) continue;
    ++checked;
    bool found = false;
    for (std::uint64_t code = 0; code < ipow(5, 6) && !found; ++code)
      if (vector_from_code(f, 6, code) * a == b) found = true;
    EXPECT_FALSE(found);
  }
  EXPECT_GT(checked, 0u);
}

TEST(SolveLinear, ParticularSolutionHasZeroFreeVariables) {
  PrimeField f(7);
  // x A = b with A having a zero row: that coordinate is free and must be 0.
  auto a = Matrix<PrimeField>::from_ints(f, {{1, 0}, {0, 0}, {0, 1}});
  auto b = Matrix<PrimeField>::from_ints(f, {{3, 4}});
  auto s = solve_linear(a, b);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->particular, Matrix<PrimeField>::from_ints(f, {{3, 0, 4}}));
}

TEST(Linalg, DeterministicOutputs) {
  PrimeField f(5);
  Rng r1(5), r2(5);
  for (std::size_t it = 0; it < 20; ++it) {
    auto a = random_matrix(f, 5, 4, r1);
    auto b = random_matrix(f, 5, 4, r2);
    EXPECT_EQ(kernel_basis(a), kernel_basis(b));
    EXPECT_EQ(rref(a).reduced, rref(b).reduced);
  }
}

TEST(Linalg, RationalKernelAndInverse) {
  RationalField q;
  Rng rng(3);
  for (std::size_t it = 0; it < 30; ++it) {
    auto m = random_matrix(q, 4, 3, rng);
    auto k = kernel_basis(m);
    EXPECT_EQ(rank(m) + k.rows(), 4u);
    EXPECT_TRUE((k * m).is_zero());
    auto sq = random_matrix(q, 3, 3, rng);
    auto inv = inverse(sq);
    if (rank(sq) == 3) {
      ASSERT_TRUE(inv);
      EXPECT_TRUE((*inv * sq).is_identity());
    } else {
      EXPECT_FALSE(inv);
    }
  }
}

TEST(Linalg, IncrementalBasisTracksSpan) {
  PrimeField f(3);
  IncrementalBasis<PrimeField> ib(f, 3);
  EXPECT_TRUE(ib.insert(Matrix<PrimeField>::from_ints(f, {{1, 1, 0}})));
  EXPECT_FALSE(ib.insert(Matrix<PrimeField>::from_ints(f, {{2, 2, 0}})));
  EXPECT_TRUE(ib.insert(Matrix<PrimeField>::from_ints(f, {{0, 1, 0}})));
  EXPECT_TRUE(ib.contains(Matrix<PrimeField>::from_ints(f, {{1, 0, 0}})));
  EXPECT_FALSE(ib.contains(Matrix<PrimeField>::from_ints(f, {{0, 0, 1}})));
}
