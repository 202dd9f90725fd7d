#include <gtest/gtest.h>

#include "nangle/io.hpp"
#include "nangle/quiver.hpp"

using namespace nangle;

namespace {

std::string fixture(const std::string& name) { return read_file(std::string(NANGLE_FIXTURE_DIR) + "/" + name); }

QuiverAlgebra<PrimeField> load(const std::string& name) {
  auto spec = parse_algebra(fixture(name + ".json"));
  return compute_basis(spec, PrimeField(spec.characteristic));
}

}  // namespace

TEST(ParseAlgebra, SingleVertexNoArrows) {
  auto spec = parse_algebra(R"({"field": 5, "vertices": ["v"], "arrows": [], "relations": []})");
  EXPECT_EQ(spec.characteristic, 5u);
  EXPECT_EQ(spec.quiver.vertices.size(), 1u);
  EXPECT_TRUE(spec.quiver.arrows.empty());
}

TEST(ParseAlgebra, LoopAlgebra) {
  auto spec = parse_algebra(fixture("loop_p3.json"));
  ASSERT_EQ(spec.relations.size(), 1u);
  ASSERT_EQ(spec.relations[0].size(), 1u);
  EXPECT_EQ(spec.relations[0][0].path.size(), 2u);
  EXPECT_EQ(spec.relations[0][0].coeff, 1);
}

TEST(ParseAlgebra, PreprojectiveA2MatchesGoldenTokens) {
  auto spec = parse_algebra(fixture("preprojective_a2.json"));
  EXPECT_EQ(spec.relations.size(), 2u);
  EXPECT_EQ(spec_to_json(spec), Json::parse(fixture("golden/preprojective_a2.tokens.json")));
}

TEST(ParseAlgebra, SyntaxErrorReportsLineAndColumn) {
  try {
    parse_algebra("{\n  \"field\": 5,\n  \"vertices\": [\"1\" \"2\"]\n}");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 22u);  // last character of the unexpected token "2"
  }
}

TEST(ParseAlgebra, SemanticErrorsNameTheEntity) {
  auto expect_error = [](const std::string& text, const std::string& needle) {
    try {
      parse_algebra(text);
      ADD_FAILURE() << "accepted: " << text;
    } catch (const InputError& e) {
      EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
    }
  };
  expect_error(R"({"field": 6, "vertices": ["1"], "arrows": [], "relations": []})", "not prime");
  expect_error(R"({"field": 5, "vertices": ["1"], "arrows": [{"name": "x", "from": "1", "to": "9"}], "relations": []})",
               "'x'");
  expect_error(R"({"field": 5, "vertices": ["1", "1"], "arrows": [], "relations": []})", "'1'");
  expect_error(R"({"field": 5, "vertices": ["1","2"], "arrows": [{"name": "a", "from": "1", "to": "2"},
      {"name": "b", "from": "2", "to": "1"}],
      "relations": [[{"coeff": 1, "path": ["a", "b"]}, {"coeff": 1, "path": ["b", "a"]}]]})",
               "not parallel");
  expect_error(R"({"field": 5, "vertices": ["1"], "arrows": [{"name": "x", "from": "1", "to": "1"}],
      "relations": [[{"coeff": 1, "path": ["x"]}]]})",
               "square of the arrow ideal");
  expect_error(R"({"field": 5, "vertices": ["1","2"], "arrows": [{"name": "a", "from": "1", "to": "2"}],
      "relations": [[{"coeff": 1, "path": ["a", "a"]}]]})",
               "not composable");
  expect_error(R"({"field": 5, "vertices": ["1"], "arrows": [], "relations": [[{"coeff": 1, "path": ["y", "y"]}]]})",
               "unknown arrow 'y'");
}

TEST(ComputeBasis, DualNumbersOverF3) {
  auto qa = load("loop_p3");
  EXPECT_EQ(qa.algebra->dim(), 2u);
  EXPECT_EQ(qa.algebra->labels(), (std::vector<std::string>{"e_1", "x"}));
  EXPECT_EQ(algebra_json(*qa.algebra), Json::parse(fixture("golden/loop_p3.basis.json")));
}

TEST(ComputeBasis, NakayamaTwoTwoGolden) {
  auto qa = load("nakayama_2_2");
  EXPECT_EQ(qa.algebra->labels(), (std::vector<std::string>{"e_1", "e_2", "a", "b"}));
  EXPECT_EQ(algebra_json(*qa.algebra), Json::parse(fixture("golden/nakayama_2_2.basis.json")));
  auto pa2 = load("preprojective_a2");
  EXPECT_EQ(algebra_json(*pa2.algebra), Json::parse(fixture("golden/preprojective_a2.basis.json")));
}

TEST(ComputeBasis, NakayamaDimensionsMatchPathCount) {
  for (int n = 1; n <= 3; ++n)
    for (int s = 2; s <= 4; ++s) {
      auto qa = load("nakayama_" + std::to_string(n) + "_" + std::to_string(s));
      // Oracle: on an oriented n-cycle there is exactly one path of each length from each vertex.
      std::size_t count = 0;
      for (int v = 0; v < n; ++v)
        for (int len = 0; len < s; ++len) ++count;
      EXPECT_EQ(qa.algebra->dim(), count) << n << "," << s;
      EXPECT_EQ(qa.nilpotency, static_cast<std::size_t>(s));
    }
}

TEST(ComputeBasis, PreprojectiveA3HasDimensionTen) {
  auto qa = load("preprojective_a3");
  EXPECT_EQ(qa.algebra->dim(), 10u);
  EXPECT_EQ(qa.nilpotency, 3u);
}

TEST(ComputeBasis, ProductsAreSupportedOnBasis) {
  auto qa = load("preprojective_a3");
  const auto& a = *qa.algebra;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (const auto& [k, v] : a.product(i, j)) {
        EXPECT_LT(k, a.dim());
        EXPECT_FALSE(a.field().is_zero(v));
        EXPECT_EQ(a.left_vertex(k), a.left_vertex(i));
        EXPECT_EQ(a.right_vertex(k), a.right_vertex(j));
      }
}

TEST(ComputeBasis, InfiniteDimensionalIsReported) {
  auto spec = parse_algebra(R"({"field": 5, "vertices": ["1"], "arrows": [{"name": "x", "from": "1", "to": "1"}],
      "relations": []})");
  EXPECT_THROW(compute_basis(spec, PrimeField(5), 10), NotFiniteDimensional);
  auto spec2 = parse_algebra(R"({"field": 5, "vertices": ["1"], "arrows": [{"name": "x", "from": "1", "to": "1"},
      {"name": "y", "from": "1", "to": "1"}],
      "relations": [[{"coeff": 1, "path": ["x", "y"]}, {"coeff": -1, "path": ["y", "x"]}]]})");
  EXPECT_THROW(compute_basis(spec2, PrimeField(5), 8), NotFiniteDimensional);
}

TEST(ComputeBasis, RationalCoefficients) {
  auto spec = parse_algebra(fixture("preprojective_a3.json"));
  auto qa = compute_basis(spec, RationalField{});
  EXPECT_EQ(qa.algebra->dim(), 10u);
}

TEST(Enveloping, Dimensions) {
  auto semisimple = compute_basis(parse_algebra(R"({"field": 3, "vertices": ["1"], "arrows": [], "relations": []})"),
                                  PrimeField(3));
  EXPECT_EQ(enveloping(semisimple.algebra)->dim(), 1u);
  EXPECT_EQ(enveloping(load("loop_p3").algebra)->dim(), 4u);
  auto ae = enveloping(load("nakayama_2_2").algebra);
  EXPECT_EQ(ae->dim(), 16u);
  EXPECT_NO_THROW(ae->validate());
  EXPECT_EQ(ae->vertex_count(), 4u);
}

TEST(Enveloping, StructureConstantsFollowOppositeTensor) {
  auto a = load("nakayama_2_2").algebra;
  auto ae = enveloping(a);
  const std::size_t d = a->dim();
  for (std::size_t u = 0; u < d; ++u)
    for (std::size_t v = 0; v < d; ++v)
      for (std::size_t u2 = 0; u2 < d; ++u2)
        for (std::size_t v2 = 0; v2 < d; ++v2) {
          auto lhs = ae->multiply(ae->basis_vector(u * d + v), ae->basis_vector(u2 * d + v2));
          auto l = a->multiply(a->basis_vector(u2), a->basis_vector(u));
          auto r = a->multiply(a->basis_vector(v), a->basis_vector(v2));
          EXPECT_EQ(lhs, Matrix<PrimeField>::kron(l, r));
        }
}

TEST(SelfInjective, SemisimpleHasIdentityPermutation) {
  auto qa = compute_basis(parse_algebra(R"({"field": 3, "vertices": ["1"], "arrows": [], "relations": []})"),
                          PrimeField(3));
  auto nd = check_self_injective(qa.algebra);
  EXPECT_EQ(nd.permutation, std::vector<std::size_t>{0});
}

TEST(SelfInjective, NakayamaTwoTwoIsTransposition) {
  auto nd = check_self_injective(load("nakayama_2_2").algebra);
  EXPECT_EQ(nd.permutation, (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(nd.socle_labels, (std::vector<std::string>{"a", "b"}));
}

TEST(SelfInjective, PreprojectiveA3NakayamaPermutation) {
  auto nd = check_self_injective(load("preprojective_a3").algebra);
  EXPECT_EQ(nd.permutation, (std::vector<std::size_t>{2, 1, 0}));
}

TEST(SelfInjective, HereditaryA2IsRejected) {
  auto qa = load("a2_hereditary");
  EXPECT_THROW(check_self_injective(qa.algebra), NotSelfInjective);
  // Oracle: enumerate the socle of the regular module by brute force over F_5^3.
  const auto& a = *qa.algebra;
  ASSERT_EQ(a.dim(), 3u);
  std::size_t killed = 0;
  auto arrow = a.right_multiplication(a.basis_vector(a.radical_generators()[0]));
  for (std::uint64_t code = 0; code < 125; ++code) {
    Matrix<PrimeField> x(a.field(), 1, 3);
    std::uint64_t c = code;
    for (int i = 0; i < 3; ++i) {
      x(0, i) = static_cast<std::uint32_t>(c % 5);
      c /= 5;
    }
    if ((x * arrow).is_zero()) ++killed;
  }
  // soc(A_A) has dimension 2 but both summands are of type S_2, so A_A is not injective.
  EXPECT_EQ(killed, 25u);
}

TEST(Automorphism, IdentityAccepted) {
  auto a = load("loop_p3").algebra;
  auto s = verify_automorphism(a, Matrix<PrimeField>::identity(a->field(), 2));
  EXPECT_TRUE(s.is_identity());
}

TEST(Automorphism, NegatingTheLoopOverF3) {
  auto a = load("loop_p3").algebra;
  auto m = Matrix<PrimeField>::from_ints(a->field(), {{1, 0}, {0, -1}});
  auto s = verify_automorphism(a, m);
  EXPECT_TRUE(s.power(2).is_identity());
}

TEST(Automorphism, RejectionsAreNamed) {
  auto a = load("loop_p3").algebra;
  auto expect_reason = [&](const Matrix<PrimeField>& m, NotAutomorphism::Reason r) {
    try {
      verify_automorphism(a, m);
      ADD_FAILURE() << "accepted";
    } catch (const NotAutomorphism& e) {
      EXPECT_EQ(e.reason(), r) << e.what();
    }
  };
  expect_reason(Matrix<PrimeField>::from_ints(a->field(), {{1, 0}, {1, 0}}), NotAutomorphism::Reason::not_multiplicative);
  expect_reason(Matrix<PrimeField>::from_ints(a->field(), {{1, 1}, {0, 1}}), NotAutomorphism::Reason::not_unital);
  expect_reason(Matrix<PrimeField>::from_ints(a->field(), {{1, 0}, {0, 0}}), NotAutomorphism::Reason::singular);
}
