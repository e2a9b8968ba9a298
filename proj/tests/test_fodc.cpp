#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <random>

#include "qfodc/fodc.hpp"

using namespace qfodc;

namespace {

CoordElem g(int i, int j, int N) { return CoordElem::generator(i - 1, j - 1, N); }

struct Env {
  CoordAlgebra A;
  DualContext D;
  FodcContext F;
  explicit Env(const FieldConfig& c) : A(c), D(A), F(D) {}
};

}  // namespace

TEST(Zeta, ParseAndLabel) {
  FieldConfig s2 = FieldConfig::sl(2), s3 = FieldConfig::sl(3), s4 = FieldConfig::sl(4);
  EXPECT_EQ(parse_zeta("1", s2), 0);
  EXPECT_EQ(parse_zeta("-1", s2), 1);
  EXPECT_EQ(parse_zeta(" -1 ", s4), 2);
  EXPECT_EQ(parse_zeta("i", s4), 1);
  EXPECT_EQ(parse_zeta("-i", s4), 3);
  EXPECT_EQ(parse_zeta("2/3", s3), 2);
  EXPECT_EQ(parse_zeta("omega^4", s3), 1);
  EXPECT_EQ(parse_zeta("w^2", s3), 2);
  EXPECT_THROW(parse_zeta("i", s2), Error);
  EXPECT_THROW(parse_zeta("-1", s3), Error);
  EXPECT_THROW(parse_zeta("1/5", s4), Error);
  EXPECT_THROW(parse_zeta("banana", s2), Error);
  try {
    parse_zeta("i", s2);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidCharacter);
  }
  EXPECT_EQ(zeta_label(0, 3), "1");
  EXPECT_EQ(zeta_label(1, 2), "-1");
  EXPECT_EQ(zeta_label(1, 4), "i");
  EXPECT_EQ(zeta_label(3, 4), "-i");
  EXPECT_EQ(zeta_label(2, 3), "e(2/3)");
  EXPECT_EQ(zeta_label(-1, 3), "e(2/3)");
}

TEST(QuantumLie, Dimensions) {
  Env e(FieldConfig::sl(2));
  auto one = e.A.build_corep("1");
  auto u = e.A.build_corep("u");
  Policy pol;
  EXPECT_EQ(e.F.quantum_lie(one, 0, pol).rank.rank, 0u);
  EXPECT_EQ(e.F.quantum_lie(one, 1, pol).rank.rank, 1u);
  for (int z : {0, 1}) {
    QuantumLieAlgebra X = e.F.quantum_lie(u, z, pol);
    EXPECT_EQ(X.rank.rank, 4u);
    EXPECT_EQ(X.rank_with_eps.rank, 5u);
    EXPECT_TRUE(X.rank.stable);
    for (const auto& x : X.basis) EXPECT_TRUE(x.at_unit().is_zero());
  }
}

TEST(Calculus, DifferentialBasics) {
  Env e(FieldConfig::sl(2));
  auto u = e.A.build_corep("u");
  Calculus cal = e.F.calculus(e.F.quantum_lie(u, 1, Policy{}));
  EXPECT_EQ(cal.invariant_dim, 4u);
  for (const auto& c : e.F.differential(cal, CoordElem::one())) EXPECT_TRUE(c.is_zero());
  OneForm du = e.F.differential(cal, g(1, 2, 2));
  bool nonzero = false;
  for (const auto& c : du) nonzero = nonzero || e.D.separated_equal(c, CycloElem(), Policy{}).kind == VerdictKind::NotEqual;
  EXPECT_TRUE(nonzero);
}

TEST(Calculus, LeibnizOnRandomPairs) {
  Env e(FieldConfig::sl(2));
  auto u = e.A.build_corep("u");
  Calculus cal = e.F.calculus(e.F.quantum_lie(u, 1, Policy{}));
  std::mt19937 rng(7);
  WordSpace ws(2, 2);
  std::uniform_int_distribution<std::size_t> pick(0, ws.size() - 1);
  for (int t = 0; t < 8; ++t) {
    CoordElem a = CoordElem::word(ws.word(pick(rng))) + Scalar(2) * CoordElem::word(ws.word(pick(rng)));
    CoordElem b = CoordElem::word(ws.word(pick(rng)));
    Verdict v = e.F.leibniz_check(cal, a, b, Policy{});
    EXPECT_TRUE(v.equal()) << v.witness;
  }
}

TEST(Calculus, RightModuleIsNotTrivial) {
  Env e(FieldConfig::sl(2));
  auto u = e.A.build_corep("u");
  Calculus cal = e.F.calculus(e.F.quantum_lie(u, 1, Policy{}));
  // omega_11 u^1_1 differs from u^1_1 omega_11.
  OneForm w(4);
  w[0] = CycloElem::one();
  OneForm right = e.F.right_multiply(cal, w, g(1, 1, 2));
  OneForm left = e.F.left_multiply(to_cyclo(g(1, 1, 2)), w);
  bool differ = false;
  for (std::size_t t = 0; t < 4; ++t) differ = differ || !(right[t] == left[t]);
  EXPECT_TRUE(differ);
}

TEST(Calculus, TrivialCalculusHasZeroDifferential) {
  Env e(FieldConfig::sl(2));
  Calculus cal = e.F.calculus(e.F.quantum_lie(e.A.build_corep("1"), 0, Policy{}));
  WordSpace ws(2, 3);
  for (std::size_t i = 0; i < ws.size(); ++i)
    for (const auto& c : e.F.differential(cal, CoordElem::word(ws.word(i)))) EXPECT_TRUE(c.is_zero());
  EXPECT_TRUE(e.F.right_ideal_member(cal, g(1, 2, 2) * g(2, 1, 2)));
  EXPECT_FALSE(e.F.right_ideal_member(cal, CoordElem::one()));
}

TEST(Calculus, RightIdealCodimension) {
  Env e(FieldConfig::sl(2));
  Calculus cal = e.F.calculus(e.F.quantum_lie(e.A.build_corep("u"), 1, Policy{}));
  EXPECT_EQ(e.F.ideal_codimension(cal, 3), 5u);
  EXPECT_FALSE(e.F.right_ideal_member(cal, CoordElem::one()));
  EXPECT_FALSE(e.F.right_ideal_member(cal, g(1, 2, 2)));
}

TEST(Central, TrivialCorep) {
  Env e(FieldConfig::sl(2));
  auto one = e.A.build_corep("1");
  Matrix<Scalar> D = e.F.d_inverse_matrix(*one);
  EXPECT_EQ(D(0, 0), Scalar(1));
  EXPECT_TRUE(e.D.functional_equal(e.F.central_element(*one, 1), e.D.eps_zeta(1), 3).equal());
}

TEST(Central, CentralityAndProjection) {
  Env e(FieldConfig::sl(2));
  auto u = e.A.build_corep("u");
  Functional c = e.F.central_element(*u, 1);
  EXPECT_TRUE(e.F.central_check(c, 3).equal());
  // A single L+ entry is not central.
  EXPECT_FALSE(e.F.central_check(e.D.entry(e.D.lplus(), 0, 1), 2).equal());
  Functional pc = c - c.at_unit() * e.D.eps();
  EXPECT_EQ(e.D.rank({pc}, 3), 1u);
  QuantumLieAlgebra X = e.F.quantum_lie(u, 1, Policy{});
  EXPECT_TRUE(e.D.span_check(X.basis, {pc}, 3).all_inside);
}

TEST(Central, GeneratesQuantumLieAlgebra) {
  Env e(FieldConfig::sl(2));
  auto u = e.A.build_corep("u");
  Functional c = e.F.central_element(*u, 1);
  auto chi = e.F.quantum_lie_from_central(c, 2, 3);
  EXPECT_EQ(chi.size(), 4u);
  QuantumLieAlgebra X = e.F.quantum_lie(u, 1, Policy{});
  EXPECT_TRUE(e.D.span_check(X.basis, chi, 3).all_inside);
  EXPECT_TRUE(e.D.span_check(chi, X.basis, 3).all_inside);
  EXPECT_TRUE(e.F.quantum_lie_from_central(e.D.eps(), 2, 2).empty());
  EXPECT_THROW(e.F.quantum_lie_from_central(e.D.entry(e.D.lplus(), 0, 1), 1, 2), Error);
}

TEST(Central, SumOfTwoCentralElements) {
  Env e(FieldConfig::sl(2));
  auto u = e.A.build_corep("u");
  Functional c = e.F.central_element(*u, 1) + e.F.central_element(*e.A.build_corep("1"), 1);
  EXPECT_EQ(e.F.quantum_lie_from_central(c, 2, 3).size(), 5u);
}

TEST(DirectSum, RanksAdd) {
  Env e(FieldConfig::sl(2));
  auto u = e.A.build_corep("u");
  auto one = e.A.build_corep("1");
  Policy pol;
  auto Xu = e.F.quantum_lie(u, 1, pol);
  auto X1 = e.F.quantum_lie(one, 1, pol);
  auto Xu1 = e.F.quantum_lie(u, 0, pol);
  EXPECT_EQ(e.F.direct_sum({X1, Xu}, 3).rank, 5u);
  EXPECT_EQ(e.F.direct_sum({Xu1, Xu}, 3).rank, 8u);
  try {
    e.F.direct_sum({Xu, Xu}, 3);
    ADD_FAILURE();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::NotDirect);
  }
}

TEST(TensorIdentity, Cases) {
  Env e(FieldConfig::sl(2));
  auto u = e.A.build_corep("u");
  auto one = e.A.build_corep("1");
  auto uc = e.A.build_corep("uc");
  auto r1 = e.F.tensor_identity_check(u, one, 1, 0, 3);
  EXPECT_TRUE(r1.holds);
  EXPECT_EQ(r1.rank_tensor, 4u);
  auto r2 = e.F.tensor_identity_check(u, u, 0, 0, 3);
  EXPECT_TRUE(r2.holds);
  EXPECT_TRUE(e.F.tensor_identity_check(u, uc, 0, 0, 3).holds);
}

TEST(Classify, Decompositions) {
  Env e(FieldConfig::sl(2));
  Policy pol;
  auto Xs = e.F.quantum_lie(e.A.build_corep("sum(1,u)"), 1, pol);
  EXPECT_EQ(Xs.rank.rank, 5u);
  ClassificationReport r = e.F.classify(Xs.basis, 3);
  ASSERT_EQ(r.components.size(), 2u);
  EXPECT_EQ(r.components[0].frame, "[1]");
  EXPECT_EQ(r.components[0].dim, 4u);
  EXPECT_EQ(r.components[0].zeta_label, "-1");
  EXPECT_EQ(r.components[1].frame, "trivial");
  EXPECT_EQ(r.components[1].dim, 1u);
  EXPECT_EQ(r.total_dim, 5u);
  EXPECT_EQ(r.residual_rank, 0u);

  auto X1 = e.F.quantum_lie(e.A.build_corep("sum(1,u)"), 0, pol);
  ClassificationReport r1 = e.F.classify(X1.basis, 3);
  EXPECT_EQ(r1.total_dim, 4u);
  ASSERT_EQ(r1.components.size(), 1u);
  EXPECT_EQ(r1.components[0].zeta_label, "1");

  ClassificationReport r0 = e.F.classify({}, 3);
  EXPECT_TRUE(r0.components.empty());
  EXPECT_EQ(r0.central_element, "0");

  auto j = nlohmann::json::parse(r.to_json());
  EXPECT_EQ(j["total_dim"], 5);
  EXPECT_EQ(j["components"][0]["zeta"], "-1");
  EXPECT_EQ(r.to_json(), e.F.classify(Xs.basis, 3).to_json());
  EXPECT_NE(r.to_markdown().find("| -1 | [1] |"), std::string::npos);
}

TEST(Classify, SymmetricSquare) {
  Env e(FieldConfig::sl(2));
  auto X = e.F.quantum_lie(e.A.build_corep("proj:sym(tensor(u,u))"), 0, Policy{});
  EXPECT_EQ(X.rank.rank, 9u);
  ClassificationReport r = e.F.classify(X.basis, 3);
  ASSERT_EQ(r.components.size(), 1u);
  EXPECT_EQ(r.components[0].frame, "[2]");
}
