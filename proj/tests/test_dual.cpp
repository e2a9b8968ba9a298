#include <gtest/gtest.h>

#include "qfodc/dual.hpp"

using namespace qfodc;

namespace {

CoordElem g(int i, int j, int N) { return CoordElem::generator(i - 1, j - 1, N); }

Word word_of(std::initializer_list<std::pair<int, int>> letters, int N) {
  Word w;
  for (auto [i, j] : letters) w.push_back(gen_code(i - 1, j - 1, N));
  return w;
}

// r(x (x) u^i_j) for a word x, straight from the R-matrix:
// r(u^{a1}_{b1} ... u^{ak}_{bk} (x) u^i_j) = z^k sum R^{a1 i}_{b1 c1} R^{a2 c1}_{b2 c2} ... R^{ak c(k-1)}_{bk j}.
Scalar oracle_lplus(const RData& r, const Scalar& z, const Word& x, int i, int j) {
  const int N = r.N();
  std::vector<Scalar> v(N);
  v[i] = Scalar(1);
  for (char h : x) {
    std::vector<Scalar> w(N);
    for (int c = 0; c < N; ++c)
      for (int d = 0; d < N; ++d) w[d] += v[c] * z * r.at(gen_row(h, N), c, gen_col(h, N), d);
    v = w;
  }
  return v[j];
}

Matrix<Scalar> kron(const Matrix<Scalar>& A, const Matrix<Scalar>& B) {
  Matrix<Scalar> K(A.rows() * B.rows(), A.cols() * B.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j)
      for (std::size_t k = 0; k < B.rows(); ++k)
        for (std::size_t l = 0; l < B.cols(); ++l) K(i * B.rows() + k, j * B.cols() + l) = A(i, j) * B(k, l);
  return K;
}

std::vector<Word> words_up_to(int N, int degree) {
  WordSpace ws(N, degree);
  std::vector<Word> out;
  for (std::size_t i = 0; i < ws.size(); ++i) out.push_back(ws.word(i));
  return out;
}

}  // namespace

TEST(WordSpace, IndexRoundTrip) {
  WordSpace ws(2, 3);
  EXPECT_EQ(ws.size(), 1u + 4 + 16 + 64);
  EXPECT_EQ(ws.count(2), 16u);
  for (std::size_t i = 0; i < ws.size(); ++i) {
    EXPECT_EQ(ws.index(ws.word(i)), i);
    EXPECT_EQ(static_cast<std::size_t>(ws.degree_of(i)), ws.word(i).size());
  }
}

TEST(LFunctionals, MatchRMatrixOracle) {
  for (auto cfg : {FieldConfig::sl(2), FieldConfig::sl(3), FieldConfig::sp(2), FieldConfig::sp(2, -1)}) {
    CoordAlgebra A(cfg);
    DualContext D(A);
    const int N = cfg.N;
    for (const Word& w : words_up_to(N, 2))
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
          ASSERT_EQ(D.lplus()->entry(w, i, j), oracle_lplus(A.r(), D.z(), w, i, j)) << cfg.name();
  }
}

TEST(LFunctionals, DiagonalValue) {
  CoordAlgebra A(FieldConfig::sl(2));
  DualContext D(A);
  Scalar q = A.config().q();
  EXPECT_EQ(D.evaluate(D.entry(D.lplus(), 0, 0), g(1, 1, 2)), Cyclo(D.z() * q));
  // L+ is upper and L- lower triangular.
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      EXPECT_TRUE(D.lplus()->gen(a, b).get(1, 0).is_zero());
      EXPECT_TRUE(D.lminus()->gen(a, b).get(0, 1).is_zero());
    }
  EXPECT_EQ(D.l_generators().size(), 6u);
}

TEST(LFunctionals, PairingTableDropsZ) {
  CoordAlgebra A(FieldConfig::sl(2));
  DualContext D(A, Normalization::PairingTable);
  EXPECT_EQ(D.z(), Scalar(1));
  EXPECT_EQ(D.lplus()->gen(0, 0).get(0, 0), A.config().q());
}

TEST(Convolution, MatchesExplicitSplits) {
  CoordAlgebra A(FieldConfig::sl(2));
  DualContext D(A);
  MatRepPtr C = D.conv(D.lplus(), D.lminus());
  EXPECT_EQ(C.get(), D.conv(D.lplus(), D.lminus()).get());
  for (const Word& w : words_up_to(2, 2)) {
    Matrix<Scalar> expect(4, 4);
    for_each_split(w, 2, [&](const Word& a, const Word& b) { expect = expect + kron(D.lplus()->value(a), D.lminus()->value(b)); });
    EXPECT_EQ(C->value(w), expect) << word_to_string(w, 2);
  }
}

TEST(Convolution, AntipodeRepInvertsUnderConvolution) {
  for (auto cfg : {FieldConfig::sl(2), FieldConfig::sl(3), FieldConfig::sp(4)}) {
    CoordAlgebra A(cfg);
    DualContext D(A);
    const int N = cfg.N;
    for (const MatRepPtr& F : {D.lplus(), D.lminus()}) {
      MatRepPtr Fc = D.antipode_rep(F);
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
          // sum_k S(f^i_k) f^k_j = delta_ij eps, with S(f^i_k) = Fc(k, i).
          Functional s;
          for (int k = 0; k < N; ++k) s = s + D.product(D.entry(Fc, k, i), D.entry(F, k, j));
          Functional target = i == j ? D.eps() : Functional();
          EXPECT_TRUE(D.functional_equal(s, target, 3).equal()) << cfg.name() << " " << F->name();
        }
    }
  }
}

TEST(RForm, Axioms) {
  CoordAlgebra A(FieldConfig::sl(2));
  DualContext D(A);
  const int N = 2;
  auto words = words_up_to(N, 1);
  // r(a (x) b c) = r(a1 (x) c) r(a2 (x) b).
  for (const Word& a : words)
    for (const Word& b : words)
      for (const Word& c : words) {
        Scalar lhs = D.r_form(CoordElem::word(a), CoordElem::word(b + c));
        Scalar rhs;
        for_each_split(a, N, [&](const Word& a1, const Word& a2) {
          rhs += D.r_form(CoordElem::word(a1), CoordElem::word(c)) * D.r_form(CoordElem::word(a2), CoordElem::word(b));
        });
        EXPECT_EQ(lhs, rhs);
      }
  // r(b c (x) a) = r(b (x) a1) r(c (x) a2).
  for (const Word& a : words)
    for (const Word& b : words)
      for (const Word& c : words) {
        Scalar lhs = D.r_form(CoordElem::word(b + c), CoordElem::word(a));
        Scalar rhs;
        for_each_split(a, N, [&](const Word& a1, const Word& a2) {
          rhs += D.r_form(CoordElem::word(b), CoordElem::word(a1)) * D.r_form(CoordElem::word(c), CoordElem::word(a2));
        });
        EXPECT_EQ(lhs, rhs);
      }
}

TEST(RForm, ConvolutionInverse) {
  CoordAlgebra A(FieldConfig::sl(2));
  DualContext D(A);
  const int N = 2;
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j)
      for (int k = 1; k <= 2; ++k)
        for (int l = 1; l <= 2; ++l) {
          Scalar s;
          for (int m = 1; m <= 2; ++m)
            for (int n = 1; n <= 2; ++n) s += D.r_form(g(i, m, N), g(k, n, N)) * D.rbar_form(g(m, j, N), g(n, l, N));
          EXPECT_EQ(s, Scalar(i == j && k == l ? 1 : 0));
        }
}

TEST(Separation, FamilyRanks) {
  CoordAlgebra A(FieldConfig::sl(2));
  DualContext D(A);
  for (int d : {2, 3}) {
    std::vector<Functional> fs;
    for (const auto& F : D.separating_family(d))
      for (std::size_t i = 0; i < F->dim(); ++i)
        for (std::size_t j = 0; j < F->dim(); ++j) fs.push_back(D.entry(F, i, j));
    // dim of the degree <= d part of O(SL_q(2)).
    EXPECT_EQ(D.rank(fs, d), d == 2 ? 14u : 30u);
  }
}

TEST(Separation, Relations) {
  CoordAlgebra A(FieldConfig::sl(2));
  DualContext D(A);
  Scalar q = A.config().q();
  const int N = 2;
  Policy pol;
  CoordElem det = g(1, 1, N) * g(2, 2, N) - q * (g(1, 2, N) * g(2, 1, N));
  EXPECT_TRUE(D.separated_equal(det, CoordElem::one(), pol).equal());
  EXPECT_EQ(D.separated_equal(g(1, 1, N) * g(2, 2, N), g(2, 2, N) * g(1, 1, N), pol).kind, VerdictKind::NotEqual);
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      CoordElem s;
      for (int k = 1; k <= 2; ++k) s += g(i, k, N) * A.antipode(g(k, j, N));
      EXPECT_TRUE(D.separated_equal(s, i == j ? CoordElem::one() : CoordElem(), pol).equal());
    }
  CoordElem big = g(1, 1, N) * g(1, 1, N) * g(1, 1, N);
  Policy tight{2, 2, 2};
  EXPECT_EQ(D.separated_equal(big, CoordElem(), tight).kind, VerdictKind::Undecided);
}

TEST(Separation, CommutationRelation) {
  CoordAlgebra A(FieldConfig::sl(3));
  DualContext D(A);
  Scalar q = A.config().q();
  const int N = 3;
  // Exactly one of the two q-commutation orderings holds.
  bool e1 = D.separated_equal(g(1, 1, N) * g(1, 2, N), q * (g(1, 2, N) * g(1, 1, N)), Policy{}).equal();
  bool e2 = D.separated_equal(g(1, 2, N) * g(1, 1, N), q * (g(1, 1, N) * g(1, 2, N)), Policy{}).equal();
  EXPECT_NE(e1, e2);
}

TEST(QuantumL, LOfGeneratorMatchesCorepEntry) {
  CoordAlgebra A(FieldConfig::sl(2));
  DualContext D(A);
  Corep u = A.fundamental();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      EXPECT_TRUE(D.functional_equal(D.l_of(CoordElem::generator(i, j, 2)), D.l_entry(u, i, j), 3).equal());
  EXPECT_TRUE(D.functional_equal(D.l_of(CoordElem::one()), D.eps(), 3).equal());
}

TEST(QuantumL, MatchesQFormDirectly) {
  CoordAlgebra A(FieldConfig::sl(2));
  DualContext D(A);
  Functional l = D.l_entry(A.fundamental(), 0, 1);
  for (const Word& w : words_up_to(2, 2)) {
    Cyclo direct(D.q_form(CoordElem::word(w), g(1, 2, 2)));
    EXPECT_EQ(D.evaluate(l, w), direct) << word_to_string(w, 2);
  }
}

TEST(QuantumL, MinorMatchesTau) {
  struct Case {
    FieldConfig cfg;
    int k;
  };
  for (const auto& c : {Case{FieldConfig::sl(2), 1}, Case{FieldConfig::sl(3), 1}, Case{FieldConfig::sl(3), 2}, Case{FieldConfig::sp(2), 1}}) {
    CoordAlgebra A(c.cfg);
    DualContext D(A);
    Corep m = c.k == 1 ? A.fundamental() : A.minor_corep(c.k);
    YoungWeight w;
    w.m.assign(static_cast<std::size_t>(c.cfg.rank()), 0);
    w.m[static_cast<std::size_t>(c.k - 1)] = 1;
    Verdict v = D.functional_equal(D.l_entry(m, 0, 0), D.tau_functional(w), 3);
    EXPECT_TRUE(v.equal()) << c.cfg.name() << " k=" << c.k << " " << v.witness;
  }
}

TEST(Characters, KAndTau) {
  CoordAlgebra A(FieldConfig::sl(2));
  DualContext D(A);
  Scalar q = A.config().q();
  Functional K1 = D.k_functional(1);
  EXPECT_EQ(D.evaluate(K1, g(1, 1, 2)), Cyclo(D.z().inv() * q.inv()));
  MatRepPtr inv = D.character_power(D.k_rep(1), -1);
  EXPECT_TRUE(D.functional_equal(D.product(D.entry(inv, 0, 0), K1), D.eps(), 3).equal());
  EXPECT_TRUE(D.functional_equal(D.tau_functional(YoungWeight{{0}}), D.eps(), 2).equal());
}

TEST(Functionals, TwistAndTranslation) {
  CoordAlgebra A(FieldConfig::sl(2));
  DualContext D(A);
  Functional e = D.eps_zeta(1);
  EXPECT_EQ(D.evaluate(e, g(1, 1, 2)), Cyclo(-1));
  EXPECT_EQ(D.evaluate(e, g(1, 1, 2) * g(2, 2, 2)), Cyclo(1));
  Functional f = D.entry(D.lplus(), 0, 1);
  Word b = word_of({{1, 1}}, 2);
  for (const Word& a : words_up_to(2, 2)) {
    EXPECT_EQ(D.evaluate(D.right_translate(f, b), a), D.evaluate(f, a + b));
    EXPECT_EQ(D.evaluate(D.left_translate(f, b), a), D.evaluate(f, b + a));
  }
  EXPECT_TRUE((f - f).is_empty());
}

TEST(Functionals, AdjointActionIsSumFormula) {
  CoordAlgebra A(FieldConfig::sl(2));
  DualContext D(A);
  Functional f = D.entry(D.lminus(), 1, 0);
  Functional x = D.entry(D.lplus(), 0, 1);
  // ad_R(f^r_c) x = sum_k S(f^r_k) x f^k_c.
  Functional expect;
  for (int k = 0; k < 2; ++k)
    expect = expect + D.product(D.product(D.antipode(D.entry(D.lminus(), 1, k)), x), D.entry(D.lminus(), k, 0));
  EXPECT_TRUE(D.functional_equal(D.ad_r(f, x), expect, 3).equal());
}

TEST(Rank, StabilizedAndCoideal) {
  CoordAlgebra A(FieldConfig::sl(2));
  DualContext D(A);
  Corep u = A.fundamental();
  std::vector<Functional> X;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) X.push_back(D.l_entry(u, i, j, 1) - (i == j ? D.eps() : Functional()));
  RankResult r = D.stabilized_rank(X, Policy{});
  EXPECT_EQ(r.rank, 4u);
  EXPECT_TRUE(r.stable);
  X.push_back(D.eps());
  CoidealReport rep = D.coideal_check(X, 3);
  EXPECT_TRUE(rep.passed) << rep.detail;
  EXPECT_EQ(rep.basis_rank, 5u);
  // A lone L+ entry does not span a coideal with eps.
  CoidealReport bad = D.coideal_check({D.entry(D.lplus(), 0, 1), D.eps()}, 2);
  EXPECT_FALSE(bad.passed);
}

TEST(Comatrix, ProjectedCorepPasses) {
  CoordAlgebra A(FieldConfig::sl(2));
  DualContext D(A);
  auto sym = A.build_corep("proj:sym(tensor(u,u))");
  EXPECT_TRUE(D.comatrix_check(*sym));
  Corep broken = *sym;
  broken.at(0, 1) = broken.at(0, 1) + g(1, 1, 2);
  EXPECT_FALSE(D.comatrix_check(broken));
}
