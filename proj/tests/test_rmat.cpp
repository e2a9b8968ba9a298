#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "qfodc/rmat.hpp"

using namespace qfodc;

namespace {

Matrix<Scalar> eye(std::size_t n) { return Matrix<Scalar>::identity(n); }

}  // namespace

TEST(RMatrix, SlTwoEntries) {
  RData r = build_r(FieldConfig::sl(2));
  Scalar q = r.config.q();
  // 0-based indices: R^{21}_{12} is at(1,0,0,1).
  EXPECT_EQ(r.at(0, 0, 0, 0), q);
  EXPECT_EQ(r.at(1, 1, 1, 1), q);
  EXPECT_EQ(r.at(0, 1, 0, 1), Scalar(1));
  EXPECT_EQ(r.at(1, 0, 1, 0), Scalar(1));
  EXPECT_EQ(r.at(1, 0, 0, 1), q - q.inv());
  EXPECT_TRUE(r.at(0, 1, 1, 0).is_zero());
  std::size_t nnz = 0;
  for (const auto& v : r.R.data()) nnz += !v.is_zero();
  EXPECT_EQ(nnz, 5u);
}

TEST(RMatrix, SeriesADiagonalAndSupport) {
  for (int N = 2; N <= 4; ++N) {
    RData r = build_r(FieldConfig::sl(N));
    for (int i = 0; i < N; ++i) EXPECT_EQ(r.at(i, i, i, i), r.config.q());
    for (int i = 0; i < N; ++i)
      for (int n = 0; n < N; ++n)
        for (int j = 0; j < N; ++j)
          for (int m = 0; m < N; ++m) {
            bool same = (i == j && n == m) || (i == m && n == j);
            if (!same) EXPECT_TRUE(r.at(i, n, j, m).is_zero());
          }
  }
}

TEST(RMatrix, InverseAndYangBaxter) {
  std::vector<FieldConfig> cfgs = {FieldConfig::sl(2), FieldConfig::sl(3), FieldConfig::sl(4), FieldConfig::sp(2),
                                   FieldConfig::sp(4), FieldConfig::sp(2, -1)};
  for (const auto& c : cfgs) {
    RData r = build_r(c);
    std::size_t n = r.R.rows();
    EXPECT_EQ(r.R * r_inverse(r), eye(n)) << c.name();
    EXPECT_TRUE(check_yang_baxter(r)) << c.name();
    EXPECT_TRUE(check_braid_relation(rhat(r), c.N)) << c.name();
  }
}

TEST(RMatrix, CorruptedEntryBreaksYangBaxter) {
  RData r = build_r(FieldConfig::sl(2));
  Matrix<Scalar> bad = r.R;
  bad(1, 2) = Scalar(1);  // R^{12}_{21}
  EXPECT_FALSE(check_yang_baxter(bad, 2));
  Matrix<Scalar> bad2 = r.R;
  bad2(0, 0) = r.config.q() * Scalar(2);
  EXPECT_FALSE(check_yang_baxter(bad2, 2));
}

TEST(RMatrix, HeckeConditionDirect) {
  for (int N = 2; N <= 4; ++N) {
    RData r = build_r(FieldConfig::sl(N));
    Scalar q = r.config.q();
    Matrix<Scalar> H = rhat(r);
    std::size_t n = H.rows();
    Matrix<Scalar> lhs = (H - q * eye(n)) * (H + q.inv() * eye(n));
    EXPECT_TRUE(lhs.is_zero());
  }
}

TEST(RMatrix, MinimalPolynomialDegrees) {
  for (int N = 2; N <= 4; ++N) {
    ScalarPolynomial mp = check_minimal_polynomial(build_r(FieldConfig::sl(N)));
    EXPECT_EQ(mp.degree(), 2) << mp.to_string();
  }
  // Sp_q(2): u (x) u has two summands only, so the minimal polynomial is quadratic.
  EXPECT_EQ(check_minimal_polynomial(build_r(FieldConfig::sp(2))).degree(), 2);
  EXPECT_EQ(check_minimal_polynomial(build_r(FieldConfig::sp(4))).degree(), 3);
}

TEST(RMatrix, SlTwoEigenvalues) {
  RData r = build_r(FieldConfig::sl(2));
  Scalar q = r.config.q();
  ScalarPolynomial mp = check_minimal_polynomial(r);
  EXPECT_TRUE(mp(q).is_zero());
  EXPECT_TRUE(mp(-q.inv()).is_zero());
}

TEST(Spectral, ProjectorsSlTwo) {
  RData r = build_r(FieldConfig::sl(2));
  Matrix<Scalar> H = rhat(r);
  auto ps = spectral_projectors(H, r.config);
  ASSERT_EQ(ps.size(), 2u);
  EXPECT_EQ(ps[0].label, "sym");
  EXPECT_EQ(ps[0].rank, 3u);
  EXPECT_EQ(ps[1].label, "antisym");
  EXPECT_EQ(ps[1].rank, 1u);
  Matrix<Scalar> sum(4, 4), recon(4, 4);
  for (const auto& p : ps) {
    sum = sum + p.P;
    recon = recon + p.eigenvalue * p.P;
    EXPECT_EQ(p.P * H, H * p.P);
    EXPECT_EQ(p.P * p.P, p.P);
  }
  EXPECT_EQ(sum, eye(4));
  EXPECT_EQ(recon, H);
  EXPECT_TRUE((ps[0].P * ps[1].P).is_zero());
}

TEST(Spectral, ProjectorsSeriesC) {
  for (int N : {2, 4}) {
    RData r = build_r(FieldConfig::sp(N));
    auto ps = spectral_projectors(rhat(r), r.config);
    std::size_t total = 0;
    for (const auto& p : ps) total += p.rank;
    EXPECT_EQ(total, static_cast<std::size_t>(N * N));
    EXPECT_EQ(ps[0].label, "sym");
    EXPECT_EQ(ps[0].rank, static_cast<std::size_t>(N * (N + 1) / 2));
    EXPECT_EQ(ps.back().label, "triv");
    EXPECT_EQ(ps.back().rank, 1u);
  }
}

TEST(Spectral, NonMonomialEigenvaluesFail) {
  Matrix<Scalar> A(2, 2);
  A(0, 0) = Scalar::p_pow(1) + Scalar(1);
  A(1, 1) = Scalar(2);
  EXPECT_THROW(spectral_projectors(A, FieldConfig::sl(2)), Error);
}

TEST(RMatrix, JsonDump) {
  auto j = nlohmann::json::parse(r_to_json(build_r(FieldConfig::sl(2))));
  ASSERT_EQ(j.size(), 5u);
  EXPECT_EQ(j[0]["i"], 1);
  EXPECT_EQ(j[0]["value"], "p^2");
  bool found = false;
  for (const auto& e : j)
    if (e["i"] == 2 && e["n"] == 1 && e["j"] == 1 && e["m"] == 2) found = e["value"] == "(p^4-1)/p^2";
  EXPECT_TRUE(found);
}

TEST(RMatrix, UnsupportedConfig) {
  FieldConfig c;
  c.series = Series::C;
  c.N = 3;
  c.root_exponent = 1;
  EXPECT_THROW(build_r(c), Error);
}
