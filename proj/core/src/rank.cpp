#include "qfodc/rank.hpp"

#include "qfodc/modular.hpp"

namespace qfodc {

namespace {

constexpr std::uint64_t kSeedBase = 0x51f0dc0ffeeULL;

// Modular profile of M; retries other points when a denominator vanishes.
ModRankProfile modular_profile(const Matrix<Cyclo>& M, std::uint64_t attempt) {
  for (std::uint64_t k = 0;; ++k) {
    ModularPoint pt(kSeedBase + 7919 * (attempt + k));
    std::vector<std::vector<std::uint64_t>> rows(M.rows(), std::vector<std::uint64_t>(M.cols()));
    bool ok = true;
    for (std::size_t i = 0; i < M.rows() && ok; ++i)
      for (std::size_t j = 0; j < M.cols(); ++j) {
        const Cyclo& v = M(i, j);
        if (v.is_zero()) continue;
        auto r = pt.reduce(v);
        if (!r) {
          ok = false;
          break;
        }
        rows[i][j] = *r;
      }
    if (ok) return mod_rank_profile(rows, pt.prime());
    if (k > 16) throw Error(ErrorKind::InvalidArgument, "no usable modular point");
  }
}

// d and X = d * B^-1 for the pivot block B = M[rows][cols].
struct PivotSystem {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  Cyclo d{1};
  Matrix<Cyclo> X;
};

PivotSystem make_system(const Matrix<Cyclo>& M, std::vector<std::size_t> rows, std::vector<std::size_t> cols) {
  PivotSystem s;
  s.rows = std::move(rows);
  s.cols = std::move(cols);
  const std::size_t r = s.rows.size();
  if (r == 0) return s;
  Matrix<Cyclo> B(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) B(i, j) = M(s.rows[i], s.cols[j]);
  auto [d, X] = scaled_inverse(B);
  s.d = d;
  s.X = std::move(X);
  return s;
}

// Exact test that row y of T equals sum_j c_j * M[rows[j]] with
// c = y[cols] * B^-1, checked as d*y == (y[cols] * X) * M[rows].
bool verify_row(const PivotSystem& s, const Matrix<Cyclo>& M, const Matrix<Cyclo>& T, std::size_t y) {
  const std::size_t r = s.rows.size();
  std::vector<Cyclo> c(r);
  for (std::size_t k = 0; k < r; ++k) {
    const Cyclo& yk = T(y, s.cols[k]);
    if (yk.is_zero()) continue;
    for (std::size_t j = 0; j < r; ++j) {
      const Cyclo& x = s.X(k, j);
      if (!x.is_zero()) c[j] += yk * x;
    }
  }
  for (std::size_t col = 0; col < T.cols(); ++col) {
    Cyclo rhs;
    for (std::size_t j = 0; j < r; ++j) {
      if (c[j].is_zero()) continue;
      const Cyclo& m = M(s.rows[j], col);
      if (!m.is_zero()) rhs += c[j] * m;
    }
    const Cyclo& yv = T(y, col);
    Cyclo lhs = yv.is_zero() ? Cyclo() : s.d * yv;
    if (lhs != rhs) return false;
  }
  return true;
}

}  // namespace

Matrix<Cyclo> stack_rows(const Matrix<Cyclo>& a, const Matrix<Cyclo>& b) {
  if (a.rows() == 0) return b;
  if (b.rows() == 0) return a;
  if (a.cols() != b.cols()) throw Error(ErrorKind::InvalidArgument, "stack_rows column mismatch");
  Matrix<Cyclo> m(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, j) = b(i, j);
  return m;
}

RankCertificate certified_rank(const Matrix<Cyclo>& M) {
  RankCertificate cert;
  if (M.rows() == 0 || M.cols() == 0) return cert;
  for (std::uint64_t attempt = 0; attempt < 3; ++attempt) {
    ModRankProfile prof = modular_profile(M, attempt * 101);
    PivotSystem sys = make_system(M, prof.pivot_rows, prof.pivot_cols);
    std::vector<bool> is_pivot(M.rows(), false);
    for (auto r : prof.pivot_rows) is_pivot[r] = true;
    bool ok = true;
    for (std::size_t y = 0; y < M.rows() && ok; ++y)
      if (!is_pivot[y]) ok = verify_row(sys, M, M, y);
    if (ok) {
      cert.rank = prof.rank;
      cert.pivot_rows = std::move(prof.pivot_rows);
      cert.pivot_cols = std::move(prof.pivot_cols);
      return cert;
    }
  }
  cert.rank = bareiss_rank(M);
  cert.fallback = true;
  return cert;
}

SpanSolution span_membership(const Matrix<Cyclo>& basis, const Matrix<Cyclo>& targets) {
  SpanSolution out;
  if (targets.rows() == 0) return out;
  RankCertificate cert = certified_rank(basis);
  if (cert.fallback) {
    // Rank profile unavailable: decide each target by a rank comparison.
    for (std::size_t y = 0; y < targets.rows(); ++y) {
      Matrix<Cyclo> one(1, targets.cols());
      for (std::size_t j = 0; j < targets.cols(); ++j) one(0, j) = targets(y, j);
      if (bareiss_rank(stack_rows(basis, one)) != cert.rank) {
        out.all_inside = false;
        out.outside.push_back(y);
      }
    }
    return out;
  }
  PivotSystem sys = make_system(basis, cert.pivot_rows, cert.pivot_cols);
  for (std::size_t y = 0; y < targets.rows(); ++y) {
    if (!verify_row(sys, basis, targets, y)) {
      out.all_inside = false;
      out.outside.push_back(y);
    }
  }
  return out;
}

}  // namespace qfodc
