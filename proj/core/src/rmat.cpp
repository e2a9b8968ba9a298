#include "qfodc/rmat.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>

namespace qfodc {

namespace {

Matrix<Scalar> build_a(const FieldConfig& c) {
  const int N = c.N;
  const Scalar q = c.q();
  const Scalar d = q - q.inv();
  Matrix<Scalar> R(N * N, N * N);
  auto id = [N](int a, int b) { return static_cast<std::size_t>(a * N + b); };
  for (int i = 0; i < N; ++i)
    for (int n = 0; n < N; ++n) {
      R(id(i, n), id(i, n)) += (i == n) ? q : Scalar(1);
      if (i > n) R(id(i, n), id(n, i)) += d;
    }
  return R;
}

Matrix<Scalar> build_c(const FieldConfig& c, const std::vector<int>& rho, const std::vector<int>& eps) {
  const int N = c.N;
  const Scalar q = c.q();
  const Scalar d = q - q.inv();
  Matrix<Scalar> R(N * N, N * N);
  auto pr = [N](int i) { return N - 1 - i; };
  // e_ab (x) e_cd contributes to R^{ac}_{bd}.
  auto add = [&](int a, int b, int cc, int dd, const Scalar& v) {
    R(static_cast<std::size_t>(a * N + cc), static_cast<std::size_t>(b * N + dd)) += v;
  };
  for (int i = 0; i < N; ++i) {
    add(i, i, i, i, q);
    for (int j = 0; j < N; ++j)
      if (j != i && j != pr(i)) add(i, i, j, j, Scalar(1));
    add(pr(i), pr(i), i, i, q.inv());
  }
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < i; ++j) {
      add(i, j, j, i, d);
      add(i, j, pr(i), pr(j), -(d * q.pow(rho[i] - rho[j]) * Scalar(eps[i] * eps[j])));
    }
  return R;
}

enum class Slots { S12, S13, S23 };

// R acting on two of the three tensor slots of V^{(x)3}.
Matrix<Scalar> embed(const Matrix<Scalar>& R, int N, Slots s) {
  const std::size_t N3 = static_cast<std::size_t>(N) * N * N;
  Matrix<Scalar> M(N3, N3);
  auto id3 = [N](int a, int b, int c) { return static_cast<std::size_t>((a * N + b) * N + c); };
  for (int i = 0; i < N; ++i)
    for (int n = 0; n < N; ++n)
      for (int j = 0; j < N; ++j)
        for (int m = 0; m < N; ++m) {
          const Scalar& v = R(static_cast<std::size_t>(i * N + n), static_cast<std::size_t>(j * N + m));
          if (v.is_zero()) continue;
          for (int o = 0; o < N; ++o) {
            switch (s) {
              case Slots::S12: M(id3(i, n, o), id3(j, m, o)) = v; break;
              case Slots::S13: M(id3(i, o, n), id3(j, o, m)) = v; break;
              case Slots::S23: M(id3(o, i, n), id3(o, j, m)) = v; break;
            }
          }
        }
  return M;
}

int max_exponent(const Scalar& s) {
  int e = 0;
  for (const Poly* f : {&s.num(), &s.den()})
    if (!f->is_zero()) e = std::max({e, f->degree(), f->valuation()});
  return e;
}

}  // namespace

RData build_r(const FieldConfig& config) {
  config.validate();
  RData r;
  r.config = config;
  r.z = config.z();
  if (config.series == Series::A) {
    r.R = build_a(config);
  } else {
    const int n = config.N / 2;
    for (int i = 0; i < n; ++i) r.rho.push_back(n - i);
    for (int i = 0; i < n; ++i) r.rho.push_back(-(i + 1));
    r.eps.assign(static_cast<std::size_t>(n), 1);
    r.eps.resize(static_cast<std::size_t>(config.N), -1);
    r.R = build_c(config, r.rho, r.eps);
  }
  r.Rinv = inverse(r.R);
  return r;
}

Matrix<Scalar> rhat(const RData& r) {
  const int N = r.N();
  Matrix<Scalar> H(r.R.rows(), r.R.cols());
  for (int i = 0; i < N; ++i)
    for (int n = 0; n < N; ++n)
      for (int j = 0; j < N; ++j)
        for (int m = 0; m < N; ++m) H(r.idx(i, n), r.idx(j, m)) = r.at(n, i, j, m);
  return H;
}

Matrix<Scalar> r_inverse(const RData& r) { return r.Rinv; }

bool check_yang_baxter(const Matrix<Scalar>& R, int N) {
  Matrix<Scalar> R12 = embed(R, N, Slots::S12);
  Matrix<Scalar> R13 = embed(R, N, Slots::S13);
  Matrix<Scalar> R23 = embed(R, N, Slots::S23);
  return R12 * R13 * R23 == R23 * R13 * R12;
}

bool check_yang_baxter(const RData& r) { return check_yang_baxter(r.R, r.N()); }

bool check_braid_relation(const Matrix<Scalar>& Rh, int N) {
  Matrix<Scalar> A = embed(Rh, N, Slots::S12);
  Matrix<Scalar> B = embed(Rh, N, Slots::S23);
  return A * B * A == B * A * B;
}

Scalar ScalarPolynomial::operator()(const Scalar& x) const {
  Scalar acc;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::string ScalarPolynomial::to_string() const {
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const Scalar& c = coeffs[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    std::string mono = k == 0 ? "" : (k == 1 ? "x" : "x^" + std::to_string(k));
    if (c.is_one() && k > 0)
      out += mono;
    else
      out += "(" + c.to_string() + ")" + (mono.empty() ? "" : "*" + mono);
  }
  return out.empty() ? "0" : out;
}

ScalarPolynomial minimal_polynomial(const Matrix<Scalar>& A) {
  const std::size_t n = A.rows();
  if (A.cols() != n) throw Error(ErrorKind::InvalidArgument, "minimal polynomial needs a square matrix");
  struct Reduced {
    std::vector<Scalar> v;
    std::vector<Scalar> comb;
    std::size_t pivot;
  };
  std::vector<Reduced> basis;
  Matrix<Scalar> power = Matrix<Scalar>::identity(n);
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<Scalar> v = power.data();
    std::vector<Scalar> comb(k + 1);
    comb[k] = Scalar(1);
    for (const auto& b : basis) {
      if (v[b.pivot].is_zero()) continue;
      Scalar f = v[b.pivot] / b.v[b.pivot];
      for (std::size_t t = 0; t < v.size(); ++t)
        if (!b.v[t].is_zero()) v[t] -= f * b.v[t];
      for (std::size_t t = 0; t < b.comb.size(); ++t)
        if (!b.comb[t].is_zero()) comb[t] -= f * b.comb[t];
    }
    auto nz = std::find_if(v.begin(), v.end(), [](const Scalar& s) { return !s.is_zero(); });
    if (nz == v.end()) return ScalarPolynomial{std::move(comb)};
    const auto pivot = static_cast<std::size_t>(nz - v.begin());
    basis.push_back({std::move(v), std::move(comb), pivot});
    power = power * A;
  }
  throw Error(ErrorKind::SpectralFailure, "no dependency among powers");
}

ScalarPolynomial check_minimal_polynomial(const RData& r) { return minimal_polynomial(rhat(r)); }

std::vector<SpectralProjector> spectral_projectors(const Matrix<Scalar>& Rh, const FieldConfig& config) {
  ScalarPolynomial mp = minimal_polynomial(Rh);
  int bound = 1;
  for (const auto& c : mp.coeffs) bound = std::max(bound, max_exponent(c));
  std::vector<Scalar> roots;
  for (int e = -bound; e <= bound; ++e)
    for (int s : {1, -1}) {
      Scalar cand = Scalar(s) * Scalar::p_pow(e);
      if (mp(cand).is_zero()) roots.push_back(cand);
    }
  if (static_cast<int>(roots.size()) != mp.degree())
    throw Error(ErrorKind::SpectralFailure, "eigenvalues of R-hat are not distinct signed monomials");

  const Scalar q = config.q();
  auto label_of = [&](const Scalar& ev, std::size_t k) -> std::string {
    if (ev == q) return "sym";
    if (ev == -q.inv()) return "antisym";
    if (config.series == Series::C && ev == -q.pow(-config.N - 1)) return "triv";
    return "ev" + std::to_string(k);
  };
  const std::size_t n = Rh.rows();
  std::vector<SpectralProjector> out;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    Matrix<Scalar> P = Matrix<Scalar>::identity(n);
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (j == i) continue;
      Matrix<Scalar> F = Rh - roots[j] * Matrix<Scalar>::identity(n);
      P = (Scalar(1) / (roots[i] - roots[j])) * (P * F);
    }
    Scalar tr;
    for (std::size_t t = 0; t < n; ++t) tr += P(t, t);
    if (!tr.num().is_constant() || !tr.den().is_one() || tr.num().lead_sign() < 0)
      throw Error(ErrorKind::SpectralFailure, "projector trace is not a nonnegative integer");
    SpectralProjector sp;
    sp.eigenvalue = roots[i];
    sp.rank = tr.is_zero() ? 0 : static_cast<std::size_t>(tr.num().coeff(0).get_ui());
    sp.P = std::move(P);
    sp.label = label_of(roots[i], i);
    out.push_back(std::move(sp));
  }
  auto order = [](const std::string& l) {
    if (l == "sym") return 0;
    if (l == "antisym") return 1;
    if (l == "triv") return 2;
    return 3;
  };
  std::stable_sort(out.begin(), out.end(),
                   [&](const SpectralProjector& a, const SpectralProjector& b) { return order(a.label) < order(b.label); });
  return out;
}

std::string r_to_json(const RData& r) {
  const int N = r.N();
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (int i = 0; i < N; ++i)
    for (int n = 0; n < N; ++n)
      for (int j = 0; j < N; ++j)
        for (int m = 0; m < N; ++m) {
          const Scalar& v = r.at(i, n, j, m);
          if (v.is_zero()) continue;
          arr.push_back({{"i", i + 1}, {"n", n + 1}, {"j", j + 1}, {"m", m + 1}, {"value", v.to_string()}});
        }
  return arr.dump();
}

}  // namespace qfodc
