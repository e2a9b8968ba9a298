#pragma once

#include <string>
#include <vector>

#include "qfodc/matrix.hpp"
#include "qfodc/scalar.hpp"

namespace qfodc {

// Vector-representation R-matrix. Entry R^{in}_{jm} sits at row i*N+n,
// column j*N+m: R maps e_j (x) e_m to sum R^{in}_{jm} e_i (x) e_n.
struct RData {
  FieldConfig config;
  Matrix<Scalar> R;
  Matrix<Scalar> Rinv;
  Scalar z;
  // C series metric data, 0-based: rho = (n..1, -1..-n), eps = (1^n, (-1)^n).
  std::vector<int> rho;
  std::vector<int> eps;

  int N() const { return config.N; }
  const Scalar& at(int i, int n, int j, int m) const { return R(idx(i, n), idx(j, m)); }
  const Scalar& inv_at(int i, int n, int j, int m) const { return Rinv(idx(i, n), idx(j, m)); }
  std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a * config.N + b); }
  // Index partner i' = N-1-i of the symplectic form.
  int prime(int i) const { return config.N - 1 - i; }
};

RData build_r(const FieldConfig& config);

// Braid form R-hat = flip o R: entry ((i,n),(j,m)) is R^{ni}_{jm}.
Matrix<Scalar> rhat(const RData& r);
Matrix<Scalar> r_inverse(const RData& r);

bool check_yang_baxter(const Matrix<Scalar>& R, int N);
bool check_yang_baxter(const RData& r);
// (Rh x 1)(1 x Rh)(Rh x 1) = (1 x Rh)(Rh x 1)(1 x Rh).
bool check_braid_relation(const Matrix<Scalar>& Rh, int N);

// Monic polynomial in x with coefficients lowest degree first.
struct ScalarPolynomial {
  std::vector<Scalar> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  Scalar operator()(const Scalar& x) const;
  std::string to_string() const;
};

ScalarPolynomial minimal_polynomial(const Matrix<Scalar>& A);
ScalarPolynomial check_minimal_polynomial(const RData& r);

struct SpectralProjector {
  Scalar eigenvalue;
  Matrix<Scalar> P;
  std::size_t rank = 0;
  // "sym" for q, "antisym" for -q^-1, "triv" for -q^{-N-1}, else "ev<k>".
  std::string label;
};

// Idempotents P_i with sum P_i = 1 and Rh = sum lambda_i P_i. Eigenvalues are
// sought among signed monomials +-p^e; anything else is a spectral failure.
std::vector<SpectralProjector> spectral_projectors(const Matrix<Scalar>& Rh, const FieldConfig& config);

// Sparse entry dump: [{"i":..,"n":..,"j":..,"m":..,"value":".."}], 1-based.
std::string r_to_json(const RData& r);

}  // namespace qfodc
