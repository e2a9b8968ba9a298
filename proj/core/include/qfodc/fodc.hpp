#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qfodc/dual.hpp"

namespace qfodc {

// Admissible characters eps_zeta are indexed by k with zeta = w^k, w the
// primitive root of order config.zeta_order().
// Accepts "1", "-1", "i", "-i", "k/n" (zeta = e(k/n)), "omega^k" and "w^k".
int parse_zeta(const std::string& text, const FieldConfig& config);
// "1", "-1", "i", "-i" or "e(k/n)" in lowest terms.
std::string zeta_label(int k, int order);

struct QuantumLieAlgebra {
  int zeta = 0;
  std::shared_ptr<const Corep> v;
  // X_ij = eps_zeta l(v^i_j) - delta_ij eps at index i*m + j.
  std::vector<Functional> basis;
  RankResult rank;
  RankResult rank_with_eps;
};

// Bicovariant calculus in free left-module coordinates: one-forms are
// sum_ij c_ij omega_ij with coefficients in the free word algebra.
struct Calculus {
  QuantumLieAlgebra X;
  // Right module structure omega_ij b = b_(1) f_{ij,kl}(b_(2)) omega_kl with
  // f_{ij,kl} = eps_zeta lrep[(i,j),(k,l)].
  MatRepPtr right_module;
  std::size_t invariant_dim = 0;
};

using OneForm = std::vector<CycloElem>;

struct DirectSum {
  std::vector<Functional> basis;
  std::vector<std::size_t> part_ranks;
  std::size_t rank = 0;
  int degree = 0;
};

struct TensorIdentityReport {
  bool holds = false;
  std::size_t rank_tensor = 0;
  std::size_t rank_product = 0;
  int degree = 0;
};

struct Component {
  int zeta = 0;
  std::string zeta_label;
  std::string frame;
  std::string descriptor;
  std::size_t dim = 0;
  int cert_degree = 0;
};

struct ClassificationReport {
  std::string input;
  std::vector<Component> components;
  std::size_t total_dim = 0;
  std::size_t input_rank = 0;
  std::size_t residual_rank = 0;
  std::string central_element;
  std::vector<std::string> library;
  int degree = 0;

  std::string to_json() const;
  std::string to_markdown() const;
};

class FodcContext {
 public:
  explicit FodcContext(DualContext& dual) : dual_(dual) {}

  DualContext& dual() { return dual_; }
  const CoordAlgebra& alg() const { return dual_.alg(); }

  QuantumLieAlgebra quantum_lie(std::shared_ptr<const Corep> v, int zeta, const Policy& policy);
  Calculus calculus(const QuantumLieAlgebra& X);

  OneForm differential(const Calculus& cal, const CoordElem& a);
  OneForm left_multiply(const CycloElem& a, const OneForm& w) const;
  OneForm right_multiply(const Calculus& cal, const OneForm& w, const CoordElem& b);
  // d(ab) - a db - da b, coefficientwise dual-separated against zero.
  Verdict leibniz_check(const Calculus& cal, const CoordElem& a, const CoordElem& b, const Policy& policy);

  bool right_ideal_member(const Calculus& cal, const CoordElem& a);
  // Rank of {eps} and the basis on words of degree <= degree: the codimension
  // of R_Gamma within that truncation.
  std::size_t ideal_codimension(const Calculus& cal, int degree);

  // (D^-1)^j_i = r(S^2(v^j_n) (x) v^n_i), stored at (j, i).
  Matrix<Scalar> d_inverse_matrix(const Corep& v);
  Functional central_element(const Corep& v, int zeta);
  // c f == f c for every nonzero l+- generator f.
  Verdict central_check(const Functional& c, int degree);
  // Basis of span{a -> c(a b) - eps(a) c(b) : deg b <= bound}, by rank at degree.
  std::vector<Functional> quantum_lie_from_central(const Functional& c, int bound, int degree);

  // Throws NotDirect when the union loses rank.
  DirectSum direct_sum(const std::vector<QuantumLieAlgebra>& parts, int degree);
  TensorIdentityReport tensor_identity_check(std::shared_ptr<const Corep> v, std::shared_ptr<const Corep> w, int zeta,
                                             int zeta2, int degree);

  // (descriptor, frame) of the irreducible candidates with at most `bound` boxes.
  std::vector<std::pair<std::string, std::string>> component_library(int bound) const;
  ClassificationReport classify(const std::vector<Functional>& X, int degree, int bound = 2);

 private:
  DualContext& dual_;

  std::vector<Functional> lie_basis(const Corep& v, int zeta);
};

}  // namespace qfodc
