#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "qfodc/coordalg.hpp"
#include "qfodc/rank.hpp"

namespace qfodc {

// All words of degree <= max_degree, indexed degree by degree and
// lexicographically within a degree.
class WordSpace {
 public:
  WordSpace(int N, int max_degree);

  std::size_t size() const { return offset_.back(); }
  std::size_t offset(int degree) const { return offset_[static_cast<std::size_t>(degree)]; }
  std::size_t count(int degree) const { return offset(degree + 1) - offset(degree); }
  int max_degree() const { return max_degree_; }
  Word word(std::size_t index) const;
  std::size_t index(const Word& w) const;
  int degree_of(std::size_t index) const;

 private:
  int N_;
  int max_degree_;
  std::vector<std::size_t> offset_;
};

struct SparseMat {
  std::size_t n = 0;
  std::vector<std::vector<std::pair<std::uint32_t, Scalar>>> rows;

  Scalar get(std::size_t i, std::size_t j) const;
  static SparseMat from_dense(const Matrix<Scalar>& M);
  Matrix<Scalar> dense() const;
};

// Multiplicative matrix-valued map on words, fixed by its values on the
// generators. F(empty word) = 1 and F(w1 w2) = F(w1) F(w2).
class MatRep {
 public:
  MatRep(std::size_t dim, int N, std::vector<SparseMat> gens, std::string name);

  std::uint64_t id() const { return id_; }
  std::size_t dim() const { return dim_; }
  int N() const { return N_; }
  const std::string& name() const { return name_; }
  const SparseMat& gen(int a, int b) const { return gens_[static_cast<std::size_t>(a * N_ + b)]; }
  const SparseMat& gen(char g) const { return gens_[static_cast<unsigned char>(g)]; }

  Matrix<Scalar> value(const Word& w) const;
  Matrix<Scalar> value(const CoordElem& a) const;
  Scalar entry(const Word& w, std::size_t row, std::size_t col) const;
  // e_row^T F(w) as a dense row.
  std::vector<Scalar> row_value(const Word& w, std::size_t row) const;

 private:
  std::uint64_t id_;
  std::size_t dim_;
  int N_;
  std::vector<SparseMat> gens_;
  std::string name_;
};

using MatRepPtr = std::shared_ptr<const MatRep>;

// coef * w^{twist * deg} * F(.)_{row,col}; w is the primitive root of order
// zeta_order, so twist t multiplies by the central character eps_zeta with
// zeta = w^t.
struct FTerm {
  Cyclo coef;
  MatRepPtr rep;
  std::uint32_t row = 0;
  std::uint32_t col = 0;
  int twist = 0;
};

// Linear combination of MatRep entries.
class Functional {
 public:
  Functional() = default;
  explicit Functional(std::vector<FTerm> terms, int order);

  const std::vector<FTerm>& terms() const { return terms_; }
  int order() const { return order_; }
  bool is_empty() const { return terms_.empty(); }

  friend Functional operator+(const Functional& a, const Functional& b);
  friend Functional operator-(const Functional& a, const Functional& b);
  friend Functional operator*(const Cyclo& s, const Functional& a);
  Functional operator-() const;

  // Value at the unit word.
  Cyclo at_unit() const;

 private:
  std::vector<FTerm> terms_;
  int order_ = 1;

  void canonicalize();
};

struct Policy {
  int start_degree = 2;
  int stability_window = 2;
  int d_max = 6;
};

struct RankResult {
  std::size_t rank = 0;
  int degree = 0;
  bool stable = true;
};

enum class VerdictKind { Equal, NotEqual, Undecided };

struct Verdict {
  VerdictKind kind = VerdictKind::Equal;
  int degree = 0;
  std::string witness;

  bool equal() const { return kind == VerdictKind::Equal; }
};

const char* verdict_name(VerdictKind k);

enum class Normalization {
  // L+ values z R^{ki}_{lj}, L- values z^-1 (R^-1)^{ik}_{jl}.
  RForm,
  // The same without z.
  PairingTable,
};

struct CoidealReport {
  bool passed = false;
  bool coideal = false;
  bool ad_invariant = false;
  int pivot_degree = 0;
  std::size_t basis_rank = 0;
  std::string detail;
};

class DualContext {
 public:
  explicit DualContext(CoordAlgebra& alg, Normalization norm = Normalization::RForm);

  const CoordAlgebra& alg() const { return alg_; }
  int N() const { return alg_.N(); }
  const FieldConfig& config() const { return alg_.config(); }
  int zeta_order() const { return alg_.config().zeta_order(); }
  const Scalar& z() const { return z_; }

  MatRepPtr lplus() const { return lplus_; }
  MatRepPtr lminus() const { return lminus_; }
  MatRepPtr eps_rep() const { return eps_; }

  MatRepPtr conv(const MatRepPtr& A, const MatRepPtr& B);
  MatRepPtr antipode_rep(const MatRepPtr& F);
  // 1-dim rep of the diagonal entry (i,i) of a triangular rep.
  MatRepPtr character(const MatRepPtr& F, std::size_t i);
  // e-th convolution power of a 1-dim rep; negative e uses the antipode.
  MatRepPtr character_power(const MatRepPtr& C, int e);

  // L-functionals of a corep v: l+_v^i_j = r(. (x) v^i_j), l-_v^i_j = rbar(v^i_j (x) .).
  MatRepPtr lplus_of(const Corep& v);
  MatRepPtr lminus_of(const Corep& v);
  // conv(antipode_rep(L-_v), L+_v); entry ((a,b),(c,d)) is S(l-^c_a) l+^b_d.
  MatRepPtr lrep_of(const Corep& v);

  Functional entry(const MatRepPtr& F, std::size_t row, std::size_t col, int twist = 0) const;
  Functional eps() const { return entry(eps_, 0, 0); }
  // eps_zeta with zeta = w^k; any k is admissible since w has the character order.
  Functional eps_zeta(int k) const;
  // Functionals l^i_j of v: sum_k lrep[(k,k),(i,j)], twisted by k.
  Functional l_entry(const Corep& v, std::size_t i, std::size_t j, int twist = 0);
  // Nonzero entries of L+ and L-.
  std::vector<Functional> l_generators();

  Functional product(const Functional& f, const Functional& g);
  Functional antipode(const Functional& f);
  Functional ad_r(const Functional& f, const Functional& x);
  // a -> f(a b) and a -> f(b a).
  Functional right_translate(const Functional& f, const Word& b);
  Functional left_translate(const Functional& f, const Word& b);

  Cyclo evaluate(const Functional& f, const Word& w);
  Cyclo evaluate(const Functional& f, const CoordElem& a);
  Cyclo evaluate(const Functional& f, const CycloElem& a);

  // Rows = functionals, columns = all words of degree <= degree.
  Matrix<Cyclo> eval_matrix(const std::vector<Functional>& fs, int degree);
  std::string eval_matrix_json(const std::vector<Functional>& fs, int degree);
  std::size_t rank(const std::vector<Functional>& fs, int degree);
  RankResult stabilized_rank(const std::vector<Functional>& fs, const Policy& policy);
  // Rows of fs lying outside span(basis), tested on words of degree <= degree.
  SpanSolution span_check(const std::vector<Functional>& basis, const std::vector<Functional>& targets, int degree);

  // eps together with every entry of every convolution product of
  // {L+, L-} of length <= length.
  std::vector<MatRepPtr> separating_family(int length);
  Verdict separated_equal(const CoordElem& a, const CoordElem& b, const Policy& policy);
  Verdict separated_equal(const CycloElem& a, const CycloElem& b, const Policy& policy);
  Verdict functional_equal(const Functional& f, const Functional& g, int degree);

  // Universal r-form extended by r(ac (x) b) = r(a (x) b1) r(c (x) b2) and
  // r(a (x) bc) = r(a1 (x) c) r(a2 (x) b).
  Scalar r_form(const CoordElem& a, const CoordElem& b);
  Scalar rbar_form(const CoordElem& a, const CoordElem& b);
  Scalar q_form(const CoordElem& a, const CoordElem& b);
  // l(a) = q(. (x) a); housed in the lrep of u^{(x)k} for each degree k in a.
  Functional l_of(const CoordElem& a);

  // tau(-2 lambda) = prod_k ((l+^1_1 ... l+^k_k)^2)^{m_k}.
  Functional tau_functional(const YoungWeight& w);
  // K_i = l-^1_1 ... l-^i_i, 1-based i.
  Functional k_functional(int i);
  MatRepPtr k_rep(int i);
  MatRepPtr tau_rep(const YoungWeight& w);

  CoidealReport coideal_check(const std::vector<Functional>& basis, int degree);
  // Delta(v^i_j) = sum_k v^i_k (x) v^k_j tested through the L-functionals.
  bool comatrix_check(const Corep& v);

 private:
  CoordAlgebra& alg_;
  Normalization norm_;
  Scalar z_;
  MatRepPtr lplus_, lminus_, eps_;

  std::mutex mu_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, MatRepPtr> conv_cache_;
  std::map<std::uint64_t, MatRepPtr> antipode_cache_;
  std::map<std::pair<std::uint64_t, std::size_t>, MatRepPtr> char_cache_;
  std::map<std::string, std::tuple<MatRepPtr, MatRepPtr, MatRepPtr>> l_cache_;
  std::map<int, MatRepPtr> lplus_power_;
  std::map<int, std::shared_ptr<const Corep>> tensor_power_;
  // (rep id, row, col) -> values on the word space prefix of the stored degree.
  struct Table {
    int degree = -1;
    std::vector<Scalar> vals;
  };
  std::map<std::tuple<std::uint64_t, std::uint32_t, std::uint32_t>, Table> tables_;
  std::map<int, std::shared_ptr<WordSpace>> spaces_;

  const WordSpace& space(int degree);
  void ensure_tables(const std::vector<Functional>& fs, int degree);
  const std::vector<Scalar>& table(const FTerm& t) const;
  Cyclo twist_factor(int twist, int degree) const;
  MatRepPtr lplus_power(int k);
  std::shared_ptr<const Corep> tensor_power(int k);
  Scalar r_word(const Word& a, const Word& b);
};

}  // namespace qfodc
