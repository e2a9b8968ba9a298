#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qfodc/cyclo.hpp"
#include "qfodc/rmat.hpp"

namespace qfodc {

// Word in the generators u^i_j; letter g = i*N + j (0-based), one char each.
using Word = std::string;

inline char gen_code(int i, int j, int N) { return static_cast<char>(i * N + j); }
inline int gen_row(char g, int N) { return static_cast<unsigned char>(g) / N; }
inline int gen_col(char g, int N) { return static_cast<unsigned char>(g) % N; }

std::string word_to_string(const Word& w, int N);

// Calls f(w1, w2) for each of the N^m splittings of Delta(w) = sum w1 (x) w2.
template <class F>
void for_each_split(const Word& w, int N, F&& f) {
  const std::size_t m = w.size();
  Word w1(m, '\0'), w2(m, '\0');
  std::vector<int> mid(m, 0);
  while (true) {
    for (std::size_t t = 0; t < m; ++t) {
      w1[t] = gen_code(gen_row(w[t], N), mid[t], N);
      w2[t] = gen_code(mid[t], gen_col(w[t], N), N);
    }
    f(static_cast<const Word&>(w1), static_cast<const Word&>(w2));
    std::size_t t = 0;
    while (t < m && ++mid[t] == N) mid[t++] = 0;
    if (t == m) return;
  }
}

std::vector<std::pair<Word, Word>> coproduct_splits(const Word& w, int N);

// Formal linear combination of words. No relations of O(G_q) are applied.
template <class T>
class BasicElem {
 public:
  using Terms = std::map<Word, T>;

  BasicElem() = default;
  static BasicElem one() { return word(Word()); }
  static BasicElem word(const Word& w, const T& c = T(1)) {
    BasicElem e;
    if (!c.is_zero()) e.t_.emplace(w, c);
    return e;
  }
  static BasicElem generator(int i, int j, int N) { return word(Word(1, gen_code(i, j, N))); }

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }
  int degree() const {
    int d = -1;
    for (const auto& [w, c] : t_) d = std::max(d, static_cast<int>(w.size()));
    return d;
  }

  void add_term(const Word& w, const T& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = t_.emplace(w, c);
    if (fresh) return;
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }

  BasicElem& operator+=(const BasicElem& b) {
    for (const auto& [w, c] : b.t_) add_term(w, c);
    return *this;
  }
  BasicElem& operator-=(const BasicElem& b) {
    for (const auto& [w, c] : b.t_) add_term(w, -c);
    return *this;
  }
  friend BasicElem operator+(BasicElem a, const BasicElem& b) { return a += b; }
  friend BasicElem operator-(BasicElem a, const BasicElem& b) { return a -= b; }
  friend BasicElem operator*(const T& s, const BasicElem& a) {
    BasicElem r;
    if (s.is_zero()) return r;
    for (const auto& [w, c] : a.t_) r.t_.emplace(w, s * c);
    return r;
  }
  friend BasicElem operator*(const BasicElem& a, const BasicElem& b) {
    BasicElem r;
    for (const auto& [w1, c1] : a.t_)
      for (const auto& [w2, c2] : b.t_) r.add_term(w1 + w2, c1 * c2);
    return r;
  }
  friend bool operator==(const BasicElem& a, const BasicElem& b) { return a.t_ == b.t_; }
  friend bool operator!=(const BasicElem& a, const BasicElem& b) { return !(a == b); }

  std::string to_string(int N) const {
    if (t_.empty()) return "0";
    std::string out;
    for (const auto& [w, c] : t_) {
      if (!out.empty()) out += " + ";
      std::string ws = w.empty() ? "1" : word_to_string(w, N);
      if (c.is_one())
        out += ws;
      else
        out += "(" + c.to_string() + ")*" + ws;
    }
    return out;
  }

 private:
  Terms t_;
};

using CoordElem = BasicElem<Scalar>;
using CycloElem = BasicElem<Cyclo>;

CycloElem to_cyclo(const CoordElem& a);

// Algebra character: 1 on the empty word, delta products on generators.
bool word_counit(const Word& w, int N);
Scalar counit(const CoordElem& a, int N);
Cyclo counit(const CycloElem& a, int N);
CoordElem multiply(const CoordElem& a, const CoordElem& b);

// Column multiplicities m_1..m_n of a Young frame; lambda = sum m_j omega_j.
struct YoungWeight {
  std::vector<int> m;

  static YoungWeight from_partition(const std::vector<int>& rows, int rank);
  std::vector<int> partition() const;
  int boxes() const;
  bool is_zero() const;
  // "trivial", "[1]", "[2]", "[1,1]", ...
  std::string frame() const;
  friend bool operator==(const YoungWeight& a, const YoungWeight& b) { return a.partition() == b.partition(); }
};

// Classical Weyl dimension of V(lambda) for sl_{n+1} (series A) or sp_{2n} (series C).
long weyl_dim(const YoungWeight& w, const FieldConfig& config);

struct Corep {
  std::size_t dim = 0;
  std::vector<CoordElem> entries;  // row-major, v^i_j at i*dim + j
  std::string label;
  // Set for coreps built as irreducible (fundamental, minors, projections).
  std::optional<YoungWeight> weight;

  const CoordElem& at(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }
  CoordElem& at(std::size_t i, std::size_t j) { return entries[i * dim + j]; }
};

bool check_counit(const Corep& v, int N);

// Quantum minors of size k: subsets in lexicographic order, D^I_J at (I, J).
struct MinorTable {
  int k = 0;
  std::vector<std::vector<int>> subsets;
  std::vector<CoordElem> entries;  // subsets.size()^2, row-major
};

class CoordAlgebra {
 public:
  // Called on every projected corep; throws NotInvariant when the comatrix
  // identity fails. Installed by the dual layer.
  using Validator = std::function<void(const Corep&)>;

  explicit CoordAlgebra(const FieldConfig& config);

  const FieldConfig& config() const { return config_; }
  const RData& r() const { return r_; }
  int N() const { return config_.N; }

  // c with y_j y_i = c y_i y_j (i < j) in the quantum exterior algebra, read
  // off the q-eigenspace of R-hat.
  const Scalar& exterior_constant() const { return ext_c_; }
  const std::vector<SpectralProjector>& uu_projectors() const { return projectors_; }

  // S(u^i_j) at index i*N + j.
  const std::vector<CoordElem>& antipode_generators() const { return s_gen_; }
  CoordElem antipode(const CoordElem& a) const;
  CycloElem antipode(const CycloElem& a) const;
  const CoordElem& antipode_word(const Word& w) const;

  MinorTable exterior_coaction(int k) const;
  CoordElem minor(const std::vector<int>& I, const std::vector<int>& J) const;
  Corep minor_corep(int k) const;

  Corep trivial() const;
  Corep fundamental() const;
  Corep tensor(const Corep& v, const Corep& w) const;
  Corep contragredient(const Corep& v) const;
  Corep direct_sum(const Corep& v, const Corep& w) const;
  Corep projected_corep(const Corep& parent, const Matrix<Scalar>& P, const std::string& label) const;

  void set_validator(Validator v) { validator_ = std::move(v); }

  // Descriptor language: 1 | u | uc | minor:K | tensor(D,D) | sum(D,D) |
  // contra(D) | proj:LABEL(D) with LABEL a spectral label of R-hat.
  std::shared_ptr<const Corep> build_corep(const std::string& descriptor) const;

 private:
  FieldConfig config_;
  RData r_;
  std::vector<SpectralProjector> projectors_;
  Scalar ext_c_;
  std::vector<CoordElem> s_gen_;
  Validator validator_;

  mutable std::mutex mu_;
  mutable std::unordered_map<Word, CoordElem> s_cache_;
  mutable std::map<std::string, std::shared_ptr<const Corep>> registry_;

  void init_antipode();
};

}  // namespace qfodc
