#include "qfodc/coordalg.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "qfodc/rank.hpp"

namespace qfodc {

std::string word_to_string(const Word& w, int N) {
  std::string s;
  for (std::size_t t = 0; t < w.size(); ++t) {
    if (t) s += ' ';
    s += "u^" + std::to_string(gen_row(w[t], N) + 1) + "_" + std::to_string(gen_col(w[t], N) + 1);
  }
  return s;
}

std::vector<std::pair<Word, Word>> coproduct_splits(const Word& w, int N) {
  std::vector<std::pair<Word, Word>> out;
  for_each_split(w, N, [&](const Word& a, const Word& b) { out.emplace_back(a, b); });
  return out;
}

CycloElem to_cyclo(const CoordElem& a) {
  CycloElem r;
  for (const auto& [w, c] : a.terms()) r.add_term(w, Cyclo(c));
  return r;
}

bool word_counit(const Word& w, int N) {
  for (char g : w)
    if (gen_row(g, N) != gen_col(g, N)) return false;
  return true;
}

Scalar counit(const CoordElem& a, int N) {
  Scalar s;
  for (const auto& [w, c] : a.terms())
    if (word_counit(w, N)) s += c;
  return s;
}

Cyclo counit(const CycloElem& a, int N) {
  Cyclo s;
  for (const auto& [w, c] : a.terms())
    if (word_counit(w, N)) s += c;
  return s;
}

CoordElem multiply(const CoordElem& a, const CoordElem& b) { return a * b; }

// ---------------------------------------------------------------------------
// Young frames and Weyl dimensions

YoungWeight YoungWeight::from_partition(const std::vector<int>& rows, int rank) {
  std::vector<int> lam = rows;
  if (static_cast<int>(lam.size()) > rank + 1)
    throw Error(ErrorKind::InvalidArgument, "Young frame has too many rows");
  // A full column of height rank+1 is trivial for sl_{rank+1}.
  if (static_cast<int>(lam.size()) == rank + 1) {
    int full = lam.back();
    for (auto& x : lam) x -= full;
  }
  YoungWeight w;
  w.m.assign(static_cast<std::size_t>(rank), 0);
  for (int j = 0; j < rank; ++j) {
    int a = j < static_cast<int>(lam.size()) ? lam[static_cast<std::size_t>(j)] : 0;
    int b = j + 1 < static_cast<int>(lam.size()) ? lam[static_cast<std::size_t>(j + 1)] : 0;
    if (a < b) throw Error(ErrorKind::InvalidArgument, "Young frame rows must be nonincreasing");
    w.m[static_cast<std::size_t>(j)] = a - b;
  }
  return w;
}

std::vector<int> YoungWeight::partition() const {
  std::vector<int> rows(m.size(), 0);
  int acc = 0;
  for (std::size_t j = m.size(); j-- > 0;) {
    acc += m[j];
    rows[j] = acc;
  }
  while (!rows.empty() && rows.back() == 0) rows.pop_back();
  return rows;
}

int YoungWeight::boxes() const {
  auto p = partition();
  return std::accumulate(p.begin(), p.end(), 0);
}

bool YoungWeight::is_zero() const {
  return std::all_of(m.begin(), m.end(), [](int x) { return x == 0; });
}

std::string YoungWeight::frame() const {
  auto p = partition();
  if (p.empty()) return "trivial";
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + "]";
}

long weyl_dim(const YoungWeight& w, const FieldConfig& config) {
  const int n = config.rank();
  if (static_cast<int>(w.m.size()) != n) throw Error(ErrorKind::InvalidArgument, "weight has wrong rank");
  for (int x : w.m)
    if (x < 0) throw Error(ErrorKind::InvalidArgument, "weight is not dominant");
  mpq_class dim = 1;
  if (config.series == Series::A) {
    // Positive roots e_i - e_j; (lambda + rho, coroot) = sum_{k=i}^{j-1} (m_k + 1).
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        long a = 0;
        for (int k = i; k < j; ++k) a += w.m[static_cast<std::size_t>(k)] + 1;
        dim *= mpq_class(a, j - i);
      }
  } else {
    // l_i = sum_{k >= i} m_k + (n - i) in epsilon coordinates (0-based i).
    std::vector<long> l(static_cast<std::size_t>(n)), r(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      long s = 0;
      for (int k = i; k < n; ++k) s += w.m[static_cast<std::size_t>(k)];
      l[static_cast<std::size_t>(i)] = s + n - i;
      r[static_cast<std::size_t>(i)] = n - i;
    }
    for (int i = 0; i < n; ++i) {
      dim *= mpq_class(l[static_cast<std::size_t>(i)], r[static_cast<std::size_t>(i)]);
      for (int j = i + 1; j < n; ++j) {
        auto a = static_cast<std::size_t>(i), b = static_cast<std::size_t>(j);
        dim *= mpq_class((l[a] - l[b]) * (l[a] + l[b]), (r[a] - r[b]) * (r[a] + r[b]));
      }
    }
  }
  dim.canonicalize();
  if (dim.get_den() != 1) throw Error(ErrorKind::InvalidArgument, "non-integral Weyl dimension");
  return dim.get_num().get_si();
}

bool check_counit(const Corep& v, int N) {
  for (std::size_t i = 0; i < v.dim; ++i)
    for (std::size_t j = 0; j < v.dim; ++j)
      if (counit(v.at(i, j), N) != Scalar(i == j ? 1 : 0)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// CoordAlgebra

namespace {

int inversions(const std::vector<int>& s) {
  int c = 0;
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b) c += s[a] > s[b];
  return c;
}

std::vector<std::vector<int>> subsets_of(int N, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < N; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

Matrix<Cyclo> to_cyclo_matrix(const Matrix<Scalar>& A) {
  Matrix<Cyclo> M(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) M(i, j) = Cyclo(A(i, j));
  return M;
}

}  // namespace

CoordAlgebra::CoordAlgebra(const FieldConfig& config) : config_(config), r_(build_r(config)) {
  projectors_ = spectral_projectors(rhat(r_), config_);
  const SpectralProjector* sym = nullptr;
  for (const auto& p : projectors_)
    if (p.label == "sym") sym = &p;
  if (!sym) throw Error(ErrorKind::SpectralFailure, "R-hat has no q-eigenspace");
  // P_q(e_i (x) e_j) = beta e_i (x) e_j + alpha e_j (x) e_i + ...; c = -beta/alpha.
  const int N = config_.N;
  for (int i = 0; i < N && config_.series == Series::A; ++i)
    for (int j = i + 1; j < N; ++j) {
      const Scalar& beta = sym->P(r_.idx(i, j), r_.idx(i, j));
      const Scalar& alpha = sym->P(r_.idx(j, i), r_.idx(i, j));
      if (alpha.is_zero()) throw Error(ErrorKind::SpectralFailure, "degenerate exterior relation");
      Scalar c = -(beta / alpha);
      if (ext_c_.is_zero())
        ext_c_ = c;
      else if (c != ext_c_)
        throw Error(ErrorKind::SpectralFailure, "exterior relation constant is not uniform");
    }
  if (ext_c_.is_zero()) ext_c_ = -config_.q();
  init_antipode();
}

void CoordAlgebra::init_antipode() {
  const int N = config_.N;
  s_gen_.assign(static_cast<std::size_t>(N * N), CoordElem());
  if (config_.series == Series::A) {
    std::vector<int> all(static_cast<std::size_t>(N));
    std::iota(all.begin(), all.end(), 0);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        std::vector<int> I, J;
        for (int t : all) {
          if (t != j) I.push_back(t);
          if (t != i) J.push_back(t);
        }
        s_gen_[static_cast<std::size_t>(i * N + j)] = ext_c_.pow(i - j) * minor(I, J);
      }
  } else {
    const Scalar q = config_.q();
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        auto a = static_cast<std::size_t>(i), b = static_cast<std::size_t>(j);
        Scalar c = Scalar(r_.eps[a] * r_.eps[b]) * q.pow(r_.rho[b] - r_.rho[a]);
        s_gen_[static_cast<std::size_t>(i * N + j)] = CoordElem::word(Word(1, gen_code(r_.prime(j), r_.prime(i), N)), c);
      }
  }
}

const CoordElem& CoordAlgebra::antipode_word(const Word& w) const {
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = s_cache_.find(w);
    if (it != s_cache_.end()) return it->second;
  }
  CoordElem r = CoordElem::one();
  for (auto it = w.rbegin(); it != w.rend(); ++it) r = r * s_gen_[static_cast<unsigned char>(*it)];
  std::lock_guard<std::mutex> lk(mu_);
  return s_cache_.emplace(w, std::move(r)).first->second;
}

CoordElem CoordAlgebra::antipode(const CoordElem& a) const {
  CoordElem r;
  for (const auto& [w, c] : a.terms()) r += c * antipode_word(w);
  return r;
}

CycloElem CoordAlgebra::antipode(const CycloElem& a) const {
  CycloElem r;
  for (const auto& [w, c] : a.terms())
    for (const auto& [w2, c2] : antipode_word(w).terms()) r.add_term(w2, c * Cyclo(c2));
  return r;
}

CoordElem CoordAlgebra::minor(const std::vector<int>& I, const std::vector<int>& J) const {
  if (I.size() != J.size()) throw Error(ErrorKind::InvalidArgument, "minor index sets differ in size");
  const int N = config_.N;
  // D^I_J = sum over orderings s of I of c^{inv(s)} u^{s_1}_{J_1} ... u^{s_k}_{J_k}.
  std::vector<int> s = I;
  std::sort(s.begin(), s.end());
  CoordElem r;
  do {
    Word w;
    for (std::size_t t = 0; t < s.size(); ++t) w += gen_code(s[t], J[t], N);
    r.add_term(w, ext_c_.pow(inversions(s)));
  } while (std::next_permutation(s.begin(), s.end()));
  return r;
}

MinorTable CoordAlgebra::exterior_coaction(int k) const {
  const int N = config_.N;
  const int kmax = config_.series == Series::A ? N : 1;
  if (k < 1 || k > kmax) throw Error(ErrorKind::InvalidDegree, "minor size " + std::to_string(k) + " out of range");
  MinorTable t;
  t.k = k;
  t.subsets = subsets_of(N, k);
  const std::size_t m = t.subsets.size();
  t.entries.assign(m * m, CoordElem());
  // phi(y_J) = sum over distinct (i_1..i_k) of y_{i_1}..y_{i_k} (x) u^{i_1}_{j_1}..u^{i_k}_{j_k};
  // reordering the y's to increasing order costs a factor c per inversion.
  for (std::size_t b = 0; b < m; ++b) {
    const auto& J = t.subsets[b];
    std::vector<int> seq(static_cast<std::size_t>(k), 0);
    std::function<void(int)> rec = [&](int pos) {
      if (pos == k) {
        std::vector<int> sorted = seq;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return;
        auto a = static_cast<std::size_t>(std::find(t.subsets.begin(), t.subsets.end(), sorted) - t.subsets.begin());
        Word w;
        for (int x = 0; x < k; ++x) w += gen_code(seq[static_cast<std::size_t>(x)], J[static_cast<std::size_t>(x)], N);
        t.entries[a * m + b].add_term(w, ext_c_.pow(inversions(seq)));
        return;
      }
      for (int i = 0; i < N; ++i) {
        seq[static_cast<std::size_t>(pos)] = i;
        rec(pos + 1);
      }
    };
    rec(0);
  }
  return t;
}

Corep CoordAlgebra::minor_corep(int k) const {
  MinorTable t = exterior_coaction(k);
  Corep v;
  v.dim = t.subsets.size();
  v.entries = std::move(t.entries);
  v.label = "minor:" + std::to_string(k);
  std::vector<int> rows(static_cast<std::size_t>(k), 1);
  v.weight = YoungWeight::from_partition(rows, config_.rank());
  return v;
}

Corep CoordAlgebra::trivial() const {
  Corep v;
  v.dim = 1;
  v.entries = {CoordElem::one()};
  v.label = "1";
  v.weight = YoungWeight{std::vector<int>(static_cast<std::size_t>(config_.rank()), 0)};
  return v;
}

Corep CoordAlgebra::fundamental() const {
  const int N = config_.N;
  Corep v;
  v.dim = static_cast<std::size_t>(N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) v.entries.push_back(CoordElem::generator(i, j, N));
  v.label = "u";
  v.weight = YoungWeight::from_partition({1}, config_.rank());
  return v;
}

Corep CoordAlgebra::tensor(const Corep& v, const Corep& w) const {
  Corep t;
  t.dim = v.dim * w.dim;
  t.entries.assign(t.dim * t.dim, CoordElem());
  for (std::size_t i = 0; i < v.dim; ++i)
    for (std::size_t j = 0; j < v.dim; ++j)
      for (std::size_t k = 0; k < w.dim; ++k)
        for (std::size_t l = 0; l < w.dim; ++l) t.at(i * w.dim + k, j * w.dim + l) = v.at(i, j) * w.at(k, l);
  t.label = "tensor(" + v.label + "," + w.label + ")";
  if (v.dim == 1 && v.weight && v.weight->is_zero()) t.weight = w.weight;
  if (w.dim == 1 && w.weight && w.weight->is_zero()) t.weight = v.weight;
  return t;
}

Corep CoordAlgebra::contragredient(const Corep& v) const {
  Corep c;
  c.dim = v.dim;
  c.entries.assign(v.dim * v.dim, CoordElem());
  for (std::size_t i = 0; i < v.dim; ++i)
    for (std::size_t j = 0; j < v.dim; ++j) c.at(i, j) = antipode(v.at(j, i));
  c.label = v.label == "u" ? "uc" : "contra(" + v.label + ")";
  if (v.weight) {
    YoungWeight w = *v.weight;
    if (config_.series == Series::A) std::reverse(w.m.begin(), w.m.end());
    c.weight = w;
  }
  return c;
}

Corep CoordAlgebra::direct_sum(const Corep& v, const Corep& w) const {
  Corep s;
  s.dim = v.dim + w.dim;
  s.entries.assign(s.dim * s.dim, CoordElem());
  for (std::size_t i = 0; i < v.dim; ++i)
    for (std::size_t j = 0; j < v.dim; ++j) s.at(i, j) = v.at(i, j);
  for (std::size_t i = 0; i < w.dim; ++i)
    for (std::size_t j = 0; j < w.dim; ++j) s.at(v.dim + i, v.dim + j) = w.at(i, j);
  s.label = "sum(" + v.label + "," + w.label + ")";
  return s;
}

Corep CoordAlgebra::projected_corep(const Corep& parent, const Matrix<Scalar>& P, const std::string& label) const {
  const std::size_t m = parent.dim;
  if (P.rows() != m || P.cols() != m) throw Error(ErrorKind::InvalidArgument, "projector size does not match corep");
  if (P * P != P) throw Error(ErrorKind::NotInvariant, "projector is not idempotent");
  if (P == Matrix<Scalar>::identity(m)) {
    Corep same = parent;
    same.label = label;
    return same;
  }
  RankCertificate cert = certified_rank(to_cyclo_matrix(P));
  std::vector<std::size_t> rows = cert.pivot_rows, cols = cert.pivot_cols;
  if (cert.fallback || rows.size() != cert.rank) throw Error(ErrorKind::NotInvariant, "projector rank profile unavailable");
  const std::size_t r = cert.rank;
  // P = B C with B = P[:, cols] and C = P[rows, cols]^-1 P[rows, :]; then C B = 1.
  Matrix<Scalar> BR(r, r);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) BR(a, b) = P(rows[a], cols[b]);
  Matrix<Scalar> PR(r, m);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t j = 0; j < m; ++j) PR(a, j) = P(rows[a], j);
  Matrix<Scalar> C = inverse(BR) * PR;
  Corep v;
  v.dim = r;
  v.entries.assign(r * r, CoordElem());
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t i = 0; i < m; ++i) {
      if (C(a, i).is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j) {
        const CoordElem& e = parent.at(i, j);
        if (e.is_zero()) continue;
        CoordElem ce = C(a, i) * e;
        for (std::size_t b = 0; b < r; ++b) {
          const Scalar& bv = P(j, cols[b]);
          if (!bv.is_zero()) v.at(a, b) += bv * ce;
        }
      }
    }
  v.label = label;
  if (validator_) validator_(v);
  return v;
}

// ---------------------------------------------------------------------------
// Descriptor language

namespace {

class DescParser {
 public:
  DescParser(const std::string& text, const CoordAlgebra& alg) : alg_(alg) {
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s_ += ch;
  }

  Corep parse() {
    Corep v = expr();
    if (pos_ != s_.size()) fail("unexpected token '" + s_.substr(pos_, 1) + "'");
    return v;
  }

 private:
  const CoordAlgebra& alg_;
  std::string s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::Parse, msg + " at position " + std::to_string(pos_) + " in corep descriptor '" + s_ + "'");
  }

  std::string ident() {
    std::size_t b = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])))) ++pos_;
    return s_.substr(b, pos_ - b);
  }

  void expect(char c) {
    if (pos_ >= s_.size()) fail(std::string("expected '") + c + "' but input ended");
    if (s_[pos_] != c) fail(std::string("expected '") + c + "' but found '" + s_[pos_] + "'");
    ++pos_;
  }

  Corep expr() {
    const std::size_t start = pos_;
    std::string id = ident();
    if (id.empty()) fail(pos_ < s_.size() ? "unexpected token '" + s_.substr(pos_, 1) + "'" : "empty descriptor");
    if (id == "1") return alg_.trivial();
    if (id == "u") return alg_.fundamental();
    if (id == "uc") {
      Corep c = alg_.contragredient(alg_.fundamental());
      c.label = "uc";
      return c;
    }
    if (id == "minor") {
      expect(':');
      std::string k = ident();
      if (k.empty() || !std::all_of(k.begin(), k.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
        fail("bad minor size '" + k + "'");
      return alg_.minor_corep(std::stoi(k));
    }
    if (id == "tensor" || id == "sum") {
      expect('(');
      Corep a = expr();
      expect(',');
      Corep b = expr();
      expect(')');
      return id == "tensor" ? alg_.tensor(a, b) : alg_.direct_sum(a, b);
    }
    if (id == "contra") {
      expect('(');
      Corep a = expr();
      expect(')');
      return alg_.contragredient(a);
    }
    if (id == "proj") {
      expect(':');
      std::string lab = ident();
      expect('(');
      Corep a = expr();
      expect(')');
      if (a.label != "tensor(u,u)") fail("projectors act on tensor(u,u) only");
      const SpectralProjector* sp = nullptr;
      for (const auto& p : alg_.uu_projectors())
        if (p.label == lab) sp = &p;
      if (!sp) fail("unknown projector label '" + lab + "'");
      Corep v = alg_.projected_corep(a, sp->P, "proj:" + lab + "(" + a.label + ")");
      const int rank = alg_.config().rank();
      if (lab == "sym") v.weight = YoungWeight::from_partition({2}, rank);
      if (lab == "antisym") v.weight = YoungWeight::from_partition({1, 1}, rank);
      if (lab == "triv") v.weight = YoungWeight::from_partition({}, rank);
      return v;
    }
    pos_ = start;
    fail("unknown token '" + id + "'");
  }
};

}  // namespace

std::shared_ptr<const Corep> CoordAlgebra::build_corep(const std::string& descriptor) const {
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = registry_.find(descriptor);
    if (it != registry_.end()) return it->second;
  }
  auto v = std::make_shared<const Corep>(DescParser(descriptor, *this).parse());
  std::lock_guard<std::mutex> lk(mu_);
  return registry_.emplace(descriptor, std::move(v)).first->second;
}

}  // namespace qfodc
