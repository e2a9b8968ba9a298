#include "qfodc/dual.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <nlohmann/json.hpp>
#include <set>

namespace qfodc {

// ---------------------------------------------------------------------------
// WordSpace

WordSpace::WordSpace(int N, int max_degree) : N_(N), max_degree_(max_degree) {
  if (max_degree < 0) throw Error(ErrorKind::InvalidDegree, "negative degree");
  const std::size_t G = static_cast<std::size_t>(N) * N;
  offset_.push_back(0);
  std::size_t c = 1;
  for (int d = 0; d <= max_degree; ++d) {
    offset_.push_back(offset_.back() + c);
    c *= G;
  }
}

int WordSpace::degree_of(std::size_t index) const {
  int d = 0;
  while (index >= offset(d + 1)) ++d;
  return d;
}

Word WordSpace::word(std::size_t index) const {
  const int d = degree_of(index);
  const std::size_t G = static_cast<std::size_t>(N_) * N_;
  std::size_t r = index - offset(d);
  Word w(static_cast<std::size_t>(d), '\0');
  for (int t = d - 1; t >= 0; --t) {
    w[static_cast<std::size_t>(t)] = static_cast<char>(r % G);
    r /= G;
  }
  return w;
}

std::size_t WordSpace::index(const Word& w) const {
  const std::size_t G = static_cast<std::size_t>(N_) * N_;
  std::size_t r = 0;
  for (char g : w) r = r * G + static_cast<unsigned char>(g);
  return offset(static_cast<int>(w.size())) + r;
}

// ---------------------------------------------------------------------------
// SparseMat, MatRep

Scalar SparseMat::get(std::size_t i, std::size_t j) const {
  for (const auto& [c, v] : rows[i])
    if (c == j) return v;
  return Scalar();
}

SparseMat SparseMat::from_dense(const Matrix<Scalar>& M) {
  SparseMat s;
  s.n = M.rows();
  s.rows.resize(s.n);
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j)
      if (!M(i, j).is_zero()) s.rows[i].emplace_back(static_cast<std::uint32_t>(j), M(i, j));
  return s;
}

Matrix<Scalar> SparseMat::dense() const {
  Matrix<Scalar> M(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [c, v] : rows[i]) M(i, c) = v;
  return M;
}

namespace {

std::atomic<std::uint64_t> next_rep_id{1};

void row_times(const std::vector<Scalar>& v, const SparseMat& G, std::vector<Scalar>& out) {
  for (auto& x : out) x = Scalar();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    for (const auto& [j, x] : G.rows[i]) out[j] += v[i] * x;
  }
}

bool all_zero(const std::vector<Scalar>& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

}  // namespace

MatRep::MatRep(std::size_t dim, int N, std::vector<SparseMat> gens, std::string name)
    : id_(next_rep_id++), dim_(dim), N_(N), gens_(std::move(gens)), name_(std::move(name)) {
  if (gens_.size() != static_cast<std::size_t>(N) * N) throw Error(ErrorKind::InvalidArgument, "MatRep needs N^2 generator values");
}

std::vector<Scalar> MatRep::row_value(const Word& w, std::size_t row) const {
  std::vector<Scalar> v(dim_), tmp(dim_);
  v[row] = Scalar(1);
  for (char g : w) {
    row_times(v, gen(g), tmp);
    std::swap(v, tmp);
    if (all_zero(v)) break;
  }
  return v;
}

Scalar MatRep::entry(const Word& w, std::size_t row, std::size_t col) const { return row_value(w, row)[col]; }

Matrix<Scalar> MatRep::value(const Word& w) const {
  Matrix<Scalar> M(dim_, dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    auto v = row_value(w, r);
    for (std::size_t c = 0; c < dim_; ++c) M(r, c) = v[c];
  }
  return M;
}

Matrix<Scalar> MatRep::value(const CoordElem& a) const {
  Matrix<Scalar> M(dim_, dim_);
  for (const auto& [w, c] : a.terms()) M = M + c * value(w);
  return M;
}

// ---------------------------------------------------------------------------
// Functional

Functional::Functional(std::vector<FTerm> terms, int order) : terms_(std::move(terms)), order_(order) { canonicalize(); }

void Functional::canonicalize() {
  for (auto& t : terms_) t.twist = ((t.twist % order_) + order_) % order_;
  std::sort(terms_.begin(), terms_.end(), [](const FTerm& a, const FTerm& b) {
    return std::make_tuple(a.rep->id(), a.row, a.col, a.twist) < std::make_tuple(b.rep->id(), b.row, b.col, b.twist);
  });
  std::vector<FTerm> out;
  for (auto& t : terms_) {
    if (!out.empty() && out.back().rep->id() == t.rep->id() && out.back().row == t.row && out.back().col == t.col &&
        out.back().twist == t.twist) {
      out.back().coef += t.coef;
    } else {
      out.push_back(std::move(t));
    }
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const FTerm& t) { return t.coef.is_zero(); }), out.end());
  terms_ = std::move(out);
}

namespace {

int merged_order(const Functional& a, const Functional& b) {
  if (a.is_empty()) return b.order();
  if (b.is_empty()) return a.order();
  if (a.order() != b.order()) throw Error(ErrorKind::InvalidArgument, "functionals over different character groups");
  return a.order();
}

}  // namespace

Functional operator+(const Functional& a, const Functional& b) {
  std::vector<FTerm> t = a.terms_;
  t.insert(t.end(), b.terms_.begin(), b.terms_.end());
  return Functional(std::move(t), merged_order(a, b));
}

Functional Functional::operator-() const {
  std::vector<FTerm> t = terms_;
  for (auto& x : t) x.coef = -x.coef;
  return Functional(std::move(t), order_);
}

Functional operator-(const Functional& a, const Functional& b) { return a + (-b); }

Functional operator*(const Cyclo& s, const Functional& a) {
  std::vector<FTerm> t = a.terms_;
  for (auto& x : t) x.coef = s * x.coef;
  return Functional(std::move(t), a.order_);
}

Cyclo Functional::at_unit() const {
  Cyclo s;
  for (const auto& t : terms_)
    if (t.row == t.col) s += t.coef;
  return s;
}

const char* verdict_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::Equal: return "equal";
    case VerdictKind::NotEqual: return "not-equal";
    case VerdictKind::Undecided: return "undecided";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// DualContext: representations

namespace {

MatRepPtr make_rep(std::size_t dim, int N, const std::vector<Matrix<Scalar>>& dense, std::string name) {
  std::vector<SparseMat> gens;
  gens.reserve(dense.size());
  for (const auto& M : dense) gens.push_back(SparseMat::from_dense(M));
  return std::make_shared<const MatRep>(dim, N, std::move(gens), std::move(name));
}

Matrix<Scalar> kron(const Matrix<Scalar>& A, const Matrix<Scalar>& B) {
  Matrix<Scalar> K(A.rows() * B.rows(), A.cols() * B.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) {
      if (A(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < B.rows(); ++k)
        for (std::size_t l = 0; l < B.cols(); ++l)
          if (!B(k, l).is_zero()) K(i * B.rows() + k, j * B.cols() + l) = A(i, j) * B(k, l);
    }
  return K;
}

}  // namespace

DualContext::DualContext(CoordAlgebra& alg, Normalization norm) : alg_(alg), norm_(norm) {
  const RData& r = alg_.r();
  const int N = alg_.N();
  z_ = norm == Normalization::RForm ? r.z : Scalar(1);
  const Scalar zi = z_.inv();
  std::vector<Matrix<Scalar>> lp, lm, ep;
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      Matrix<Scalar> P(N, N), M(N, N), E(1, 1);
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
          P(i, j) = z_ * r.at(a, i, b, j);
          M(i, j) = zi * r.inv_at(i, a, j, b);
        }
      E(0, 0) = Scalar(a == b ? 1 : 0);
      lp.push_back(std::move(P));
      lm.push_back(std::move(M));
      ep.push_back(std::move(E));
    }
  lplus_ = make_rep(N, N, lp, "L+");
  lminus_ = make_rep(N, N, lm, "L-");
  eps_ = make_rep(1, N, ep, "eps");
  alg_.set_validator([this](const Corep& v) {
    if (!comatrix_check(v)) throw Error(ErrorKind::NotInvariant, "compressed corep '" + v.label + "' fails the comatrix identity");
  });
}

MatRepPtr DualContext::conv(const MatRepPtr& A, const MatRepPtr& B) {
  auto key = std::make_pair(A->id(), B->id());
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = conv_cache_.find(key);
    if (it != conv_cache_.end()) return it->second;
  }
  const int N = alg_.N();
  const std::size_t dA = A->dim(), dB = B->dim(), d = dA * dB;
  std::vector<SparseMat> gens;
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      SparseMat S;
      S.n = d;
      S.rows.resize(d);
      std::vector<Scalar> acc(d);
      for (std::size_t i = 0; i < dA; ++i)
        for (std::size_t k = 0; k < dB; ++k) {
          bool any = false;
          for (int c = 0; c < N; ++c) {
            const auto& ra = A->gen(a, c).rows[i];
            const auto& rb = B->gen(c, b).rows[k];
            for (const auto& [j, x] : ra)
              for (const auto& [l, y] : rb) {
                acc[j * dB + l] += x * y;
                any = true;
              }
          }
          if (!any) continue;
          auto& row = S.rows[i * dB + k];
          for (std::size_t t = 0; t < d; ++t)
            if (!acc[t].is_zero()) {
              row.emplace_back(static_cast<std::uint32_t>(t), acc[t]);
              acc[t] = Scalar();
            }
        }
      gens.push_back(std::move(S));
    }
  auto rep = std::make_shared<const MatRep>(d, N, std::move(gens), "(" + A->name() + "*" + B->name() + ")");
  std::lock_guard<std::mutex> lk(mu_);
  return conv_cache_.emplace(key, rep).first->second;
}

MatRepPtr DualContext::antipode_rep(const MatRepPtr& F) {
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = antipode_cache_.find(F->id());
    if (it != antipode_cache_.end()) return it->second;
  }
  const int N = alg_.N();
  const std::size_t d = F->dim(), n = d * static_cast<std::size_t>(N);
  auto idx = [N](std::size_t x, int y) { return x * static_cast<std::size_t>(N) + static_cast<std::size_t>(y); };
  // M[(k,c),(j,b)] = f^k_j(u^c_b); S is the inverse of M with indices transposed.
  Matrix<Scalar> M(n, n);
  for (int c = 0; c < N; ++c)
    for (int b = 0; b < N; ++b) {
      const SparseMat& G = F->gen(c, b);
      for (std::size_t k = 0; k < d; ++k)
        for (const auto& [j, v] : G.rows[k]) M(idx(k, c), idx(j, b)) = v;
    }
  Matrix<Scalar> T;
  try {
    T = inverse(M);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DivisionByZero)
      throw Error(ErrorKind::AntipodeFailure, "generator block matrix of " + F->name() + " is singular");
    throw;
  }
  std::vector<Matrix<Scalar>> gens;
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      Matrix<Scalar> G(d, d);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) G(i, j) = T(idx(j, a), idx(i, b));
      gens.push_back(std::move(G));
    }
  auto rep = make_rep(d, N, gens, "S(" + F->name() + ")");
  std::lock_guard<std::mutex> lk(mu_);
  return antipode_cache_.emplace(F->id(), rep).first->second;
}

MatRepPtr DualContext::character(const MatRepPtr& F, std::size_t i) {
  auto key = std::make_pair(F->id(), i);
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = char_cache_.find(key);
    if (it != char_cache_.end()) return it->second;
  }
  const int N = alg_.N();
  std::vector<Matrix<Scalar>> gens;
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      Matrix<Scalar> G(1, 1);
      G(0, 0) = F->gen(a, b).get(i, i);
      gens.push_back(std::move(G));
    }
  auto rep = make_rep(1, N, gens, F->name() + "[" + std::to_string(i + 1) + "," + std::to_string(i + 1) + "]");
  std::lock_guard<std::mutex> lk(mu_);
  return char_cache_.emplace(key, rep).first->second;
}

MatRepPtr DualContext::character_power(const MatRepPtr& C, int e) {
  if (C->dim() != 1) throw Error(ErrorKind::InvalidArgument, "character power needs a 1-dimensional rep");
  MatRepPtr base = e < 0 ? antipode_rep(C) : C;
  MatRepPtr r = eps_;
  for (int k = 0; k < std::abs(e); ++k) r = (k == 0) ? base : conv(r, base);
  return r;
}

namespace {

// F(h_k) ... F(h_1) with F(h)[a][b] = rep.gen(a,b)(h_i, h_j): the r-form
// of a generator against a word, legs reversed.
Matrix<Scalar> reversed_chain(const MatRep& rep, const Word& w, int N) {
  Matrix<Scalar> M = Matrix<Scalar>::identity(static_cast<std::size_t>(N));
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    Matrix<Scalar> H(N, N);
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) H(a, b) = rep.gen(a, b).get(gen_row(*it, N), gen_col(*it, N));
    M = M * H;
  }
  return M;
}

MatRepPtr l_functionals(const Corep& v, const MatRep& base, int N, const std::string& name) {
  const std::size_t m = v.dim;
  std::map<Word, Matrix<Scalar>> memo;
  std::vector<Matrix<Scalar>> gens(static_cast<std::size_t>(N * N), Matrix<Scalar>(m, m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (const auto& [w, c] : v.at(i, j).terms()) {
        auto it = memo.find(w);
        if (it == memo.end()) it = memo.emplace(w, reversed_chain(base, w, N)).first;
        for (int a = 0; a < N; ++a)
          for (int b = 0; b < N; ++b) {
            const Scalar& x = it->second(a, b);
            if (!x.is_zero()) gens[static_cast<std::size_t>(a * N + b)](i, j) += c * x;
          }
      }
  return make_rep(m, N, gens, name);
}

}  // namespace

MatRepPtr DualContext::lplus_of(const Corep& v) {
  std::string key = v.label + "#" + std::to_string(v.dim);
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = l_cache_.find(key);
    if (it != l_cache_.end() && std::get<0>(it->second)) return std::get<0>(it->second);
  }
  auto rep = l_functionals(v, *lplus_, alg_.N(), "L+(" + v.label + ")");
  std::lock_guard<std::mutex> lk(mu_);
  auto& slot = std::get<0>(l_cache_[key]);
  if (!slot) slot = rep;
  return slot;
}

MatRepPtr DualContext::lminus_of(const Corep& v) {
  std::string key = v.label + "#" + std::to_string(v.dim);
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = l_cache_.find(key);
    if (it != l_cache_.end() && std::get<1>(it->second)) return std::get<1>(it->second);
  }
  auto rep = l_functionals(v, *lminus_, alg_.N(), "L-(" + v.label + ")");
  std::lock_guard<std::mutex> lk(mu_);
  auto& slot = std::get<1>(l_cache_[key]);
  if (!slot) slot = rep;
  return slot;
}

MatRepPtr DualContext::lrep_of(const Corep& v) {
  std::string key = v.label + "#" + std::to_string(v.dim);
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = l_cache_.find(key);
    if (it != l_cache_.end() && std::get<2>(it->second)) return std::get<2>(it->second);
  }
  auto rep = conv(antipode_rep(lminus_of(v)), lplus_of(v));
  std::lock_guard<std::mutex> lk(mu_);
  auto& slot = std::get<2>(l_cache_[key]);
  if (!slot) slot = rep;
  return slot;
}

// ---------------------------------------------------------------------------
// DualContext: functional algebra

Functional DualContext::entry(const MatRepPtr& F, std::size_t row, std::size_t col, int twist) const {
  return Functional({FTerm{Cyclo(1), F, static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(col), twist}}, zeta_order());
}

Functional DualContext::eps_zeta(int k) const { return entry(eps_, 0, 0, k); }

Functional DualContext::l_entry(const Corep& v, std::size_t i, std::size_t j, int twist) {
  MatRepPtr L = lrep_of(v);
  const std::size_t m = v.dim;
  std::vector<FTerm> t;
  for (std::size_t k = 0; k < m; ++k)
    t.push_back(FTerm{Cyclo(1), L, static_cast<std::uint32_t>(k * m + k), static_cast<std::uint32_t>(i * m + j), twist});
  return Functional(std::move(t), zeta_order());
}

std::vector<Functional> DualContext::l_generators() {
  std::vector<Functional> out;
  const int N = alg_.N();
  for (const MatRepPtr& F : {lplus_, lminus_})
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        bool nz = false;
        for (int a = 0; a < N && !nz; ++a)
          for (int b = 0; b < N && !nz; ++b) nz = !F->gen(a, b).get(i, j).is_zero();
        if (nz) out.push_back(entry(F, i, j));
      }
  return out;
}

Functional DualContext::product(const Functional& f, const Functional& g) {
  std::vector<FTerm> out;
  for (const auto& a : f.terms())
    for (const auto& b : g.terms()) {
      MatRepPtr C = conv(a.rep, b.rep);
      const auto dB = static_cast<std::uint32_t>(b.rep->dim());
      out.push_back(FTerm{a.coef * b.coef, C, a.row * dB + b.row, a.col * dB + b.col, a.twist + b.twist});
    }
  return Functional(std::move(out), zeta_order());
}

Functional DualContext::antipode(const Functional& f) {
  std::vector<FTerm> out;
  for (const auto& t : f.terms()) out.push_back(FTerm{t.coef, antipode_rep(t.rep), t.col, t.row, -t.twist});
  return Functional(std::move(out), zeta_order());
}

Functional DualContext::ad_r(const Functional& f, const Functional& x) {
  // ad_R(f^r_c) x = sum_k S(f^r_k) x f^k_c, and S(f^r_k) = antipode_rep(F)(k, r).
  std::vector<FTerm> out;
  for (const auto& ft : f.terms()) {
    MatRepPtr Fc = antipode_rep(ft.rep);
    const auto dF = static_cast<std::uint32_t>(ft.rep->dim());
    for (const auto& xt : x.terms()) {
      MatRepPtr C = conv(conv(Fc, xt.rep), ft.rep);
      const auto dX = static_cast<std::uint32_t>(xt.rep->dim());
      for (std::uint32_t k = 0; k < dF; ++k) {
        std::uint32_t row = (k * dX + xt.row) * dF + k;
        std::uint32_t col = (ft.row * dX + xt.col) * dF + ft.col;
        out.push_back(FTerm{ft.coef * xt.coef, C, row, col, xt.twist});
      }
    }
  }
  return Functional(std::move(out), zeta_order());
}

Cyclo DualContext::twist_factor(int twist, int degree) const {
  return Cyclo::root_power(zeta_order(), static_cast<long>(twist) * degree);
}

Functional DualContext::right_translate(const Functional& f, const Word& b) {
  std::vector<FTerm> out;
  const int deg = static_cast<int>(b.size());
  for (const auto& t : f.terms()) {
    Matrix<Scalar> V = t.rep->value(b);
    Cyclo tf = t.coef * twist_factor(t.twist, deg);
    for (std::size_t k = 0; k < t.rep->dim(); ++k) {
      const Scalar& x = V(k, t.col);
      if (!x.is_zero()) out.push_back(FTerm{tf * Cyclo(x), t.rep, t.row, static_cast<std::uint32_t>(k), t.twist});
    }
  }
  return Functional(std::move(out), zeta_order());
}

Functional DualContext::left_translate(const Functional& f, const Word& b) {
  std::vector<FTerm> out;
  const int deg = static_cast<int>(b.size());
  for (const auto& t : f.terms()) {
    auto row = t.rep->row_value(b, t.row);
    Cyclo tf = t.coef * twist_factor(t.twist, deg);
    for (std::size_t k = 0; k < t.rep->dim(); ++k)
      if (!row[k].is_zero()) out.push_back(FTerm{tf * Cyclo(row[k]), t.rep, static_cast<std::uint32_t>(k), t.col, t.twist});
  }
  return Functional(std::move(out), zeta_order());
}

Cyclo DualContext::evaluate(const Functional& f, const Word& w) {
  std::map<std::pair<std::uint64_t, std::uint32_t>, std::vector<Scalar>> rows;
  Cyclo s;
  const int deg = static_cast<int>(w.size());
  for (const auto& t : f.terms()) {
    auto key = std::make_pair(t.rep->id(), t.row);
    auto it = rows.find(key);
    if (it == rows.end()) it = rows.emplace(key, t.rep->row_value(w, t.row)).first;
    const Scalar& x = it->second[t.col];
    if (!x.is_zero()) s += t.coef * twist_factor(t.twist, deg) * Cyclo(x);
  }
  return s;
}

Cyclo DualContext::evaluate(const Functional& f, const CoordElem& a) {
  Cyclo s;
  for (const auto& [w, c] : a.terms()) s += Cyclo(c) * evaluate(f, w);
  return s;
}

Cyclo DualContext::evaluate(const Functional& f, const CycloElem& a) {
  Cyclo s;
  for (const auto& [w, c] : a.terms()) s += c * evaluate(f, w);
  return s;
}

// ---------------------------------------------------------------------------
// Evaluation tables

const WordSpace& DualContext::space(int degree) {
  auto it = spaces_.find(degree);
  if (it == spaces_.end()) it = spaces_.emplace(degree, std::make_shared<WordSpace>(alg_.N(), degree)).first;
  return *it->second;
}

void DualContext::ensure_tables(const std::vector<Functional>& fs, int degree) {
  const WordSpace& ws = space(degree);
  // (rep, row) -> columns still missing at this degree.
  std::map<std::pair<std::uint64_t, std::uint32_t>, std::pair<MatRepPtr, std::set<std::uint32_t>>> need;
  for (const auto& f : fs)
    for (const auto& t : f.terms()) {
      auto it = tables_.find({t.rep->id(), t.row, t.col});
      if (it != tables_.end() && it->second.degree >= degree) continue;
      auto& slot = need[{t.rep->id(), t.row}];
      slot.first = t.rep;
      slot.second.insert(t.col);
    }
  const std::size_t G = static_cast<std::size_t>(alg_.N()) * alg_.N();
  for (auto& [key, job] : need) {
    const MatRep& F = *job.first;
    std::vector<std::uint32_t> cols(job.second.begin(), job.second.end());
    std::vector<std::vector<Scalar>*> outs;
    for (auto c : cols) {
      Table& tb = tables_[{key.first, key.second, c}];
      tb.degree = degree;
      tb.vals.assign(ws.size(), Scalar());
      outs.push_back(&tb.vals);
    }
    std::vector<std::vector<Scalar>> stack(static_cast<std::size_t>(degree) + 1, std::vector<Scalar>(F.dim()));
    stack[0][key.second] = Scalar(1);
    auto record = [&](std::size_t idx, const std::vector<Scalar>& v) {
      for (std::size_t t = 0; t < cols.size(); ++t) (*outs[t])[idx] = v[cols[t]];
    };
    record(0, stack[0]);
    std::function<void(int, std::size_t)> rec = [&](int depth, std::size_t prefix) {
      if (depth == degree) return;
      auto& cur = stack[static_cast<std::size_t>(depth)];
      auto& nxt = stack[static_cast<std::size_t>(depth) + 1];
      for (std::size_t g = 0; g < G; ++g) {
        row_times(cur, F.gen(static_cast<char>(g)), nxt);
        if (all_zero(nxt)) continue;
        std::size_t p = prefix * G + g;
        record(ws.offset(depth + 1) + p, nxt);
        rec(depth + 1, p);
      }
    };
    rec(0, 0);
  }
}

const std::vector<Scalar>& DualContext::table(const FTerm& t) const {
  return tables_.at({t.rep->id(), t.row, t.col}).vals;
}

Matrix<Cyclo> DualContext::eval_matrix(const std::vector<Functional>& fs, int degree) {
  ensure_tables(fs, degree);
  const WordSpace& ws = space(degree);
  const std::size_t W = ws.size();
  Matrix<Cyclo> M(fs.size(), W);
  for (std::size_t r = 0; r < fs.size(); ++r) {
    const auto& terms = fs[r].terms();
    // factor[t][d] = coef_t * w^{twist_t * d}
    std::vector<std::vector<Cyclo>> factor(terms.size());
    bool rational = true;
    for (std::size_t t = 0; t < terms.size(); ++t)
      for (int d = 0; d <= degree; ++d) {
        factor[t].push_back(terms[t].coef * twist_factor(terms[t].twist, d));
        rational = rational && factor[t].back().is_rational();
      }
    for (int d = 0; d <= degree; ++d)
      for (std::size_t idx = ws.offset(d); idx < ws.offset(d + 1); ++idx) {
        if (rational) {
          Scalar acc;
          for (std::size_t t = 0; t < terms.size(); ++t) {
            const Scalar& x = table(terms[t])[idx];
            if (!x.is_zero()) acc += factor[t][static_cast<std::size_t>(d)].rational() * x;
          }
          if (!acc.is_zero()) M(r, idx) = Cyclo(acc);
        } else {
          Cyclo acc;
          for (std::size_t t = 0; t < terms.size(); ++t) {
            const Scalar& x = table(terms[t])[idx];
            if (!x.is_zero()) acc += factor[t][static_cast<std::size_t>(d)] * Cyclo(x);
          }
          M(r, idx) = acc;
        }
      }
  }
  return M;
}

std::string DualContext::eval_matrix_json(const std::vector<Functional>& fs, int degree) {
  Matrix<Cyclo> M = eval_matrix(fs, degree);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < M.rows(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < M.cols(); ++j) row.push_back(M(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return rows.dump();
}

std::size_t DualContext::rank(const std::vector<Functional>& fs, int degree) {
  if (fs.empty()) return 0;
  return certified_rank(eval_matrix(fs, degree)).rank;
}

RankResult DualContext::stabilized_rank(const std::vector<Functional>& fs, const Policy& policy) {
  RankResult res;
  if (fs.empty()) return res;
  std::vector<std::size_t> hist;
  for (int d = policy.start_degree; d <= policy.d_max; ++d) {
    std::size_t r = rank(fs, d);
    hist.push_back(r);
    res.rank = r;
    res.degree = d;
    if (r == fs.size()) return res;
    const auto w = static_cast<std::size_t>(std::max(policy.stability_window, 1));
    if (hist.size() >= w && std::all_of(hist.end() - static_cast<std::ptrdiff_t>(w), hist.end(), [&](std::size_t x) { return x == r; }))
      return res;
  }
  res.stable = false;
  return res;
}

SpanSolution DualContext::span_check(const std::vector<Functional>& basis, const std::vector<Functional>& targets, int degree) {
  if (targets.empty()) return {};
  std::vector<Functional> all = basis;
  all.insert(all.end(), targets.begin(), targets.end());
  ensure_tables(all, degree);
  Matrix<Cyclo> T = eval_matrix(targets, degree);
  if (basis.empty()) {
    SpanSolution s;
    for (std::size_t i = 0; i < T.rows(); ++i) {
      bool zero = true;
      for (std::size_t j = 0; j < T.cols() && zero; ++j) zero = T(i, j).is_zero();
      if (!zero) {
        s.all_inside = false;
        s.outside.push_back(i);
      }
    }
    return s;
  }
  return span_membership(eval_matrix(basis, degree), T);
}

// ---------------------------------------------------------------------------
// Separation

std::vector<MatRepPtr> DualContext::separating_family(int length) {
  std::vector<MatRepPtr> fam = {eps_};
  std::vector<MatRepPtr> base = {lplus_, lminus_}, cur = base;
  for (int k = 1; k <= length; ++k) {
    fam.insert(fam.end(), cur.begin(), cur.end());
    if (k == length) break;
    std::vector<MatRepPtr> nxt;
    for (const auto& A : cur)
      for (const auto& B : base) nxt.push_back(conv(A, B));
    cur = std::move(nxt);
  }
  return fam;
}

Verdict DualContext::separated_equal(const CoordElem& a, const CoordElem& b, const Policy& policy) {
  return separated_equal(to_cyclo(a), to_cyclo(b), policy);
}

Verdict DualContext::separated_equal(const CycloElem& a, const CycloElem& b, const Policy& policy) {
  CycloElem c = a - b;
  Verdict v;
  if (c.is_zero()) return v;
  const int L = std::max(policy.start_degree, c.degree());
  if (L > policy.d_max) {
    v.kind = VerdictKind::Undecided;
    v.degree = policy.d_max;
    v.witness = "element degree " + std::to_string(c.degree()) + " exceeds d_max";
    return v;
  }
  for (const MatRepPtr& F : separating_family(L)) {
    const std::size_t d = F->dim();
    std::vector<Cyclo> acc(d * d);
    for (const auto& [w, coef] : c.terms()) {
      Matrix<Scalar> V = F->value(w);
      for (std::size_t i = 0; i < d * d; ++i)
        if (!V.data()[i].is_zero()) acc[i] += coef * Cyclo(V.data()[i]);
    }
    for (std::size_t i = 0; i < d * d; ++i)
      if (!acc[i].is_zero()) {
        v.kind = VerdictKind::NotEqual;
        v.degree = L;
        v.witness = F->name() + " entry (" + std::to_string(i / d + 1) + "," + std::to_string(i % d + 1) + ") = " + acc[i].to_string();
        return v;
      }
  }
  v.degree = L;
  return v;
}

Verdict DualContext::functional_equal(const Functional& f, const Functional& g, int degree) {
  Verdict v;
  v.degree = degree;
  Functional h = f - g;
  if (h.is_empty()) return v;
  Matrix<Cyclo> M = eval_matrix({h}, degree);
  const WordSpace& ws = space(degree);
  for (std::size_t j = 0; j < M.cols(); ++j)
    if (!M(0, j).is_zero()) {
      v.kind = VerdictKind::NotEqual;
      Word w = ws.word(j);
      v.witness = "differ on " + (w.empty() ? std::string("1") : word_to_string(w, alg_.N())) + " by " + M(0, j).to_string();
      return v;
    }
  return v;
}

// ---------------------------------------------------------------------------
// r-form and friends

MatRepPtr DualContext::lplus_power(int k) {
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = lplus_power_.find(k);
    if (it != lplus_power_.end()) return it->second;
  }
  MatRepPtr r = k == 1 ? lplus_ : conv(lplus_, lplus_power(k - 1));
  std::lock_guard<std::mutex> lk(mu_);
  return lplus_power_.emplace(k, r).first->second;
}

Scalar DualContext::r_word(const Word& a, const Word& b) {
  const int N = alg_.N();
  if (b.empty()) return Scalar(word_counit(a, N) ? 1 : 0);
  // r(a (x) h_1..h_k) is entry ((h_k.i..h_1.i),(h_k.j..h_1.j)) of conv^k(L+) at a.
  std::size_t row = 0, col = 0;
  for (auto it = b.rbegin(); it != b.rend(); ++it) {
    row = row * static_cast<std::size_t>(N) + static_cast<std::size_t>(gen_row(*it, N));
    col = col * static_cast<std::size_t>(N) + static_cast<std::size_t>(gen_col(*it, N));
  }
  return lplus_power(static_cast<int>(b.size()))->entry(a, row, col);
}

Scalar DualContext::r_form(const CoordElem& a, const CoordElem& b) {
  Scalar s;
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) {
      Scalar x = r_word(wa, wb);
      if (!x.is_zero()) s += ca * cb * x;
    }
  return s;
}

Scalar DualContext::rbar_form(const CoordElem& a, const CoordElem& b) { return r_form(alg_.antipode(a), b); }

Scalar DualContext::q_form(const CoordElem& a, const CoordElem& b) {
  const int N = alg_.N();
  Scalar s;
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) {
      Scalar acc;
      for_each_split(wa, N, [&](const Word& a1, const Word& a2) {
        for_each_split(wb, N, [&](const Word& b1, const Word& b2) {
          Scalar x = r_word(b1, a1);
          if (x.is_zero()) return;
          Scalar y = r_word(a2, b2);
          if (!y.is_zero()) acc += x * y;
        });
      });
      s += ca * cb * acc;
    }
  return s;
}

std::shared_ptr<const Corep> DualContext::tensor_power(int k) {
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = tensor_power_.find(k);
    if (it != tensor_power_.end()) return it->second;
  }
  std::shared_ptr<const Corep> v;
  if (k == 0)
    v = std::make_shared<const Corep>(alg_.trivial());
  else if (k == 1)
    v = std::make_shared<const Corep>(alg_.fundamental());
  else
    v = std::make_shared<const Corep>(alg_.tensor(alg_.fundamental(), *tensor_power(k - 1)));
  std::lock_guard<std::mutex> lk(mu_);
  return tensor_power_.emplace(k, v).first->second;
}

Functional DualContext::l_of(const CoordElem& a) {
  const int N = alg_.N();
  Functional out;
  std::vector<FTerm> terms;
  for (const auto& [w, c] : a.terms()) {
    auto v = tensor_power(static_cast<int>(w.size()));
    MatRepPtr L = lrep_of(*v);
    const std::size_t m = v->dim;
    std::size_t I = 0, J = 0;
    for (char g : w) {
      I = I * static_cast<std::size_t>(N) + static_cast<std::size_t>(gen_row(g, N));
      J = J * static_cast<std::size_t>(N) + static_cast<std::size_t>(gen_col(g, N));
    }
    for (std::size_t k = 0; k < m; ++k)
      terms.push_back(FTerm{Cyclo(c), L, static_cast<std::uint32_t>(k * m + k), static_cast<std::uint32_t>(I * m + J), 0});
  }
  return Functional(std::move(terms), zeta_order());
}

MatRepPtr DualContext::tau_rep(const YoungWeight& w) {
  MatRepPtr r = eps_, prefix = eps_;
  for (std::size_t k = 0; k < w.m.size(); ++k) {
    MatRepPtr c = character(lplus_, k);
    prefix = k == 0 ? c : conv(prefix, c);
    for (int t = 0; t < 2 * w.m[k]; ++t) r = (r == eps_) ? prefix : conv(r, prefix);
  }
  return r;
}

Functional DualContext::tau_functional(const YoungWeight& w) { return entry(tau_rep(w), 0, 0); }

MatRepPtr DualContext::k_rep(int i) {
  if (i < 1 || i > alg_.N()) throw Error(ErrorKind::InvalidArgument, "K index out of range");
  MatRepPtr r = character(lminus_, 0);
  for (int j = 1; j < i; ++j) r = conv(r, character(lminus_, static_cast<std::size_t>(j)));
  return r;
}

Functional DualContext::k_functional(int i) { return entry(k_rep(i), 0, 0); }

// ---------------------------------------------------------------------------
// Coideal and comatrix checks

CoidealReport DualContext::coideal_check(const std::vector<Functional>& basis, int degree) {
  CoidealReport rep;
  if (basis.empty()) {
    rep.passed = rep.coideal = rep.ad_invariant = true;
    return rep;
  }
  const std::size_t full = rank(basis, degree);
  rep.basis_rank = full;
  int da = 0;
  Matrix<Cyclo> M;
  for (; da <= degree; ++da) {
    M = eval_matrix(basis, da);
    if (certified_rank(M).rank == full) break;
  }
  RankCertificate cert = certified_rank(M);
  std::vector<Functional> ind;
  for (auto r : cert.pivot_rows) ind.push_back(basis[r]);
  rep.pivot_degree = da;

  rep.coideal = true;
  for (int e = da; e <= degree && rep.coideal; ++e) {
    const int db = degree - e;
    const WordSpace& ws = space(db);
    std::vector<Functional> targets;
    std::vector<std::string> labels;
    for (std::size_t idx = ws.offset(db); idx < ws.offset(db + 1); ++idx) {
      Word b = ws.word(idx);
      for (std::size_t i = 0; i < basis.size(); ++i) {
        targets.push_back(right_translate(basis[i], b));
        labels.push_back("X" + std::to_string(i) + " translated by " + (b.empty() ? std::string("1") : word_to_string(b, N())));
      }
    }
    SpanSolution s = span_check(ind, targets, e);
    if (!s.all_inside) {
      rep.coideal = false;
      rep.detail = "right coideal fails: " + labels[s.outside.front()];
    }
  }

  std::vector<Functional> gens = l_generators();
  std::vector<Functional> targets;
  std::vector<std::string> labels;
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (std::size_t i = 0; i < basis.size(); ++i) {
      targets.push_back(ad_r(gens[g], basis[i]));
      labels.push_back("ad_R(generator " + std::to_string(g) + ") X" + std::to_string(i));
    }
  SpanSolution s = span_check(ind, targets, degree);
  rep.ad_invariant = s.all_inside;
  if (!s.all_inside && rep.detail.empty()) rep.detail = "ad_R-invariance fails: " + labels[s.outside.front()];
  rep.passed = rep.coideal && rep.ad_invariant;
  return rep;
}

bool DualContext::comatrix_check(const Corep& v) {
  const std::size_t m = v.dim;
  int deg = 0;
  for (const auto& e : v.entries) deg = std::max(deg, e.degree());
  std::vector<MatRepPtr> fam = separating_family(std::max(deg, 1));
  // Values of every family rep on every entry of v.
  std::vector<std::vector<Matrix<Scalar>>> val(fam.size());
  for (std::size_t f = 0; f < fam.size(); ++f)
    for (const auto& e : v.entries) val[f].push_back(fam[f]->value(e));
  for (std::size_t f = 0; f < fam.size(); ++f)
    for (std::size_t g = 0; g < fam.size(); ++g) {
      MatRepPtr C = conv(fam[f], fam[g]);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
          Matrix<Scalar> lhs = C->value(v.at(i, j));
          Matrix<Scalar> rhs(lhs.rows(), lhs.cols());
          for (std::size_t k = 0; k < m; ++k) rhs = rhs + kron(val[f][i * m + k], val[g][k * m + j]);
          if (lhs != rhs) return false;
        }
    }
  return true;
}

}  // namespace qfodc
