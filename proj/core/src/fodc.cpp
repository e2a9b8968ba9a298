#include "qfodc/fodc.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <nlohmann/json.hpp>
#include <sstream>

namespace qfodc {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

long parse_long(const std::string& s, const std::string& whole) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (s.empty() || pos != s.size()) throw Error(ErrorKind::Parse, "bad character '" + whole + "'");
  return v;
}

int mod(long a, int n) { return static_cast<int>(((a % n) + n) % n); }

}  // namespace

int parse_zeta(const std::string& text, const FieldConfig& config) {
  const int order = config.zeta_order();
  const std::string t = trim(text);
  auto inadmissible = [&]() {
    return Error(ErrorKind::InvalidCharacter,
                 "zeta = " + t + " is not admissible for " + config.name() + " (need zeta^" + std::to_string(order) + " = 1)");
  };
  // zeta = e(k/n) maps to w^(k*order/n).
  auto from_fraction = [&](long k, long n) {
    if (n <= 0) throw Error(ErrorKind::Parse, "bad character '" + t + "'");
    if ((k * order) % n != 0) throw inadmissible();
    return mod(k * order / n, order);
  };
  if (t == "1") return 0;
  if (t == "-1") return from_fraction(1, 2);
  if (t == "i") return from_fraction(1, 4);
  if (t == "-i") return from_fraction(3, 4);
  for (const char* prefix : {"omega^", "w^"}) {
    std::string p(prefix);
    if (t.rfind(p, 0) == 0) return mod(parse_long(t.substr(p.size()), t), order);
  }
  auto slash = t.find('/');
  if (slash != std::string::npos) return from_fraction(parse_long(t.substr(0, slash), t), parse_long(t.substr(slash + 1), t));
  throw Error(ErrorKind::Parse, "bad character '" + t + "'");
}

std::string zeta_label(int k, int order) {
  k = mod(k, order);
  if (k == 0) return "1";
  if (2 * k == order) return "-1";
  if (4 * k == order) return "i";
  if (4 * k == 3 * order) return "-i";
  int g = std::gcd(k, order);
  return "e(" + std::to_string(k / g) + "/" + std::to_string(order / g) + ")";
}

// ---------------------------------------------------------------------------
// Quantum Lie algebras and calculi

std::vector<Functional> FodcContext::lie_basis(const Corep& v, int zeta) {
  std::vector<Functional> out;
  for (std::size_t i = 0; i < v.dim; ++i)
    for (std::size_t j = 0; j < v.dim; ++j) {
      Functional x = dual_.l_entry(v, i, j, zeta);
      if (i == j) x = x - dual_.eps();
      out.push_back(std::move(x));
    }
  return out;
}

QuantumLieAlgebra FodcContext::quantum_lie(std::shared_ptr<const Corep> v, int zeta, const Policy& policy) {
  QuantumLieAlgebra X;
  X.zeta = mod(zeta, dual_.zeta_order());
  X.v = std::move(v);
  X.basis = lie_basis(*X.v, X.zeta);
  X.rank = dual_.stabilized_rank(X.basis, policy);
  std::vector<Functional> with = X.basis;
  with.push_back(dual_.eps());
  X.rank_with_eps = dual_.stabilized_rank(with, policy);
  return X;
}

Calculus FodcContext::calculus(const QuantumLieAlgebra& X) {
  Calculus c;
  c.X = X;
  c.right_module = dual_.lrep_of(*X.v);
  c.invariant_dim = X.v->dim * X.v->dim;
  return c;
}

OneForm FodcContext::differential(const Calculus& cal, const CoordElem& a) {
  const int N = dual_.N();
  const auto& basis = cal.X.basis;
  OneForm out(basis.size());
  std::map<Word, std::vector<Cyclo>> memo;
  for (const auto& [w, c] : a.terms()) {
    Cyclo cc(c);
    for_each_split(w, N, [&](const Word& w1, const Word& w2) {
      auto it = memo.find(w2);
      if (it == memo.end()) {
        std::vector<Cyclo> vals;
        for (const auto& x : basis) vals.push_back(dual_.evaluate(x, w2));
        it = memo.emplace(w2, std::move(vals)).first;
      }
      for (std::size_t t = 0; t < basis.size(); ++t)
        if (!it->second[t].is_zero()) out[t].add_term(w1, cc * it->second[t]);
    });
  }
  return out;
}

OneForm FodcContext::left_multiply(const CycloElem& a, const OneForm& w) const {
  OneForm out;
  for (const auto& c : w) out.push_back(a * c);
  return out;
}

OneForm FodcContext::right_multiply(const Calculus& cal, const OneForm& w, const CoordElem& b) {
  const int N = dual_.N();
  const std::size_t n = w.size();
  const int order = dual_.zeta_order();
  OneForm out(n);
  for (const auto& [bw, bc] : b.terms()) {
    for_each_split(bw, N, [&](const Word& b1, const Word& b2) {
      Cyclo tw = Cyclo(bc) * Cyclo::root_power(order, static_cast<long>(cal.X.zeta) * static_cast<long>(b2.size()));
      for (std::size_t s = 0; s < n; ++s) {
        if (w[s].is_zero()) continue;
        std::vector<Scalar> row = cal.right_module->row_value(b2, s);
        CycloElem shifted = w[s] * CycloElem::word(b1);
        for (std::size_t t = 0; t < n; ++t)
          if (!row[t].is_zero()) out[t] += (tw * Cyclo(row[t])) * shifted;
      }
    });
  }
  return out;
}

Verdict FodcContext::leibniz_check(const Calculus& cal, const CoordElem& a, const CoordElem& b, const Policy& policy) {
  OneForm lhs = differential(cal, multiply(a, b));
  OneForm ra = left_multiply(to_cyclo(a), differential(cal, b));
  OneForm rb = right_multiply(cal, differential(cal, a), b);
  Verdict worst;
  for (std::size_t t = 0; t < lhs.size(); ++t) {
    Verdict v = dual_.separated_equal(lhs[t], ra[t] + rb[t], policy);
    if (v.kind == VerdictKind::NotEqual) {
      v.witness = "coefficient " + std::to_string(t) + ": " + v.witness;
      return v;
    }
    if (v.kind == VerdictKind::Undecided) worst = v;
    if (worst.kind == VerdictKind::Equal) worst.degree = std::max(worst.degree, v.degree);
  }
  return worst;
}

bool FodcContext::right_ideal_member(const Calculus& cal, const CoordElem& a) {
  if (!counit(a, dual_.N()).is_zero()) return false;
  return std::all_of(cal.X.basis.begin(), cal.X.basis.end(),
                     [&](const Functional& x) { return dual_.evaluate(x, a).is_zero(); });
}

std::size_t FodcContext::ideal_codimension(const Calculus& cal, int degree) {
  std::vector<Functional> fs = cal.X.basis;
  fs.push_back(dual_.eps());
  return dual_.rank(fs, degree);
}

// ---------------------------------------------------------------------------
// Central elements

Matrix<Scalar> FodcContext::d_inverse_matrix(const Corep& v) {
  const CoordAlgebra& A = alg();
  const std::size_t m = v.dim;
  std::vector<CoordElem> s2;
  for (const auto& e : v.entries) s2.push_back(A.antipode(A.antipode(e)));
  Matrix<Scalar> D(m, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t n = 0; n < m; ++n) D(j, i) += dual_.r_form(s2[j * m + n], v.at(n, i));
  return D;
}

Functional FodcContext::central_element(const Corep& v, int zeta) {
  Matrix<Scalar> D = d_inverse_matrix(v);
  Functional c;
  for (std::size_t i = 0; i < v.dim; ++i)
    for (std::size_t j = 0; j < v.dim; ++j)
      if (!D(j, i).is_zero()) c = c + Cyclo(D(j, i)) * dual_.l_entry(v, i, j, zeta);
  return c;
}

Verdict FodcContext::central_check(const Functional& c, int degree) {
  Verdict out;
  out.degree = degree;
  for (const auto& f : dual_.l_generators()) {
    Verdict v = dual_.functional_equal(dual_.product(c, f), dual_.product(f, c), degree);
    if (!v.equal()) return v;
  }
  return out;
}

std::vector<Functional> FodcContext::quantum_lie_from_central(const Functional& c, int bound, int degree) {
  Verdict v = central_check(c, degree);
  if (!v.equal()) throw Error(ErrorKind::NotCentral, "functional is not central: " + v.witness);
  WordSpace ws(dual_.N(), bound);
  std::vector<Functional> chi;
  for (std::size_t idx = 0; idx < ws.size(); ++idx) {
    Word b = ws.word(idx);
    Functional x = dual_.right_translate(c, b) - dual_.evaluate(c, b) * dual_.eps();
    if (!x.is_empty()) chi.push_back(std::move(x));
  }
  if (chi.empty()) return {};
  // Coefficient vectors over the shared term keys: dependent coefficient rows
  // are dependent functionals, so only coefficient pivots need evaluating.
  std::map<std::tuple<std::uint64_t, std::uint32_t, std::uint32_t, int>, std::size_t> keys;
  for (const auto& x : chi)
    for (const auto& t : x.terms()) keys.emplace(std::make_tuple(t.rep->id(), t.row, t.col, t.twist), keys.size());
  Matrix<Cyclo> C(chi.size(), keys.size());
  for (std::size_t r = 0; r < chi.size(); ++r)
    for (const auto& t : chi[r].terms()) C(r, keys.at(std::make_tuple(t.rep->id(), t.row, t.col, t.twist))) = t.coef;
  std::vector<Functional> reduced;
  for (auto r : certified_rank(C).pivot_rows) reduced.push_back(chi[r]);
  std::vector<Functional> out;
  for (auto r : certified_rank(dual_.eval_matrix(reduced, degree)).pivot_rows) out.push_back(reduced[r]);
  return out;
}

// ---------------------------------------------------------------------------
// Sums, tensor products, classification

DirectSum FodcContext::direct_sum(const std::vector<QuantumLieAlgebra>& parts, int degree) {
  DirectSum s;
  s.degree = degree;
  std::size_t expected = 0;
  for (const auto& p : parts) {
    std::size_t r = dual_.rank(p.basis, degree);
    s.part_ranks.push_back(r);
    expected += r;
    s.basis.insert(s.basis.end(), p.basis.begin(), p.basis.end());
  }
  s.rank = dual_.rank(s.basis, degree);
  if (s.rank != expected)
    throw Error(ErrorKind::NotDirect,
                "union has rank " + std::to_string(s.rank) + " but the parts sum to " + std::to_string(expected));
  return s;
}

TensorIdentityReport FodcContext::tensor_identity_check(std::shared_ptr<const Corep> v, std::shared_ptr<const Corep> w,
                                                        int zeta, int zeta2, int degree) {
  Corep vw = alg().tensor(*v, *w);
  std::vector<Functional> left, right;
  for (std::size_t i = 0; i < vw.dim; ++i)
    for (std::size_t j = 0; j < vw.dim; ++j) left.push_back(dual_.l_entry(vw, i, j, zeta + zeta2));
  for (std::size_t i = 0; i < v->dim; ++i)
    for (std::size_t j = 0; j < v->dim; ++j) {
      Functional a = dual_.l_entry(*v, i, j, zeta);
      for (std::size_t k = 0; k < w->dim; ++k)
        for (std::size_t l = 0; l < w->dim; ++l) right.push_back(dual_.product(a, dual_.l_entry(*w, k, l, zeta2)));
    }
  TensorIdentityReport rep;
  rep.degree = degree;
  rep.rank_tensor = dual_.rank(left, degree);
  rep.rank_product = dual_.rank(right, degree);
  rep.holds = rep.rank_tensor == rep.rank_product && dual_.span_check(right, left, degree).all_inside &&
              dual_.span_check(left, right, degree).all_inside;
  return rep;
}

std::vector<std::pair<std::string, std::string>> FodcContext::component_library(int bound) const {
  const FieldConfig& cfg = dual_.config();
  std::vector<std::pair<std::string, std::string>> lib = {{"1", "trivial"}};
  if (bound >= 1) lib.emplace_back("u", "[1]");
  if (bound >= 2) {
    lib.emplace_back("proj:sym(tensor(u,u))", "[2]");
    if (cfg.series == Series::A && cfg.N >= 3) lib.emplace_back("minor:2", "[1,1]");
    if (cfg.series == Series::C && cfg.N >= 4) lib.emplace_back("proj:antisym(tensor(u,u))", "[1,1]");
  }
  return lib;
}

ClassificationReport FodcContext::classify(const std::vector<Functional>& X, int degree, int bound) {
  ClassificationReport rep;
  rep.degree = degree;
  const int order = dual_.zeta_order();
  std::vector<Functional> nonzero;
  for (const auto& x : X)
    if (!x.is_empty()) nonzero.push_back(x);
  rep.input_rank = dual_.rank(nonzero, degree);

  struct Candidate {
    int zeta;
    std::string desc, frame;
    std::shared_ptr<const Corep> v;
  };
  std::vector<Candidate> cands;
  for (const auto& [desc, frame] : component_library(bound)) {
    auto v = alg().build_corep(desc);
    rep.library.push_back(desc + " " + frame);
    for (int z = 0; z < order; ++z)
      if (!(desc == "1" && z == 0)) cands.push_back({z, desc, frame, v});
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.v->dim != b.v->dim) return a.v->dim > b.v->dim;
    if (a.zeta != b.zeta) return a.zeta < b.zeta;
    return a.frame < b.frame;
  });

  std::vector<Functional> accum;
  std::size_t accum_rank = 0;
  for (const auto& c : cands) {
    if (accum_rank >= rep.input_rank) break;
    const std::size_t m2 = c.v->dim * c.v->dim;
    if (accum_rank + m2 > rep.input_rank) continue;
    std::vector<Functional> basis = lie_basis(*c.v, c.zeta);
    if (!dual_.span_check(nonzero, basis, degree).all_inside) continue;
    std::vector<Functional> grown = accum;
    grown.insert(grown.end(), basis.begin(), basis.end());
    std::size_t r = dual_.rank(grown, degree);
    if (r != accum_rank + m2) continue;
    accum = std::move(grown);
    accum_rank = r;
    rep.components.push_back({c.zeta, zeta_label(c.zeta, order), c.frame, c.desc, m2, degree});
  }
  rep.total_dim = accum_rank;
  rep.residual_rank = rep.input_rank - accum_rank;
  for (const auto& c : rep.components) {
    if (!rep.central_element.empty()) rep.central_element += " + ";
    rep.central_element += "c_" + c.zeta_label + "(" + c.descriptor + ")";
  }
  if (rep.central_element.empty()) rep.central_element = "0";
  return rep;
}

std::string ClassificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["input"] = input;
  j["components"] = nlohmann::ordered_json::array();
  for (const auto& c : components)
    j["components"].push_back(
        {{"zeta", c.zeta_label}, {"frame", c.frame}, {"corep", c.descriptor}, {"dim", c.dim}, {"cert_degree", c.cert_degree}});
  j["total_dim"] = total_dim;
  j["input_rank"] = input_rank;
  j["residual_rank"] = residual_rank;
  j["central_element"] = central_element;
  j["library"] = library;
  j["degree"] = degree;
  if (residual_rank > 0) j["warning"] = "incomplete-library";
  return j.dump(2);
}

std::string ClassificationReport::to_markdown() const {
  std::ostringstream os;
  os << "# Classification\n\n";
  os << "- input: `" << input << "`\n";
  os << "- certification degree: " << degree << "\n";
  os << "- total dimension: " << total_dim << "\n";
  os << "- input rank: " << input_rank << "\n";
  os << "- residual rank: " << residual_rank << (residual_rank > 0 ? " (incomplete library)" : "") << "\n";
  os << "- central element: `" << central_element << "`\n\n";
  os << "| zeta | frame | corep | dim |\n|---|---|---|---|\n";
  for (const auto& c : components) os << "| " << c.zeta_label << " | " << c.frame << " | `" << c.descriptor << "` | " << c.dim << " |\n";
  return os.str();
}

}  // namespace qfodc
