#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <random>
#include <sstream>

#include "qfodc/fodc.hpp"

namespace qfodc::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Outcome {
  int code = kPass;
  Json report;
  std::string markdown;  // overrides the generic rendering when set
};

const char* status_name(int code) {
  switch (code) {
    case kPass: return "pass";
    case kFail: return "fail";
    case kUndecided: return "undecided";
    default: return "config-error";
  }
}

// Fail dominates undecided, which dominates pass.
int combine(int a, int b) {
  if (a == kFail || b == kFail) return kFail;
  if (a == kUndecided || b == kUndecided) return kUndecided;
  return kPass;
}

int verdict_code(const Verdict& v) {
  switch (v.kind) {
    case VerdictKind::Equal: return kPass;
    case VerdictKind::NotEqual: return kFail;
    case VerdictKind::Undecided: return kUndecided;
  }
  return kFail;
}

void render_items(std::ostringstream& os, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    os << pad << "- " << it.key() << ":";
    if (it->is_object()) {
      os << "\n";
      render_items(os, *it, depth + 1);
    } else if (it->is_string()) {
      os << " " << it->get<std::string>() << "\n";
    } else {
      os << " `" << it->dump() << "`\n";
    }
  }
}

std::string render_markdown(const Json& j, const std::string& title) {
  std::ostringstream os;
  os << "# " << title << "\n\n";
  render_items(os, j, 0);
  return os.str();
}

class Session {
 public:
  explicit Session(const RunConfig& c)
      : cfg_(c), field_(make_field(c)), A_(field_), D_(A_), F_(D_), policy_{c.start_degree, c.window, c.d_max} {
    zeta_ = parse_zeta(c.zeta, field_);
    zeta2_ = parse_zeta(c.zeta2.empty() ? c.zeta : c.zeta2, field_);
    if (c.degree < 0 || c.d_max < c.start_degree || c.start_degree < 0 || c.window < 1)
      throw Error(ErrorKind::InvalidDegree, "degree settings must satisfy 0 <= start-degree <= d-max and window >= 1");
    v_ = A_.build_corep(c.corep);
  }

  Json header(const std::string& command) const {
    Json j;
    j["command"] = command;
    j["series"] = field_.name();
    j["N"] = field_.N;
    j["corep"] = cfg_.corep;
    j["zeta"] = zeta_label(zeta_, field_.zeta_order());
    return j;
  }

  Outcome build() {
    Outcome o;
    o.report = header("build");
    QuantumLieAlgebra X = F_.quantum_lie(v_, zeta_, policy_);
    const std::size_t m = v_->dim;
    o.report["corep_dim"] = m;
    o.report["invariant_dim"] = m * m;
    o.report["dim"] = X.rank.rank;
    o.report["rank_with_eps"] = X.rank_with_eps.rank;
    o.report["cert_degree"] = X.rank.degree;
    o.report["stable"] = X.rank.stable && X.rank_with_eps.stable;
    Json basis = Json::array();
    const std::string zl = zeta_label(zeta_, field_.zeta_order());
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        std::string idx = std::to_string(i + 1) + "_" + std::to_string(j + 1);
        basis.push_back("X_" + idx + " = eps_" + zl + " l(v^" + idx + ")" + (i == j ? " - eps" : ""));
      }
    o.report["basis"] = basis;
    o.report["central_element"] = "c_" + zl + "(" + cfg_.corep + ")";
    o.code = o.report["stable"].get<bool>() ? kPass : kUndecided;
    o.report["status"] = status_name(o.code);
    return o;
  }

  Outcome verify(const std::string& claim) {
    Outcome o;
    o.report = header("verify");
    o.report["claim"] = claim;
    o.report["degree"] = cfg_.degree;
    Json details;
    int code = kPass;
    if (claim == "minor-tau")
      code = minor_tau(details);
    else if (claim == "centrality")
      code = centrality(details);
    else if (claim == "tensor-identity")
      code = tensor_identity(details);
    else if (claim == "coideal")
      code = coideal(details);
    else if (claim == "leibniz")
      code = leibniz(details);
    else if (claim == "factorizability")
      code = factorizability(details);
    else if (claim == "direct-sum")
      code = direct_sum(details);
    else if (claim == "central-generates")
      code = central_generates(details);
    else
      throw Error(ErrorKind::InvalidArgument, "unknown claim '" + claim + "'");
    o.code = code;
    o.report["status"] = status_name(code);
    o.report["details"] = details;
    return o;
  }

  Outcome classify() {
    Outcome o;
    std::vector<Functional> X;
    std::string input;
    if (!cfg_.from_central.empty()) {
      Functional c = central_from_descriptor(cfg_.from_central);
      X = F_.quantum_lie_from_central(c, cfg_.degree, cfg_.degree);
      input = "central " + cfg_.from_central;
    } else {
      X = F_.quantum_lie(v_, zeta_, policy_).basis;
      input = "X_" + zeta_label(zeta_, field_.zeta_order()) + "(" + cfg_.corep + ")";
    }
    ClassificationReport rep = F_.classify(X, cfg_.degree, cfg_.bound);
    rep.input = input;
    o.report = Json::parse(rep.to_json());
    Json head = header("classify");
    head.erase("corep");
    head.erase("zeta");
    for (auto it = o.report.begin(); it != o.report.end(); ++it) head[it.key()] = *it;
    o.report = head;
    o.markdown = rep.to_markdown();
    o.code = rep.residual_rank == 0 ? kPass : kUndecided;
    o.report["status"] = status_name(o.code);
    return o;
  }

  Outcome report() {
    Outcome o;
    o.report = header("report");
    Outcome b = build();
    o.report["build"] = b.report;
    int code = b.code;
    Outcome c = classify();
    o.report["classify"] = c.report;
    code = combine(code, c.code);
    Json claims;
    for (const char* claim : {"coideal", "leibniz", "centrality", "central-generates"}) {
      Outcome v = verify(claim);
      claims[claim] = {{"status", v.report["status"]}, {"details", v.report["details"]}};
      code = combine(code, v.code);
    }
    o.report["claims"] = claims;
    o.code = code;
    o.report["status"] = status_name(code);
    return o;
  }

 private:
  RunConfig cfg_;
  FieldConfig field_;
  CoordAlgebra A_;
  DualContext D_;
  FodcContext F_;
  Policy policy_;
  int zeta_ = 0, zeta2_ = 0;
  std::shared_ptr<const Corep> v_;

  static FieldConfig make_field(const RunConfig& c) {
    FieldConfig f = c.series == "sl" ? FieldConfig::sl(c.n) : FieldConfig::sp(c.n, c.z);
    f.validate();
    return f;
  }

  std::vector<Functional> lie_with_eps(const QuantumLieAlgebra& X) {
    std::vector<Functional> b = X.basis;
    b.push_back(D_.eps());
    return b;
  }

  // "DESC@ZETA+DESC@ZETA" -> sum of c_zeta(DESC).
  Functional central_from_descriptor(const std::string& text) {
    Functional c;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, '+')) {
      auto at = item.rfind('@');
      if (at == std::string::npos) throw Error(ErrorKind::Parse, "central term '" + item + "' needs the form DESC@ZETA");
      auto v = A_.build_corep(item.substr(0, at));
      c = c + F_.central_element(*v, parse_zeta(item.substr(at + 1), field_));
    }
    return c;
  }

  int minor_tau(Json& d) {
    std::vector<int> ks = cfg_.k;
    if (ks.empty()) {
      if (field_.series == Series::A)
        for (int k = 1; k < field_.N; ++k) ks.push_back(k);
      else
        ks.push_back(1);
    }
    int code = kPass;
    Json rows = Json::array();
    for (int k : ks) {
      if (field_.series == Series::C && k != 1)
        throw Error(ErrorKind::InvalidDegree, "series C minors are available for k = 1 only");
      std::vector<int> I;
      for (int t = 0; t < k; ++t) I.push_back(t);
      CoordElem Dk = A_.minor(I, I);  // validates k
      YoungWeight w = YoungWeight::from_partition(std::vector<int>(static_cast<std::size_t>(k), 1), field_.rank());
      Verdict v = D_.functional_equal(D_.l_of(Dk), D_.tau_functional(w), cfg_.degree);
      Json r = {{"k", k}, {"verdict", verdict_name(v.kind)}, {"cert_degree", v.degree}};
      if (!v.witness.empty()) r["witness"] = v.witness;
      rows.push_back(r);
      code = combine(code, verdict_code(v));
    }
    d["minors"] = rows;
    return code;
  }

  int centrality(Json& d) {
    Functional c = F_.central_element(*v_, zeta_);
    Verdict v = F_.central_check(c, cfg_.degree);
    d["central"] = verdict_name(v.kind);
    d["cert_degree"] = v.degree;
    if (!v.witness.empty()) d["witness"] = v.witness;
    Functional pc = c - c.at_unit() * D_.eps();
    bool nonzero = D_.rank({pc}, cfg_.degree) == 1;
    QuantumLieAlgebra X = F_.quantum_lie(v_, zeta_, policy_);
    bool inside = D_.span_check(X.basis, {pc}, cfg_.degree).all_inside;
    d["projection_nonzero"] = nonzero;
    d["projection_in_span"] = inside;
    int code = verdict_code(v);
    if (!nonzero || !inside) code = kFail;
    return code;
  }

  int tensor_identity(Json& d) {
    auto w = A_.build_corep(cfg_.corep2);
    TensorIdentityReport r = F_.tensor_identity_check(v_, w, zeta_, zeta2_, cfg_.degree);
    d["second_corep"] = cfg_.corep2;
    d["second_zeta"] = zeta_label(zeta2_, field_.zeta_order());
    d["rank_tensor"] = r.rank_tensor;
    d["rank_product"] = r.rank_product;
    d["holds"] = r.holds;
    d["cert_degree"] = r.degree;
    return r.holds ? kPass : kFail;
  }

  int coideal(Json& d) {
    QuantumLieAlgebra X = F_.quantum_lie(v_, zeta_, policy_);
    CoidealReport r = D_.coideal_check(lie_with_eps(X), cfg_.degree);
    d["right_coideal"] = r.coideal;
    d["ad_invariant"] = r.ad_invariant;
    d["basis_rank"] = r.basis_rank;
    d["pivot_degree"] = r.pivot_degree;
    d["cert_degree"] = cfg_.degree;
    if (!r.detail.empty()) d["witness"] = r.detail;
    return r.passed ? kPass : kFail;
  }

  int leibniz(Json& d) {
    Calculus cal = F_.calculus(F_.quantum_lie(v_, zeta_, policy_));
    WordSpace ws(field_.N, 2);
    std::mt19937 rng(cfg_.seed);
    std::uniform_int_distribution<std::size_t> pick(0, ws.size() - 1);
    int code = kPass, passed = 0, worst_degree = 0;
    for (int t = 0; t < cfg_.pairs; ++t) {
      Word a = ws.word(pick(rng)), b = ws.word(pick(rng));
      Verdict v = F_.leibniz_check(cal, CoordElem::word(a), CoordElem::word(b), policy_);
      worst_degree = std::max(worst_degree, v.degree);
      if (v.equal()) {
        ++passed;
      } else if (!d.contains("witness")) {
        d["witness"] = (a.empty() ? std::string("1") : word_to_string(a, field_.N)) + " , " +
                       (b.empty() ? std::string("1") : word_to_string(b, field_.N)) + ": " + v.witness;
      }
      code = combine(code, verdict_code(v));
    }
    d["pairs"] = cfg_.pairs;
    d["passed"] = passed;
    d["seed"] = cfg_.seed;
    d["cert_degree"] = worst_degree;
    return code;
  }

  int factorizability(Json& d) {
    WordSpace ws(field_.N, cfg_.degree);
    Matrix<Cyclo> G(ws.size(), ws.size());
    for (std::size_t i = 0; i < ws.size(); ++i)
      for (std::size_t j = 0; j < ws.size(); ++j)
        G(i, j) = Cyclo(D_.q_form(CoordElem::word(ws.word(i)), CoordElem::word(ws.word(j))));
    std::size_t gram = certified_rank(G).rank;
    // Dimension of the degree <= d truncation, from the separating family.
    std::vector<Functional> fam;
    for (const auto& F : D_.separating_family(std::max(cfg_.degree, 1)))
      for (std::size_t i = 0; i < F->dim(); ++i)
        for (std::size_t j = 0; j < F->dim(); ++j) fam.push_back(D_.entry(F, i, j));
    std::size_t truncation = D_.rank(fam, cfg_.degree);
    d["words"] = ws.size();
    d["gram_rank"] = gram;
    d["truncation_dim"] = truncation;
    d["cert_degree"] = cfg_.degree;
    return gram == truncation ? kPass : kFail;
  }

  int direct_sum(Json& d) {
    auto w = A_.build_corep(cfg_.corep2);
    QuantumLieAlgebra X1 = F_.quantum_lie(v_, zeta_, policy_);
    QuantumLieAlgebra X2 = F_.quantum_lie(w, zeta2_, policy_);
    d["second_corep"] = cfg_.corep2;
    d["second_zeta"] = zeta_label(zeta2_, field_.zeta_order());
    d["cert_degree"] = cfg_.degree;
    try {
      DirectSum s = F_.direct_sum({X1, X2}, cfg_.degree);
      d["part_ranks"] = s.part_ranks;
      d["rank"] = s.rank;
      d["direct"] = true;
      return kPass;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotDirect) throw;
      d["direct"] = false;
      d["witness"] = e.what();
      return kFail;
    }
  }

  int central_generates(Json& d) {
    Functional c = F_.central_element(*v_, zeta_);
    std::vector<Functional> chi;
    try {
      chi = F_.quantum_lie_from_central(c, cfg_.degree, cfg_.degree);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotCentral) throw;
      d["witness"] = e.what();
      return kFail;
    }
    QuantumLieAlgebra X = F_.quantum_lie(v_, zeta_, policy_);
    bool a = D_.span_check(X.basis, chi, cfg_.degree).all_inside;
    bool b = D_.span_check(chi, X.basis, cfg_.degree).all_inside;
    d["dim_from_central"] = chi.size();
    d["central_in_X"] = a;
    d["X_in_central"] = b;
    d["cert_degree"] = cfg_.degree;
    return a && b ? kPass : kFail;
  }
};

bool is_config_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse:
    case ErrorKind::UnsupportedConfig:
    case ErrorKind::InvalidCharacter:
    case ErrorKind::InvalidDegree:
    case ErrorKind::InvalidArgument:
      return true;
    default:
      return false;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Bicovariant first-order differential calculi on SL_q(N) and Sp_q(N)", "qfodc"};
  app.add_option("verb", cfg.verb, "build | verify | classify | report")
      ->required()
      ->check(CLI::IsMember({"build", "verify", "classify", "report"}));
  app.add_option("--series", cfg.series, "sl or sp")->check(CLI::IsMember({"sl", "sp"}));
  app.add_option("--n", cfg.n, "matrix size N of the fundamental corepresentation");
  app.add_option("--corep", cfg.corep, "corepresentation descriptor, e.g. u, sum(1,u), proj:sym(tensor(u,u))");
  app.add_option("--zeta", cfg.zeta, "central character: 1, -1, i, -i, k/n, omega^k");
  app.add_option("--corep2", cfg.corep2, "second corepresentation for tensor-identity and direct-sum");
  app.add_option("--zeta2", cfg.zeta2, "character of the second corepresentation (defaults to --zeta)");
  app.add_option("--degree", cfg.degree, "certification degree");
  app.add_option("--start-degree", cfg.start_degree, "first degree of rank escalation");
  app.add_option("--window", cfg.window, "rank stability window");
  app.add_option("--d-max", cfg.d_max, "maximal escalation degree");
  app.add_option("--z", cfg.z, "series C normalization z (1 or -1)")->check(CLI::IsMember({1, -1}));
  app.add_option("--k", cfg.k, "minor sizes for minor-tau")->delimiter(',');
  app.add_option("--bound", cfg.bound, "component library bound (boxes)");
  app.add_option("--seed", cfg.seed, "random seed for leibniz");
  app.add_option("--pairs", cfg.pairs, "number of random pairs for leibniz");
  app.add_option("--from-central", cfg.from_central, "classify from c = sum of DESC@ZETA terms joined by +");
  app.add_option("--format", cfg.format, "json or markdown")->check(CLI::IsMember({"json", "markdown"}));
  app.add_option("--claim", cfg.claim, "claim for verify")
      ->check(CLI::IsMember({"minor-tau", "centrality", "tensor-identity", "coideal", "leibniz", "factorizability",
                             "direct-sum", "central-generates"}));
  app.add_option("--out", cfg.out, "write the report to FILE");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
  if (cfg.verb == "verify" && cfg.claim.empty()) {
    err << "error: verify needs --claim\n";
    return kConfigError;
  }

  Outcome o;
  try {
    Session s(cfg);
    if (cfg.verb == "build")
      o = s.build();
    else if (cfg.verb == "verify")
      o = s.verify(cfg.claim);
    else if (cfg.verb == "classify")
      o = s.classify();
    else
      o = s.report();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_config_error(e.kind()) ? kConfigError : kFail;
  }

  std::string text = cfg.format == "json" ? o.report.dump(2) + "\n"
                                          : (o.markdown.empty() ? render_markdown(o.report, "qfodc " + cfg.verb) : o.markdown);
  if (cfg.out.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.out);
    if (!f) {
      err << "error: cannot write " << cfg.out << "\n";
      return kConfigError;
    }
    f << text;
  }
  return o.code;
}

}  // namespace qfodc::cli
