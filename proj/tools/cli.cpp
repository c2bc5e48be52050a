#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "xnf/holonomy.hpp"
#include "xnf/normalform.hpp"
#include "xnf/text.hpp"

namespace xnf::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Options {
  std::string field, field2, psi;
  std::optional<int> degree;
  std::optional<int> x_cap;
  std::string x_window = "-6,6";
  double tol = 1e-10;
  bool json = false;
  bool require_x_normalized = false;
  std::string lambda, mu, t = "1";
  int windings = 1;
};

// A parse error together with the input it came from.
struct SourcedError {
  std::string source;
  ParseError error;
};

// A check ran to completion and reported a negative finding.
struct Finding {
  Json report;
};

Json number(double v) {
  if (v == 0) return 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

Json exponent_json(const Exponent& k) { return Json(k); }

Json eigen_json(const EigenData& mu) {
  Json out = Json::array();
  for (const auto& m : mu) out.push_back(m.str());
  return out;
}

Json automorphism_json(const Automorphism& phi) {
  Json out = Json::object();
  out["x"] = phi.img_x().str();
  for (int i = 0; i < phi.n(); ++i) out["z" + std::to_string(i + 1)] = phi.img_z(i).str();
  return out;
}

Json negative_json(const NegativeResonance& r) {
  return Json{{"K", exponent_json(r.k)}, {"p", exponent_json(r.p)}, {"j", r.j + 1}, {"q", r.q}};
}

template <class F>
auto sourced(const std::string& source, F&& f) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw SourcedError{source, e};
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Document load(const std::string& path, const Options& o) {
  if (path.empty()) throw UsageError("missing input document");
  Document doc = sourced(path, [&] { return parse_document(read_file(path)); });
  if (o.degree) doc.degree = *o.degree;
  if (o.x_cap) doc.x_cap = *o.x_cap;
  return doc;
}

VectorField load_field(const std::string& path, const Options& o, Document* out_doc = nullptr) {
  Document doc = load(path, o);
  VectorField x = sourced(path, [&] { return document_field(doc); });
  if (o.require_x_normalized && !x.is_x_normalized()) throw UsageError("'" + path + "' is not x-normalized");
  if (doc.mu) {
    LaurentMatrix lin = x.linear_part();
    for (int i = 0; i < doc.n; ++i)
      if (!(lin[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)].coeff(0) == (*doc.mu)[static_cast<std::size_t>(i)]))
        throw UsageError("declared mu does not match the diagonal of the linear part in '" + path + "'");
  }
  if (out_doc) *out_doc = doc;
  return x;
}

Automorphism load_automorphism(const std::string& path, const Options& o) {
  Document doc = load(path, o);
  return sourced(path, [&] { return document_automorphism(doc); });
}

EigenData eigenvalues(const std::string& flag, const std::string& text) {
  if (text.empty()) throw UsageError(flag + " is required");
  return sourced(flag, [&] { return parse_eigenvalues(text); });
}

GaussianRational single(const std::string& flag, const std::string& text) {
  EigenData v = eigenvalues(flag, text);
  if (v.size() != 1) throw UsageError(flag + " takes a single coefficient");
  return v.front();
}

std::pair<int, int> window(const std::string& text) {
  int lo = 0, hi = 0;
  char comma = 0;
  std::istringstream in(text);
  if (!(in >> lo >> comma >> hi) || comma != ',' || !(in >> std::ws).eof() || lo > hi)
    throw UsageError("--x-window expects 'lo,hi' with lo <= hi");
  return {lo, hi};
}

int required_degree(const Options& o) {
  if (!o.degree) throw UsageError("--degree is required");
  if (*o.degree < 1) throw UsageError("--degree must be at least 1");
  return *o.degree;
}

NumericOptions numeric(const Options& o) {
  if (!(o.tol > 0)) throw UsageError("--tol must be positive");
  NumericOptions n;
  n.tol = o.tol;
  return n;
}

// --- commands --------------------------------------------------------------

Json cmd_normalize(const Options& o) {
  Document doc;
  VectorField x = load_field(o.field, o, &doc);
  EigenData mu;
  if (doc.mu) {
    mu = *doc.mu;
  } else {
    LaurentMatrix lin = x.linear_part();
    for (int i = 0; i < x.n(); ++i) mu.push_back(lin[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)].coeff(0));
  }
  const int x_cap = doc.x_cap.value_or(doc.degree);
  NormalFormResult r = normalize(x, mu, x_cap);
  Json resonant = Json::array();
  for (const auto& c : r.resonant_coeffs)
    resonant.push_back({{"K", exponent_json(c.index.k)}, {"j", c.index.j + 1}, {"x_exp", c.x_exp}, {"coeff", c.coeff.str()}});
  return {{"name", doc.name},
          {"n", doc.n},
          {"degree", doc.degree},
          {"x_cap", x_cap},
          {"mu", eigen_json(mu)},
          {"normal_field", r.normal_field.str()},
          {"normalizer", automorphism_json(r.normalizer)},
          {"resonant", resonant},
          {"jordan_eps", r.jordan_eps},
          {"steps", r.steps}};
}

Json cmd_resonances(const Options& o) {
  EigenData mu = eigenvalues("--mu", o.mu);
  const int d = required_degree(o);
  ResonanceReport r = enumerate_resonances(mu, d);
  Json resonant = Json::array();
  for (const auto& ri : r.resonant) resonant.push_back({{"K", exponent_json(ri.k)}, {"s", ri.s}, {"x_exp", ri.x_exp}});
  NtnrDecision ntnr = decide_ntnr(mu);
  Json decision{{"holds", ntnr.holds}, {"exact", ntnr.exact}};
  if (!ntnr.exact) decision["search_bound"] = ntnr.search_bound;
  decision["witness"] = ntnr.witness ? negative_json(*ntnr.witness) : Json(nullptr);
  return {{"mu", eigen_json(mu)},
          {"degree", d},
          {"resonant", resonant},
          {"negative", r.negative ? negative_json(*r.negative) : Json(nullptr)},
          {"ntnr", decision}};
}

Json cmd_classify2(const Options& o) {
  GaussianRational mu = single("--mu", o.mu);
  return {{"mu", mu.str()}, {"class", to_string(classify_dim2(mu))}};
}

Json cmd_classify3(const Options& o) {
  GaussianRational lambda = single("--lambda", o.lambda), mu = single("--mu", o.mu);
  Classification3 c = classify_dim3(lambda, mu);
  Json witness(nullptr);
  if (c.witness) {
    if (c.witness->kind == Witness3::Kind::Equation)
      witness = {{"p", c.witness->p}, {"q", c.witness->q}};
    else
      witness = {{"p1", c.witness->p1}, {"p2", c.witness->p2}, {"q", c.witness->q}};
  }
  return {{"lambda", lambda.str()},
          {"mu", mu.str()},
          {"case", to_string(c.tag)},
          {"permuted", c.permuted},
          {"witness", witness}};
}

Json centralizer_json(const CentralizerMonomial& m, int n) {
  Json out{{"field", m.field(Shape{n, std::max(1, total_degree(m.index.k) + 1), {}}).str()}};
  if (!m.euler) {
    out["K"] = exponent_json(m.index.k);
    out["j"] = m.index.j + 1;
    out["l"] = m.l;
  }
  out["x_normalized"] = m.x_normalized;
  return out;
}

Json cmd_centralizer(const Options& o) {
  EigenData mu = eigenvalues("--mu", o.mu);
  const int d = required_degree(o);
  auto w = window(o.x_window);
  CentralizerResult c = centralizer_solve(mu, w, d);
  Json basis = Json::array();
  for (const auto& m : c.basis) basis.push_back(centralizer_json(m, static_cast<int>(mu.size())));
  return {{"mu", eigen_json(mu)}, {"degree", d}, {"x_window", {w.first, w.second}}, {"basis", basis},
          {"negative_l", c.negative_l}};
}

Json cmd_check_theorem1(const Options& o) {
  EigenData mu = eigenvalues("--mu", o.mu);
  const int d = required_degree(o);
  auto w = window(o.x_window);
  Theorem1Check t = check_theorem1(mu, w, d);
  Json report{{"mu", eigen_json(mu)},
              {"degree", d},
              {"x_window", {w.first, w.second}},
              {"ntnr", t.ntnr},
              {"holds", t.holds},
              {"offending", t.offending ? centralizer_json(*t.offending, static_cast<int>(mu.size())) : Json(nullptr)}};
  if (!t.holds) throw Finding{report};
  return report;
}

Json cmd_check_commute(const Options& o) {
  VectorField a = load_field(o.field, o), b = load_field(o.field2, o);
  if (!(a.shape() == b.shape())) throw UsageError("--field and --field2 must have the same n and degree");
  VectorField br = bracket(a, b);
  Json report{{"commute", br.is_zero()}, {"bracket", br.str()}};
  if (!br.is_zero()) throw Finding{report};
  return report;
}

Json cmd_exp(const Options& o) {
  VectorField x = load_field(o.field, o);
  GaussianRational t = single("--t", o.t);
  return {{"t", t.str()}, {"automorphism", automorphism_json(exp(x, t))}};
}

Json cmd_log(const Options& o) {
  Automorphism phi = load_automorphism(o.psi, o);
  return {{"field", log(phi).str()}};
}

Json jet_json(const HolonomyJet& h) {
  Json coeffs = Json::array();
  for (int i = 0; i < h.n; ++i)
    for (const auto& [k, c] : h.coeffs[static_cast<std::size_t>(i)])
      coeffs.push_back({{"i", i + 1}, {"K", exponent_json(k)}, {"re", number(c.real())}, {"im", number(c.imag())}});
  return coeffs;
}

Json cmd_holonomy(const Options& o) {
  Document doc;
  VectorField x = load_field(o.field, o, &doc);
  NumericOptions opt = numeric(o);
  if (o.windings < 1) throw UsageError("--windings must be at least 1");
  HolonomyJet h = holonomy_jet(x, doc.degree, opt, o.windings);
  return {{"degree", doc.degree}, {"tol", number(opt.tol)}, {"windings", o.windings}, {"coefficients", jet_json(h)}};
}

Json cmd_conjugacy_check(const Options& o) {
  Document doc;
  VectorField x = load_field(o.field, o, &doc);
  Automorphism psi = load_automorphism(o.psi, o);
  if (!(psi.shape() == x.shape())) throw UsageError("--field and --psi must have the same n and degree");
  NumericOptions opt = numeric(o);
  const double residual = conjugacy_residual(x, psi, doc.degree, opt);
  const double threshold = 1e4 * opt.tol;
  Json report{{"degree", doc.degree},
              {"tol", number(opt.tol)},
              {"threshold", number(threshold)},
              {"conjugate", residual < threshold},
              {"residual", number(residual)}};
  if (!(residual < threshold)) throw Finding{report};
  return report;
}

// --- output ----------------------------------------------------------------

Json with_header(const std::string& command, const Json& body) {
  Json out{{"schema", 1}, {"command", command}};
  for (const auto& [k, v] : body.items()) out[k] = v;
  return out;
}

void print(std::ostream& out, const Json& report, bool json) {
  if (json) {
    out << report.dump(2) << '\n';
    return;
  }
  std::size_t width = 0;
  for (const auto& [k, v] : report.items())
    if (k != "schema") width = std::max(width, k.size());
  for (const auto& [k, v] : report.items()) {
    if (k == "schema") continue;
    out << k << ':' << std::string(width - k.size() + 1, ' ') << (v.is_string() ? v.get<std::string>() : v.dump())
        << '\n';
  }
}

int report_error(std::ostream& out, std::ostream& err, const std::string& command, bool json, const Json& error,
                 const std::string& text) {
  if (json) out << Json{{"schema", 1}, {"command", command}, {"error", error}}.dump(2) << '\n';
  err << "error: " << text << '\n';
  return 2;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Normal forms, resonances and holonomy of x-normalized vector fields", "xnf"};
  app.require_subcommand(1);
  Options o;

  using Handler = Json (*)(const Options&);
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto add = [&](const char* name, const char* help, Handler h) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_flag("--json", o.json, "Print a JSON report");
    commands.emplace_back(sub, h);
    return sub;
  };
  auto field_opts = [&](CLI::App* sub) {
    sub->add_option("--field", o.field, "Field document")->required();
    sub->add_option("--degree", o.degree, "Truncation degree (overrides the document)");
    sub->add_flag("--require-x-normalized", o.require_x_normalized, "Reject fields that are not x-normalized");
  };

  auto* normalize_cmd = add("normalize", "Poincare-Dulac normal form", cmd_normalize);
  field_opts(normalize_cmd);
  normalize_cmd->add_option("--x-cap", o.x_cap, "Largest x-exponent kept (default: the degree)");

  auto* resonances_cmd = add("resonances", "Resonant indices and negative resonances", cmd_resonances);
  resonances_cmd->add_option("--mu", o.mu, "Comma-separated eigenvalues")->required();
  resonances_cmd->add_option("--degree", o.degree, "Largest |K|")->required();

  add("classify2", "Classification for one transverse variable", cmd_classify2)
      ->add_option("--mu", o.mu, "Eigenvalue")
      ->required();

  auto* classify3_cmd = add("classify3", "Classification for two transverse variables", cmd_classify3);
  classify3_cmd->add_option("--lambda", o.lambda, "First eigenvalue")->required();
  classify3_cmd->add_option("--mu", o.mu, "Second eigenvalue")->required();

  for (auto [name, help, handler] : {std::tuple{"centralizer", "Monomial centralizer of the semisimple part",
                                                static_cast<Handler>(cmd_centralizer)},
                                     std::tuple{"check-theorem1", "No negative x-exponents without negative resonances",
                                                static_cast<Handler>(cmd_check_theorem1)}}) {
    auto* sub = add(name, help, handler);
    sub->add_option("--mu", o.mu, "Comma-separated eigenvalues")->required();
    sub->add_option("--degree", o.degree, "Largest z-degree")->required();
    sub->add_option("--x-window", o.x_window, "x-exponent range lo,hi")->capture_default_str();
  }

  auto* commute_cmd = add("check-commute", "Lie bracket of two fields", cmd_check_commute);
  field_opts(commute_cmd);
  commute_cmd->add_option("--field2", o.field2, "Second field document")->required();

  auto* exp_cmd = add("exp", "Exponential of a nilpotent field", cmd_exp);
  field_opts(exp_cmd);
  exp_cmd->add_option("--t", o.t, "Time parameter")->capture_default_str();

  auto* log_cmd = add("log", "Logarithm of a unipotent automorphism", cmd_log);
  log_cmd->add_option("--psi", o.psi, "Automorphism document")->required();
  log_cmd->add_option("--degree", o.degree, "Truncation degree (overrides the document)");

  auto* holonomy_cmd = add("holonomy", "Holonomy jet along the unit circle", cmd_holonomy);
  field_opts(holonomy_cmd);
  holonomy_cmd->add_option("--tol", o.tol, "Integrator tolerance")->capture_default_str();
  holonomy_cmd->add_option("--windings", o.windings, "Number of turns")->capture_default_str();

  auto* conj_cmd = add("conjugacy-check", "Holonomy conjugacy under a polynomial automorphism", cmd_conjugacy_check);
  field_opts(conj_cmd);
  conj_cmd->add_option("--psi", o.psi, "Automorphism document")->required();
  conj_cmd->add_option("--tol", o.tol, "Integrator tolerance")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream message;
    const int code = app.exit(e, out, message);
    if (code == 0) return 0;
    err << message.str();
    return 2;
  }

  for (const auto& [sub, handler] : commands) {
    if (!sub->parsed()) continue;
    const std::string name = sub->get_name();
    try {
      print(out, with_header(name, handler(o)), o.json);
      return 0;
    } catch (const Finding& f) {
      print(out, with_header(name, f.report), o.json);
      return 1;
    } catch (const SourcedError& e) {
      Json error{{"type", "parse"}, {"source", e.source}, {"line", e.error.line}, {"column", e.error.column},
                 {"message", e.error.message}};
      return report_error(out, err, name, o.json, error,
                          e.source + ":" + std::to_string(e.error.line) + ":" + std::to_string(e.error.column) + ": " +
                              e.error.message);
    } catch (const UsageError& e) {
      return report_error(out, err, name, o.json, {{"type", "usage"}, {"message", e.what()}}, e.what());
    } catch (const PreconditionError& e) {
      return report_error(out, err, name, o.json, {{"type", "precondition"}, {"message", e.what()}}, e.what());
    } catch (const ArithmeticError& e) {
      return report_error(out, err, name, o.json, {{"type", "arithmetic"}, {"message", e.what()}}, e.what());
    } catch (const std::runtime_error& e) {
      // Numerical failures (step-size underflow, escaping leaves) are reported as findings.
      err << "error: " << e.what() << '\n';
      if (o.json) out << Json{{"schema", 1}, {"command", name}, {"error", {{"type", "numeric"}, {"message", e.what()}}}}.dump(2) << '\n';
      return 1;
    }
  }
  return 2;
}

}  // namespace xnf::cli
