#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "aomega/ainf.hpp"
#include "aomega/lattice.hpp"
#include "aomega/qderham.hpp"
#include "aomega/suites.hpp"
#include "json_io.hpp"

using namespace aomega;
using io::Json;

namespace {

constexpr const char* kOutDirVariable = "AOMEGA_OUT_DIR";

struct CheckFailure {};

struct Options {
  SessionConfig config;
  std::string out;
  std::string in;
  std::string suite;
  std::string stage = "tilde";
  std::string f = "2";
  std::string g = "2";
};

enum Flag : unsigned { P = 1, Depth = 2, Dim = 4, Bound = 8, Precision = 16, Seed = 32, In = 64 };

void add_flags(CLI::App* app, Options& o, unsigned flags) {
  const SessionLimits l;
  if (flags & P) app->add_option("--p", o.config.p, "prime p <= " + std::to_string(l.max_p))->capture_default_str();
  if (flags & Depth)
    app->add_option("--depth", o.config.depth, "model depth n (q = u^{p^n}), 1.." + std::to_string(l.max_depth))
        ->capture_default_str();
  if (flags & Dim)
    app->add_option("--dim", o.config.dim, "torus dimension d, 0.." + std::to_string(l.max_dim))->capture_default_str();
  if (flags & Bound)
    app->add_option("--bound", o.config.bound, "grading bound B, 0.." + std::to_string(l.max_bound))
        ->capture_default_str();
  if (flags & Precision)
    app->add_option("--precision", o.config.precision, "Witt precision m, 1.." + std::to_string(l.max_precision))
        ->capture_default_str();
  if (flags & Seed) app->add_option("--seed", o.config.seed, "seed for sampled checks")->capture_default_str();
  if (flags & In) app->add_option("--in", o.in, "input JSON file (default: stdin)");
  app->add_option("--out", o.out,
                  std::string("output file; '-' for stdout. Default: $") + kOutDirVariable +
                      "/<command>.json when set, else stdout");
}

Json read_input(const std::string& path) {
  try {
    if (path.empty() || path == "-") return Json::parse(std::cin);
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("input is not valid JSON: ") + e.what());
  }
}

void emit(const Json& j, const Options& o, const std::string& name) {
  std::string path = o.out;
  if (path.empty())
    if (const char* dir = std::getenv(kOutDirVariable); dir && *dir)
      path = (std::filesystem::path(dir) / (name + ".json")).string();
  const std::string text = j.dump(2) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  if (const auto parent = std::filesystem::path(path).parent_path(); !parent.empty())
    std::filesystem::create_directories(parent);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  std::cerr << "wrote " << path << "\n";
}

/// Emits and turns a failed report into exit code 1.
void emit_checked(Json j, bool passed, const Options& o, const std::string& name) {
  j["passed"] = passed;
  emit(j, o, name);
  if (!passed) throw CheckFailure{};
}

Json header(const std::string& command, const SessionConfig& c) {
  return {{"command", command}, {"seed", std::to_string(c.seed)}, {"config", io::to_json(c)}};
}

void cmd_ainf_verify(const Options& o) {
  validate(o.config);
  const auto rep = check_notation_identities(AinfModel(o.config.p, o.config.depth), {50, o.config.seed});
  Json j = header("ainf verify", o.config);
  j["report"] = io::to_json(rep);
  emit_checked(j, rep.passed(), o, "ainf-verify");
}

void cmd_witt_digits(const Options& o) {
  validate(o.config);
  const auto w = io::witt_from_json(read_input(o.in), o.config.p, o.config.precision);
  const auto digits = teichmuller_digits(w);
  Json list = Json::array();
  for (const auto& d : digits) list.push_back(io::to_json(d));
  Json j = header("witt digits", o.config);
  j["input"] = io::to_json(w);
  j["digits"] = list;
  emit_checked(j, digits_to_witt(digits, o.config.p) == w, o, "witt-digits");
}

Integer parse_flag_integer(const std::string& name, const std::string& text) {
  try {
    const Integer x = parse_integer(text);
    if (x == 0) throw std::invalid_argument("zero");
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument(name + " must be a nonzero integer, got '" + text + "'");
  }
}

void cmd_leta_apply(const Options& o) {
  const Integer f = parse_flag_integer("--f", o.f);
  const auto k = io::int_complex_from_json(read_input(o.in));
  const auto eta = eta_subcomplex(k, f);
  Json j = {{"command", "leta apply"}, {"f", to_string(f)}};
  j["input"] = io::to_json(k);
  j["input_homology"] = io::to_json(homology_snf(k));
  j["eta"] = io::to_json(eta);
  j["eta_homology"] = io::to_json(homology_snf(eta));
  j["bockstein_homology"] = io::to_json(bockstein(k, f).homology());
  emit(j, o, "leta-apply");
}

void cmd_leta_verify(const Options& o) {
  const Integer f = parse_flag_integer("--f", o.f), g = parse_flag_integer("--g", o.g);
  Report rep("leta verify");
  Json j = {{"command", "leta verify"}};
  if (o.in.empty()) {
    // No complex given: the seeded random suite.
    validate(o.config);
    rep.merge(check_warning_pair(o.config.p), "warning pair: ");
    rep.merge(run_leta_suite(200, o.config.seed));
    j["seed"] = std::to_string(o.config.seed);
  } else {
    const auto k = io::int_complex_from_json(read_input(o.in));
    j["f"] = to_string(f);
    j["g"] = to_string(g);
    rep.merge(check_homology_formula(k, f));
    rep.merge(check_leta_mod_f_is_bockstein(k, f));
    rep.merge(check_composition(k, f, g));
  }
  j["report"] = io::to_json(rep);
  emit_checked(j, rep.passed(), o, "leta-verify");
}

void cmd_torus_run(const Options& o) {
  validate_box(o.config);
  if (o.stage == "tilde") validate_cyclotomic(o.config, o.config.depth);
  if (o.stage == "ht") validate_cyclotomic(o.config, o.config.depth + 1);
  const auto& c = o.config;
  const AinfModel model(c.p, c.depth);
  const GradingBox box(c.p, c.dim, c.depth, c.bound);
  Json j = header("torus run", c);
  j["stage"] = o.stage;
  Report rep(o.stage);
  if (o.stage == "tilde") {
    const auto t = tilde_omega_torus(box);
    rep.merge(check_tilde_omega_ranks(t));
    rep.merge(check_twist_additivity(t));
    j["result"] = io::to_json(t);
  } else if (o.stage == "semicont") {
    const auto s = semicontinuity_torus(model, box);
    rep.add("generic <= special in every degree", s.holds());
    j["result"] = io::to_json(s);
  } else {
    const auto ainf = ainf_omega_torus(model, box);
    if (o.stage == "ainf") {
      rep.merge(check_twist_additivity(ainf.result));
      j["result"] = io::to_json(ainf.result);
    } else if (o.stage == "ht") {
      const auto ht = specialize_hodge_tate(ainf);
      rep.merge(ht.report);
      j["result"] = io::to_json(ht.result);
    } else if (o.stage == "dr") {
      const auto dr = specialize_de_rham(ainf);
      rep.merge(dr.report);
      j["result"] = io::to_json(dr.result);
      Json pieces = Json::object();
      for (const auto& [cls, k] : dr.pieces) pieces[std::to_string(cls)] = io::to_json(k);
      j["beta_xi"] = pieces;
    } else if (o.stage == "etale") {
      const auto e = etale_rank_torus(ainf);
      rep.merge(e.report);
      j["result"] = {{"ranks", io::to_json(e.ranks)}};
    } else {
      throw std::invalid_argument("unknown stage '" + o.stage + "'");
    }
  }
  j["report"] = io::to_json(rep);
  emit_checked(j, rep.passed(), o, "torus-" + o.stage);
}

void cmd_torus_all(const Options& o) {
  validate_cyclotomic(o.config, o.config.depth + 1);
  const auto& c = o.config;
  const auto rep = run_torus_pipeline(AinfModel(c.p, c.depth), GradingBox(c.p, c.dim, c.depth, c.bound));
  Json j = header("torus all", c);
  j["report"] = io::to_json(rep);
  emit_checked(j, rep.passed(), o, "torus-all");
}

void cmd_qderham_table(const Options& o) {
  validate_box(o.config);
  const auto& c = o.config;
  const AinfModel model(c.p, c.depth);
  const auto qdr = q_de_rham_complex(model, c.dim, c.bound);
  Json rows = Json::array();
  for (const auto& [m, piece] : qdr.pieces) {
    Json weights = Json::array();
    const auto d0 = piece.differential(0);
    for (std::size_t r = 0; r < d0.rows(); ++r) weights.push_back(d0.at(r, 0).to_string());
    rows.push_back({{"m", m}, {"weights", weights}, {"homology", io::to_json(q_de_rham_homology(piece))}});
  }
  Json j = header("qderham table", c);
  j["variable"] = "u, q = u^" + std::to_string(model.q_exponent());
  j["pieces"] = rows;
  emit(j, o, "qderham-table");
}

void cmd_qderham_compare(const Options& o) {
  validate_box(o.config);
  const auto& c = o.config;
  const AinfModel model(c.p, c.depth);
  Report rep("qderham compare");
  rep.merge(compare_with_torus_pipeline(model, c.dim, c.bound));
  rep.merge(check_q_to_one(model, c.dim, c.bound));
  Json j = header("qderham compare", c);
  j["report"] = io::to_json(rep);
  emit_checked(j, rep.passed(), o, "qderham-compare");
}

void cmd_verify(const Options& o) {
  std::vector<std::string> names;
  if (o.suite == "all")
    names = suite_names();
  else
    names.push_back(o.suite);
  Json suites = Json::array();
  bool passed = true;
  for (const auto& name : names) {
    const auto start = std::chrono::steady_clock::now();
    const auto outcome = run_suite(name, o.config);
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    std::cerr << name << ": " << (outcome.report.passed() ? "pass" : "FAIL") << " (" << took.count() << " s)\n";
    passed = passed && outcome.report.passed();
    suites.push_back(io::to_json(outcome));
  }
  if (names.size() == 1) {
    emit_checked(suites[0], passed, o, "verify-" + o.suite);
    return;
  }
  Json j = header("verify", o.config);
  j["suites"] = suites;
  emit_checked(j, passed, o, "verify-all");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite models of A_inf-cohomology: décalage, torus cohomology and q-de Rham checks"};
  app.require_subcommand(1);
  Options o;

  auto* ainf = app.add_subcommand("ainf", "the A_inf model")->require_subcommand(1);
  auto* ainf_verify = ainf->add_subcommand("verify", "identities of mu, xi, xi_tilde as a JSON report");
  add_flags(ainf_verify, o, P | Depth | Seed);

  auto* witt = app.add_subcommand("witt", "truncated Witt vectors")->require_subcommand(1);
  auto* witt_digits = witt->add_subcommand("digits", "Teichmüller digits of a Witt element read as JSON");
  add_flags(witt_digits, o, P | Precision | In);

  auto* leta = app.add_subcommand("leta", "décalage on integer complexes")->require_subcommand(1);
  auto* leta_apply = leta->add_subcommand("apply", "eta_f of a complex read as JSON, with homology");
  add_flags(leta_apply, o, In);
  leta_apply->add_option("--f", o.f, "the element f")->capture_default_str();
  auto* leta_verify =
      leta->add_subcommand("verify", "homology formula, Bockstein and composition checks (random suite without --in)");
  add_flags(leta_verify, o, P | Seed | In);
  leta_verify->add_option("--f", o.f, "the element f")->capture_default_str();
  leta_verify->add_option("--g", o.g, "the second element for composition")->capture_default_str();

  auto* torus = app.add_subcommand("torus", "graded cohomology of the perfectoid torus")->require_subcommand(1);
  auto* torus_run = torus->add_subcommand("run", "one stage as a JSON rank/divisor table");
  add_flags(torus_run, o, P | Depth | Dim | Bound);
  torus_run->add_option("--stage", o.stage, "stage")
      ->check(CLI::IsMember({"tilde", "ainf", "dr", "ht", "etale", "semicont"}))
      ->capture_default_str();
  auto* torus_all = torus->add_subcommand("all", "every stage and the cross-checks");
  add_flags(torus_all, o, P | Depth | Dim | Bound);

  auto* qderham = app.add_subcommand("qderham", "the q-de Rham complex of the torus")->require_subcommand(1);
  auto* qderham_table = qderham->add_subcommand("table", "H* of every monomial piece");
  add_flags(qderham_table, o, P | Depth | Dim | Bound);
  auto* qderham_compare = qderham->add_subcommand("compare", "q-de Rham pieces against the torus pipeline");
  add_flags(qderham_compare, o, P | Depth | Dim | Bound);

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  add_flags(verify, o, P | Depth | Dim | Bound | Precision | Seed);
  std::vector<std::string> choices = suite_names();
  choices.push_back("all");
  verify->add_option("--suite", o.suite, "suite name or 'all'")->required()->check(CLI::IsMember(choices));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  const auto start = std::chrono::steady_clock::now();
  int code = 0;
  try {
    if (ainf_verify->parsed()) cmd_ainf_verify(o);
    else if (witt_digits->parsed()) cmd_witt_digits(o);
    else if (leta_apply->parsed()) cmd_leta_apply(o);
    else if (leta_verify->parsed()) cmd_leta_verify(o);
    else if (torus_run->parsed()) cmd_torus_run(o);
    else if (torus_all->parsed()) cmd_torus_all(o);
    else if (qderham_table->parsed()) cmd_qderham_table(o);
    else if (qderham_compare->parsed()) cmd_qderham_compare(o);
    else if (verify->parsed()) cmd_verify(o);
  } catch (const CheckFailure&) {
    code = 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = 2;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    code = 1;
  }
  const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
  std::cerr << "elapsed " << took.count() << " s\n";
  return code;
}
