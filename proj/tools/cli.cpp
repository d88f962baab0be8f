#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "weakinfo/duality.hpp"
#include "weakinfo/error.hpp"
#include "weakinfo/model_file.hpp"
#include "weakinfo/pricing.hpp"
#include "weakinfo/stability_lab.hpp"
#include "weakinfo/weak_info.hpp"

namespace weakinfo::cli {
namespace {

using Json = nlohmann::ordered_json;

// A falsified verdict; carries the report that should still be written.
struct Falsified {
  Json report;
  std::string reason;
};

struct Options {
  std::string file;
  std::string out_path;
  std::string csv_path;
  std::string plot_path;
  std::string claim;
  std::string utility;
  std::string scenario_set;
  std::string experiment;
  double x = 1.0;
  std::size_t n_max = 0;
  double tolerance = kValueGapTolerance;
  bool dump_constraints = false;
  unsigned long long seed = 1;
  std::size_t random_claims = 0;
};

Json vector_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Json outcome_map(const Eigen::VectorXd& v, const FiniteFilteredSpace& space) {
  Json o = Json::object();
  for (std::size_t i = 0; i < space.num_outcomes(); ++i)
    o[space.outcome_label(i)] = v(static_cast<Eigen::Index>(i));
  return o;
}

Json diagnostics_json(const SolverDiagnostics& d) {
  return Json{{"iterations", d.iterations},
              {"stationarity", d.stationarity},
              {"feasibility", d.feasibility}};
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw LabError(ErrorCode::kValidation, "cannot write '" + path + "'");
  f << text;
}

UtilityField pick_utility(const Options& o, const ModelFile& m) {
  if (o.utility.empty()) return m.utility;
  return parse_utility_spec(o.utility, m.model.num_outcomes());
}

const std::vector<Scenario>& pick_scenarios(const Options& o, const ModelFile& m) {
  if (!o.scenario_set.empty()) return m.scenario_set(o.scenario_set);
  if (m.scenarios.empty())
    throw LabError(ErrorCode::kValidation, "model file defines no scenario sets");
  if (m.scenarios.count("panel")) return m.scenarios.at("panel");
  return m.scenarios.begin()->second;
}

double check_x(double x) {
  if (!(x > 0.0)) throw LabError(ErrorCode::kValidation, "--x must be positive");
  return x;
}

Json report_json(const ConvergenceReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json j{{"n", row.n},        {"tv", row.tv},
           {"u_gap", row.u_gap}, {"v_gap", row.v_gap},
           {"x_opt_gap", row.x_opt_gap}, {"y_opt_gap", row.y_opt_gap},
           {"price_gap", row.price_gap}};
    if (r.experiment == "price") j["definitional_slack"] = row.definitional_slack;
    if (!row.error.empty()) j["error"] = row.error;
    rows.push_back(std::move(j));
  }
  return Json{{"experiment", r.experiment},   {"tolerance", r.tolerance},
              {"verdict", r.verdict},         {"monotone_tail", r.monotone_tail},
              {"loglog_slope", r.slope},      {"gap_per_tv", r.gap_constant},
              {"rows", std::move(rows)}};
}

std::string plot_series(const ConvergenceReport& r) {
  static const std::vector<std::pair<GapColumn, const char*>> names{
      {GapColumn::kValue, "u_gap"},
      {GapColumn::kDual, "v_gap"},
      {GapColumn::kPrimalOptimizer, "x_opt_gap"},
      {GapColumn::kDualOptimizer, "y_opt_gap"},
      {GapColumn::kPrice, "price_gap"}};
  std::ostringstream os;
  bool first = true;
  for (const auto& [col, name] : names) {
    if (std::find(r.columns.begin(), r.columns.end(), col) == r.columns.end()) continue;
    if (!first) os << "\n\n";
    first = false;
    os << "# n " << name << "\n";
    for (const auto& row : r.rows) os << row.n << ' ' << fmt17(row.gap(col)) << '\n';
  }
  return os.str();
}

void emit_convergence_files(const Options& o, const ConvergenceReport& r) {
  if (!o.csv_path.empty()) write_file(o.csv_path, r.to_csv());
  if (!o.plot_path.empty()) write_file(o.plot_path, plot_series(r));
}

// ---- subcommands -------------------------------------------------------

Json cmd_validate(const Options& o) {
  const std::string text = read_text_file(o.file);
  const std::string kind = document_kind(text);
  if (kind == "counterexample_grid") {
    const GridFile g = parse_grid(text);
    return Json{{"command", "validate"}, {"valid", true}, {"kind", kind}, {"name", g.name}};
  }
  const ModelFile m = parse_model(text);
  return Json{{"command", "validate"},
              {"valid", true},
              {"kind", kind},
              {"name", m.name},
              {"outcomes", m.model.num_outcomes()},
              {"assets", m.model.num_assets()},
              {"horizon", m.model.space().horizon()},
              {"complete", is_complete(m.model)},
              {"claims", m.claims.size()},
              {"scenario_sets", m.scenarios.size()}};
}

Json cmd_solve(const Options& o) {
  const ModelFile m = parse_model(read_text_file(o.file));
  const UtilityField u = pick_utility(o, m);
  const double x = check_x(o.x);
  const auto& space = m.model.space();
  spdlog::info("solving primal for x = {} under {}", x, u.describe());
  const PrimalSolution s = solve_primal(m.model, u, m.base_measure, x);
  Json r{{"command", "solve"},
         {"model", m.name},
         {"utility", u.describe()},
         {"x", x},
         {"y_star", s.y_star},
         {"value", s.value},
         {"dual_value", s.dual.value},
         {"budget_residual", s.budget_residual},
         {"root_iterations", s.root_iterations},
         {"terminal_wealth", outcome_map(s.terminal_wealth, space)},
         {"q_hat", outcome_map(s.dual.q_hat.weights(), space)},
         {"z_hat", outcome_map(s.dual.z_hat.values, space)},
         {"boundary_flag", s.dual.boundary_flag},
         {"diagnostics", diagnostics_json(s.dual.diagnostics)},
         {"complete", is_complete(m.model)}};
  if (s.strategy) {
    Json h = Json::object();
    for (NodeId node : space.decision_nodes()) h[space.label(node)] = vector_json(s.strategy->holdings[node]);
    r["strategy"] = std::move(h);
  } else {
    r["strategy"] = nullptr;
  }
  if (o.dump_constraints) {
    const MartingaleConstraints c = martingale_measure_constraints(m.model);
    Json a = Json::array();
    for (Eigen::Index i = 0; i < c.a.rows(); ++i) a.push_back(vector_json(c.a.row(i).transpose()));
    r["constraints"] = Json{{"a", std::move(a)}, {"b", vector_json(c.b)}};
  }
  return r;
}

Json cmd_price(const Options& o) {
  const ModelFile m = parse_model(read_text_file(o.file));
  const UtilityField u = pick_utility(o, m);
  const double x = check_x(o.x);
  const Claim& f = m.claim(o.claim);
  spdlog::info("pricing claim {} at x = {}", o.claim, x);
  const PriceReport p = indifference_price(m.model, u, m.base_measure, x, f);
  const UniquenessProbe probe = uniqueness_probe(m.model, u, m.base_measure, x, f, p);
  Json probes = Json::array();
  for (const auto& pr : p.probes) probes.push_back(Json{{"q", pr.q}, {"slack", pr.slack}});
  const auto rep = is_replicable(f, m.model);
  Json r{{"command", "price"},
         {"model", m.name},
         {"claim", o.claim},
         {"utility", u.describe()},
         {"x", x},
         {"price", p.price},
         {"y_star", p.y_star},
         {"u_x", p.u_x},
         {"pricing_density", outcome_map(p.pricing_density, m.model.space())},
         {"martingale_certificate", p.martingale_certificate},
         {"definitional_check", p.definitional_check},
         {"definitional_probes", std::move(probes)},
         {"uniqueness", Json{{"offset", kUniquenessOffset},
                             {"lower_slack", probe.lower_slack},
                             {"upper_slack", probe.upper_slack},
                             {"singleton", probe.singleton}}},
         {"replication_cost", rep ? Json(rep->cost) : Json(nullptr)}};
  if (p.definitional_check > kDefinitionalTolerance)
    throw Falsified{r, "representation price fails the definitional check"};
  if (!probe.singleton) throw Falsified{r, "price offsets do not violate the definition"};
  return r;
}

Claim random_replicable_claim(const MarketModel& model, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const Eigen::MatrixXd g = model.gains_matrix();
  Eigen::VectorXd h(g.cols());
  for (Eigen::Index i = 0; i < h.size(); ++i) h(i) = dist(rng);
  return Claim::Constant(g.rows(), dist(rng)) + g * h;
}

Json cmd_invariance(const Options& o) {
  const ModelFile m = parse_model(read_text_file(o.file));
  const auto& scenarios = pick_scenarios(o, m);
  std::vector<std::pair<std::string, Claim>> claims;
  if (!o.claim.empty())
    claims.emplace_back(o.claim, m.claim(o.claim));
  else
    claims = m.claims;
  const auto measures = pricing_measures(m.model, scenarios);

  std::ostringstream csv;
  csv << "claim,spread,tolerance,invariant";
  for (std::size_t i = 0; i < scenarios.size(); ++i) csv << ",price_" << i;
  csv << '\n';
  Json table = Json::array();
  for (const auto& [name, f] : claims) {
    const InvarianceResult res = invariance_check(f, measures);
    table.push_back(Json{{"claim", name},
                         {"prices", res.prices},
                         {"spread", res.spread},
                         {"tolerance", invariance_tolerance(f)},
                         {"invariant", res.invariant},
                         {"replicable", is_replicable(f, m.model).has_value()}});
    csv << name << ',' << fmt17(res.spread) << ',' << fmt17(invariance_tolerance(f)) << ','
        << (res.invariant ? "true" : "false");
    for (double p : res.prices) csv << ',' << fmt17(p);
    csv << '\n';
  }
  const InvariantBasis basis = invariant_claim_basis(m.model, scenarios);
  Json vectors = Json::array();
  for (Eigen::Index c = 0; c < basis.basis.cols(); ++c) vectors.push_back(vector_json(basis.basis.col(c)));
  Json r{{"command", "invariance"},
         {"model", m.name},
         {"scenarios", scenarios.size()},
         {"claims", std::move(table)},
         {"basis", Json{{"dimension", basis.basis.cols()},
                        {"inconclusive", basis.inconclusive},
                        {"distinct_measures", basis.distinct_measures},
                        {"vectors", std::move(vectors)}}}};
  if (!o.csv_path.empty()) write_file(o.csv_path, csv.str());

  if (o.random_claims > 0) {
    std::mt19937_64 rng(o.seed);
    std::size_t failures = 0;
    double worst = 0.0;
    for (std::size_t k = 0; k < o.random_claims; ++k) {
      const Claim f = random_replicable_claim(m.model, rng);
      const auto rep = is_replicable(f, m.model);
      const InvarianceResult res = invariance_check(f, measures);
      double dev = 0.0;
      for (double p : res.prices) dev = std::max(dev, std::abs(p - (rep ? rep->cost : p)));
      worst = std::max(worst, dev);
      if (!rep || !res.invariant || dev > 1e-8) ++failures;
    }
    r["random_replicable"] = Json{{"seed", o.seed},
                                  {"claims", o.random_claims},
                                  {"failures", failures},
                                  {"max_cost_deviation", worst}};
    if (failures > 0) throw Falsified{r, "replicable claims priced away from their cost"};
  }
  return r;
}

Json cmd_weakinfo(const Options& o) {
  const ModelFile m = parse_model(read_text_file(o.file));
  if (!m.weak_info) throw LabError(ErrorCode::kValidation, "model file has no weak_info block");
  const UtilityField u = pick_utility(o, m);
  const double x = check_x(o.x);
  const WeakInfoBlock& w = *m.weak_info;
  const Measure p_nu = minimal_measure(m.base_measure, w.y, w.nu);
  const double value = value_of_weak_information(m.model, u, x, w.y, w.nu, m.base_measure);
  const double base_value = solve_primal(m.model, u, m.base_measure, x).value;
  Json nu = Json::object();
  for (std::size_t k = 0; k < w.label_names.size(); ++k) nu[w.label_names[k]] = w.nu[k];
  Json r{{"command", "weakinfo"},
         {"model", m.name},
         {"utility", u.describe()},
         {"x", x},
         {"nu", std::move(nu)},
         {"minimal_measure", outcome_map(p_nu.weights(), m.model.space())},
         {"value", value},
         {"value_without_information", base_value},
         {"gain", value - base_value}};
  if (o.n_max > 0) {
    const Law start(w.y.law_under(m.base_measure));
    MeasureSequence seq{.n = log_spaced_indices(1, o.n_max, 30), .measures = {}, .limit = p_nu};
    for (std::size_t n : seq.n)
      seq.measures.push_back(minimal_measure(m.base_measure, w.y, perturbed_law(w.nu, start, n)));
    ConvergenceReport rep = run_value_convergence(m.model, u, seq, x, 1.0, o.tolerance);
    rep.experiment = "weak_info";
    rep.columns = {GapColumn::kValue};
    summarize(rep);
    emit_convergence_files(o, rep);
    r["convergence"] = report_json(rep);
    if (!rep.verdict) throw Falsified{r, "value gap above tolerance at the end of the sweep"};
  }
  return r;
}

ConvergenceReport merge(const std::vector<ConvergenceReport>& parts, double tol) {
  ConvergenceReport all{.experiment = "all", .columns = {}, .rows = parts.front().rows, .tolerance = tol};
  for (const auto& p : parts) {
    all.columns.insert(all.columns.end(), p.columns.begin(), p.columns.end());
    for (std::size_t i = 0; i < p.rows.size(); ++i) {
      auto& row = all.rows[i];
      const auto& src = p.rows[i];
      for (GapColumn c : p.columns) {
        switch (c) {
          case GapColumn::kValue: row.u_gap = src.u_gap; break;
          case GapColumn::kDual: row.v_gap = src.v_gap; break;
          case GapColumn::kPrimalOptimizer: row.x_opt_gap = src.x_opt_gap; break;
          case GapColumn::kDualOptimizer: row.y_opt_gap = src.y_opt_gap; break;
          case GapColumn::kPrice:
            row.price_gap = src.price_gap;
            row.definitional_slack = src.definitional_slack;
            break;
        }
      }
      if (row.error.empty()) row.error = src.error;
    }
  }
  summarize(all);
  return all;
}

Json cmd_two_factor() {
  const TwoFactorDemo d = two_factor_invariance_demo({0.3, 0.5, 0.7});
  Json r{{"command", "stability"},
         {"experiment", "two-factor"},
         {"p_w", d.p_w},
         {"utilities", d.utilities},
         {"b_up_prices", d.b_prices},
         {"w_up_prices", d.w_prices},
         {"max_deviation", d.max_deviation},
         {"w_up_spread", d.w_spread},
         {"tolerance", kTwoFactorTolerance},
         {"pass", d.pass}};
  if (!d.pass) throw Falsified{r, "untraded indicator priced away from 0.5"};
  return r;
}

Json cmd_stability(const Options& o) {
  const std::string exp = o.experiment.empty() ? "value" : o.experiment;
  if (exp == "two-factor") return cmd_two_factor();
  if (exp != "value" && exp != "optimizer" && exp != "price" && exp != "all")
    throw LabError(ErrorCode::kValidation, "unknown experiment '" + exp + "'");
  if (o.file.empty()) throw LabError(ErrorCode::kValidation, "a model file is required");
  const ModelFile m = parse_model(read_text_file(o.file));
  if (!m.perturbation_start)
    throw LabError(ErrorCode::kValidation, "model file has no perturbation block");
  const UtilityField u = pick_utility(o, m);
  const double x = check_x(o.x);
  const std::size_t n_max = o.n_max > 0 ? o.n_max : 10000;
  if (n_max < 2) throw LabError(ErrorCode::kValidation, "--n-max must be at least 2");
  const MeasureSequence seq =
      mixture_sequence(m.base_measure, *m.perturbation_start, log_spaced_indices(2, n_max, 30));
  spdlog::info("stability experiment {} over {} indices", exp, seq.n.size());

  std::vector<double> x_n;
  for (std::size_t n : seq.n) x_n.push_back(x * (1.0 + 1.0 / static_cast<double>(n)));
  std::vector<ConvergenceReport> parts;
  if (exp == "value" || exp == "all")
    parts.push_back(run_value_convergence(m.model, u, seq, x, 1.0, o.tolerance));
  if (exp == "optimizer" || exp == "all")
    parts.push_back(run_optimizer_convergence(m.model, u, seq, x_n, x, o.tolerance));
  if (exp == "price" || exp == "all") {
    if (m.claims.empty() && o.claim.empty())
      throw LabError(ErrorCode::kValidation, "price experiment needs a claim");
    const Claim& f = o.claim.empty() ? m.claims.front().second : m.claim(o.claim);
    parts.push_back(run_price_convergence(m.model, std::vector<UtilityField>(seq.n.size(), u), u,
                                          seq, x_n, x, f, o.tolerance));
  }
  const ConvergenceReport rep = parts.size() == 1 ? parts.front() : merge(parts, o.tolerance);
  emit_convergence_files(o, rep);
  Json r{{"command", "stability"}, {"model", m.name}, {"utility", u.describe()}, {"x", x}};
  r["report"] = report_json(rep);
  if (!rep.verdict) throw Falsified{r, "gaps above tolerance at the end of the sweep"};
  return r;
}

Json cmd_counterexample(const Options& o) {
  const GridFile g = parse_grid(read_text_file(o.file));
  const TruncationDemo d = counterexample_truncation(g.which, g.n, g.grid);
  Json r{{"command", "counterexample"},
         {"name", g.name},
         {"which", g.which == Counterexample::kAsUI1 ? "assumption_asUI1" : "assumption_asUI"},
         {"n", g.n},
         {"cutoffs", g.grid.cutoffs},
         {"values", d.values},
         {"strictly_increasing", d.strictly_increasing},
         {"ratio", d.ratio},
         {"diverges", d.diverges},
         {"overflow", d.overflow},
         {"expect", g.expect_divergence ? "diverge" : "bounded"}};
  if (g.which == Counterexample::kAsUI1) r["series_terms"] = g.grid.series_terms;
  std::ostringstream csv, plot;
  csv << "cutoff,value\n";
  plot << "# cutoff value\n";
  for (std::size_t i = 0; i < d.values.size(); ++i) {
    csv << fmt17(g.grid.cutoffs[i]) << ',' << fmt17(d.values[i]) << '\n';
    plot << fmt17(g.grid.cutoffs[i]) << ' ' << fmt17(d.values[i]) << '\n';
  }
  if (!o.csv_path.empty()) write_file(o.csv_path, csv.str());
  if (!o.plot_path.empty()) write_file(o.plot_path, plot.str());
  if (g.expect_divergence && !d.diverges) throw Falsified{r, "truncated integral does not diverge"};
  if (!g.expect_divergence && d.ratio > 1.5) throw Falsified{r, "control grows by more than 1.5x"};
  return r;
}

void configure_logging(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_st>(err);
  auto logger = std::make_shared<spdlog::logger>("weakinfo", sink);
  logger->set_pattern("[%l] %v");
  const char* env = std::getenv("WEAKINFO_LOG");
  const std::string level = env ? env : "error";
  if (level == "debug")
    logger->set_level(spdlog::level::debug);
  else if (level == "info")
    logger->set_level(spdlog::level::info);
  else
    logger->set_level(spdlog::level::err);
  spdlog::set_default_logger(logger);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  configure_logging(err);
  Options o;
  CLI::App app{"Finite-state market laboratory: duality, indifference prices, weak information"};
  app.name("weakinfo");
  app.require_subcommand(1);

  auto add_out = [&](CLI::App* s) { s->add_option("--out", o.out_path, "JSON report path (default stdout)"); };
  auto add_x = [&](CLI::App* s) { s->add_option("--x", o.x, "initial wealth"); };
  auto add_u = [&](CLI::App* s) {
    s->add_option("--utility", o.utility, "log, power:<p> or a JSON utility object");
  };

  auto* validate = app.add_subcommand("validate", "check a model or grid file against the schema");
  validate->add_option("file", o.file)->required();
  add_out(validate);

  auto* solve = app.add_subcommand("solve", "optimal terminal wealth and dual optimizer");
  solve->add_option("file", o.file)->required();
  add_out(solve);
  add_x(solve);
  add_u(solve);
  solve->add_flag("--dump-constraints", o.dump_constraints, "include the martingale constraint system");

  auto* price = app.add_subcommand("price", "indifference price with definitional verification");
  price->add_option("file", o.file)->required();
  add_out(price);
  add_x(price);
  add_u(price);
  price->add_option("--claim", o.claim, "claim name from the model file")->required();

  auto* inv = app.add_subcommand("invariance", "price spread across a scenario set");
  inv->add_option("file", o.file)->required();
  add_out(inv);
  inv->add_option("--claim", o.claim, "claim name (default: every claim)");
  inv->add_option("--scenario-set", o.scenario_set, "scenario set name");
  inv->add_option("--csv", o.csv_path, "spread table path");
  inv->add_option("--seed", o.seed, "seed for random replicable claims");
  inv->add_option("--random-claims", o.random_claims, "number of random replicable claims to test");

  auto* weak = app.add_subcommand("weakinfo", "value of weak information and its continuity");
  weak->add_option("file", o.file)->required();
  add_out(weak);
  add_x(weak);
  add_u(weak);
  weak->add_option("--n-max", o.n_max, "run the perturbation sweep up to this index");
  weak->add_option("--tolerance", o.tolerance, "gap tolerance");
  weak->add_option("--csv", o.csv_path, "convergence table path");
  weak->add_option("--plot-data", o.plot_path, "two-column series path");

  auto* stab = app.add_subcommand("stability", "convergence under measure perturbations");
  stab->add_option("file", o.file);
  add_out(stab);
  add_x(stab);
  add_u(stab);
  stab->add_option("--experiment", o.experiment, "value, optimizer, price, all or two-factor");
  stab->add_option("--claim", o.claim, "claim for the price experiment");
  stab->add_option("--n-max", o.n_max, "largest perturbation index (default 10000)");
  stab->add_option("--tolerance", o.tolerance, "gap tolerance");
  stab->add_option("--csv", o.csv_path, "convergence table path");
  stab->add_option("--plot-data", o.plot_path, "two-column series path");

  auto* cex = app.add_subcommand("counterexample", "truncated quadrature of the divergent integrals");
  cex->add_option("file", o.file)->required();
  add_out(cex);
  cex->add_option("--csv", o.csv_path, "cutoff table path");
  cex->add_option("--plot-data", o.plot_path, "two-column series path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  Json report;
  int code = kExitOk;
  try {
    if (validate->parsed()) report = cmd_validate(o);
    else if (solve->parsed()) report = cmd_solve(o);
    else if (price->parsed()) report = cmd_price(o);
    else if (inv->parsed()) report = cmd_invariance(o);
    else if (weak->parsed()) report = cmd_weakinfo(o);
    else if (stab->parsed()) report = cmd_stability(o);
    else report = cmd_counterexample(o);
  } catch (Falsified& f) {
    report = std::move(f.report);
    report["falsified"] = f.reason;
    err << "verdict falsified: " << f.reason << "\n";
    code = kExitFalsified;
  } catch (const LabError& e) {
    err << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::kSolverFailure: return kExitSolver;
      case ErrorCode::kMartingalePropertyViolation: return kExitFalsified;
      default: return kExitValidation;
    }
  } catch (const std::exception& e) {
    err << "Validation: " << e.what() << "\n";
    return kExitValidation;
  }

  const std::string text = report.dump(2) + "\n";
  if (o.out_path.empty()) {
    out << text;
  } else {
    try {
      write_file(o.out_path, text);
    } catch (const LabError& e) {
      err << e.what() << "\n";
      return kExitValidation;
    }
  }
  return code;
}

}  // namespace weakinfo::cli
