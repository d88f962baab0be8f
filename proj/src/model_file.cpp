#include "weakinfo/model_file.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "weakinfo/error.hpp"

namespace weakinfo {
namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& what) { throw LabError(ErrorCode::kValidation, what); }

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
}

void allow_keys(const json& obj, const std::string& where, std::set<std::string> keys) {
  if (!obj.is_object()) fail(where + " must be an object");
  for (const auto& [k, v] : obj.items())
    if (!keys.count(k)) fail("unknown key '" + k + "' in " + where);
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) fail("missing '" + key + "' in " + where);
  return obj.at(key);
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(where + " must be finite");
  return d;
}

std::string string_of(const json& v, const std::string& where) {
  if (!v.is_string()) fail(where + " must be a string");
  return v.get<std::string>();
}

// Array in outcome order or object keyed by outcome label.
Eigen::VectorXd outcome_vector(const json& v, const FiniteFilteredSpace& space,
                               const std::string& where) {
  const std::size_t n = space.num_outcomes();
  Eigen::VectorXd out(static_cast<Eigen::Index>(n));
  if (v.is_array()) {
    if (v.size() != n)
      fail(where + " has " + std::to_string(v.size()) + " entries, expected " + std::to_string(n));
    for (std::size_t i = 0; i < n; ++i)
      out(static_cast<Eigen::Index>(i)) = number(v[i], where + "[" + std::to_string(i) + "]");
    return out;
  }
  if (!v.is_object()) fail(where + " must be an array or an object keyed by outcome");
  if (v.size() != n) fail(where + " must give exactly one value per outcome");
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& label = space.outcome_label(i);
    if (!v.contains(label)) fail(where + " has no entry for outcome '" + label + "'");
    out(static_cast<Eigen::Index>(i)) = number(v.at(label), where + "." + label);
  }
  return out;
}

Measure measure_of(const json& v, const FiniteFilteredSpace& space, const std::string& where) {
  return Measure(outcome_vector(v, space, where));
}

FiniteFilteredSpace space_of(const json& s) {
  allow_keys(s, "space", {"horizon", "outcomes", "edges"});
  const json& outs = require(s, "outcomes", "space");
  if (!outs.is_array()) fail("space.outcomes must be an array");
  std::vector<std::string> outcomes;
  for (const auto& o : outs) outcomes.push_back(string_of(o, "space.outcomes entry"));
  std::set<std::string> distinct(outcomes.begin(), outcomes.end());
  if (distinct.size() != outcomes.size()) fail("space.outcomes has duplicate labels");
  const json& es = require(s, "edges", "space");
  if (!es.is_array() || es.empty()) fail("space.edges must be a non-empty array");
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& e : es) {
    if (!e.is_array() || e.size() != 2) fail("each edge must be a [parent, child] pair");
    edges.emplace_back(string_of(e[0], "edge parent"), string_of(e[1], "edge child"));
  }
  FiniteFilteredSpace space = FiniteFilteredSpace::from_edges(outcomes, edges);
  const json& h = require(s, "horizon", "space");
  if (!h.is_number_integer() || h.get<int>() != space.horizon())
    fail("space.horizon does not match the depth of the tree");
  return space;
}

UtilityField utility_of(const json& v, std::size_t outcomes, const std::string& where) {
  if (v.is_string()) return parse_utility_spec(v.get<std::string>(), outcomes);
  allow_keys(v, where, {"family", "p", "a", "b"});
  const std::string family = string_of(require(v, "family", where), where + ".family");
  UtilityAtom base;
  if (family == "log") {
    if (v.contains("p")) fail(where + ": log utility takes no exponent");
    base = UtilityAtom::log();
  } else if (family == "power") {
    base = UtilityAtom::power(number(require(v, "p", where), where + ".p"));
  } else {
    fail(where + ": unknown utility family '" + family + "'");
  }
  auto per_outcome = [&](const char* key, double dflt) {
    std::vector<double> out(outcomes, dflt);
    if (!v.contains(key)) return out;
    const json& a = v.at(key);
    if (a.is_number()) {
      out.assign(outcomes, number(a, where + "." + key));
    } else if (a.is_array() && a.size() == outcomes) {
      for (std::size_t i = 0; i < outcomes; ++i) out[i] = number(a[i], where + "." + key);
    } else {
      fail(where + "." + key + " must be a number or one number per outcome");
    }
    return out;
  };
  const auto a = per_outcome("a", 1.0);
  const auto b = per_outcome("b", 0.0);
  std::vector<UtilityAtom> atoms(outcomes, base);
  for (std::size_t i = 0; i < outcomes; ++i) {
    atoms[i].scale = a[i];
    atoms[i].shift = b[i];
  }
  return UtilityField(std::move(atoms));
}

}  // namespace

const Claim& ModelFile::claim(const std::string& name) const {
  for (const auto& [n, f] : claims)
    if (n == name) return f;
  fail("unknown claim '" + name + "'");
}

const std::vector<Scenario>& ModelFile::scenario_set(const std::string& name) const {
  auto it = scenarios.find(name);
  if (it == scenarios.end()) fail("unknown scenario set '" + name + "'");
  return it->second;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

UtilityField parse_utility_spec(const std::string& spec, std::size_t outcomes) {
  if (spec == "log") return UtilityField::log(outcomes);
  if (spec.rfind("power:", 0) == 0) {
    const std::string tail = spec.substr(6);
    std::size_t used = 0;
    double p = 0.0;
    try {
      p = std::stod(tail, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != tail.size()) fail("bad power exponent in '" + spec + "'");
    return UtilityField::power(p, outcomes);
  }
  if (!spec.empty() && spec.front() == '{') return utility_of(parse_json(spec), outcomes, "utility");
  fail("utility must be 'log', 'power:<p>' or a JSON object, got '" + spec + "'");
}

std::string document_kind(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) fail("top level must be an object");
  if (!doc.contains("kind")) return "model";
  const std::string kind = string_of(doc.at("kind"), "kind");
  if (kind != "model" && kind != "counterexample_grid") fail("unknown document kind '" + kind + "'");
  return kind;
}

ModelFile parse_model(const std::string& text) {
  const json doc = parse_json(text);
  allow_keys(doc, "model file",
             {"kind", "name", "space", "base_measure", "assets", "utility", "claims", "weak_info",
              "scenarios", "perturbation"});
  if (doc.contains("kind") && doc.at("kind") != "model") fail("document is not a model file");

  FiniteFilteredSpace space = space_of(require(doc, "space", "model file"));
  const std::size_t n = space.num_outcomes();

  const json& assets = require(doc, "assets", "model file");
  if (!assets.is_array() || assets.empty()) fail("assets must be a non-empty array");
  std::vector<Eigen::VectorXd> prices;
  std::set<std::string> asset_names;
  for (const auto& a : assets) {
    allow_keys(a, "asset", {"name", "prices"});
    const std::string name = string_of(require(a, "name", "asset"), "asset name");
    if (!asset_names.insert(name).second) fail("duplicate asset '" + name + "'");
    const json& p = require(a, "prices", "asset " + name);
    if (!p.is_object()) fail("prices of asset " + name + " must be keyed by node label");
    if (p.size() != space.num_nodes())
      fail("asset " + name + " must price every node exactly once");
    Eigen::VectorXd v(static_cast<Eigen::Index>(space.num_nodes()));
    for (NodeId node = 0; node < space.num_nodes(); ++node) {
      const std::string& label = space.label(node);
      if (!p.contains(label)) fail("asset " + name + " has no price at node '" + label + "'");
      v(static_cast<Eigen::Index>(node)) = number(p.at(label), "price of " + name + " at " + label);
    }
    prices.push_back(std::move(v));
  }

  MarketModel model(space, std::move(prices));
  // Rejects arbitrage up front.
  martingale_measure_constraints(model);

  const Measure base = measure_of(require(doc, "base_measure", "model file"), space, "base_measure");
  if (!base.is_equivalent()) throw LabError(ErrorCode::kEquivalenceViolation, "base_measure has a zero atom");

  ModelFile out{.name = doc.value("name", std::string("model")),
                .model = std::move(model),
                .base_measure = base,
                .utility = doc.contains("utility") ? utility_of(doc.at("utility"), n, "utility")
                                                   : UtilityField::log(n),
                .claims = {},
                .weak_info = std::nullopt,
                .scenarios = {},
                .perturbation_start = std::nullopt};

  if (doc.contains("claims")) {
    const json& cs = doc.at("claims");
    if (!cs.is_object()) fail("claims must be an object of named payoff vectors");
    for (const auto& [name, payoff] : cs.items())
      out.claims.emplace_back(name, outcome_vector(payoff, out.model.space(), "claim " + name));
  }

  if (doc.contains("weak_info")) {
    const json& w = doc.at("weak_info");
    allow_keys(w, "weak_info", {"labels", "nu"});
    const json& ls = require(w, "labels", "weak_info");
    if (!ls.is_array() || ls.size() != n) fail("weak_info.labels needs one label per outcome");
    std::vector<std::string> names;
    std::vector<std::size_t> idx;
    for (const auto& l : ls) {
      const std::string s = string_of(l, "weak_info label");
      std::size_t k = 0;
      while (k < names.size() && names[k] != s) ++k;
      if (k == names.size()) names.push_back(s);
      idx.push_back(k);
    }
    const json& nu = require(w, "nu", "weak_info");
    if (!nu.is_object() || nu.size() != names.size())
      fail("weak_info.nu must give one weight per label");
    Eigen::VectorXd weights(static_cast<Eigen::Index>(names.size()));
    for (std::size_t k = 0; k < names.size(); ++k) {
      if (!nu.contains(names[k])) fail("weak_info.nu has no weight for label '" + names[k] + "'");
      weights(static_cast<Eigen::Index>(k)) = number(nu.at(names[k]), "weak_info.nu." + names[k]);
    }
    WeakInfoBlock block{.label_names = names,
                        .y = RandomElement(std::move(idx), names.size()),
                        .nu = Law(std::move(weights))};
    minimal_measure(out.base_measure, block.y, block.nu);  // equivalence check
    out.weak_info = std::move(block);
  }

  if (doc.contains("scenarios")) {
    const json& sets = doc.at("scenarios");
    if (!sets.is_object()) fail("scenarios must map set names to scenario lists");
    for (const auto& [set_name, list] : sets.items()) {
      if (!list.is_array() || list.empty()) fail("scenario set '" + set_name + "' must be a non-empty array");
      std::vector<Scenario> scen;
      for (const auto& s : list) {
        const std::string where = "scenario in '" + set_name + "'";
        allow_keys(s, where, {"x", "utility", "measure"});
        const double x = s.contains("x") ? number(s.at("x"), where + ".x") : 1.0;
        if (!(x > 0.0)) fail(where + ": x must be positive");
        UtilityField u = s.contains("utility") ? utility_of(s.at("utility"), n, where + ".utility")
                                               : out.utility;
        Measure p = s.contains("measure")
                        ? measure_of(s.at("measure"), out.model.space(), where + ".measure")
                        : out.base_measure;
        if (!p.is_equivalent())
          throw LabError(ErrorCode::kEquivalenceViolation, where + ": measure has a zero atom");
        scen.push_back({x, std::move(u), std::move(p)});
      }
      out.scenarios.emplace(set_name, std::move(scen));
    }
  }

  if (doc.contains("perturbation")) {
    const json& pb = doc.at("perturbation");
    allow_keys(pb, "perturbation", {"start_measure"});
    Measure start = measure_of(require(pb, "start_measure", "perturbation"), out.model.space(),
                               "perturbation.start_measure");
    if (!start.is_equivalent())
      throw LabError(ErrorCode::kEquivalenceViolation, "perturbation.start_measure has a zero atom");
    out.perturbation_start = std::move(start);
  }
  return out;
}

GridFile parse_grid(const std::string& text) {
  const json doc = parse_json(text);
  allow_keys(doc, "grid file",
             {"kind", "name", "which", "n", "cutoffs", "panels", "series_terms", "p", "sharpe",
              "expect"});
  if (string_of(require(doc, "kind", "grid file"), "kind") != "counterexample_grid")
    fail("document is not a counterexample grid");
  GridFile g;
  g.name = doc.value("name", std::string("grid"));
  const std::string which = string_of(require(doc, "which", "grid file"), "which");
  if (which == "assumption_asUI1")
    g.which = Counterexample::kAsUI1;
  else if (which == "assumption_asUI")
    g.which = Counterexample::kAsUI;
  else
    fail("which must be assumption_asUI1 or assumption_asUI");
  const json& nv = require(doc, "n", "grid file");
  if (!nv.is_number_integer() || nv.get<int>() < 1) fail("n must be a positive integer");
  g.n = nv.get<int>();
  if (doc.contains("cutoffs")) {
    const json& c = doc.at("cutoffs");
    if (!c.is_array() || c.size() < 2) fail("cutoffs must list at least two levels");
    g.grid.cutoffs.clear();
    for (const auto& m : c) {
      const double v = number(m, "cutoff");
      if (!(v > 0.0)) fail("cutoffs must be positive");
      if (!g.grid.cutoffs.empty() && !(v > g.grid.cutoffs.back())) fail("cutoffs must increase");
      g.grid.cutoffs.push_back(v);
    }
  }
  if (doc.contains("panels")) {
    const json& p = doc.at("panels");
    if (!p.is_number_integer() || p.get<long long>() < 2) fail("panels must be an integer >= 2");
    g.grid.panels = p.get<std::size_t>();
  }
  if (doc.contains("series_terms")) {
    const json& p = doc.at("series_terms");
    if (!p.is_number_integer() || p.get<long long>() < 1) fail("series_terms must be an integer >= 1");
    g.grid.series_terms = p.get<std::size_t>();
  }
  if (doc.contains("p")) {
    g.grid.p = number(doc.at("p"), "p");
    if (!(g.grid.p > 0.5 && g.grid.p < 1.0)) fail("p must lie in (1/2, 1)");
  }
  if (doc.contains("sharpe")) g.grid.sharpe = number(doc.at("sharpe"), "sharpe");
  if (doc.contains("expect")) {
    const std::string e = string_of(doc.at("expect"), "expect");
    if (e != "diverge" && e != "bounded") fail("expect must be 'diverge' or 'bounded'");
    g.expect_divergence = e == "diverge";
  }
  return g;
}

}  // namespace weakinfo
