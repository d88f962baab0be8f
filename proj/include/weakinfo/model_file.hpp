#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weakinfo/market.hpp"
#include "weakinfo/pricing.hpp"
#include "weakinfo/preferences.hpp"
#include "weakinfo/prob_space.hpp"
#include "weakinfo/stability_lab.hpp"
#include "weakinfo/weak_info.hpp"

namespace weakinfo {

struct WeakInfoBlock {
  std::vector<std::string> label_names;  // in order of first appearance
  RandomElement y;
  Law nu;
};

struct ModelFile {
  std::string name;
  MarketModel model;
  Measure base_measure;
  UtilityField utility;  // log when the file has no utility block
  std::vector<std::pair<std::string, Claim>> claims;  // file order
  std::optional<WeakInfoBlock> weak_info;
  std::map<std::string, std::vector<Scenario>> scenarios;
  std::optional<Measure> perturbation_start;

  // Throws kValidation for an unknown name.
  const Claim& claim(const std::string& name) const;
  const std::vector<Scenario>& scenario_set(const std::string& name) const;
};

struct GridFile {
  std::string name;
  Counterexample which = Counterexample::kAsUI1;
  int n = 2;
  GaussianGridSpec grid;
  bool expect_divergence = true;
};

// Every schema or model-construction problem surfaces as a LabError; the
// codes other than kSolverFailure are validation failures.
ModelFile parse_model(const std::string& text);
GridFile parse_grid(const std::string& text);

// "model" or "counterexample_grid", from the optional "kind" field.
std::string document_kind(const std::string& text);

std::string read_text_file(const std::string& path);

// "log", "power:<p>" or a JSON utility object, for `outcomes` outcomes.
UtilityField parse_utility_spec(const std::string& spec, std::size_t outcomes);

}  // namespace weakinfo
