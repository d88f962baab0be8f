#include "doctest.h"

#include <string>

#include "weakinfo/error.hpp"
#include "weakinfo/model_file.hpp"

using namespace weakinfo;

namespace {

std::string data(const std::string& rel) { return read_text_file(std::string(WEAKINFO_DATA_DIR) + "/" + rel); }

const char* kMinimal = R"({
  "name": "mini",
  "space": {"horizon": 1, "outcomes": ["u", "d"], "edges": [["r", "u"], ["r", "d"]]},
  "base_measure": {"u": 0.5, "d": 0.5},
  "assets": [{"name": "S", "prices": {"r": 1, "u": 2, "d": 0.5}}],
  "claims": {"digital": [1, 0]}
})";

}  // namespace

TEST_CASE("bundled models load") {
  for (const char* f : {"models/trinomial.json", "models/binomial.json", "models/two_factor.json",
                        "models/binomial_tree.json"}) {
    CAPTURE(f);
    const std::string text = data(f);
    CHECK(document_kind(text) == "model");
    CHECK_NOTHROW(parse_model(text));
  }
  auto tri = parse_model(data("models/trinomial.json"));
  CHECK(tri.model.num_outcomes() == 3);
  CHECK_FALSE(is_complete(tri.model));
  CHECK(tri.claims.front().first == "f1");
  CHECK(tri.scenario_set("panel").size() == 6);
  CHECK_THROWS_AS(tri.claim("nope"), LabError);

  auto bin = parse_model(data("models/binomial.json"));
  REQUIRE(bin.weak_info.has_value());
  CHECK(bin.weak_info->nu[0] == doctest::Approx(0.6));
  CHECK(bin.weak_info->label_names == std::vector<std::string>{"high", "low"});
  CHECK(is_complete(bin.model));
}

TEST_CASE("minimal document with defaults") {
  auto m = parse_model(kMinimal);
  CHECK(m.name == "mini");
  CHECK(m.utility.describe() == "log");
  CHECK(m.claim("digital")(0) == 1.0);
  CHECK_FALSE(m.weak_info.has_value());
  CHECK(m.scenarios.empty());
}

TEST_CASE("rejections") {
  std::string extra = kMinimal;
  extra.insert(1, "\"bogus\": 1,");
  CHECK_THROWS_AS(parse_model(extra), LabError);
  CHECK_THROWS_AS(parse_model("{\"name\": "), LabError);
  CHECK_THROWS_AS(parse_model("[]"), LabError);
  for (const char* f : {"arbitrage", "claim_wrong_length", "cycle", "horizon_mismatch", "measure_not_normalized",
                        "missing_node_price", "negative_price", "nu_not_equivalent", "truncated",
                        "utility_p_too_large"}) {
    CAPTURE(f);
    CHECK_THROWS_AS(parse_model(data(std::string("malformed/") + f + ".json")), LabError);
  }
  CHECK_THROWS_AS(read_text_file("/nonexistent/file.json"), LabError);
}

TEST_CASE("utility specs") {
  CHECK(parse_utility_spec("log", 3).describe() == "log");
  CHECK(parse_utility_spec("power:0.5", 3).atom(2).p == 0.5);
  CHECK(parse_utility_spec("power:-1", 2).atom(0).p == -1.0);
  CHECK_THROWS_AS(parse_utility_spec("power:1.5", 2), LabError);
  CHECK_THROWS_AS(parse_utility_spec("exp", 2), LabError);
}

TEST_CASE("grid files") {
  auto g = parse_grid(data("grids/asui1.json"));
  CHECK(g.which == Counterexample::kAsUI1);
  CHECK(g.expect_divergence);
  CHECK(document_kind(data("grids/asui1.json")) == "counterexample_grid");
  auto c = parse_grid(data("grids/asui1_control.json"));
  CHECK_FALSE(c.expect_divergence);
  CHECK(parse_grid(data("grids/asui.json")).which == Counterexample::kAsUI);
}
