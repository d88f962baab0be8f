#include "doctest.h"

#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "weakinfo");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = weakinfo::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string path(const std::string& rel) { return std::string(WEAKINFO_DATA_DIR) + "/" + rel; }

}  // namespace

TEST_CASE("validate bundled and malformed files") {
  for (const char* f : {"models/trinomial.json", "models/binomial.json", "models/two_factor.json",
                        "models/binomial_tree.json", "grids/asui1.json", "grids/asui.json",
                        "grids/asui1_control.json"}) {
    CAPTURE(f);
    CHECK(invoke({"validate", path(f)}).code == weakinfo::cli::kExitOk);
  }
  for (const char* f : {"arbitrage", "claim_wrong_length", "cycle", "horizon_mismatch", "measure_not_normalized",
                        "missing_node_price", "negative_price", "nu_not_equivalent", "truncated",
                        "utility_p_too_large"}) {
    CAPTURE(f);
    auto r = invoke({"validate", path(std::string("malformed/") + f + ".json")});
    CHECK(r.code == weakinfo::cli::kExitValidation);
    CHECK_FALSE(r.err.empty());
  }
}

TEST_CASE("usage errors") {
  CHECK(invoke({}).code == weakinfo::cli::kExitUsage);
  CHECK(invoke({"frobnicate"}).code == weakinfo::cli::kExitUsage);
  CHECK(invoke({"price", path("models/trinomial.json")}).code == weakinfo::cli::kExitUsage);
  CHECK(invoke({"price", path("models/trinomial.json"), "--claim", "nope"}).code == weakinfo::cli::kExitValidation);
}

TEST_CASE("price report") {
  auto r = invoke({"price", path("models/trinomial.json"), "--claim", "f1"});
  REQUIRE(r.code == weakinfo::cli::kExitOk);
  CHECK(r.out.find("\"price\": 0.222222222222") != std::string::npos);
  CHECK(r.out.find("\"singleton\": true") != std::string::npos);
  auto again = invoke({"price", path("models/trinomial.json"), "--claim", "f1"});
  CHECK(again.out == r.out);
}

TEST_CASE("solve and invariance") {
  auto s = invoke({"solve", path("models/trinomial.json"), "--dump-constraints"});
  CHECK(s.code == weakinfo::cli::kExitOk);
  auto i = invoke({"invariance", path("models/binomial.json"), "--scenario-set", "panel", "--claim", "f"});
  CHECK(i.code == weakinfo::cli::kExitOk);
  auto rnd = invoke({"invariance", path("models/trinomial.json"), "--scenario-set", "panel", "--seed", "7",
                     "--random-claims", "5"});
  CHECK(rnd.code == weakinfo::cli::kExitOk);
  CHECK(rnd.out == invoke({"invariance", path("models/trinomial.json"), "--scenario-set", "panel", "--seed", "7",
                           "--random-claims", "5"}).out);
}

TEST_CASE("counterexample verdicts") {
  CHECK(invoke({"counterexample", path("grids/asui1_control.json")}).code == weakinfo::cli::kExitOk);
  CHECK(invoke({"counterexample", path("grids/asui.json")}).code == weakinfo::cli::kExitOk);
  CHECK(invoke({"stability", "--experiment", "two-factor"}).code == weakinfo::cli::kExitOk);
}

TEST_CASE("weak information value") {
  auto r = invoke({"weakinfo", path("models/binomial.json")});
  REQUIRE(r.code == weakinfo::cli::kExitOk);
  CHECK(r.out.find("0.1483") != std::string::npos);
}
