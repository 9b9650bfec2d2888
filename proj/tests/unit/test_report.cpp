#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "isbst/analysis/report.hpp"
#include "isbst/core/codec.hpp"
#include "isbst/core/errors.hpp"
#include "support/generators.hpp"

using namespace isbst;
using namespace isbst::analysis;
namespace fs = std::filesystem;

namespace {

BehaviorSample random_sample(std::string label, std::uint64_t seed, double weight_shift = 0.0) {
  Rng rng(seed);
  BehaviorSample s{std::move(label), {}};
  for (int i = 0; i < 100; ++i) {
    Behavior b;
    b.num_clusters = 2 + static_cast<double>(rng.index(9));
    b.num_iterations = 1 + static_cast<double>(rng.index(20));
    b.mean_silhouette = rng.uniform(0, 1);
    b.silhouette_range = rng.uniform(0, 1.5);
    b.mean_weight = rng.uniform(6, 30) + weight_shift;
    b.weights_range = rng.uniform(0, 40);
    s.rows.push_back(b);
  }
  return s;
}

}  // namespace

TEST_CASE("a sample compared with itself shows no difference", "[report]") {
  const auto s = random_sample("x", 1);
  const auto r = compare_populations(s, s);
  REQUIRE(r.rows.size() == kNumObjectives);
  for (const auto& row : r.rows) {
    CHECK(row.test.p_value == Catch::Approx(1.0).margin(1e-9));
    CHECK(row.effect.a == 0.5);
    CHECK(row.effect.magnitude == EffectMagnitude::Negligible);
    CHECK(row.median_a == row.median_b);
  }
}

TEST_CASE("a shift in one objective shows up only there", "[report]") {
  const auto a = random_sample("a", 2);
  BehaviorSample b = a;
  b.label = "b";
  for (auto& row : b.rows) row.mean_weight += 15.0;
  const auto r = compare_populations(a, b, "exported");
  CHECK(r.scope == "exported");
  CHECK(r.n_a == 100);
  CHECK(r.n_b == 100);
  for (const auto& row : r.rows) {
    if (row.objective == Objective::MeanWeight) {
      CHECK(row.test.p_value < 1e-6);
      CHECK(row.effect.a < 0.5);
      CHECK(row.effect.magnitude == EffectMagnitude::Large);
    } else {
      CHECK(row.test.p_value == Catch::Approx(1.0).margin(1e-9));
    }
  }
  CHECK(r.row(Objective::MeanWeight).median_b - r.row(Objective::MeanWeight).median_a == Catch::Approx(15.0));
}

TEST_CASE("median of odd and even samples", "[report]") {
  CHECK(median({3, 1, 2}) == 2.0);
  CHECK(median({4, 1, 3, 2}) == 2.5);
  CHECK_THROWS_AS(median({}), ValidationError);
}

TEST_CASE("CSV and JSON reports carry every column", "[report]") {
  const auto r = compare_populations(random_sample("isbst", 3), random_sample("null", 4, 5.0));
  const std::string csv = to_csv(r);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "objective,n_a,n_b,median_a,median_b,u,p_value,exact,a_measure,magnitude");
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 9);
  }
  CHECK(rows == 6);
  CHECK(csv.find("mean_weight,100,100,") != std::string::npos);

  const Json j = to_json(r);
  CHECK(j["sample_a"] == "isbst");
  CHECK(j["sample_b"] == "null");
  CHECK(j["objectives"].size() == 6);
  CHECK(j["objectives"][4]["objective"] == "mean_weight");
  CHECK(j["objectives"][4].contains("p_value"));
  CHECK(j["objectives"][4].contains("a_measure"));
}

TEST_CASE("samples load from candidate arrays and replay output", "[report][io]") {
  const fs::path dir = fs::temp_directory_path() / "isbst-test-report";
  fs::remove_all(dir);
  fs::create_directories(dir);
  Rng rng(5);
  Json arr = Json::array();
  for (int i = 0; i < 5; ++i) arr.push_back(to_json(testing::random_candidate(rng)));
  std::ofstream(dir / "exported.json") << arr.dump();
  std::ofstream(dir / "replay.json") << Json{{"final_population", arr}}.dump();
  Json behaviors = Json::array();
  for (const auto& c : arr) behaviors.push_back(c["behavior"]);
  std::ofstream(dir / "bare.json") << behaviors.dump();

  const auto a = load_sample(dir / "exported.json");
  CHECK(a.label == "exported");
  CHECK(a.rows.size() == 5);
  const auto b = load_sample(dir / "replay.json", "null");
  CHECK(b.label == "null");
  CHECK(b.rows == a.rows);
  CHECK(load_sample(dir / "bare.json").rows == a.rows);

  std::ofstream(dir / "empty.json") << "[]";
  CHECK_THROWS_AS(load_sample(dir / "empty.json"), ValidationError);
  std::ofstream(dir / "odd.json") << R"({"something": 1})";
  CHECK_THROWS_AS(load_sample(dir / "odd.json"), ValidationError);
  fs::remove_all(dir);
}
