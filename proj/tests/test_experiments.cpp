#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "billiard/error.hpp"
#include "billiard/experiments.hpp"

using namespace billiard;
using namespace billiard::experiments;

namespace {

std::filesystem::path scratch(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("billiard_test_" + name);
}

Json without_wall_time(Json j) {
  j.erase("wall_seconds");
  return j;
}

}  // namespace

TEST_CASE("real parsing") {
  CHECK(parse_real("0.25") == 0.25);
  CHECK(parse_real("pi") == doctest::Approx(std::numbers::pi));
  CHECK(parse_real("pi/4") == doctest::Approx(std::numbers::pi / 4));
  CHECK(parse_real("2*pi") == doctest::Approx(2 * std::numbers::pi));
  CHECK(parse_real("1e-3") == 1e-3);
  CHECK_THROWS_AS(parse_real("four"), Error);
}

TEST_CASE("parameters") {
  Params p;
  p.set("n", "3");
  p.set("alpha", "pi/2");
  p.set("steps", "1,2,5");
  CHECK(p.integer("n", 1) == 3);
  CHECK(p.real("alpha", 0) == doctest::Approx(std::numbers::pi / 2));
  CHECK(p.reals("steps", {}) == std::vector<double>{1, 2, 5});
  CHECK(p.text("profile", "literal") == "literal");
  CHECK(p.resolved().at("profile") == "literal");
  CHECK_NOTHROW(p.reject_unused());
  p.set("typo", "1");
  CHECK_THROWS_AS(p.reject_unused(), Error);
}

TEST_CASE("bodies from json") {
  CHECK(std::holds_alternative<geometry::UnitCubeDesc>(body_from_json(Json{{"type", "cube"}, {"n", 4}})));
  const auto angle = body_from_json(Json{{"type", "angle"}, {"alpha", "pi/4"}});
  REQUIRE(std::holds_alternative<geometry::AngleTriangleDesc>(angle));
  CHECK(std::get<geometry::AngleTriangleDesc>(angle).alpha == doctest::Approx(std::numbers::pi / 4));
  const auto poly = body_from_json(Json::parse(R"({"type":"polytope","A":[[1,0],[-1,0],[0,1],[0,-1]],"b":[1,1,1,1]})"));
  REQUIRE(std::holds_alternative<geometry::PolytopeDesc>(poly));
  CHECK(std::get<geometry::PolytopeDesc>(poly).A.rows() == 4);
  CHECK_THROWS_AS(body_from_json(Json{{"type", "klein_bottle"}}), Error);
  CHECK_THROWS_AS(body_from_json(Json{{"n", 3}}), Error);
  for (const auto& t : body_types()) CHECK_FALSE(t.empty());
}

TEST_CASE("reports round trip") {
  SampleRequest request;
  request.body = Json{{"type", "simplex"}, {"n", 3}};
  request.budget = samplers::Budget::samples(3);
  request.seed = 5;
  const auto report = run_sampler(request);
  REQUIRE(report.samples.size() == 3);

  const auto json_path = scratch("report.json");
  emit_report(report, Format::Json, json_path);
  std::ifstream in(json_path);
  const Json j = Json::parse(in);
  CHECK(j.at("samples").size() == 3);
  CHECK(j.at("bo_calls") == report.bo_calls);
  CHECK(j.at("config").at("seed") == 5);

  const auto csv_path = scratch("samples.csv");
  emit_report(report, Format::Csv, csv_path);
  const auto back = read_samples_csv(csv_path);
  REQUIRE(back.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(back[i] == report.samples[i]);
  std::filesystem::remove(json_path);
  std::filesystem::remove(csv_path);

  RunReport empty;
  empty.scenario = "custom";
  CHECK(Json::parse(to_json(empty).dump()).at("samples").empty());
  CHECK(to_csv({}).find("index") == 0);
  CHECK(parse_format("csv") == Format::Csv);
  CHECK_THROWS_AS(parse_format("xml"), Error);
}

TEST_CASE("sampling is deterministic") {
  SampleRequest request;
  request.body = Json{{"type", "box"}, {"lower", {0, 0}}, {"upper", {2, 1}}};
  request.budget = samplers::Budget::bo_calls(500);
  const auto a = to_json(run_sampler(request));
  const auto b = to_json(run_sampler(request));
  CHECK(without_wall_time(a).dump() == without_wall_time(b).dump());
  request.seed = 2;
  CHECK(without_wall_time(to_json(run_sampler(request))).dump() != without_wall_time(a).dump());

  request.dikin = true;
  request.body = Json::parse(R"({"type":"polytope","A":[[1,0],[-1,0],[0,1],[0,-1]],"b":[10,0,0.1,0]})");
  request.budget = samplers::Budget::samples(200);
  const auto rounded = run_sampler(request);
  for (const auto& x : rounded.samples) {
    CHECK(x[0] > 0.0);
    CHECK(x[0] < 10.0);
    CHECK(x[1] > 0.0);
    CHECK(x[1] < 0.1);
  }
}

TEST_CASE("scenarios") {
  const auto names = scenario_names();
  CHECK(std::find(names.begin(), names.end(), "angle") != names.end());
  CHECK_THROWS_AS(run_scenario({"nonexistent", {}, 1}), Error);

  Scenario angle{"angle", {}, 3};
  angle.params.set("trials", "200");
  angle.params.set("bound_trials", "50");
  angle.params.set("law_trials", "200");
  const auto first = to_json(run_scenario(angle));
  const auto second = to_json(run_scenario(angle));
  CHECK(without_wall_time(first).dump() == without_wall_time(second).dump());
  CHECK(first.at("parameters").at("trials") == 200);

  Scenario typo{"cube", {}, 1};
  typo.params.set("dimension", "3");
  CHECK_THROWS_AS(run_scenario(typo), Error);
}
