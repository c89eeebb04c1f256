#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "billiard/geometry.hpp"
#include "billiard/samplers.hpp"
#include "billiard/types.hpp"
#include "json.hpp"

namespace billiard::experiments {

using Json = nlohmann::json;

/// Scenario parameters as given on the command line (k=v). Values are
/// parsed on first use; reals accept forms like "pi/4" or "2*pi".
class Params {
 public:
  Params() = default;
  explicit Params(std::map<std::string, std::string> raw) : raw_(std::move(raw)) {}

  void set(const std::string& key, const std::string& value) { raw_[key] = value; }
  bool has(const std::string& key) const { return raw_.count(key) != 0; }

  double real(const std::string& key, double fallback);
  std::int64_t integer(const std::string& key, std::int64_t fallback);
  std::string text(const std::string& key, const std::string& fallback);
  std::vector<double> reals(const std::string& key, const std::vector<double>& fallback);

  /// Every key read so far with the value actually used.
  const Json& resolved() const { return resolved_; }
  /// Throws InvalidConfig naming any supplied key that was never read.
  void reject_unused() const;

 private:
  std::map<std::string, std::string> raw_;
  std::set<std::string> used_;
  Json resolved_ = Json::object();
};

double parse_real(const std::string& text);

struct Scenario {
  std::string name;
  Params params;
  std::uint64_t seed = 1;
};

struct Check {
  std::string name;
  double value = 0.0;
  std::optional<double> expected;
  double lower = 0.0;  // accepted interval, closed
  double upper = 0.0;
  bool passed = false;
};

/// value within expected +- tolerance.
Check near(std::string name, double value, double expected, double tolerance);
/// value within [lower, upper].
Check within(std::string name, double value, double lower, double upper);

struct RunReport {
  std::string scenario;
  Json parameters = Json::object();
  Json config = Json::object();  // tau, R, seed, generator
  std::uint64_t seed = 0;
  std::vector<Vector> samples;   // retained samples, may be empty
  std::uint64_t bo_calls = 0;
  std::vector<int> reflections;  // per retained BW sample
  Json diagnostics = Json::object();
  std::vector<Check> checks;
  double wall_seconds = 0.0;

  bool passed() const;
};

std::vector<std::string> scenario_names();
RunReport run_scenario(Scenario scenario);

// ---------------------------------------------------------------------------
// Plain sampling on a user-described body

struct SampleRequest {
  Json body;  // body description, see body_from_json
  samplers::SamplerKind sampler = samplers::SamplerKind::BilliardWalk;
  std::optional<double> tau;
  std::optional<int> max_reflections;
  samplers::Budget budget = samplers::Budget::samples(1000);
  std::uint64_t seed = 1;
  bool dikin = false;  // sample the rounded polytope, report original coordinates
};

RunReport run_sampler(const SampleRequest& request);

// ---------------------------------------------------------------------------
// Bodies and reports on disk

std::vector<std::string> body_types();
geometry::BodyDescriptor body_from_json(const Json& description);
Json load_json(const std::filesystem::path& path);

enum class Format { Json, Csv };
Format parse_format(const std::string& name);

Json to_json(const RunReport& report);
std::string to_csv(const std::vector<Vector>& samples);
void emit_report(const RunReport& report, Format format, const std::filesystem::path& path);
std::vector<Vector> read_samples_csv(const std::filesystem::path& path);

}  // namespace billiard::experiments
