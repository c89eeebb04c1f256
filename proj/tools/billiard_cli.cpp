// billiard: command-line front end for sampling and the reference experiments.
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "billiard/error.hpp"
#include "billiard/experiments.hpp"

namespace ex = billiard::experiments;

namespace {

constexpr int kChecksPassed = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsageError = 2;

void print_checks(const ex::RunReport& report) {
  for (const auto& c : report.checks) {
    std::cerr << (c.passed ? "  ok    " : "  FAIL  ") << c.name << " = " << c.value << "  [" << c.lower << ", "
              << c.upper << "]\n";
  }
}

int finish(const ex::RunReport& report, ex::Format format, const std::string& out) {
  if (out.empty() || out == "-") {
    if (format == ex::Format::Json) {
      std::cout << ex::to_json(report).dump(2) << '\n';
    } else {
      std::cout << ex::to_csv(report.samples);
    }
  } else {
    ex::emit_report(report, format, out);
  }
  print_checks(report);
  return report.passed() ? kChecksPassed : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Billiard Walk and Hit-and-Run samplers"};
  app.require_subcommand(1);

  std::string body_path, sampler = "bw", out, format = "json", precondition = "none";
  std::optional<double> tau;
  std::optional<int> max_reflections;
  std::optional<std::uint64_t> samples, bo_budget;
  std::uint64_t seed = 1;
  auto* sample = app.add_subcommand("sample", "draw samples from a body described in JSON");
  sample->add_option("--body", body_path, "body description file")->required()->check(CLI::ExistingFile);
  sample->add_option("--sampler", sampler, "bw or hr")->check(CLI::IsMember({"bw", "hr"}));
  sample->add_option("--tau", tau, "mean trajectory length (default: diameter)");
  sample->add_option("--max-reflections", max_reflections, "reflection cap R (default: 10 n)");
  auto* samples_opt = sample->add_option("--samples", samples, "number of samples");
  auto* bo_opt = sample->add_option("--bo-budget", bo_budget, "boundary-oracle budget");
  samples_opt->excludes(bo_opt);
  sample->add_option("--seed", seed);
  sample->add_option("--precondition", precondition)->check(CLI::IsMember({"none", "dikin"}));
  sample->add_option("--out", out, "output path (default: stdout)");
  sample->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  std::string name;
  std::vector<std::string> params;
  std::string experiment_out;
  std::uint64_t experiment_seed = 1;
  auto* experiment = app.add_subcommand("experiment", "run a reference experiment");
  experiment->add_option("name", name)->required();
  experiment->add_option("--param", params, "k=v, repeatable");
  experiment->add_option("--seed", experiment_seed);
  experiment->add_option("--out", experiment_out, "report path (default: stdout)");

  auto* list_bodies = app.add_subcommand("list-bodies", "body types accepted by --body");
  auto* list_experiments = app.add_subcommand("list-experiments", "experiment names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*list_bodies) {
      for (const auto& t : ex::body_types()) std::cout << t << '\n';
      return 0;
    }
    if (*list_experiments) {
      for (const auto& t : ex::scenario_names()) std::cout << t << '\n';
      return 0;
    }
    if (*sample) {
      ex::SampleRequest request;
      request.body = ex::load_json(body_path);
      request.sampler = billiard::samplers::parse_sampler(sampler);
      request.tau = tau;
      request.max_reflections = max_reflections;
      if (bo_budget) {
        request.budget = billiard::samplers::Budget::bo_calls(*bo_budget);
      } else {
        request.budget = billiard::samplers::Budget::samples(samples.value_or(1000));
      }
      request.seed = seed;
      request.dikin = precondition == "dikin";
      return finish(ex::run_sampler(request), ex::parse_format(format), out);
    }
    ex::Scenario scenario{name, {}, experiment_seed};
    for (const auto& kv : params) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) {
        std::cerr << "error: --param expects k=v, got '" << kv << "'\n";
        return kUsageError;
      }
      scenario.params.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    return finish(ex::run_scenario(std::move(scenario)), ex::Format::Json, experiment_out);
  } catch (const billiard::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    const bool usage = e.kind() == billiard::ErrorKind::InvalidConfig || e.kind() == billiard::ErrorKind::Io ||
                       e.kind() == billiard::ErrorKind::InvalidDimension ||
                       e.kind() == billiard::ErrorKind::DimensionMismatch;
    return usage ? kUsageError : kCheckFailed;
  }
}
