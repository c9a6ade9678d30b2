// korops: scenario runner and lemma verification for differences of
// composition operators on weighted spaces over H^n.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "korops/calibration.hpp"
#include "korops/error.hpp"
#include "korops/harness.hpp"
#include "korops/version.hpp"

namespace {

struct RunFlags {
  std::uint64_t seed = 0;
  int starts = 0;
  int refine_steps = 0;
  double threshold = 0.0;
  double epsilon_compact = 0.0;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* starts_opt = nullptr;
  CLI::Option* refine_opt = nullptr;
  CLI::Option* threshold_opt = nullptr;
  CLI::Option* eps_opt = nullptr;

  korops::CfgOverrides overrides() const {
    korops::CfgOverrides o;
    if (seed_opt->count()) o.seed = seed;
    if (starts_opt->count()) o.starts = starts;
    if (refine_opt->count()) o.refine_steps = refine_steps;
    if (threshold_opt->count()) o.threshold = threshold;
    if (eps_opt->count()) o.epsilon_compact = epsilon_compact;
    return o;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"korops " KOROPS_VERSION};
  app.set_version_flag("--version", std::string(KOROPS_VERSION));
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "Run the criteria on a scenario and write a report");
  std::string scenario_path;
  std::string builtin;
  std::string out_path;
  std::string format = "json";
  bool no_wall_clock = false;
  RunFlags rf;
  auto* path_opt = check->add_option("scenario", scenario_path, "Scenario file");
  auto* builtin_opt = check->add_option("--builtin", builtin, "Built-in scenario name");
  path_opt->excludes(builtin_opt);
  rf.seed_opt = check->add_option("--seed", rf.seed, "RNG seed");
  rf.starts_opt = check->add_option("--starts", rf.starts, "Multi-start count")
                      ->check(CLI::PositiveNumber);
  rf.refine_opt = check->add_option("--refine-steps", rf.refine_steps, "Simplex iterations per start")
                      ->check(CLI::NonNegativeNumber);
  rf.threshold_opt = check->add_option("--threshold", rf.threshold, "Unboundedness threshold T");
  rf.eps_opt = check->add_option("--epsilon-compact", rf.epsilon_compact, "Compactness epsilon");
  check->add_option("--out", out_path, "Report path (stdout summary only when omitted)");
  check->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  check->add_flag("--no-wall-clock", no_wall_clock, "Report wall_ms = 0 for byte-stable output");

  auto* verify = app.add_subcommand("verify-lemmas", "Run the lemma and inequality suites");
  korops::VerifyOptions vopts;
  verify->add_option("--seed", vopts.seed, "RNG seed");
  verify->add_option("--samples", vopts.samples, "Samples per ratio suite")->check(CLI::Range(100LL, 1LL << 40));
  verify->add_option("--inequality-samples", vopts.inequality_samples,
                     "Samples per inequality suite")
      ->check(CLI::Range(100LL, 1LL << 40));

  app.add_subcommand("scenarios", "List built-in scenarios with ground truths");

  auto* calibrate = app.add_subcommand("calibrate", "Regenerate the lemma calibration fixture");
  long long cal_samples = korops::kCalibrationSamples;
  std::string cal_out;
  calibrate->add_option("--samples", cal_samples, "Samples per case")->check(CLI::Range(100LL, 1LL << 40));
  calibrate->add_option("--out", cal_out, "Output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) {
      korops::Scenario sc;
      if (builtin_opt->count()) {
        const auto found = korops::find_builtin(builtin);
        if (!found) {
          std::cerr << "error: unknown built-in scenario '" << builtin << "'\n";
          return korops::kExitError;
        }
        sc = *found;
      } else if (path_opt->count()) {
        sc = korops::load_scenario(scenario_path);
      } else {
        std::cerr << "error: give a scenario file or --builtin <name>\n";
        return korops::kExitError;
      }
      korops::CheckOptions opts;
      opts.flags = rf.overrides();
      opts.wall_clock = !no_wall_clock;
      const auto report = korops::run_check(sc, opts);
      korops::print_summary(report, std::cout);
      if (!out_path.empty()) {
        const auto fmt = format == "csv" ? korops::ReportFormat::Csv : korops::ReportFormat::Json;
        korops::write_atomically(out_path, korops::render_report(report, fmt));
      }
      return korops::exit_code_for(report);
    }
    if (verify->parsed()) return korops::cmd_verify_lemmas(vopts, std::cout);
    if (calibrate->parsed()) {
      std::vector<korops::LemmaStats> stats;
      for (const auto& id : korops::lemma_case_ids()) {
        stats.push_back(korops::run_lemma_case(id, cal_samples, korops::kCalibrationSeed));
        std::cout << id << "  " << stats.back().max_ratio << "\n";
      }
      korops::write_atomically(
          cal_out, korops::calibration_to_json(stats, cal_samples, korops::kCalibrationSeed));
      return korops::kExitOk;
    }
    korops::cmd_scenarios_list(std::cout);
    return korops::kExitOk;
  } catch (const korops::ParseError& e) {
    std::cerr << "error: " << e.what() << " (component " << e.component() + 1 << ", position "
              << e.position() << ")\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return korops::kExitError;
}
