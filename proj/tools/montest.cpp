// montest: experiment runner for the monotonicity-testing library.
//
//   montest run manifest.json [--seed S] [--workers W]
//   montest distance function.json
//   montest ns function.json --delta D [--trials T --seed S]
//   montest calibrate --delta D --size N --trials T [--seed S] [--manifest M]
//   montest generate --family F --n N [--seed S] [--out file]
//   montest audit runs.csv --band B

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "montest/estimators.hpp"
#include "montest/exact_oracles.hpp"
#include "montest/experiment.hpp"
#include "montest/parallel.hpp"

namespace {

using nlohmann::json;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw montest::Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw montest::Error("cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monotonicity testers, adversarial families and exact oracles on the Boolean hypercube"};
  app.set_version_flag("--version", montest::artifact_version());
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Execute a manifest; writes <output>.csv and <output>.summary.json");
  std::string manifest_path;
  std::optional<std::uint64_t> seed_override;
  std::size_t workers = 0;
  run->add_option("manifest", manifest_path, "Manifest JSON")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", seed_override, "Override the manifest's master seed");
  run->add_option("--workers", workers, "Worker threads (default: MONTEST_WORKERS or hardware)");

  // distance
  auto* distance = app.add_subcommand("distance", "Exact distance to monotone of a function file (n <= 20)");
  std::string function_path;
  distance->add_option("function", function_path, "Function JSON")->required()->check(CLI::ExistingFile);

  // ns
  auto* ns = app.add_subcommand("ns", "Noise sensitivity of a function file");
  std::string ns_path;
  double ns_delta = 0.0;
  std::uint64_t ns_trials = 0;
  std::uint64_t ns_seed = 1;
  ns->add_option("function", ns_path, "Function JSON")->required()->check(CLI::ExistingFile);
  ns->add_option("--delta", ns_delta, "Noise rate")->required()->check(CLI::Range(0.0, 1.0));
  ns->add_option("--trials", ns_trials, "Monte-Carlo trials (0: exact only)");
  ns->add_option("--seed", ns_seed, "Seed for Monte-Carlo");

  // calibrate
  auto* calibrate = app.add_subcommand("calibrate", "Calibrate kappa for the bisection-process bounds");
  double cal_delta = 0.125;
  std::uint64_t cal_size = 1ULL << 16;
  std::uint64_t cal_trials = 100000;
  std::uint64_t cal_seed = 1;
  std::string cal_manifest;
  calibrate->add_option("--delta", cal_delta, "Failure probability")->check(CLI::Range(0.0, 1.0));
  calibrate->add_option("--size", cal_size, "Initial set size |S_0|");
  calibrate->add_option("--trials", cal_trials, "Runs per strategy");
  calibrate->add_option("--seed", cal_seed, "Seed");
  calibrate->add_option("--manifest", cal_manifest, "Store the result under \"calibration\" in this manifest");

  // generate
  auto* generate = app.add_subcommand("generate", "Sample a function and emit its JSON document");
  std::string gen_family = "talagrand";
  std::size_t gen_n = 16;
  std::uint64_t gen_seed = 1;
  std::uint64_t gen_cap = montest::kDefaultClauseCap;
  std::optional<double> gen_truncate;
  std::string gen_out;
  generate->add_option("--family", gen_family, "ltf | ltf_no | talagrand | tal_pm | monotone_table | random_table");
  generate->add_option("--n", gen_n, "Dimension")->required();
  generate->add_option("--seed", gen_seed, "Seed");
  generate->add_option("--clause-cap", gen_cap, "Talagrand clause cap");
  generate->add_option("--truncate", gen_truncate, "Wrap in a delta-truncation");
  generate->add_option("--out", gen_out, "Output file (default stdout)");

  // audit
  auto* audit = app.add_subcommand("audit", "Balance audit over a RunRecord CSV");
  std::string audit_path;
  double band = 4.0;
  audit->add_option("csv", audit_path, "RunRecord CSV")->required()->check(CLI::ExistingFile);
  audit->add_option("--band", band, "Band half-width in units of sqrt(n)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      montest::Manifest m = montest::load_manifest(slurp(manifest_path));
      if (seed_override) m.seed = *seed_override;
      const auto summary = montest::cmd_run(m, workers > 0 ? workers : montest::default_workers());
      if (m.output.empty()) {
        std::cout << summary.csv;
      } else {
        std::cout << summary.json;
      }
    } else if (*distance) {
      const auto f = montest::deserialize(slurp(function_path));
      std::cout << montest::distance_report_json(montest::cmd_distance(*f)) << '\n';
    } else if (*ns) {
      const auto f = montest::deserialize(slurp(ns_path));
      json doc = {{"n", f->n()}, {"delta", ns_delta}};
      if (f->n() <= montest::kMaxFlowDimension) {
        doc["exact"] = montest::noise_sensitivity_exact(montest::TruthTable::tabulate(*f), ns_delta);
      }
      if (ns_trials > 0) {
        montest::Rng rng(ns_seed);
        const auto e = montest::ns_monte_carlo(*f, ns_delta, ns_trials, rng);
        doc["estimate"] = {{"value", e.value}, {"half_width", e.half_width}, {"trials", e.trials}};
      }
      std::cout << doc.dump(2) << '\n';
    } else if (*calibrate) {
      const auto c = montest::cmd_calibrate(cal_delta, cal_size, cal_trials, cal_seed);
      json rec = {{"delta", c.delta}, {"size", c.size}, {"trials", c.trials}, {"kappa", c.kappa}};
      if (!cal_manifest.empty()) {
        json doc = json::object();
        std::ifstream existing(cal_manifest);
        if (existing) doc = json::parse(existing);
        doc["calibration"] = rec;
        emit(doc.dump(2) + "\n", cal_manifest);
      }
      std::cout << rec.dump(2) << '\n';
    } else if (*generate) {
      montest::FamilySpec family;
      family.kind = gen_family;
      family.clause_cap = gen_cap;
      if (gen_family == "ltf_no") {
        family.kind = "ltf";
        family.atoms = montest::WeightDistribution::default_no().atoms();
      }
      montest::Rng rng(gen_seed);
      montest::FunctionPtr f = montest::sample_family(family, gen_n, rng);
      if (gen_truncate) f = std::make_shared<montest::TruncatedFunction>(f, *gen_truncate);
      emit(montest::serialize(*f) + "\n", gen_out);
    } else if (*audit) {
      const auto r = montest::cmd_audit(slurp(audit_path), band);
      std::cout << json({{"runs", r.runs}, {"passed", r.passed}, {"fraction", r.fraction}, {"band", band}}).dump(2)
                << '\n';
    }
  } catch (const montest::Error& e) {
    std::cerr << "montest: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "montest: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
