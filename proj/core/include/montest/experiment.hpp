#pragma once

// Manifest-driven experiment runner behind the montest CLI. Every command is
// a pure function of (manifest, seed).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "montest/errors.hpp"
#include "montest/functions.hpp"
#include "montest/generators.hpp"
#include "montest/process_sim.hpp"
#include "montest/testers.hpp"

namespace montest {

inline constexpr const char* kRunRecordSchema = "runrecord/1";
std::string artifact_version();

class ManifestError : public Error {
 public:
  explicit ManifestError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

struct FamilySpec {
  // ltf | talagrand | tal_pm | monotone_table | random_table | file
  std::string kind = "ltf";
  std::vector<WeightAtom> atoms = WeightDistribution::default_yes().atoms();
  double threshold = 0.0;
  std::uint64_t clause_cap = kDefaultClauseCap;
  double density = 0.05;  // monotone_table seed density
  std::string path;       // file
  std::optional<double> truncate;
};

struct TesterSpec {
  // edge | bisection | modified_bisection
  std::string kind = "bisection";
  double epsilon = 0.1;
  double tau = 1.0;
  double kappa = 0.0;
  std::string mode = "paper";  // paper | scaled
  std::optional<double> c;
  std::optional<double> zeta;
  std::optional<int> k;
  std::uint64_t hybrid_cap = kDefaultHybridCap;
  bool exclude_endpoints = true;
  std::size_t repetitions = 1;

  Alg2Params alg2_params() const;
};

struct CalibrationRecord {
  double delta;
  std::uint64_t size;
  std::uint64_t trials;
  int kappa;
};

struct Manifest {
  std::string experiment;
  FamilySpec family;
  TesterSpec tester;
  std::vector<std::size_t> n;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::string output;
  std::optional<CalibrationRecord> calibration;
};

// Parses and validates a manifest, materialising every default. Problems
// are collected and reported together, each naming its field.
Manifest load_manifest(std::string_view json_text);
Manifest load_manifest_file(const std::string& path);
// Canonical JSON with every field explicit.
std::string manifest_to_json(const Manifest& m);
// FNV-1a 64 of the canonical JSON, as 16 hex digits.
std::string manifest_digest(const Manifest& m);
std::string fnv1a_hex(std::string_view bytes);

struct TrialRow {
  std::uint64_t seed;
  std::size_t n;
  std::string family;
  RunRecord record;
};

// One trial: sample the family from Rng::derive(seed, 0), run the tester
// from Rng::derive(seed, 1).
TrialRow run_trial(const Manifest& m, std::size_t n, std::uint64_t trial_seed);

// Per-trial seed: derive(derive(master, n), trial) so adding trials or n
// values leaves existing trials untouched.
std::uint64_t trial_seed(std::uint64_t master, std::size_t n, std::uint64_t trial);

std::string csv_header();
std::string csv_row(const TrialRow& row);

struct RunSummary {
  std::string json;  // summary document
  std::string csv;   // full CSV text
};

// Executes every (n, trial) pair on `workers` threads, ordered by
// (n index, trial). Writes <output>.csv and <output>.summary.json when
// output is nonempty.
RunSummary cmd_run(const Manifest& m, std::size_t workers);

struct DistanceReport {
  std::size_t n;
  std::uint64_t distance;
  double fraction;
  // For truncated inputs: the inner function's distance, side by side.
  std::optional<std::uint64_t> inner_distance;
};

DistanceReport cmd_distance(const BooleanFunction& f);
std::string distance_report_json(const DistanceReport& r);

CalibrationRecord cmd_calibrate(double delta, std::uint64_t size, std::uint64_t trials, std::uint64_t seed);

// Emits a sampled function document for the family at dimension n.
FunctionPtr sample_family(const FamilySpec& family, std::size_t n, Rng& rng);

struct AuditResult {
  std::uint64_t runs = 0;
  std::uint64_t passed = 0;
  double fraction = 0.0;
};

// Balance audit over a RunRecord CSV produced by cmd_run.
AuditResult cmd_audit(std::string_view csv_text, double band);

}  // namespace montest
