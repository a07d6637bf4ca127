#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "montest/experiment.hpp"
#include "montest/parallel.hpp"

namespace montest {
namespace {

using nlohmann::json;

const char* kBasic = R"({
  "experiment": "basic",
  "family": {"kind": "ltf_no"},
  "tester": {"kind": "bisection", "epsilon": 0.2},
  "n": [12, 20],
  "trials": 40,
  "seed": 17
})";

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

TEST(Manifest, DefaultsMaterialized) {
  const Manifest m = load_manifest(kBasic);
  EXPECT_EQ(m.family.kind, "ltf");
  ASSERT_EQ(m.family.atoms.size(), 2u);
  EXPECT_EQ(m.family.atoms[0].value, -1.0);
  EXPECT_EQ(m.tester.repetitions, 1u);
  EXPECT_TRUE(m.tester.exclude_endpoints);
  const json canon = json::parse(manifest_to_json(m));
  for (const char* key : {"epsilon", "tau", "kappa", "mode", "c", "zeta", "k", "hybrid_cap", "exclude_endpoints"}) {
    EXPECT_TRUE(canon["tester"].contains(key)) << key;
  }
  // The canonical form reloads to the same canonical form.
  EXPECT_EQ(manifest_to_json(load_manifest(manifest_to_json(m))), manifest_to_json(m));
  EXPECT_EQ(manifest_digest(m).size(), 16u);
}

TEST(Manifest, FormulaModeMaterializesConstants) {
  const Manifest m = load_manifest(R"({"experiment": "p", "family": {"kind": "ltf"},
    "tester": {"kind": "modified_bisection", "epsilon": 0.1}, "n": [64], "trials": 1})");
  ASSERT_TRUE(m.tester.c && m.tester.zeta);
  EXPECT_NEAR(*m.tester.c, 4.457e-6, 1e-9);
  EXPECT_NEAR(*m.tester.zeta, 0.0021112, 1e-7);
}

TEST(Manifest, KappaFallsBackToCalibration) {
  const Manifest m = load_manifest(R"({"experiment": "k", "family": {"kind": "ltf"},
    "tester": {"kind": "modified_bisection"}, "n": [64], "trials": 1,
    "calibration": {"delta": 0.125, "size": 65536, "trials": 100000, "kappa": 3}})");
  EXPECT_EQ(m.tester.kappa, 3.0);
  ASSERT_TRUE(m.calibration.has_value());
  EXPECT_EQ(m.calibration->size, 65536u);
}

TEST(Manifest, ProblemsNamedIndividually) {
  try {
    load_manifest(R"({"family": {"kind": "teapot"}, "tester": {"kind": "modified_bisection",
      "mode": "scaled", "epsilon": -1}, "n": [0], "trials": "many"})");
    FAIL() << "expected ManifestError";
  } catch (const ManifestError& e) {
    const auto& p = e.problems();
    auto has = [&](const std::string& prefix) {
      return std::any_of(p.begin(), p.end(), [&](const std::string& s) { return s.rfind(prefix, 0) == 0; });
    };
    EXPECT_TRUE(has("experiment:"));
    EXPECT_TRUE(has("trials:"));
    EXPECT_TRUE(has("family.kind:"));
    EXPECT_TRUE(has("tester.epsilon:"));
    EXPECT_TRUE(has("tester.k:"));
    EXPECT_TRUE(has("n:"));
    EXPECT_NE(std::string(e.what()).find("tester.k"), std::string::npos);
  }
  EXPECT_THROW(load_manifest("{not json"), ManifestError);
  EXPECT_THROW(load_manifest(R"({"experiment": "x", "family": {"kind": "ltf", "atoms": [{"value": 1,
    "probability": 0.5}]}, "tester": {"kind": "edge"}, "n": [4], "trials": 1})"), ManifestError);
  EXPECT_THROW(load_manifest(R"({"experiment": "x", "family": {"kind": "random_table"},
    "tester": {"kind": "edge"}, "n": [30], "trials": 1})"), ManifestError);
}

TEST(Run, ZeroTrialsGivesHeaderOnly) {
  Manifest m = load_manifest(kBasic);
  m.trials = 0;
  const RunSummary s = cmd_run(m, 2);
  EXPECT_EQ(s.csv, csv_header());
  EXPECT_EQ(lines(s.csv).size(), 2u);
  EXPECT_EQ(lines(s.csv)[0], "# schema: runrecord/1");
  const json doc = json::parse(s.json);
  EXPECT_TRUE(doc["results"][0]["rejection_rate"].is_null());
}

TEST(Run, DeterministicAcrossWorkerCounts) {
  const Manifest m = load_manifest(kBasic);
  const RunSummary a = cmd_run(m, 1);
  const RunSummary b = cmd_run(m, 4);
  EXPECT_EQ(a.csv, b.csv);
  EXPECT_EQ(a.json, b.json);
  Manifest other = m;
  other.seed = 18;
  EXPECT_NE(cmd_run(other, 1).csv, a.csv);
}

TEST(Run, AddingTrialsKeepsEarlierRows) {
  Manifest m = load_manifest(kBasic);
  m.n = {12};
  const auto small = lines(cmd_run(m, 1).csv);
  m.trials = 60;
  const auto large = lines(cmd_run(m, 1).csv);
  ASSERT_EQ(large.size(), 62u);
  for (std::size_t i = 0; i < small.size(); ++i) EXPECT_EQ(small[i], large[i]);
}

TEST(Run, SummaryMatchesCsv) {
  Manifest m = load_manifest(kBasic);
  m.trials = 200;
  const RunSummary s = cmd_run(m, 2);
  const json doc = json::parse(s.json);
  EXPECT_EQ(doc["csv_digest"], fnv1a_hex(s.csv));
  EXPECT_EQ(doc["manifest_digest"], manifest_digest(m));
  EXPECT_EQ(doc["artifact_version"], artifact_version());
  std::map<std::size_t, std::pair<int, int>> tally;  // n -> (rejects, rows)
  const auto rows = lines(s.csv);
  for (std::size_t i = 2; i < rows.size(); ++i) {
    std::vector<std::string> cells;
    std::istringstream in(rows[i]);
    std::string cell;
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    auto& t = tally[std::stoul(cells[1])];
    t.first += cells[4] == "reject" ? 1 : 0;
    ++t.second;
  }
  for (const auto& entry : doc["results"]) {
    const auto& t = tally[entry["n"].get<std::size_t>()];
    EXPECT_EQ(entry["trials"].get<int>(), t.second);
    EXPECT_EQ(entry["rejects"].get<int>(), t.first);
    EXPECT_DOUBLE_EQ(entry["rejection_rate"].get<double>(), double(t.first) / t.second);
  }
}

TEST(Run, TrialMatchesStandaloneTrial) {
  const Manifest m = load_manifest(kBasic);
  const auto rows = lines(cmd_run(m, 1).csv);
  const TrialRow t = run_trial(m, 12, trial_seed(m.seed, 12, 5));
  EXPECT_EQ(rows[2 + 5], csv_row(t).substr(0, csv_row(t).size() - 1));
}

TEST(Run, WritesFilesAndFileFamily) {
  const std::string dir = MONTEST_TEST_TMPDIR;
  Rng rng(5);
  const auto f = sample_family(FamilySpec{.kind = "random_table"}, 6, rng);
  {
    std::ofstream out(dir + "/f6.json");
    out << serialize(*f);
  }
  json doc = {{"experiment", "file"},
              {"family", {{"kind", "file"}, {"path", dir + "/f6.json"}}},
              {"tester", {{"kind", "modified_bisection"}, {"mode", "scaled"}, {"k", 2}, {"repetitions", 3}}},
              {"n", {6}},
              {"trials", 30},
              {"seed", 4},
              {"output", dir + "/filerun"}};
  const Manifest m = load_manifest(doc.dump());
  const RunSummary s = cmd_run(m, 2);
  std::ifstream csv(dir + "/filerun.csv");
  std::stringstream ss;
  ss << csv.rdbuf();
  EXPECT_EQ(ss.str(), s.csv);
  EXPECT_TRUE(std::ifstream(dir + "/filerun.summary.json").good());

  Manifest wrong = m;
  wrong.n = {7};
  EXPECT_THROW(cmd_run(wrong, 1), ManifestError);
}

TEST(Distance, Reports) {
  const TruthTable not_x1 = TruthTable::from_index_fn(2, [](std::uint64_t x) { return (x & 1) == 0; });
  const DistanceReport r = cmd_distance(not_x1);
  EXPECT_EQ(r.distance, 2u);
  EXPECT_DOUBLE_EQ(r.fraction, 0.5);
  EXPECT_FALSE(r.inner_distance.has_value());
  EXPECT_EQ(cmd_distance(TruthTable::constant(5, true)).distance, 0u);

  // Truncating a negated dictator at n = 16: both distances reported.
  const auto inner = std::make_shared<TruthTable>(
      TruthTable::from_index_fn(16, [](std::uint64_t x) { return (x & 1) == 0; }));
  const DistanceReport t = cmd_distance(TruncatedFunction(inner, 1.0));
  ASSERT_TRUE(t.inner_distance.has_value());
  EXPECT_EQ(*t.inner_distance, 1u << 15);
  EXPECT_LE(t.distance, *t.inner_distance);
  const json doc = json::parse(distance_report_json(t));
  EXPECT_TRUE(doc.contains("inner_fraction"));
}

TEST(Calibrate, CommandIsDeterministic) {
  const CalibrationRecord a = cmd_calibrate(0.125, 1 << 10, 5000, 2);
  const CalibrationRecord b = cmd_calibrate(0.125, 1 << 10, 5000, 2);
  EXPECT_EQ(a.kappa, b.kappa);
  EXPECT_EQ(cmd_calibrate(0.999999, 16, 2000, 1).kappa, 0);
}

TEST(Audit, CountsFromCsv) {
  const std::string csv = csv_header() +
                          "1,16,ltf,edge-check,accept,3,2,8,8,1,1,0,1\n"
                          "2,16,ltf,edge-check,accept,3,,0,8,1,1,0,1\n"
                          "3,16,ltf,no-pair,accept,0,,0,0,0,0,0,1\n";
  const AuditResult r = cmd_audit(csv, 1.5);
  EXPECT_EQ(r.runs, 3u);
  EXPECT_EQ(r.passed, 2u);
  EXPECT_THROW(cmd_audit("seed,n\n1,2\n", 2.0), ParseError);
}

TEST(Parallel, CoversEveryIndexAndRethrows) {
  std::vector<int> hit(1000, 0);
  parallel_for(hit.size(), 4, [&](std::uint64_t i) { hit[i] += 1; });
  EXPECT_TRUE(std::all_of(hit.begin(), hit.end(), [](int v) { return v == 1; }));
  EXPECT_THROW(parallel_for(10, 3, [](std::uint64_t i) {
                 if (i == 7) throw PreconditionError("boom");
               }),
               PreconditionError);
  EXPECT_GE(default_workers(), 1u);
}

}  // namespace
}  // namespace montest
