#include "montest/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "montest/exact_oracles.hpp"
#include "montest/parallel.hpp"
#include "montest/stats.hpp"

#ifndef MONTEST_VERSION
#define MONTEST_VERSION "0.0.0"
#endif

namespace montest {

using nlohmann::json;

std::string artifact_version() { return MONTEST_VERSION; }

namespace {

std::string join_problems(const std::vector<std::string>& problems) {
  std::string out = "invalid manifest:";
  for (const auto& p : problems) out += "\n  - " + p;
  return out;
}

// Collects per-field problems instead of failing on the first one.
class FieldReader {
 public:
  explicit FieldReader(std::vector<std::string>& problems) : problems_(problems) {}

  template <class T>
  void read(const json& obj, const std::string& path, const char* key, T& out, bool required = false) {
    if (!obj.is_object() || !obj.contains(key) || obj.at(key).is_null()) {
      if (required) problems_.push_back(path + key + ": required");
      return;
    }
    try {
      out = obj.at(key).get<T>();
    } catch (const json::exception&) {
      problems_.push_back(path + key + ": wrong type");
    }
  }

  template <class T>
  void read_optional(const json& obj, const std::string& path, const char* key, std::optional<T>& out) {
    if (!obj.is_object() || !obj.contains(key) || obj.at(key).is_null()) return;
    try {
      out = obj.at(key).get<T>();
    } catch (const json::exception&) {
      problems_.push_back(path + key + ": wrong type");
    }
  }

  void fail(std::string message) { problems_.push_back(std::move(message)); }

 private:
  std::vector<std::string>& problems_;
};

json atoms_to_json(const std::vector<WeightAtom>& atoms) {
  json arr = json::array();
  for (const auto& a : atoms) arr.push_back({{"value", a.value}, {"probability", a.probability}});
  return arr;
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

FunctionPtr instantiate(const Manifest& m, std::size_t n, Rng& rng, const FunctionPtr& fixed) {
  FunctionPtr f = fixed ? fixed : sample_family(m.family, n, rng);
  if (m.family.truncate) f = std::make_shared<TruncatedFunction>(f, *m.family.truncate);
  return f;
}

TrialRow run_trial_with(const Manifest& m, std::size_t n, std::uint64_t seed, const FunctionPtr& fixed) {
  Rng family_rng = Rng::derive(seed, 0);
  const FunctionPtr f = instantiate(m, n, family_rng, fixed);
  SeededSource src(Rng::derive(seed, 1));

  auto once = [&]() -> RunRecord {
    const auto& t = m.tester;
    if (t.kind == "edge") return edge_tester(*f, t.epsilon, src);
    if (t.kind == "bisection") return bisection_tester(*f, t.epsilon, src, {t.exclude_endpoints});
    return modified_bisection_tester(*f, t.alg2_params(), src);
  };

  // Amplification: stop at the first rejection; queries and the weight range
  // accumulate across repetitions.
  RunRecord rec = once();
  for (std::size_t r = 1; r < m.tester.repetitions && !rec.verdict.rejected(); ++r) {
    RunRecord next = once();
    if (next.queries > 0) {
      next.min_weight = rec.queries > 0 ? std::min(rec.min_weight, next.min_weight) : next.min_weight;
      next.max_weight = rec.queries > 0 ? std::max(rec.max_weight, next.max_weight) : next.max_weight;
    } else {
      next.min_weight = rec.min_weight;
      next.max_weight = rec.max_weight;
    }
    next.queries += rec.queries;
    rec = std::move(next);
  }
  return {seed, n, m.family.kind, std::move(rec)};
}

FunctionPtr load_fixed_function(const Manifest& m) {
  if (m.family.kind != "file") return nullptr;
  return deserialize(read_file(m.family.path));
}

}  // namespace

ManifestError::ManifestError(std::vector<std::string> problems)
    : Error(join_problems(problems)), problems_(std::move(problems)) {}

Alg2Params TesterSpec::alg2_params() const {
  Alg2Params p;
  if (mode == "scaled") {
    p = Alg2Params::scaled(epsilon, k.value_or(0), hybrid_cap);
    p.tau = tau;
    p.kappa = kappa;
    p.c = c.value_or(0.0);
    p.zeta = zeta.value_or(0.0);
  } else {
    p = Alg2Params::from_formula(epsilon, tau, kappa, hybrid_cap);
    if (c) p.c = *c;
    if (zeta) p.zeta = *zeta;
    if (k) p.fixed_k = *k;
  }
  p.exclude_endpoints = exclude_endpoints;
  return p;
}

Manifest load_manifest(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ManifestError({std::string("manifest is not valid JSON: ") + e.what()});
  }
  std::vector<std::string> problems;
  FieldReader r(problems);
  if (!doc.is_object()) throw ManifestError({"manifest must be a JSON object"});

  Manifest m;
  r.read(doc, "", "experiment", m.experiment, true);
  r.read(doc, "", "n", m.n, true);
  r.read(doc, "", "trials", m.trials, true);
  r.read(doc, "", "seed", m.seed);
  r.read(doc, "", "output", m.output);

  const json family = doc.value("family", json::object());
  auto& fam = m.family;
  r.read(family, "family.", "kind", fam.kind, true);
  if (family.is_object() && family.contains("atoms")) {
    try {
      std::vector<WeightAtom> atoms;
      for (const auto& a : family.at("atoms")) {
        atoms.push_back({a.at("value").get<double>(), a.at("probability").get<double>()});
      }
      fam.atoms = std::move(atoms);
    } catch (const json::exception&) {
      r.fail("family.atoms: expected [{\"value\": v, \"probability\": p}, ...]");
    }
  } else if (fam.kind == "ltf_no") {
    fam.atoms = WeightDistribution::default_no().atoms();
  }
  if (fam.kind == "ltf_no") fam.kind = "ltf";
  r.read(family, "family.", "threshold", fam.threshold);
  r.read(family, "family.", "clause_cap", fam.clause_cap);
  r.read(family, "family.", "density", fam.density);
  r.read(family, "family.", "path", fam.path);
  r.read_optional(family, "family.", "truncate", fam.truncate);

  const json tester = doc.value("tester", json::object());
  auto& t = m.tester;
  r.read(tester, "tester.", "kind", t.kind, true);
  r.read(tester, "tester.", "epsilon", t.epsilon);
  r.read(tester, "tester.", "tau", t.tau);
  r.read(tester, "tester.", "mode", t.mode);
  r.read_optional(tester, "tester.", "c", t.c);
  r.read_optional(tester, "tester.", "zeta", t.zeta);
  r.read_optional(tester, "tester.", "k", t.k);
  r.read(tester, "tester.", "hybrid_cap", t.hybrid_cap);
  r.read(tester, "tester.", "exclude_endpoints", t.exclude_endpoints);
  r.read(tester, "tester.", "repetitions", t.repetitions);

  if (doc.contains("calibration") && !doc.at("calibration").is_null()) {
    const json& cal = doc.at("calibration");
    CalibrationRecord rec{};
    r.read(cal, "calibration.", "delta", rec.delta, true);
    r.read(cal, "calibration.", "size", rec.size, true);
    r.read(cal, "calibration.", "trials", rec.trials, true);
    r.read(cal, "calibration.", "kappa", rec.kappa, true);
    m.calibration = rec;
  }
  // kappa defaults to the stored calibration.
  std::optional<double> kappa;
  r.read_optional(tester, "tester.", "kappa", kappa);
  t.kappa = kappa.value_or(m.calibration ? static_cast<double>(m.calibration->kappa) : 0.0);

  static const std::vector<std::string> families = {"ltf", "talagrand", "tal_pm", "monotone_table", "random_table",
                                                    "file"};
  if (std::find(families.begin(), families.end(), fam.kind) == families.end()) {
    r.fail("family.kind: unknown family '" + fam.kind + "'");
  }
  if (fam.kind == "file" && fam.path.empty()) r.fail("family.path: required for family 'file'");
  if (fam.kind == "ltf") {
    try {
      WeightDistribution check(fam.atoms);
    } catch (const Error& e) {
      r.fail(std::string("family.atoms: ") + e.what());
    }
  }
  if (!(fam.density >= 0.0 && fam.density <= 1.0)) r.fail("family.density: must lie in [0, 1]");
  if (fam.clause_cap == 0) r.fail("family.clause_cap: must be positive");
  if (fam.truncate && !(*fam.truncate >= 0.0)) r.fail("family.truncate: must be nonnegative");

  if (t.kind != "edge" && t.kind != "bisection" && t.kind != "modified_bisection") {
    r.fail("tester.kind: unknown tester '" + t.kind + "'");
  }
  if (!(t.epsilon > 0.0)) r.fail("tester.epsilon: must be positive");
  if (!(t.tau > 0.0)) r.fail("tester.tau: must be positive");
  if (t.mode != "paper" && t.mode != "scaled") r.fail("tester.mode: must be 'paper' or 'scaled'");
  if (t.kind == "modified_bisection" && t.mode == "scaled" && !t.k) r.fail("tester.k: required in scaled mode");
  if (t.hybrid_cap == 0) r.fail("tester.hybrid_cap: must be positive");
  if (t.repetitions == 0) r.fail("tester.repetitions: must be at least 1");

  if (m.n.empty() && doc.contains("n")) r.fail("n: must list at least one dimension");
  for (std::size_t n : m.n) {
    if (n == 0) r.fail("n: dimensions must be positive");
    if ((fam.kind == "monotone_table" || fam.kind == "random_table") && n > kMaxTableDimension) {
      r.fail("n: table families support n <= " + std::to_string(kMaxTableDimension));
    }
  }

  if (!problems.empty()) throw ManifestError(std::move(problems));

  if (t.kind == "modified_bisection" && t.mode == "paper") {
    const Alg2Params p = t.alg2_params();
    t.c = p.c;
    t.zeta = p.zeta;
  }
  return m;
}

Manifest load_manifest_file(const std::string& path) { return load_manifest(read_file(path)); }

std::string manifest_to_json(const Manifest& m) {
  json doc;
  doc["experiment"] = m.experiment;
  doc["n"] = m.n;
  doc["trials"] = m.trials;
  doc["seed"] = m.seed;
  doc["output"] = m.output;
  doc["family"] = {
      {"kind", m.family.kind},
      {"atoms", atoms_to_json(m.family.atoms)},
      {"threshold", m.family.threshold},
      {"clause_cap", m.family.clause_cap},
      {"density", m.family.density},
      {"path", m.family.path},
      {"truncate", optional_json(m.family.truncate)},
  };
  doc["tester"] = {
      {"kind", m.tester.kind},
      {"epsilon", m.tester.epsilon},
      {"tau", m.tester.tau},
      {"kappa", m.tester.kappa},
      {"mode", m.tester.mode},
      {"c", optional_json(m.tester.c)},
      {"zeta", optional_json(m.tester.zeta)},
      {"k", optional_json(m.tester.k)},
      {"hybrid_cap", m.tester.hybrid_cap},
      {"exclude_endpoints", m.tester.exclude_endpoints},
      {"repetitions", m.tester.repetitions},
  };
  if (m.calibration) {
    doc["calibration"] = {{"delta", m.calibration->delta},
                          {"size", m.calibration->size},
                          {"trials", m.calibration->trials},
                          {"kappa", m.calibration->kappa}};
  } else {
    doc["calibration"] = nullptr;
  }
  return doc.dump(2);
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string manifest_digest(const Manifest& m) { return fnv1a_hex(manifest_to_json(m)); }

std::uint64_t trial_seed(std::uint64_t master, std::size_t n, std::uint64_t trial) {
  return Rng::derive_seed(Rng::derive_seed(master, n), trial);
}

FunctionPtr sample_family(const FamilySpec& family, std::size_t n, Rng& rng) {
  if (family.kind == "ltf") return sample_ltf(n, WeightDistribution(family.atoms), rng, family.threshold);
  if (family.kind == "talagrand") return sample_talagrand_dnf(n, family.clause_cap, rng);
  if (family.kind == "tal_pm") return sample_shifted_talagrand(n, family.clause_cap, rng);
  if (family.kind == "monotone_table") return std::make_shared<TruthTable>(sample_monotone_table(n, family.density, rng));
  if (family.kind == "random_table") return std::make_shared<TruthTable>(sample_random_table(n, rng));
  throw PreconditionError("sample_family: family '" + family.kind + "' cannot be sampled");
}

TrialRow run_trial(const Manifest& m, std::size_t n, std::uint64_t seed) {
  return run_trial_with(m, n, seed, load_fixed_function(m));
}

std::string csv_header() {
  return std::string("# schema: ") + kRunRecordSchema +
         "\nseed,n,family,phase,decision,queries,terminal_variable,min_weight,max_weight,iterations,final_distance,"
         "final_common_ones,exclude_endpoints\n";
}

std::string csv_row(const TrialRow& row) {
  const RunRecord& r = row.record;
  std::ostringstream out;
  out << row.seed << ',' << row.n << ',' << row.family << ',' << to_string(r.phase) << ','
      << to_string(r.verdict.decision) << ',' << r.queries << ',';
  if (r.terminal_variable) out << *r.terminal_variable;
  out << ',' << r.min_weight << ',' << r.max_weight << ',' << r.iterations << ',' << r.final_distance << ','
      << r.final_common_ones << ',' << (r.exclude_endpoints ? 1 : 0) << '\n';
  return out.str();
}

RunSummary cmd_run(const Manifest& m, std::size_t workers) {
  const FunctionPtr fixed = load_fixed_function(m);
  if (fixed) {
    for (std::size_t n : m.n) {
      if (n != fixed->n()) {
        throw ManifestError({"n: entry " + std::to_string(n) + " differs from the function file's n = " +
                             std::to_string(fixed->n())});
      }
    }
  }

  std::string csv = csv_header();
  json results = json::array();
  for (std::size_t n : m.n) {
    std::vector<TrialRow> rows(m.trials);
    parallel_for(m.trials, workers, [&](std::uint64_t t) {
      rows[t] = run_trial_with(m, n, trial_seed(m.seed, n, t), fixed);
    });

    std::uint64_t rejects = 0;
    std::uint64_t total_queries = 0;
    std::uint64_t max_queries = 0;
    std::map<std::string, std::uint64_t> phases;
    for (const auto& row : rows) {
      csv += csv_row(row);
      rejects += row.record.verdict.rejected() ? 1 : 0;
      total_queries += row.record.queries;
      max_queries = std::max(max_queries, row.record.queries);
      ++phases[std::string(to_string(row.record.phase))];
    }
    json entry = {{"n", n}, {"trials", m.trials}, {"rejects", rejects}, {"phases", phases},
                  {"max_queries", max_queries}};
    if (m.trials > 0) {
      const Estimate e = proportion_estimate(rejects, m.trials);
      entry["rejection_rate"] = e.value;
      entry["ci_half_width"] = e.half_width;
      entry["mean_queries"] = static_cast<double>(total_queries) / static_cast<double>(m.trials);
    } else {
      entry["rejection_rate"] = nullptr;
      entry["ci_half_width"] = nullptr;
      entry["mean_queries"] = nullptr;
    }
    results.push_back(std::move(entry));
  }

  json summary = {
      {"artifact_version", artifact_version()},
      {"schema", kRunRecordSchema},
      {"experiment", m.experiment},
      {"manifest_digest", manifest_digest(m)},
      {"manifest", json::parse(manifest_to_json(m))},
      {"csv_digest", fnv1a_hex(csv)},
      {"results", results},
  };
  RunSummary out{summary.dump(2) + "\n", std::move(csv)};
  if (!m.output.empty()) {
    write_file(m.output + ".csv", out.csv);
    write_file(m.output + ".summary.json", out.json);
  }
  return out;
}

DistanceReport cmd_distance(const BooleanFunction& f) {
  if (f.n() > kMaxFlowDimension) {
    throw TableTooLarge("distance supports n <= " + std::to_string(kMaxFlowDimension) + ", got " +
                        std::to_string(f.n()));
  }
  const TruthTable table = TruthTable::tabulate(f);
  DistanceReport r{f.n(), distance_to_monotone(table), 0.0, std::nullopt};
  r.fraction = static_cast<double>(r.distance) / static_cast<double>(table.size());
  if (const auto* t = dynamic_cast<const TruncatedFunction*>(&f)) {
    r.inner_distance = distance_to_monotone(TruthTable::tabulate(*t->inner()));
  }
  return r;
}

std::string distance_report_json(const DistanceReport& r) {
  json doc = {{"n", r.n}, {"distance", r.distance}, {"fraction", r.fraction}};
  if (r.inner_distance) {
    doc["inner_distance"] = *r.inner_distance;
    doc["inner_fraction"] = static_cast<double>(*r.inner_distance) / std::ldexp(1.0, static_cast<int>(r.n));
  }
  return doc.dump(2);
}

CalibrationRecord cmd_calibrate(double delta, std::uint64_t size, std::uint64_t trials, std::uint64_t seed) {
  const CalibrationResult c = calibrate_kappa(delta, size, trials, seed);
  return {c.delta, c.initial_size, c.trials, c.kappa};
}

AuditResult cmd_audit(std::string_view csv_text, double band) {
  std::istringstream in{std::string(csv_text)};
  std::string line;
  std::vector<std::string> header;
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(s);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!s.empty() && s.back() == ',') cells.emplace_back();
    return cells;
  };
  auto column = [&](const char* name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw ParseError(std::string("audit: CSV lacks column '") + name + "'");
  };
  AuditResult out;
  std::size_t col_n = 0, col_min = 0, col_max = 0, col_q = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (header.empty()) {
      header = split(line);
      col_n = column("n");
      col_min = column("min_weight");
      col_max = column("max_weight");
      col_q = column("queries");
      continue;
    }
    const auto cells = split(line);
    if (cells.size() != header.size()) throw ParseError("audit: malformed CSV row");
    ++out.runs;
    const auto queries = std::stoull(cells[col_q]);
    if (queries == 0 || balance_audit(std::stoull(cells[col_n]), std::stoull(cells[col_min]),
                                      std::stoull(cells[col_max]), band)) {
      ++out.passed;
    }
  }
  out.fraction = out.runs == 0 ? 0.0 : static_cast<double>(out.passed) / static_cast<double>(out.runs);
  return out;
}

}  // namespace montest
