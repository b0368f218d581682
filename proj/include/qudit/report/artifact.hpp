#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qudit/report/golden.hpp"

namespace qudit::report {

inline constexpr const char* kToolkitVersion = "qudit-canon 1.0.0";

// A reproduced table or figure dataset: preformatted rows (deterministic,
// full double round-trip formatting) plus the golden-comparison verdicts
// attached when the run used reference parameters.
struct Artifact {
  std::string kind;  // "table" | "figure"
  std::string id;    // T1..T13, F1..F3
  std::string params;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<CellResult> verdicts;
  std::vector<std::string> notes;
  bool golden_attached = false;

  int count(Verdict v) const;
  bool ok() const;
};

struct RunOptions {
  std::optional<int> dimension;  // override; golden comparison is skipped
  double kappa_min = 0;          // 0: figure default range
  double kappa_max = 0;
  int kappa_points = 200;
};

struct Config {
  std::optional<std::vector<std::string>> tables;   // absent: T1..T13
  std::optional<std::vector<std::string>> figures;  // absent: F1..F3
  std::map<std::string, int> dimension_overrides;
  std::string out_dir;
  std::string format = "csv";
};

struct Summary {
  int artifacts = 0;
  std::map<std::string, int> verdict_counts;
  std::vector<std::string> failures;  // "T6 C5/defect: ..." descriptions
  bool ok() const { return failures.empty(); }
};

struct RunAllResult {
  std::vector<Artifact> artifacts;
  Summary summary;
};

// golden == nullptr runs without comparison.
Artifact run_table(const std::string& id, const RunOptions& opt = {}, const GoldenData* golden = nullptr);
Artifact run_figure(const std::string& id, const RunOptions& opt = {}, const GoldenData* golden = nullptr);
RunAllResult run_all(const Config& cfg, const GoldenData* golden);

std::string format_double(double v);
void write_artifact(const Artifact& a, const std::string& out_dir, const std::string& format);
void write_manifest(const RunAllResult& r, const Config& cfg);
Config parse_config_file(const std::string& path);

const std::vector<std::string>& all_table_ids();
const std::vector<std::string>& all_figure_ids();

}  // namespace qudit::report
