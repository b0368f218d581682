#include <cstdio>
#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "qudit/metrics.hpp"
#include "qudit/report/artifact.hpp"

namespace {

// exit codes: 0 pass, 1 golden mismatch, 2 usage error, 3 numerical failure
constexpr int kExitOk = 0;
constexpr int kExitGoldenMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

std::string default_out_dir() {
  if (const char* env = std::getenv("QUDIT_CANON_OUT")) return env;
  return "";
}

void print_artifact_stdout(const qudit::report::Artifact& a) {
  for (size_t i = 0; i < a.columns.size(); ++i) std::printf("%s%s", i ? "," : "", a.columns[i].c_str());
  std::printf("\n");
  for (const auto& row : a.rows) {
    for (size_t i = 0; i < row.size(); ++i) std::printf("%s%s", i ? "," : "", row[i].c_str());
    std::printf("\n");
  }
}

int report_verdicts(const qudit::report::Artifact& a, std::FILE* to) {
  using qudit::report::Verdict;
  if (!a.golden_attached) {
    std::fprintf(to, "%s: %zu rows, no reference comparison for these parameters\n", a.id.c_str(),
                 a.rows.size());
    return kExitOk;
  }
  int fails = 0;
  for (const auto& c : a.verdicts) {
    if (!qudit::report::verdict_ok(c.verdict)) {
      ++fails;
      std::fprintf(to, "%s %s/%s: FAIL computed %.9e reference %.9e\n", a.id.c_str(), c.row.c_str(),
                   c.col.c_str(), c.computed, c.reference);
    }
  }
  std::fprintf(to, "%s: cells pass=%d noise-floor=%d print-ulp=%d suspect=%d fail=%d\n", a.id.c_str(),
               a.count(Verdict::pass), a.count(Verdict::pass_noise), a.count(Verdict::pass_print_ulp),
               a.count(Verdict::suspect_ok), fails);
  return fails == 0 ? kExitOk : kExitGoldenMismatch;
}

const qudit::report::GoldenData* load_golden_or_null(bool required) {
  static qudit::report::GoldenData data;
  static bool loaded = false;
  static bool failed = false;
  if (!loaded && !failed) {
    try {
      data = qudit::report::GoldenData::load(qudit::report::GoldenData::default_path());
      loaded = true;
    } catch (const std::exception& e) {
      failed = true;
      std::fprintf(stderr, "warning: %s\n", e.what());
    }
  }
  if (failed && required) throw std::runtime_error("reference dataset unavailable");
  return loaded ? &data : nullptr;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete position-momentum toolkit: reference tables, figure datasets, spectrum counts"};
  app.set_version_flag("--version", qudit::report::kToolkitVersion);
  app.require_subcommand(1);

  std::string id;
  int dimension = 0;
  std::string out_dir = default_out_dir();
  std::string format = "csv";
  double kappa_min = 0, kappa_max = 0;
  int kappa_points = 200;
  std::string config_path;
  double epsilon = 0.001;

  auto* table_cmd = app.add_subcommand("table", "reproduce one reference table (T1..T13)");
  table_cmd->add_option("id", id, "table id, T1..T13")->required();
  table_cmd->add_option("--dimension", dimension, "override the grid dimension (odd, >= 3)");
  table_cmd->add_option("--out", out_dir, "output directory (default: QUDIT_CANON_OUT or stdout)");
  table_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* figure_cmd = app.add_subcommand("figure", "reproduce one figure dataset (F1..F3)");
  figure_cmd->add_option("id", id, "figure id, F1..F3")->required();
  figure_cmd->add_option("--dimension", dimension, "override the grid dimension");
  figure_cmd->add_option("--kappa-min", kappa_min, "lower end of the kappa sweep");
  figure_cmd->add_option("--kappa-max", kappa_max, "upper end of the kappa sweep");
  figure_cmd->add_option("--kappa-points", kappa_points, "number of log-spaced kappa samples");
  figure_cmd->add_option("--out", out_dir, "output directory (default: QUDIT_CANON_OUT or stdout)");
  figure_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* verify_cmd = app.add_subcommand("verify-all", "run every table and figure, compare, write artifacts");
  verify_cmd->add_option("--config", config_path, "JSON config file");

  auto* spectrum_cmd = app.add_subcommand("spectrum", "count commutator-defect eigenvalues below epsilon");
  spectrum_cmd->add_option("--dimension", dimension, "grid dimension (odd, >= 3)")->required();
  spectrum_cmd->add_option("--epsilon", epsilon, "threshold (default 0.001)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (table_cmd->parsed() || figure_cmd->parsed()) {
      qudit::report::RunOptions opt;
      if (dimension > 0) opt.dimension = dimension;
      opt.kappa_min = kappa_min;
      opt.kappa_max = kappa_max;
      opt.kappa_points = kappa_points;
      const auto* golden = load_golden_or_null(/*required=*/!opt.dimension.has_value());
      qudit::report::Artifact art = table_cmd->parsed() ? qudit::report::run_table(id, opt, golden)
                                                        : qudit::report::run_figure(id, opt, golden);
      if (!out_dir.empty()) {
        qudit::report::write_artifact(art, out_dir, format);
        std::printf("wrote %s/%s.%s\n", out_dir.c_str(), art.id.c_str(), format.c_str());
        return report_verdicts(art, stdout);
      }
      print_artifact_stdout(art);
      return report_verdicts(art, stderr);
    }

    if (verify_cmd->parsed()) {
      qudit::report::Config cfg;
      if (!config_path.empty()) cfg = qudit::report::parse_config_file(config_path);
      if (cfg.out_dir.empty()) cfg.out_dir = out_dir.empty() ? "qudit-canon-out" : out_dir;
      const auto* golden = load_golden_or_null(/*required=*/true);
      qudit::report::RunAllResult res = qudit::report::run_all(cfg, golden);
      for (const auto& a : res.artifacts) qudit::report::write_artifact(a, cfg.out_dir, cfg.format);
      qudit::report::write_manifest(res, cfg);
      for (const auto& a : res.artifacts) report_verdicts(a, stdout);
      for (const auto& f : res.summary.failures) std::printf("failure: %s\n", f.c_str());
      std::printf("%d artifacts -> %s; %s\n", res.summary.artifacts, cfg.out_dir.c_str(),
                  res.summary.ok() ? "all comparisons clean" : "FAILURES present");
      return res.summary.ok() ? kExitOk : kExitGoldenMismatch;
    }

    if (spectrum_cmd->parsed()) {
      auto cf = qudit::canonical_fraction<double>(dimension, epsilon);
      std::printf("d=%d epsilon=%g count=%d fraction=%.6f\n", dimension, epsilon, cf.count, cf.fraction);
      return kExitOk;
    }
  } catch (const qudit::DimensionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const qudit::DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
  return kExitUsage;
}
