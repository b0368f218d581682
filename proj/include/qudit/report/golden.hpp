#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qudit::report {

// One transcribed reference value. "sig" is the number of significant digits
// in the original print; "attr" distinguishes ordinary cells from noise-floor
// prints and from documented defects (see the bundled dataset's notes), which
// carry a frozen high-precision expectation in "expect".
struct GoldenCell {
  std::string row;
  std::string col;
  double value = 0;
  int sig = 6;
  std::string attr;  // "", "noise", "suspect-*"
  std::optional<double> expect;
  std::string note;
};

struct GoldenTable {
  std::string id;
  std::string case_name;   // "d11", "d31"
  double rtol = 0;         // 0: use global table/small rtol rule
  std::vector<GoldenCell> cells;
};

struct GoldenSpot {
  std::string case_name;
  std::string kappa;   // "1", "2", "1/2", ...
  double value = 0;
  std::string attr;
};

struct GoldenFigure {
  std::string id;
  std::vector<GoldenSpot> spots;
};

struct GoldenData {
  double rtol_table = 1e-4;
  double rtol_small = 1e-3;
  double small_threshold = 1e-6;
  double atol_noise = 1e-12;
  std::vector<GoldenTable> tables;
  std::vector<GoldenFigure> figures;
  std::map<int, int> spectrum_counts;  // d -> #{|lambda| < 0.001}

  const GoldenTable* find_table(const std::string& id, const std::string& case_name) const;
  const GoldenFigure* find_figure(const std::string& id) const;

  static GoldenData load(const std::string& path);
  // resolves QUDIT_CANON_DATA, then the build-time default directory
  static std::string default_path();
};

enum class Verdict {
  pass,             // matched within the tolerance rule
  pass_noise,       // reference below the noise floor; computed value is too
  pass_print_ulp,   // matched within one ulp of the printed precision
  suspect_ok,       // documented defective print; computed value matches the frozen expectation
  fail,
  missing,          // golden cell had no computed counterpart
};

const char* verdict_name(Verdict v);
bool verdict_ok(Verdict v);

struct CellResult {
  std::string row;
  std::string col;
  double computed = 0;
  double reference = 0;
  std::string attr;
  std::string note;
  Verdict verdict = Verdict::pass;
};

// Tolerance rule: strict relative tolerance (table override, else the
// small/large split), with a one-print-ulp fallback for cells printed with
// three or more significant digits.
Verdict judge_cell(const GoldenData& g, const GoldenTable& t, const GoldenCell& c, double computed);

}  // namespace qudit::report
