#include "qudit/report/golden.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace qudit::report {

const GoldenTable* GoldenData::find_table(const std::string& id, const std::string& case_name) const {
  for (const auto& t : tables) {
    if (t.id == id && t.case_name == case_name) return &t;
  }
  return nullptr;
}

const GoldenFigure* GoldenData::find_figure(const std::string& id) const {
  for (const auto& f : figures) {
    if (f.id == id) return &f;
  }
  return nullptr;
}

std::string GoldenData::default_path() {
  if (const char* env = std::getenv("QUDIT_CANON_DATA")) {
    return std::string(env) + "/golden.json";
  }
#ifdef QUDIT_CANON_DATA_DIR
  return std::string(QUDIT_CANON_DATA_DIR) + "/golden.json";
#else
  return "data/golden.json";
#endif
}

GoldenData GoldenData::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open golden data file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("golden data parse error in " + path + ": " + e.what());
  }

  GoldenData g;
  g.rtol_table = j.at("rtol_table").get<double>();
  g.rtol_small = j.at("rtol_small").get<double>();
  g.small_threshold = j.at("small_threshold").get<double>();
  g.atol_noise = j.at("atol_noise").get<double>();
  for (const auto& jt : j.at("tables")) {
    GoldenTable t;
    t.id = jt.at("id").get<std::string>();
    t.case_name = jt.at("case").get<std::string>();
    t.rtol = jt.value("rtol", 0.0);
    for (const auto& jr : jt.at("rows")) {
      GoldenCell c;
      c.row = jr.at("row").get<std::string>();
      c.col = jr.at("col").get<std::string>();
      c.value = jr.at("value").get<double>();
      c.sig = jr.value("sig", 6);
      c.attr = jr.value("attr", "");
      if (jr.contains("expect")) c.expect = jr.at("expect").get<double>();
      c.note = jr.value("note", "");
      t.cells.push_back(std::move(c));
    }
    g.tables.push_back(std::move(t));
  }
  for (const auto& jf : j.at("figures")) {
    GoldenFigure f;
    f.id = jf.at("id").get<std::string>();
    for (const auto& js : jf.at("spots")) {
      GoldenSpot s;
      s.case_name = js.at("case").get<std::string>();
      s.kappa = js.at("kappa").get<std::string>();
      s.value = js.at("value").get<double>();
      s.attr = js.value("attr", "");
      f.spots.push_back(std::move(s));
    }
    g.figures.push_back(std::move(f));
  }
  for (const auto& js : j.at("spectrum")) {
    g.spectrum_counts[js.at("d").get<int>()] = js.at("count").get<int>();
  }
  return g;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::pass_noise: return "noise-floor";
    case Verdict::pass_print_ulp: return "pass-print-ulp";
    case Verdict::suspect_ok: return "suspect";
    case Verdict::fail: return "fail";
    case Verdict::missing: return "missing";
  }
  return "?";
}

bool verdict_ok(Verdict v) { return v != Verdict::fail && v != Verdict::missing; }

namespace {

double print_ulp(double value, int sig) {
  double av = std::fabs(value);
  if (av == 0.0) return 0.0;
  int exp10 = static_cast<int>(std::floor(std::log10(av)));
  return std::pow(10.0, exp10 - sig + 1);
}

}  // namespace

Verdict judge_cell(const GoldenData& g, const GoldenTable& t, const GoldenCell& c, double computed) {
  auto rtol_for = [&](double magnitude) {
    if (t.rtol > 0) return t.rtol;
    return std::fabs(magnitude) < g.small_threshold ? g.rtol_small : g.rtol_table;
  };
  if (c.attr == "noise") {
    return std::fabs(computed) < g.atol_noise ? Verdict::pass_noise : Verdict::fail;
  }
  if (c.attr.rfind("suspect", 0) == 0) {
    double e = c.expect.value_or(c.value);
    if (e == 0.0) return std::fabs(computed) < g.atol_noise ? Verdict::suspect_ok : Verdict::fail;
    return std::fabs(computed - e) <= rtol_for(e) * std::fabs(e) ? Verdict::suspect_ok : Verdict::fail;
  }
  double rtol = rtol_for(c.value);
  if (std::fabs(computed - c.value) <= rtol * std::fabs(c.value)) return Verdict::pass;
  if (c.sig >= 3 && std::fabs(computed - c.value) <= print_ulp(c.value, c.sig)) {
    return Verdict::pass_print_ulp;
  }
  return Verdict::fail;
}

}  // namespace qudit::report
