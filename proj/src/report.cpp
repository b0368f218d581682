#include "qudit/report/artifact.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "qudit/metrics.hpp"
#include "qudit/quantize.hpp"

namespace qudit::report {

namespace {

using R = Quad;

// Everything one table run needs on a given grid. Rebuilt per artifact;
// artifacts stay independent.
struct Lane {
  Grid g;
  CanonContext<R> ctx;
  std::optional<Spectral<R>> basis;

  explicit Lane(int d) : g(make_grid(d)), ctx(CanonContext<R>::build(g)) {}

  const Spectral<R>& comm_basis() {
    if (!basis) basis = commutator_eigenbasis<R>(g);
    return *basis;
  }
};

std::string case_name(int d) { return "d" + std::to_string(d); }

double parse_kappa(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return std::stod(s);
  return std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
}

// computed values keyed by (row, col) for the golden comparison
using CellMap = std::map<std::pair<std::string, std::string>, double>;

void attach_golden(Artifact& art, const GoldenData& g, const GoldenTable& t, const CellMap& computed) {
  for (const auto& c : t.cells) {
    CellResult r;
    r.row = c.row;
    r.col = c.col;
    r.reference = c.value;
    r.attr = c.attr;
    r.note = c.note;
    auto it = computed.find({c.row, c.col});
    if (it == computed.end()) {
      r.verdict = Verdict::missing;
    } else {
      r.computed = it->second;
      r.verdict = judge_cell(g, t, c, it->second);
    }
    art.verdicts.push_back(std::move(r));
  }
  art.golden_attached = true;
}

struct StateRow {
  std::string label;
  StateVec<R> state;
};

// residual/defect table body shared by T6..T13
void emit_state_rows(Artifact& art, Lane& lane, const std::vector<StateRow>& states, CellMap& cells) {
  art.columns = {"state", "residual", "defect"};
  for (const auto& srow : states) {
    R res = residual_norm(lane.ctx, srow.state);
    R dfc = expectation_defect(lane.ctx, srow.state);
    art.rows.push_back({srow.label, format_double(to_dbl(res)), format_double(to_dbl(dfc))});
    cells[{srow.label, "residual"}] = to_dbl(res);
    cells[{srow.label, "defect"}] = to_dbl(dfc);
  }
}

Artifact make_table(const std::string& id, const std::string& params) {
  Artifact a;
  a.kind = "table";
  a.id = id;
  a.params = params;
  return a;
}

const std::vector<std::string> kTables = {"T1", "T2", "T3", "T4", "T5", "T6", "T7",
                                          "T8", "T9", "T10", "T11", "T12", "T13"};
const std::vector<std::string> kFigures = {"F1", "F2", "F3"};

std::vector<int> default_dims(const std::string& id) {
  if (id == "T1" || id == "T4" || id == "T5") return {11, 31};
  if (id == "T2" || id == "T3") return {11};
  return {31};
}

std::vector<std::string> kappa_rows(const std::string& id, int d) {
  if (id == "T4") {
    return d == 31 ? std::vector<std::string>{"1", "2", "1/2", "3", "1/3"}
                   : std::vector<std::string>{"1", "2", "1/2"};
  }
  // T5
  if (d == 31) {
    return {"1", "2", "1/2", "3", "1/3", "4", "1/4", "5", "1/5", "6", "1/6", "7", "1/7", "8", "1/8"};
  }
  return {"1", "2", "1/2", "3", "1/3", "4", "1/4"};
}

}  // namespace

int Artifact::count(Verdict v) const {
  int n = 0;
  for (const auto& c : verdicts) {
    if (c.verdict == v) ++n;
  }
  return n;
}

bool Artifact::ok() const {
  for (const auto& c : verdicts) {
    if (!verdict_ok(c.verdict)) return false;
  }
  return true;
}

const std::vector<std::string>& all_table_ids() { return kTables; }
const std::vector<std::string>& all_figure_ids() { return kFigures; }

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Artifact run_table(const std::string& id, const RunOptions& opt, const GoldenData* golden) {
  std::vector<int> dims = opt.dimension ? std::vector<int>{*opt.dimension} : default_dims(id);
  const bool reference_run = !opt.dimension.has_value();
  std::string params = "d=";
  for (size_t i = 0; i < dims.size(); ++i) params += (i ? "," : "") + std::to_string(dims[i]);
  Artifact art = make_table(id, params);

  auto attach = [&](Lane& lane, const CellMap& cells) {
    if (!golden || !reference_run) return;
    if (const GoldenTable* t = golden->find_table(id, case_name(lane.g.d))) {
      attach_golden(art, *golden, *t, cells);
    }
  };

  if (id == "T1") {
    art.columns = {"case", "rank", "eigenvalue_im"};
    for (int d : dims) {
      Lane lane(d);
      const auto& sp = lane.comm_basis();
      CellMap cells;
      for (int k = 0; k < sp.size(); ++k) {
        double v = to_dbl(sp.values[static_cast<size_t>(k)].imag());
        art.rows.push_back({case_name(d), std::to_string(k), format_double(v)});
        cells[{std::to_string(k), "eigenvalue_im"}] = v;
      }
      attach(lane, cells);
    }
  } else if (id == "T2") {
    art.columns = {"k", "norm_minus_1", "norm_plus_1", "norm_minus_i", "norm_plus_i", "fourier_class"};
    for (int d : dims) {
      Lane lane(d);
      const auto& sp = lane.comm_basis();
      CellMap cells;
      for (int k = 0; k < sp.size(); ++k) {
        auto fc = fourier_eigenclass(lane.ctx, sp.vectors[static_cast<size_t>(k)]);
        std::string row = "k" + std::to_string(k + 1);
        art.rows.push_back({row, format_double(to_dbl(fc.norms[0])), format_double(to_dbl(fc.norms[1])),
                            format_double(to_dbl(fc.norms[2])), format_double(to_dbl(fc.norms[3])),
                            fc.cls ? std::to_string(*fc.cls) : "none"});
        const char* cols[4] = {"norm_minus_1", "norm_plus_1", "norm_minus_i", "norm_plus_i"};
        for (int j = 0; j < 4; ++j) cells[{row, cols[j]}] = to_dbl(fc.norms[j]);
      }
      attach(lane, cells);
    }
  } else if (id == "T3") {
    const std::vector<std::string> kaps = {"1", "2", "1/2", "3", "1/3"};
    art.columns = {"state"};
    for (const auto& k : kaps) art.columns.push_back("kappa=" + k);
    for (int d : dims) {
      Lane lane(d);
      const auto& sp = lane.comm_basis();
      CellMap cells;
      std::vector<std::vector<R>> coords;
      for (const auto& ks : kaps) {
        coords.push_back(gaussian_coordinates(sp, discrete_gaussian<R>(lane.g, R(parse_kappa(ks)))));
      }
      for (int j = 0; j < lane.g.d; ++j) {
        std::vector<std::string> row = {"phi" + std::to_string(j)};
        for (size_t c = 0; c < kaps.size(); ++c) {
          double v = to_dbl(coords[c][static_cast<size_t>(j)]);
          row.push_back(format_double(v));
          cells[{"phi" + std::to_string(j), "kappa=" + kaps[c]}] = v;
        }
        art.rows.push_back(std::move(row));
      }
      attach(lane, cells);
    }
  } else if (id == "T4" || id == "T5") {
    const bool residual_table = (id == "T4");
    art.columns = {"case", "kappa", residual_table ? "residual" : "defect"};
    for (int d : dims) {
      Lane lane(d);
      CellMap cells;
      for (const auto& ks : kappa_rows(id, d)) {
        StateVec<R> gk = discrete_gaussian<R>(lane.g, R(parse_kappa(ks)));
        double v = residual_table ? to_dbl(residual_norm(lane.ctx, gk))
                                  : to_dbl(expectation_defect(lane.ctx, gk));
        art.rows.push_back({case_name(d), ks, format_double(v)});
        cells[{"kappa=" + ks, residual_table ? "residual" : "defect"}] = v;
      }
      attach(lane, cells);
    }
  } else if (id == "T6") {
    for (int d : dims) {
      Lane lane(d);
      int top = std::min(10, 2 * lane.g.s);
      std::vector<StateRow> states;
      for (int n = 0; n <= top; ++n) states.push_back({"C" + std::to_string(n), creation_power_state<R>(lane.g, n)});
      CellMap cells;
      emit_state_rows(art, lane, states, cells);
      attach(lane, cells);
    }
  } else if (id == "T7" || id == "T9" || id == "T12") {
    for (int d : dims) {
      Lane lane(d);
      std::vector<StateVec<R>> eig;
      char prefix;
      int top;
      if (id == "T7") {
        eig = oscillator_eigenstates<R>(lane.g);
        prefix = 'O';
        top = std::min(10, d - 1);
      } else if (id == "T9") {
        eig = quantized_eigenstates<R>(lane.g);
        prefix = 'Q';
        top = std::min(10, d - 1);
        art.notes.push_back(kQuantizedOscillatorShiftNote);
      } else {
        eig = harper_eigenstates<R>(lane.g);
        prefix = 'H';
        top = std::min(7, d - 1);
      }
      std::vector<StateRow> states;
      for (int n = 0; n <= top; ++n)
        states.push_back({std::string(1, prefix) + std::to_string(n), std::move(eig[static_cast<size_t>(n)])});
      CellMap cells;
      emit_state_rows(art, lane, states, cells);
      attach(lane, cells);
    }
  } else if (id == "T8") {
    for (int d : dims) {
      Lane lane(d);
      int top = std::min(5, lane.g.s);
      std::vector<StateRow> states;
      for (int n = 0; n <= top; ++n) {
        for (int k = 0; k <= top; ++k) {
          states.push_back({std::to_string(n) + "," + std::to_string(k),
                            coherent_state<R>(lane.g, PhasePoint{n, k}, /*weighted=*/false)});
        }
      }
      CellMap cells;
      emit_state_rows(art, lane, states, cells);
      attach(lane, cells);
    }
  } else if (id == "T10") {
    for (int d : dims) {
      Lane lane(d);
      auto eig = annihilation_eigenstates<R>(lane.g);
      int top = std::min(19, d - 1);
      std::vector<StateRow> states;
      for (int n = 0; n <= top; ++n)
        states.push_back({"A" + std::to_string(n), std::move(eig[static_cast<size_t>(n)])});
      CellMap cells;
      emit_state_rows(art, lane, states, cells);
      attach(lane, cells);
    }
  } else if (id == "T11") {
    for (int d : dims) {
      Lane lane(d);
      int top = std::min(10, d - 1);
      std::vector<StateRow> states;
      for (int n = 0; n <= top; ++n) states.push_back({"M" + std::to_string(n), mehta_state<R>(lane.g, n)});
      CellMap cells;
      emit_state_rows(art, lane, states, cells);
      attach(lane, cells);
    }
  } else if (id == "T13") {
    for (int d : dims) {
      Lane lane(d);
      std::vector<StateRow> states;
      for (int m = -lane.g.s; m <= std::min(-lane.g.s + 2, lane.g.s); ++m) {
        states.push_back({"K" + std::to_string(m), kravchuk_state<R>(lane.g, m)});
      }
      CellMap cells;
      emit_state_rows(art, lane, states, cells);
      attach(lane, cells);
    }
  } else {
    throw DomainError("unknown table id: " + id);
  }
  return art;
}

Artifact run_figure(const std::string& id, const RunOptions& opt, const GoldenData* golden) {
  Artifact art;
  art.kind = "figure";
  art.id = id;
  const bool reference_run = !opt.dimension.has_value();

  if (id == "F1") {
    int d = opt.dimension.value_or(31);
    art.params = "d=" + std::to_string(d);
    Grid g = make_grid(d);
    StateVec<R> g3 = discrete_gaussian<R>(g, R(3));
    StateVec<R> g13 = discrete_gaussian<R>(g, R(1) / R(3));
    art.columns = {"n", "g3", "g1over3"};
    for (int n = -g.s; n <= g.s; ++n) {
      art.rows.push_back({std::to_string(n), format_double(to_dbl(g3.at(n).real())),
                          format_double(to_dbl(g13.at(n).real()))});
    }
    return art;
  }
  if (id != "F2" && id != "F3") throw DomainError("unknown figure id: " + id);

  const bool residual_figure = (id == "F2");
  double kmin = opt.kappa_min > 0 ? opt.kappa_min : (residual_figure ? 0.5 : 0.25);
  double kmax = opt.kappa_max > 0 ? opt.kappa_max : (residual_figure ? 2.0 : 4.0);
  int npts = opt.kappa_points > 1 ? opt.kappa_points : 200;
  std::vector<int> dims = opt.dimension ? std::vector<int>{*opt.dimension} : std::vector<int>{11, 31};

  char pbuf[96];
  std::snprintf(pbuf, sizeof pbuf, "kappa=[%g,%g] n=%d", kmin, kmax, npts);
  art.params = pbuf;
  art.columns = {"kappa"};
  for (int d : dims) {
    art.columns.push_back((residual_figure ? "residual_d" : "defect_d") + std::to_string(d));
  }

  std::vector<Lane> lanes;
  lanes.reserve(dims.size());
  for (int d : dims) lanes.emplace_back(d);

  std::vector<double> kappas(static_cast<size_t>(npts));
  for (int i = 0; i < npts; ++i) {
    double t = static_cast<double>(i) / (npts - 1);
    kappas[static_cast<size_t>(i)] = kmin * std::pow(kmax / kmin, t);
  }

  std::vector<std::vector<double>> curve(dims.size(), std::vector<double>(static_cast<size_t>(npts)));
  for (size_t li = 0; li < lanes.size(); ++li) {
    Lane& lane = lanes[li];
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < npts; ++i) {
      StateVec<R> gk = discrete_gaussian<R>(lane.g, R(kappas[static_cast<size_t>(i)]));
      curve[li][static_cast<size_t>(i)] = residual_figure ? to_dbl(residual_norm(lane.ctx, gk))
                                                          : to_dbl(expectation_defect(lane.ctx, gk));
    }
  }
  for (int i = 0; i < npts; ++i) {
    std::vector<std::string> row = {format_double(kappas[static_cast<size_t>(i)])};
    for (size_t li = 0; li < lanes.size(); ++li) row.push_back(format_double(curve[li][static_cast<size_t>(i)]));
    art.rows.push_back(std::move(row));
  }

  // golden spot checks at the exact reference kappas (independent of the grid)
  if (golden && reference_run) {
    if (const GoldenFigure* gf = golden->find_figure(id)) {
      art.golden_attached = true;
      for (const auto& spot : gf->spots) {
        Lane* lane = nullptr;
        for (size_t li = 0; li < lanes.size(); ++li) {
          if (case_name(lanes[li].g.d) == spot.case_name) lane = &lanes[li];
        }
        if (!lane) continue;
        StateVec<R> gk = discrete_gaussian<R>(lane->g, R(parse_kappa(spot.kappa)));
        double v = residual_figure ? to_dbl(residual_norm(lane->ctx, gk))
                                   : to_dbl(expectation_defect(lane->ctx, gk));
        CellResult r;
        r.row = "kappa=" + spot.kappa;
        r.col = spot.case_name;
        r.computed = v;
        r.reference = spot.value;
        r.attr = spot.attr;
        if (spot.attr == "noise") {
          r.verdict = std::fabs(v) < golden->atol_noise ? Verdict::pass_noise : Verdict::fail;
        } else {
          double rtol = std::fabs(spot.value) < golden->small_threshold ? golden->rtol_small
                                                                        : golden->rtol_table;
          r.verdict = std::fabs(v - spot.value) <= rtol * std::fabs(spot.value) ? Verdict::pass
                                                                                : Verdict::fail;
        }
        art.verdicts.push_back(std::move(r));
      }
    }
  }
  return art;
}

RunAllResult run_all(const Config& cfg, const GoldenData* golden) {
  RunAllResult out;
  const auto& tables = cfg.tables ? *cfg.tables : all_table_ids();
  const auto& figures = cfg.figures ? *cfg.figures : all_figure_ids();
  auto opts_for = [&cfg](const std::string& id) {
    RunOptions o;
    auto it = cfg.dimension_overrides.find(id);
    if (it != cfg.dimension_overrides.end()) o.dimension = it->second;
    return o;
  };
  for (const auto& id : tables) {
    try {
      out.artifacts.push_back(run_table(id, opts_for(id), golden));
    } catch (const std::exception& e) {
      out.summary.failures.push_back(id + ": error: " + e.what());
    }
  }
  for (const auto& id : figures) {
    try {
      out.artifacts.push_back(run_figure(id, opts_for(id), golden));
    } catch (const std::exception& e) {
      out.summary.failures.push_back(id + ": error: " + e.what());
    }
  }
  out.summary.artifacts = static_cast<int>(out.artifacts.size());
  for (const auto& a : out.artifacts) {
    for (const auto& c : a.verdicts) {
      ++out.summary.verdict_counts[verdict_name(c.verdict)];
      if (!verdict_ok(c.verdict)) {
        out.summary.failures.push_back(a.id + " " + c.row + "/" + c.col + ": " +
                                       verdict_name(c.verdict) + " (computed " +
                                       format_double(c.computed) + ", reference " +
                                       format_double(c.reference) + ")");
      }
    }
  }
  return out;
}

namespace {

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

void atomic_write(const std::string& path, const std::string& body) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp);
    f << body;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

void write_artifact(const Artifact& a, const std::string& out_dir, const std::string& format) {
  std::filesystem::create_directories(out_dir);
  if (format == "csv") {
    std::string body;
    for (size_t i = 0; i < a.columns.size(); ++i) body += (i ? "," : "") + csv_quote(a.columns[i]);
    body += '\n';
    for (const auto& row : a.rows) {
      for (size_t i = 0; i < row.size(); ++i) body += (i ? "," : "") + csv_quote(row[i]);
      body += '\n';
    }
    atomic_write(out_dir + "/" + a.id + ".csv", body);
  } else if (format == "json") {
    nlohmann::json j;
    j["kind"] = a.kind;
    j["id"] = a.id;
    j["params"] = a.params;
    j["columns"] = a.columns;
    j["rows"] = a.rows;
    j["notes"] = a.notes;
    atomic_write(out_dir + "/" + a.id + ".json", j.dump(1) + "\n");
  } else {
    throw DomainError("unknown output format: " + format);
  }
}

void write_manifest(const RunAllResult& r, const Config& cfg) {
  std::filesystem::create_directories(cfg.out_dir);
  nlohmann::json j;
  j["version"] = kToolkitVersion;
  j["precision_lane"] = "float128";
  auto now = std::chrono::system_clock::now();
  j["timestamp_unix"] = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
  {
    GoldenData defaults;  // tolerance knobs as configured in the dataset
    try {
      defaults = GoldenData::load(GoldenData::default_path());
    } catch (...) {
    }
    j["tolerances"] = {{"rtol_table", defaults.rtol_table},
                       {"rtol_small", defaults.rtol_small},
                       {"small_threshold", defaults.small_threshold},
                       {"atol_noise", defaults.atol_noise}};
  }
  nlohmann::json arts = nlohmann::json::array();
  for (const auto& a : r.artifacts) {
    nlohmann::json ja;
    ja["id"] = a.id;
    ja["kind"] = a.kind;
    ja["params"] = a.params;
    ja["file"] = a.id + "." + cfg.format;
    ja["golden_attached"] = a.golden_attached;
    ja["notes"] = a.notes;
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : a.verdicts) {
      nlohmann::json jc;
      jc["row"] = c.row;
      jc["col"] = c.col;
      jc["computed"] = c.computed;
      jc["reference"] = c.reference;
      jc["verdict"] = verdict_name(c.verdict);
      if (!c.attr.empty()) jc["attr"] = c.attr;
      if (!c.note.empty()) jc["note"] = c.note;
      cells.push_back(std::move(jc));
    }
    ja["cells"] = std::move(cells);
    arts.push_back(std::move(ja));
  }
  j["artifacts"] = std::move(arts);
  j["verdict_counts"] = r.summary.verdict_counts;
  j["failures"] = r.summary.failures;
  j["ok"] = r.summary.ok();
  atomic_write(cfg.out_dir + "/manifest.json", j.dump(1) + "\n");
}

Config parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    size_t line = 1;
    for (size_t i = 0; i < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') ++line;
    }
    throw std::runtime_error("config parse error at " + path + ":" + std::to_string(line) + ": " + e.what());
  }
  Config cfg;
  for (const auto& [key, val] : j.items()) {
    if (key == "tables") cfg.tables = val.get<std::vector<std::string>>();
    else if (key == "figures") cfg.figures = val.get<std::vector<std::string>>();
    else if (key == "out_dir") cfg.out_dir = val.get<std::string>();
    else if (key == "format") cfg.format = val.get<std::string>();
    else if (key == "dimension_overrides") {
      for (const auto& [tid, dv] : val.items()) cfg.dimension_overrides[tid] = dv.get<int>();
    } else {
      throw std::runtime_error("config: unknown field '" + key + "'");
    }
  }
  if (cfg.format != "csv" && cfg.format != "json") {
    throw std::runtime_error("config: format must be csv or json, got '" + cfg.format + "'");
  }
  auto known = [](const std::vector<std::string>& ids, const std::string& v) {
    for (const auto& id : ids) {
      if (id == v) return true;
    }
    return false;
  };
  if (cfg.tables) {
    for (const auto& t : *cfg.tables) {
      if (!known(all_table_ids(), t)) throw std::runtime_error("config: unknown table id '" + t + "'");
    }
  }
  if (cfg.figures) {
    for (const auto& f : *cfg.figures) {
      if (!known(all_figure_ids(), f)) throw std::runtime_error("config: unknown figure id '" + f + "'");
    }
  }
  return cfg;
}

}  // namespace qudit::report
