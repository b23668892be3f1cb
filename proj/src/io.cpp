#include "dacfir/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <unistd.h>

#include "dacfir/error.hpp"

namespace dacfir::io {
namespace {

constexpr double kPi = std::numbers::pi;

template <typename T>
T require(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::Format, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Format, std::string("field '") + key + "': " + e.what());
  }
}

PulseKind pulse_field(const json& j, const char* key) {
  const auto k = parse_pulse(require<std::string>(j, key));
  if (!k) throw Error(ErrorCode::Format, std::string("unknown pulse in '") + key + "'");
  return *k;
}

LinearPhaseType type_field(const json& j, const char* key) {
  const auto t = parse_filter_type(require<std::string>(j, key));
  if (!t) throw Error(ErrorCode::Format, std::string("unknown filter type in '") + key + "'");
  return *t;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::Format, "not a number: '" + s + "'");
  }
  if (used != s.size()) throw Error(ErrorCode::Format, "not a number: '" + s + "'");
  return v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

struct ParsedRow {
  double B;
  double delta;
  SweepCell cell;
};

std::optional<ParsedRow> parse_sweep_line(const std::string& line) {
  const auto f = split_csv(line);
  if (f.size() != 5) return std::nullopt;
  try {
    ParsedRow r{parse_double(f[0]) * kPi, parse_double(f[1]), {}};
    if (!f[2].empty()) {
      r.cell.n_min = static_cast<int>(parse_double(f[2]));
      r.cell.delta_achieved = parse_double(f[3]);
      r.cell.iterations = static_cast<int>(parse_double(f[4]));
    }
    return r;
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::vector<ParsedRow> parse_sweep_csv(const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  std::vector<ParsedRow> rows;
  bool header = true;
  while (std::getline(ss, line)) {
    if (header) {
      if (line != kSweepHeader) throw Error(ErrorCode::Format, "sweep CSV header mismatch");
      header = false;
      continue;
    }
    if (line.empty()) continue;
    if (auto r = parse_sweep_line(line)) rows.push_back(*r);
  }
  return rows;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json filter_to_json(const FilterRecord& r) {
  return json{{"schema_version", kFilterSchemaVersion},
              {"pulse", to_string(r.problem.kind)},
              {"nb", r.problem.band.nb},
              {"filter_type", to_string(r.problem.type)},
              {"order", r.problem.order},
              {"bandwidth_over_pi", r.problem.band.bandwidth / kPi},
              {"delay_K", r.delay_K},
              {"delta_achieved", r.delta_achieved},
              {"engine", to_string(r.engine)},
              {"coefficients", r.filter.coefficients()}};
}

FilterRecord filter_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::Format, "filter file must hold a JSON object");
  const int version = require<int>(j, "schema_version");
  if (version != kFilterSchemaVersion) {
    throw Error(ErrorCode::Format, "unsupported schema_version " + std::to_string(version));
  }
  DesignProblem problem{pulse_field(j, "pulse"),
                        {require<int>(j, "nb"), require<double>(j, "bandwidth_over_pi") * kPi},
                        type_field(j, "filter_type"),
                        require<int>(j, "order")};
  validate(problem);
  const std::string engine = require<std::string>(j, "engine");
  if (engine != "remez" && engine != "lp") throw Error(ErrorCode::Format, "unknown engine '" + engine + "'");
  auto coefficients = require<std::vector<double>>(j, "coefficients");
  if (static_cast<int>(coefficients.size()) != problem.order + 1) {
    throw Error(ErrorCode::Format, "coefficient count does not match order");
  }
  return {problem, require<double>(j, "delay_K"), require<double>(j, "delta_achieved"),
          engine == "remez" ? Engine::Remez : Engine::Lp,
          FirFilter(problem.type, std::move(coefficients))};
}

json params_to_json(const EstimateParams& p, std::optional<double> eps_max) {
  json prov{{"source", p.provenance.source == Provenance::Source::Builtin ? "builtin" : "fitted"}};
  if (p.provenance.kind) prov["pulse"] = to_string(*p.provenance.kind);
  if (p.provenance.nb) prov["nb"] = *p.provenance.nb;
  if (p.provenance.type) prov["filter_type"] = to_string(*p.provenance.type);
  if (!p.provenance.metadata.empty()) prov["metadata"] = p.provenance.metadata;
  json j{{"a1", p.a1}, {"a2", p.a2}, {"a3", p.a3}, {"a4", p.a4}, {"b1", p.b1},
         {"b2", p.b2}, {"b3", p.b3}, {"b4", p.b4}, {"c", p.c},   {"provenance", prov}};
  j["eps_max"] = eps_max ? json(*eps_max) : json(nullptr);
  return j;
}

std::pair<EstimateParams, std::optional<double>> params_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::Format, "parameter file must hold a JSON object");
  EstimateParams p{require<double>(j, "a1"), require<double>(j, "a2"), require<double>(j, "a3"),
                   require<double>(j, "a4"), require<double>(j, "b1"), require<double>(j, "b2"),
                   require<double>(j, "b3"), require<double>(j, "b4"), require<double>(j, "c"),
                   {}};
  if (j.contains("provenance")) {
    const json& prov = j.at("provenance");
    p.provenance.source = prov.value("source", "fitted") == "builtin" ? Provenance::Source::Builtin
                                                                      : Provenance::Source::Fitted;
    if (prov.contains("pulse")) p.provenance.kind = pulse_field(prov, "pulse");
    if (prov.contains("nb")) p.provenance.nb = require<int>(prov, "nb");
    if (prov.contains("filter_type")) p.provenance.type = type_field(prov, "filter_type");
    if (prov.contains("metadata")) {
      p.provenance.metadata = prov.at("metadata").get<std::map<std::string, std::string>>();
    }
  }
  std::optional<double> eps;
  if (j.contains("eps_max") && !j.at("eps_max").is_null()) eps = require<double>(j, "eps_max");
  if (!(p.a2 > 0.0 && p.b2 > 0.0)) throw Error(ErrorCode::Format, "a2 and b2 must be positive");
  return {p, eps};
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path dir = path.has_parent_path() ? path.parent_path() : ".";
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  const std::filesystem::path tmp =
      dir / ("." + path.filename().string() + ".tmp" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::Io, "cannot move file into place: " + path.string());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sweep_csv_line(double B, double delta, const SweepCell& cell) {
  std::string line = format_double(B / kPi) + "," + format_double(delta) + ",";
  if (cell.n_min >= 0) {
    line += std::to_string(cell.n_min) + "," + format_double(cell.delta_achieved) + "," +
            std::to_string(cell.iterations);
  } else {
    line += ",,";
  }
  return line;
}

std::string sweep_to_csv(const SweepGrid& grid) {
  std::string out = std::string(kSweepHeader) + "\n";
  for (std::size_t i = 0; i < grid.B_values.size(); ++i) {
    for (std::size_t j = 0; j < grid.delta_values.size(); ++j) {
      out += sweep_csv_line(grid.B_values[i], grid.delta_values[j], grid.cells[i][j]) + "\n";
    }
  }
  return out;
}

SweepCache::SweepCache(std::filesystem::path path) : path_(std::move(path)) {
  if (!std::filesystem::exists(path_)) return;
  for (const ParsedRow& r : parse_sweep_csv(read_file(path_))) cells_[{r.B, r.delta}] = r.cell;
}

std::optional<SweepCell> SweepCache::lookup(double B, double delta) const {
  // Keys go through the same B/pi text form as the file.
  const double key_B = parse_double(format_double(B / kPi)) * kPi;
  const auto it = cells_.find({key_B, delta});
  if (it == cells_.end()) return std::nullopt;
  return it->second;
}

void SweepCache::record(double B, double delta, const SweepCell& cell) {
  const bool fresh = !std::filesystem::exists(path_) || std::filesystem::file_size(path_) == 0;
  if (fresh && path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  std::FILE* f = std::fopen(path_.c_str(), "ab");
  if (!f) throw Error(ErrorCode::Io, "cannot append to " + path_.string());
  std::string text = fresh ? std::string(kSweepHeader) + "\n" : std::string();
  text += sweep_csv_line(B, delta, cell) + "\n";
  std::fwrite(text.data(), 1, text.size(), f);
  std::fflush(f);
  std::fclose(f);
  const double key_B = parse_double(format_double(B / kPi)) * kPi;
  cells_[{key_B, delta}] = cell;
}

SweepGrid sweep_from_csv(const std::string& text, const SweepMetadata& metadata) {
  const std::vector<ParsedRow> rows = parse_sweep_csv(text);
  if (rows.empty()) throw Error(ErrorCode::Format, "sweep CSV has no data rows");
  std::set<double> Bs, ds;
  for (const auto& r : rows) {
    Bs.insert(r.B);
    ds.insert(r.delta);
  }
  SweepGrid g;
  g.B_values.assign(Bs.begin(), Bs.end());
  g.delta_values.assign(ds.begin(), ds.end());
  g.cells.assign(g.B_values.size(), std::vector<SweepCell>(g.delta_values.size()));
  g.metadata = metadata;
  for (const auto& r : rows) {
    const auto i = std::lower_bound(g.B_values.begin(), g.B_values.end(), r.B) - g.B_values.begin();
    const auto j =
        std::lower_bound(g.delta_values.begin(), g.delta_values.end(), r.delta) - g.delta_values.begin();
    g.cells[i][j] = r.cell;
  }
  return g;
}

json sweep_metadata_to_json(const SweepMetadata& m) {
  return json{{"pulse", to_string(m.kind)},  {"nb", m.nb},
              {"filter_type", to_string(m.type)}, {"grid_density", m.grid_density},
              {"tol", m.tol},                {"max_iter", m.max_iter},
              {"order_cap", m.order_cap},    {"timestamp", m.timestamp}};
}

SweepMetadata sweep_metadata_from_json(const json& j) {
  return {pulse_field(j, "pulse"),        require<int>(j, "nb"),
          type_field(j, "filter_type"),   j.value("grid_density", kDefaultGridDensity),
          j.value("tol", 1e-6),           j.value("max_iter", 250),
          j.value("order_cap", kDefaultOrderCap), j.value("timestamp", std::string())};
}

double pulse_shape(PulseKind kind, double t) {
  if (t < 0.0 || t >= 1.0) return 0.0;
  switch (kind) {
    case PulseKind::NRTZ: return 1.0;
    case PulseKind::RTZ: return t < 0.5 ? 1.0 : 0.0;
    case PulseKind::RTC: return t < 0.5 ? 1.0 : -1.0;
    case PulseKind::RTCZ: return t < 0.25 ? 1.0 : (t < 0.5 ? -1.0 : 0.0);
  }
  return 0.0;
}

std::string plot_pulse_shapes(int points_per_period) {
  std::string out = "t_over_T,NRTZ,RTZ,RTC,RTCZ\n";
  const int total = points_per_period + points_per_period / 4;
  for (int i = 0; i <= total; ++i) {
    const double t = static_cast<double>(i) / points_per_period;
    out += format_double(t);
    for (PulseKind k : kAllPulses) out += "," + format_double(pulse_shape(k, t));
    out += "\n";
  }
  return out;
}

std::string plot_magnitude_responses(int points) {
  std::string out = "wT_over_pi,NRTZ,RTZ,RTC,RTCZ\n";
  for (double w : linspace(0.0, 6.0 * kPi, std::max(points, 2))) {
    out += format_double(w / kPi);
    for (PulseKind k : kAllPulses) out += "," + format_double(std::abs(pulse_frequency_response(k, w)));
    out += "\n";
  }
  return out;
}

std::vector<OrderCurvePoint> order_curves(const std::vector<double>& bandwidths, double delta,
                                          const SearchOptions& options) {
  std::vector<OrderCurvePoint> out;
  for (const auto& [key, row] : param_table()) {
    const auto [kind, nb, type] = key;
    std::optional<int> hint;
    for (double B : bandwidths) {
      OrderCurvePoint p{kind, nb, type, B, kFailedCell, evaluate_estimate(row.params, B, delta)};
      try {
        p.n_min = minimal_order({kind, nb, type, B, delta}, hint, options).n_min;
        hint = p.n_min;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::OrderCapExceeded) throw;
      }
      out.push_back(p);
    }
  }
  return out;
}

std::string order_curves_csv(const std::vector<OrderCurvePoint>& points, double delta) {
  std::string out = "pulse,nb,filter_type,B_over_pi,delta,n_min,n_est\n";
  for (const auto& p : points) {
    out += std::string(to_string(p.kind)) + "," + std::to_string(p.nb) + "," +
           std::string(to_string(p.type)) + "," + format_double(p.B / kPi) + "," +
           format_double(delta) + "," + (p.n_min >= 0 ? std::to_string(p.n_min) : "") + "," +
           format_double(p.n_est) + "\n";
  }
  return out;
}

}  // namespace dacfir::io
