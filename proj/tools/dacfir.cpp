#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "dacfir/curve_fit.hpp"
#include "dacfir/error.hpp"
#include "dacfir/io.hpp"
#include "dacfir/minimax_design.hpp"
#include "dacfir/order_estimate.hpp"
#include "dacfir/order_search.hpp"

using namespace dacfir;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Config {
  std::string pulse, type;
  int nb = 1;
  int order = -1;
  double bandwidth = -1.0;  // B/pi
  double delta = -1.0;
  int density = kDefaultGridDensity;
  double tol = 1e-6;
  int max_iter = 250;
  int order_cap = kDefaultOrderCap;
  std::string engine = "auto";
  std::string output, input, params;
  int threads = 0;
  std::uint64_t seed = 1;
  int restarts = 5;
  // sweep axes, B in units of pi
  double b_lo = 0.04, b_hi = 0.96, d_lo = 1e-5, d_hi = 1e-1;
  int nB = 15, nD = 10;
  bool no_warm_start = false;
  std::string series = "magnitude";
  int points = 0;
  double fit_a = -2.0, fit_b = 1.0, fit_c = 0.0;
  bool fit_from_basic = false;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

PulseKind pulse_of(const Config& c) {
  if (c.pulse.empty()) fail(ErrorCode::InvalidArgument, "--pulse is required");
  auto k = parse_pulse(c.pulse);
  if (!k) fail(ErrorCode::InvalidArgument, "unknown pulse '" + c.pulse + "' (nrtz, rtz, rtc, rtcz)");
  return *k;
}

LinearPhaseType type_of(const Config& c) {
  if (c.type.empty()) fail(ErrorCode::InvalidArgument, "--type is required");
  auto t = parse_filter_type(c.type);
  if (!t) fail(ErrorCode::InvalidArgument, "unknown filter type '" + c.type + "' (I, II, III, IV)");
  return *t;
}

double bandwidth_of(const Config& c) {
  if (c.bandwidth < 0.0) fail(ErrorCode::InvalidArgument, "--bandwidth (B/pi) is required");
  return c.bandwidth * kPi;
}

double delta_of(const Config& c) {
  if (c.delta < 0.0) fail(ErrorCode::InvalidArgument, "--delta is required");
  return c.delta;
}

SearchOptions search_options(const Config& c) {
  return {{c.density, c.tol, c.max_iter}, c.order_cap};
}

void write_output(const Config& c, const std::string& text) {
  if (c.output.empty() || c.output == "-") {
    std::cout << text;
  } else {
    io::write_file_atomic(c.output, text);
  }
}

int cmd_design(const Config& c) {
  if (c.order < 0) fail(ErrorCode::InvalidArgument, "--order is required");
  const DesignProblem problem{pulse_of(c), {c.nb, bandwidth_of(c)}, type_of(c), c.order};
  validate(problem);
  DesignResult r = [&] {
    if (c.engine == "lp") return design_lp(problem, design_grid(problem, c.density));
    if (c.engine == "remez") {
      auto res = design_remez(problem, design_grid(problem, c.density), c.tol, c.max_iter);
      if (!res.converged) {
        fail(ErrorCode::NonConvergence,
             "exchange did not converge in " + std::to_string(c.max_iter) + " iterations");
      }
      return res;
    }
    if (c.engine != "auto") fail(ErrorCode::InvalidArgument, "unknown engine '" + c.engine + "'");
    return design(problem, {c.density, c.tol, c.max_iter});
  }();
  const Delay K = delay_K(problem.type, problem.order, problem.kind);
  const io::FilterRecord record{problem, K.value(), r.delta_N, r.engine, r.filter};
  const std::string text = io::filter_to_json(record).dump(2) + "\n";
  if (!c.output.empty()) io::write_file_atomic(c.output, text);

  std::printf("delta_N %s\n", io::format_double(r.delta_N).c_str());
  std::printf("delay_K %s\n", io::format_double(K.value()).c_str());
  std::printf("multipliers %d\n", multiplier_count(problem.type, problem.order));
  std::printf("engine %s iterations %d\n", std::string(to_string(r.engine)).c_str(), r.iterations);
  std::printf("extremal_wT_over_pi");
  for (double w : r.extremal_frequencies) std::printf(" %.6f", w / kPi);
  std::printf("\n");
  if (c.output.empty()) std::cout << text;
  return 0;
}

int cmd_search(const Config& c) {
  const OrderSpec spec{pulse_of(c), c.nb, type_of(c), bandwidth_of(c), delta_of(c)};
  validate(spec);
  std::optional<int> hint;
  try {
    hint = estimate_order(spec.kind, spec.nb, spec.type, spec.bandwidth, spec.delta);
  } catch (const Error&) {
  }
  const MinimalOrder m = minimal_order(spec, hint, search_options(c));
  std::printf("n_min %d\n", m.n_min);
  std::printf("delta_achieved %s\n", io::format_double(m.design.delta_N).c_str());
  std::printf("designs_evaluated %d\n", m.designs_evaluated);
  if (hint) std::printf("n_est %d\n", *hint);
  return 0;
}

int cmd_estimate(const Config& c) {
  const double B = bandwidth_of(c), delta = delta_of(c);
  EstimateParams p;
  std::optional<double> eps;
  if (!c.params.empty()) {
    std::tie(p, eps) = io::params_from_json(io::json::parse(io::read_file(c.params), nullptr, false));
  } else {
    const BuiltinRow row = builtin_params(pulse_of(c), c.nb, type_of(c));
    p = row.params;
    eps = row.eps_max;
  }
  const double n = evaluate_estimate(p, B, delta);
  std::printf("n_est_real %s\n", io::format_double(n).c_str());
  const std::optional<LinearPhaseType> type =
      !c.type.empty() ? std::optional(type_of(c)) : p.provenance.type;
  if (type) std::printf("n_est %d\n", order_from_estimate(n, *type));
  if (eps) std::printf("eps_max %s\n", io::format_double(*eps).c_str());
  return 0;
}

fs::path default_sweep_path(PulseKind kind, int nb, LinearPhaseType type) {
  const char* dir = std::getenv("DACFIR_CACHE_DIR");
  const std::string name = "sweep_" + std::string(to_string(kind)) + "_nb" + std::to_string(nb) +
                           "_" + std::string(to_string(type)) + ".csv";
  return dir && *dir ? fs::path(dir) / name : fs::path(name);
}

fs::path meta_path(const fs::path& csv) { return fs::path(csv.string() + ".meta.json"); }

int cmd_sweep(const Config& c) {
  const PulseKind kind = pulse_of(c);
  const LinearPhaseType type = type_of(c);
  validate(OrderSpec{kind, c.nb, type, c.b_lo * kPi, c.d_lo});
  validate(OrderSpec{kind, c.nb, type, c.b_hi * kPi, c.d_hi});
  if (c.nB < 1 || c.nD < 1) fail(ErrorCode::InvalidArgument, "grid sizes must be >= 1");
  const fs::path path = c.output.empty() ? default_sweep_path(kind, c.nb, type) : fs::path(c.output);

  const fs::path meta = meta_path(path);
  if (fs::exists(path) && fs::exists(meta)) {
    const SweepMetadata old =
        io::sweep_metadata_from_json(io::json::parse(io::read_file(meta), nullptr, false));
    if (old.kind != kind || old.nb != c.nb || old.type != type || old.grid_density != c.density ||
        old.tol != c.tol || old.max_iter != c.max_iter || old.order_cap != c.order_cap) {
      fail(ErrorCode::Format, "cache " + path.string() + " was produced with different settings");
    }
  }
  io::write_file_atomic(meta, io::sweep_metadata_to_json({kind, c.nb, type, c.density, c.tol,
                                                         c.max_iter, c.order_cap, ""})
                                  .dump(2) +
                              "\n");
  io::SweepCache cache(path);
  const std::size_t cached = cache.size();
  SweepHooks hooks{[&](double B, double d) { return cache.lookup(B, d); },
                   [&](double B, double d, const SweepCell& cell) { cache.record(B, d, cell); }};
  const SweepAxes axes{c.b_lo * kPi, c.b_hi * kPi, c.nB, c.d_lo, c.d_hi, c.nD};
  const SweepGrid grid = sweep(kind, c.nb, type, axes, search_options(c), c.threads, hooks, !c.no_warm_start);

  io::write_file_atomic(meta, io::sweep_metadata_to_json(grid.metadata).dump(2) + "\n");
  io::write_file_atomic(path, io::sweep_to_csv(grid));
  int failed = 0;
  for (const auto& row : grid.cells)
    for (const auto& cell : row) failed += cell.n_min < 0;
  std::printf("sweep %s cells %d cached %zu failed %d\n", path.string().c_str(), c.nB * c.nD,
              cached, failed);
  return 0;
}

SweepGrid load_sweep(const fs::path& path) {
  const fs::path meta = meta_path(path);
  if (!fs::exists(meta)) fail(ErrorCode::Io, "missing sweep metadata " + meta.string());
  const auto m = io::sweep_metadata_from_json(io::json::parse(io::read_file(meta), nullptr, false));
  return io::sweep_from_csv(io::read_file(path), m);
}

int cmd_fit(const Config& c) {
  if (c.input.empty()) fail(ErrorCode::InvalidArgument, "--input (sweep CSV) is required");
  const SweepGrid grid = load_sweep(c.input);
  const auto& m = grid.metadata;
  FitProblem problem{grid, default_init(m.kind, m.nb, m.type, c.fit_a, c.fit_b, c.fit_c), {}};
  if (c.fit_from_basic) {
    const BasicCoefficients basic = fit_initial_coefficients(grid);
    problem.init = default_init(m.kind, m.nb, m.type, basic.a, basic.b, basic.c);
  }
  FitOptions options;
  options.seed = c.seed;
  options.restarts = c.restarts;
  FitResult r = fit(problem, options);
  r.params.provenance.metadata["seed"] = std::to_string(c.seed);
  r.params.provenance.metadata["sweep"] = fs::path(c.input).filename().string();
  r.params.provenance.metadata["timestamp"] = m.timestamp;
  std::printf("eps %s iterations %d converged %d\n", io::format_double(r.eps).c_str(), r.iterations,
              r.converged ? 1 : 0);
  const std::string text = io::params_to_json(r.params, r.eps).dump(2) + "\n";
  if (c.output.empty()) {
    std::cout << text;
  } else {
    io::write_file_atomic(c.output, text);
  }
  return 0;
}

int cmd_verify(const Config& c) {
  if (c.input.empty()) fail(ErrorCode::InvalidArgument, "--input (filter JSON) is required");
  const auto j = io::json::parse(io::read_file(c.input), nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::Format, "not valid JSON: " + c.input);
  const io::FilterRecord r = io::filter_from_json(j);
  const Verification v = verify_design(r.filter, r.problem, 8, c.density);
  std::printf("delta_verified %s\n", io::format_double(v.delta_verified).c_str());
  std::printf("worst_wT_over_pi %s\n", io::format_double(v.worst_wT / kPi).c_str());
  std::printf("delta_recorded %s\n", io::format_double(r.delta_achieved).c_str());
  return 0;
}

int cmd_plot_data(const Config& c) {
  if (c.series == "pulses") {
    write_output(c, io::plot_pulse_shapes(c.points > 0 ? c.points : 400));
  } else if (c.series == "magnitude") {
    write_output(c, io::plot_magnitude_responses(c.points > 0 ? c.points : 1201));
  } else if (c.series == "orders") {
    const double delta = c.delta > 0.0 ? c.delta : 1e-3;
    const int n = c.points > 0 ? c.points : 24;
    std::vector<double> Bs;
    for (double b : linspace(c.b_lo * kPi, c.b_hi * kPi, n)) Bs.push_back(b);
    write_output(c, io::order_curves_csv(io::order_curves(Bs, delta, search_options(c)), delta));
  } else {
    fail(ErrorCode::InvalidArgument, "unknown series '" + c.series + "' (pulses, magnitude, orders)");
  }
  return 0;
}

void add_spec_flags(CLI::App* sub, Config& c, bool need_order) {
  sub->add_option("--pulse", c.pulse, "nrtz, rtz, rtc or rtcz");
  sub->add_option("--nb", c.nb, "Nyquist band 1..6");
  sub->add_option("--type", c.type, "linear-phase type I..IV");
  sub->add_option("--bandwidth", c.bandwidth, "bandwidth B/pi in (0,1)");
  if (need_order) sub->add_option("--order", c.order, "filter order N");
}

void add_engine_flags(CLI::App* sub, Config& c) {
  sub->add_option("--density", c.density, "grid points per free coefficient")->check(CLI::Range(8, 1 << 20));
  sub->add_option("--tol", c.tol, "exchange convergence tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--max-iter", c.max_iter, "exchange iteration limit")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimax FIR equalizers for DAC pulse shapes"};
  app.set_config("--config", "", "TOML/INI file with default flag values");
  app.require_subcommand(1);
  Config c;

  auto* design_cmd = app.add_subcommand("design", "design one equalizer of fixed order");
  add_spec_flags(design_cmd, c, true);
  add_engine_flags(design_cmd, c);
  design_cmd->add_option("--engine", c.engine, "auto, remez or lp");
  design_cmd->add_option("--output,-o", c.output, "filter JSON path");

  auto* search_cmd = app.add_subcommand("search", "minimal order meeting --delta");
  add_spec_flags(search_cmd, c, false);
  add_engine_flags(search_cmd, c);
  search_cmd->add_option("--delta", c.delta, "target peak error");
  search_cmd->add_option("--order-cap", c.order_cap, "largest order tried");

  auto* estimate_cmd = app.add_subcommand("estimate", "order estimate from fitted parameters");
  add_spec_flags(estimate_cmd, c, false);
  estimate_cmd->add_option("--delta", c.delta, "target peak error");
  estimate_cmd->add_option("--params", c.params, "parameter JSON instead of the built-in row");

  auto* sweep_cmd = app.add_subcommand("sweep", "minimal orders over a (B, delta) grid");
  add_spec_flags(sweep_cmd, c, false);
  add_engine_flags(sweep_cmd, c);
  sweep_cmd->add_option("--b-lo", c.b_lo, "lowest B/pi");
  sweep_cmd->add_option("--b-hi", c.b_hi, "highest B/pi");
  sweep_cmd->add_option("--b-points", c.nB, "number of bandwidths");
  sweep_cmd->add_option("--delta-lo", c.d_lo, "smallest delta");
  sweep_cmd->add_option("--delta-hi", c.d_hi, "largest delta");
  sweep_cmd->add_option("--delta-points", c.nD, "number of deltas (log spaced)");
  sweep_cmd->add_option("--order-cap", c.order_cap, "largest order tried");
  sweep_cmd->add_option("--threads", c.threads, "worker threads, 0 = all cores");
  sweep_cmd->add_flag("--no-warm-start", c.no_warm_start, "do not seed cells from neighbours");
  sweep_cmd->add_option("--output,-o", c.output, "sweep CSV (default under $DACFIR_CACHE_DIR)");

  auto* fit_cmd = app.add_subcommand("fit", "fit estimate parameters to a sweep");
  fit_cmd->add_option("--input,-i", c.input, "sweep CSV with .meta.json sidecar");
  fit_cmd->add_option("--seed", c.seed, "seed for restart perturbations");
  fit_cmd->add_option("--restarts", c.restarts, "perturbed restarts");
  fit_cmd->add_option("--init-a", c.fit_a, "initial a1");
  fit_cmd->add_option("--init-b", c.fit_b, "initial b1");
  fit_cmd->add_option("--init-c", c.fit_c, "initial c");
  fit_cmd->add_flag("--init-from-basic", c.fit_from_basic, "start from the best basic-form coefficients");
  fit_cmd->add_option("--output,-o", c.output, "parameter JSON path");

  auto* verify_cmd = app.add_subcommand("verify", "check an exported filter on a dense grid");
  verify_cmd->add_option("--input,-i", c.input, "filter JSON");
  verify_cmd->add_option("--density", c.density, "design grid density")->check(CLI::Range(8, 1 << 20));

  auto* plot_cmd = app.add_subcommand("plot-data", "CSV series for the figures");
  plot_cmd->add_option("--series", c.series, "pulses, magnitude or orders");
  plot_cmd->add_option("--points", c.points, "samples (orders: bandwidths)");
  plot_cmd->add_option("--delta", c.delta, "orders: target peak error (default 0.001)");
  plot_cmd->add_option("--b-lo", c.b_lo, "orders: lowest B/pi");
  plot_cmd->add_option("--b-hi", c.b_hi, "orders: highest B/pi");
  add_engine_flags(plot_cmd, c);
  plot_cmd->add_option("--output,-o", c.output, "CSV path, default stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    for (char& ch : msg)
      if (ch == '\n') ch = ' ';
    std::cerr << "error: code=" << to_string(ErrorCode::InvalidArgument) << " message=" << msg << "\n";
    return static_cast<int>(ErrorCode::InvalidArgument);
  }

  try {
    if (*design_cmd) return cmd_design(c);
    if (*search_cmd) return cmd_search(c);
    if (*estimate_cmd) return cmd_estimate(c);
    if (*sweep_cmd) return cmd_sweep(c);
    if (*fit_cmd) return cmd_fit(c);
    if (*verify_cmd) return cmd_verify(c);
    if (*plot_cmd) return cmd_plot_data(c);
  } catch (const Error& e) {
    std::cerr << "error: code=" << to_string(e.code()) << " message=" << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const io::json::exception& e) {
    std::cerr << "error: code=" << to_string(ErrorCode::Format) << " message=" << e.what() << "\n";
    return static_cast<int>(ErrorCode::Format);
  } catch (const std::exception& e) {
    std::cerr << "error: code=" << to_string(ErrorCode::Internal) << " message=" << e.what() << "\n";
    return static_cast<int>(ErrorCode::Internal);
  }
  return static_cast<int>(ErrorCode::Internal);
}
