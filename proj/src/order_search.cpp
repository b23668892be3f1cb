#include "dacfir/order_search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <map>
#include <mutex>
#include <numbers>
#include <thread>

#include "dacfir/error.hpp"

namespace dacfir {
namespace {

int to_parity(LinearPhaseType t, int order) {
  order = std::max(order, smallest_valid_order(t));
  return parity_matches(t, order) ? order : order + 1;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

}  // namespace

void validate(const OrderSpec& spec) {
  if (!(spec.delta > 0.0 && spec.delta < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "accuracy delta must satisfy 0 < delta < 1");
  }
  validate(DesignProblem{spec.kind, {spec.nb, spec.bandwidth}, spec.type,
                         smallest_valid_order(spec.type)});
}

MinimalOrder minimal_order(const OrderSpec& spec, std::optional<int> hint,
                           const SearchOptions& options) {
  validate(spec);
  const int floor = smallest_valid_order(spec.type);
  const int cap = to_parity(spec.type, options.order_cap) > options.order_cap
                      ? options.order_cap - 1
                      : options.order_cap;
  std::map<int, DesignResult> evaluated;
  auto evaluate = [&](int order) {
    const DesignProblem p{spec.kind, {spec.nb, spec.bandwidth}, spec.type, order};
    const FrequencyGrid grid = design_grid(p, options.design.grid_density);
    DesignResult r = design_remez(p, grid, options.design.tol, options.design.max_iter);
    // An unconverged iterate is still a real filter, so meeting delta with it
    // settles the question without the (slow at high order) LP.
    if (r.converged || r.delta_N <= spec.delta) return r;
    try {
      DesignResult exact = design_lp(p, grid);
      exact.iterations += r.iterations;
      return exact;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonConvergence) throw;
      return r;
    }
  };
  auto delta_at = [&](int order) -> double {
    auto it = evaluated.find(order);
    if (it == evaluated.end()) it = evaluated.emplace(order, evaluate(order)).first;
    return it->second.delta_N;
  };
  auto passes = [&](int order) { return delta_at(order) <= spec.delta; };

  int start = std::min(to_parity(spec.type, hint.value_or(floor)), cap);
  int lo;  // largest known failing order (or floor - 2)
  int hi;  // smallest known passing order
  if (passes(start)) {
    hi = start;
    lo = hi - 2;
    int step = 2;
    while (lo >= floor && passes(lo)) {
      hi = lo;
      step *= 2;
      lo = std::max(hi - step, floor);
      if (lo == hi) lo = hi - 2;
    }
    if (lo < floor) lo = floor - 2;
  } else {
    lo = start;
    hi = start + 2;
    int step = 2;
    while (hi <= cap && !passes(hi)) {
      lo = hi;
      step *= 2;
      hi = std::min(lo + step, cap);
      if (hi == lo) hi = cap + 2;
    }
    if (hi > cap) {
      throw Error(ErrorCode::OrderCapExceeded,
                  "no order up to " + std::to_string(cap) + " reaches delta = " +
                      short_number(spec.delta) + "; best delta_N = " + short_number(delta_at(cap)));
    }
  }
  // Parity-consistent bisection between lo (fails) and hi (passes).
  while (hi - lo > 2) {
    int mid = lo + ((hi - lo) / 4) * 2;
    if (mid == lo) mid += 2;
    if (passes(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  if (lo >= floor && passes(lo)) {
    throw Error(ErrorCode::Internal, "minimal-order certificate failed at N = " + std::to_string(lo));
  }
  return {hi, evaluated.at(hi), static_cast<int>(evaluated.size())};
}

std::vector<double> bandwidth_axis(const SweepAxes& axes) {
  return linspace(axes.B_lo, axes.B_hi, axes.nB);
}

std::vector<double> delta_axis(const SweepAxes& axes) {
  if (!(axes.delta_lo > 0.0) || !(axes.delta_hi > axes.delta_lo)) {
    throw Error(ErrorCode::InvalidArgument, "delta range must satisfy 0 < delta1 < delta2");
  }
  std::vector<double> exps = linspace(std::log10(axes.delta_lo), std::log10(axes.delta_hi), axes.nD);
  for (double& e : exps) e = std::pow(10.0, e);
  exps.front() = axes.delta_lo;
  exps.back() = axes.delta_hi;
  return exps;
}

SweepGrid sweep(PulseKind kind, int nb, LinearPhaseType type, const SweepAxes& axes,
                const SearchOptions& options, int threads, const SweepHooks& hooks,
                bool warm_start) {
  if (axes.nB < 2 || axes.nD < 2) {
    throw Error(ErrorCode::InvalidArgument, "sweep axes need at least two points each");
  }
  SweepGrid grid;
  grid.B_values = bandwidth_axis(axes);
  grid.delta_values = delta_axis(axes);
  grid.metadata = {kind,
                   nb,
                   type,
                   options.design.grid_density,
                   options.design.tol,
                   options.design.max_iter,
                   options.order_cap,
                   utc_timestamp()};
  for (double B : grid.B_values) {
    validate(OrderSpec{kind, nb, type, B, grid.delta_values.front()});
  }
  for (double d : grid.delta_values) validate(OrderSpec{kind, nb, type, grid.B_values.front(), d});

  const std::size_t nB = grid.B_values.size();
  const std::size_t nD = grid.delta_values.size();
  grid.cells.assign(nB, std::vector<SweepCell>(nD));

  std::mutex record_mutex;
  std::atomic<std::size_t> next_row{0};
  auto worker = [&] {
    for (std::size_t i = next_row++; i < nB; i = next_row++) {
      // Sweep each row from the loosest accuracy down: orders grow along the row.
      std::optional<int> hint;
      for (std::size_t jj = nD; jj-- > 0;) {
        const double B = grid.B_values[i];
        const double d = grid.delta_values[jj];
        SweepCell& cell = grid.cells[i][jj];
        if (hooks.lookup) {
          if (auto cached = hooks.lookup(B, d)) {
            cell = *cached;
            if (warm_start && cell.n_min >= 0) hint = cell.n_min;
            continue;
          }
        }
        try {
          const MinimalOrder r =
              minimal_order(OrderSpec{kind, nb, type, B, d}, warm_start ? hint : std::nullopt, options);
          cell = {r.n_min, r.design.delta_N, r.design.iterations};
          if (warm_start) hint = r.n_min;
        } catch (const Error&) {
          cell = {};
        }
        if (hooks.record) {
          const std::lock_guard lock(record_mutex);
          hooks.record(B, d, cell);
        }
      }
    }
  };
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min<int>(threads, static_cast<int>(nB));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return grid;
}

}  // namespace dacfir
