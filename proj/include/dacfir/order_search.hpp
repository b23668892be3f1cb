#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dacfir/minimax_design.hpp"

namespace dacfir {

/// Target for the minimal-order search: pulse, band, type, bandwidth and accuracy.
struct OrderSpec {
  PulseKind kind;
  int nb;
  LinearPhaseType type;
  double bandwidth;
  double delta;
};

void validate(const OrderSpec& spec);

inline constexpr int kDefaultOrderCap = 400;

struct SearchOptions {
  DesignOptions design;
  int order_cap = kDefaultOrderCap;
};

struct MinimalOrder {
  int n_min;
  DesignResult design;
  int designs_evaluated;
};

/// Smallest order of the type's parity whose minimax error is <= delta.
/// delta_N is nonincreasing in N, so the search brackets from the hint (or
/// the smallest valid order) and certifies that n_min - 2 fails.
/// Throws OrderCapExceeded, reporting the best delta reached at the cap.
MinimalOrder minimal_order(const OrderSpec& spec, std::optional<int> hint = std::nullopt,
                           const SearchOptions& options = {});

inline constexpr int kFailedCell = -1;

struct SweepCell {
  int n_min = kFailedCell;
  double delta_achieved = 0.0;
  int iterations = 0;
};

struct SweepMetadata {
  PulseKind kind;
  int nb;
  LinearPhaseType type;
  int grid_density;
  double tol;
  int max_iter;
  int order_cap;
  std::string timestamp;
};

/// Minimal orders over a (B, delta) grid; n_min[i][j] belongs to
/// (B_values[i], delta_values[j]). Failed cells hold kFailedCell.
struct SweepGrid {
  std::vector<double> B_values;
  std::vector<double> delta_values;
  std::vector<std::vector<SweepCell>> cells;
  SweepMetadata metadata;

  int n_min(std::size_t i, std::size_t j) const { return cells[i][j].n_min; }
};

struct SweepAxes {
  double B_lo, B_hi;
  int nB;
  double delta_lo, delta_hi;
  int nD;
};

/// B linear, delta logarithmic, both endpoints included.
std::vector<double> bandwidth_axis(const SweepAxes& axes);
std::vector<double> delta_axis(const SweepAxes& axes);

struct SweepHooks {
  /// Returns a previously computed cell, if any (resume support).
  std::function<std::optional<SweepCell>(double B, double delta)> lookup;
  /// Called once per freshly computed cell; calls are serialized.
  std::function<void(double B, double delta, const SweepCell&)> record;
};

/// Rows are distributed over `threads` workers (0 = hardware concurrency).
/// Neighbouring cells seed the search hint; the answer of each cell does not
/// depend on the hint.
SweepGrid sweep(PulseKind kind, int nb, LinearPhaseType type, const SweepAxes& axes,
                const SearchOptions& options = {}, int threads = 0, const SweepHooks& hooks = {},
                bool warm_start = true);

}  // namespace dacfir
