#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "dacfir/minimax_design.hpp"

namespace dacfir::testing {

/// Every valid (pulse, band, type) combination.
inline std::vector<DesignProblem> valid_cases() {
  std::vector<DesignProblem> out;
  for (PulseKind k : kAllPulses)
    for (int nb : valid_nyquist_bands(k))
      for (LinearPhaseType t : kAllTypes)
        if (compatible(k, t)) out.push_back({k, {nb, 0.5 * std::numbers::pi}, t, smallest_valid_order(t)});
  return out;
}

/// Random valid problem with order <= max_order and B/pi in [0.04, 0.96].
inline DesignProblem random_problem(std::mt19937_64& rng, int max_order = 60) {
  static const std::vector<DesignProblem> cases = valid_cases();
  DesignProblem p = cases[std::uniform_int_distribution<std::size_t>(0, cases.size() - 1)(rng)];
  p.band.bandwidth = std::uniform_real_distribution<double>(0.04, 0.96)(rng) * std::numbers::pi;
  const int lo = smallest_valid_order(p.type);
  p.order = lo + 2 * std::uniform_int_distribution<int>(0, (max_order - lo) / 2)(rng);
  return p;
}

/// Sign alternations among the local extrema of the reduced error whose
/// magnitude is within rel of the peak.
inline int equiripple_alternations(const DesignProblem& p, const FirFilter& f, const FrequencyGrid& grid,
                                   double rel = 1e-4) {
  const ChebyshevReduction red(p);
  std::vector<double> e;
  double peak = 0.0;
  for (double w : grid.points) {
    e.push_back(reduced_error(red, f, w));
    peak = std::max(peak, std::abs(e.back()));
  }
  int count = 0;
  int last_sign = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (std::abs(e[i]) < (1.0 - rel) * peak) continue;
    const bool left = i == 0 || std::abs(e[i]) >= std::abs(e[i - 1]);
    const bool right = i + 1 == e.size() || std::abs(e[i]) >= std::abs(e[i + 1]);
    if (!left || !right) continue;
    const int s = e[i] > 0 ? 1 : -1;
    if (s != last_sign) ++count;
    last_sign = s;
  }
  return count;
}

}  // namespace dacfir::testing
