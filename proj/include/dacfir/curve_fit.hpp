#pragma once

#include <cstdint>
#include <vector>

#include "dacfir/order_estimate.hpp"
#include "dacfir/order_search.hpp"

namespace dacfir {

/// Box bounds on the nonlinear parameters; a4 <= b4 keeps the two terms
/// from trading places.
struct FitBounds {
  double scale_lo = 1e-8, scale_hi = 1e3;  // a2, b2
  double power_lo = -2.0, power_hi = 4.0;  // a3, b3
  double gap_lo = 0.5, gap_hi = 3.0;       // a4, b4
};

struct FitProblem {
  SweepGrid grid;
  EstimateParams init;
  FitBounds bounds{};
};

struct FitOptions {
  int max_iter = 3000;  // Nelder-Mead iterations per start
  double tol = 1e-7;
  int restarts = 5;
  std::uint64_t seed = 1;
  bool fit_b_term = true;  // false freezes b1 = 0
};

struct FitResult {
  EstimateParams params;
  double eps;
  int iterations;
  bool converged;
};

/// Initial values with a1 = a, b1 = b, c, a2 = a3 = a4 = b2 = 1, b3 = b4 = 2.
EstimateParams default_init(PulseKind kind, int nb, LinearPhaseType type, double a = -2.0,
                            double b = 1.0, double c = 0.0);

struct BasicCoefficients {
  double a, b, c;
  double eps;
};

/// Minimax (a, b, c) for the estimate evaluated at the default_init
/// exponents, i.e. the best starting point of that shape for `grid`.
BasicCoefficients fit_initial_coefficients(const SweepGrid& grid);

/// Local minimax fit of all nine parameters. For fixed (a2, a3, a4, b2, b3,
/// b4) the best (a1, b1, c) solves a small LP exactly; the outer search is
/// Nelder-Mead with restarts from perturbed starting points.
/// Never returns an eps above that of problem.init.
FitResult fit(const FitProblem& problem, const FitOptions& options = {});

struct EstimationError {
  double eps;
  std::size_t i, j;  // argmax cell
};

/// Max |N_est - N_min| over non-failed cells; throws InvalidArgument if there are none.
EstimationError max_estimation_error(const EstimateParams& params, const SweepGrid& grid);

}  // namespace dacfir
