#include "dacfir/curve_fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "dacfir/error.hpp"
#include "dacfir/linear_program.hpp"

namespace dacfir {
namespace {

struct Sample {
  double gap;  // pi - B
  double delta;
  double n_min;
};

std::vector<Sample> samples_of(const SweepGrid& grid) {
  std::vector<Sample> out;
  for (std::size_t i = 0; i < grid.B_values.size(); ++i) {
    for (std::size_t j = 0; j < grid.delta_values.size(); ++j) {
      const int n = grid.n_min(i, j);
      if (n >= 0) out.push_back({std::numbers::pi - grid.B_values[i], grid.delta_values[j], double(n)});
    }
  }
  if (out.empty()) throw Error(ErrorCode::InvalidArgument, "sweep grid has no usable cells");
  return out;
}

double term(double scale, double power, double gap_power, const Sample& s) {
  return signed_pow(std::log10(scale * s.delta), power) / std::pow(s.gap, gap_power);
}

// Nonlinear coordinates: log10(a2), a3, a4, log10(b2), b3, b4.
using Theta = std::array<double, 6>;

Theta theta_of(const EstimateParams& p) {
  return {std::log10(p.a2), p.a3, p.a4, std::log10(p.b2), p.b3, p.b4};
}

class Objective {
 public:
  Objective(std::vector<Sample> samples, FitBounds bounds, bool fit_b)
      : samples_(std::move(samples)), bounds_(bounds), fit_b_(fit_b) {}

  double violation(const Theta& t) const {
    auto outside = [](double v, double lo, double hi) {
      return std::max(0.0, lo - v) + std::max(0.0, v - hi);
    };
    double v = outside(t[0], std::log10(bounds_.scale_lo), std::log10(bounds_.scale_hi)) +
               outside(t[1], bounds_.power_lo, bounds_.power_hi) +
               outside(t[2], bounds_.gap_lo, bounds_.gap_hi);
    if (fit_b_) {
      v += outside(t[3], std::log10(bounds_.scale_lo), std::log10(bounds_.scale_hi)) +
           outside(t[4], bounds_.power_lo, bounds_.power_hi) +
           outside(t[5], bounds_.gap_lo, bounds_.gap_hi) + std::max(0.0, t[2] - t[5]);
    }
    return v;
  }

  /// Best linear coefficients for theta and the resulting eps.
  EstimateParams solve(const Theta& t, double& eps) const {
    const int m = static_cast<int>(samples_.size());
    const int n = fit_b_ ? 3 : 2;
    Eigen::MatrixXd A(m, n);
    Eigen::VectorXd d(m);
    const double a2 = std::pow(10.0, t[0]);
    const double b2 = std::pow(10.0, t[3]);
    for (int i = 0; i < m; ++i) {
      const Sample& s = samples_[i];
      A(i, 0) = 1.0;
      A(i, 1) = term(a2, t[1], t[2], s);
      if (fit_b_) A(i, 2) = term(b2, t[4], t[5], s);
      d(i) = s.n_min;
    }
    EstimateParams p;
    p.a2 = a2;
    p.a3 = t[1];
    p.a4 = t[2];
    p.b2 = fit_b_ ? b2 : 1.0;
    p.b3 = fit_b_ ? t[4] : 2.0;
    p.b4 = fit_b_ ? t[5] : std::max(2.0, t[2]);
    if (!A.allFinite()) {
      eps = std::numeric_limits<double>::infinity();
      return p;
    }
    const lp::ChebyshevSolution sol = lp::solve_chebyshev(A, d, Eigen::VectorXd::Ones(m));
    if (sol.status != lp::Status::Optimal) {
      eps = std::numeric_limits<double>::infinity();
      return p;
    }
    p.c = sol.coefficients(0);
    p.a1 = sol.coefficients(1);
    p.b1 = fit_b_ ? sol.coefficients(2) : 0.0;
    eps = sol.deviation;
    return p;
  }

  double operator()(const Theta& t) const {
    const double v = violation(t);
    if (v > 0.0) return 1e9 * (1.0 + v);
    double eps = 0.0;
    solve(t, eps);
    return std::isfinite(eps) ? eps : 1e9;
  }

 private:
  std::vector<Sample> samples_;
  FitBounds bounds_;
  bool fit_b_;
};

struct SimplexOutcome {
  Theta best;
  double value;
  int iterations;
  bool converged;
};

SimplexOutcome nelder_mead(const Objective& f, const Theta& start, const Theta& step, int max_iter,
                           double tol) {
  constexpr int n = 6;
  std::array<Theta, n + 1> pts;
  std::array<double, n + 1> vals;
  pts[0] = start;
  for (int k = 0; k < n; ++k) {
    pts[k + 1] = start;
    pts[k + 1][k] += step[k];
  }
  for (int k = 0; k <= n; ++k) vals[k] = f(pts[k]);

  int iter = 0;
  bool converged = false;
  std::array<int, n + 1> order;
  while (iter < max_iter) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    const int best = order[0], worst = order[n], second = order[n - 1];
    double size = 0.0;
    for (int k = 0; k <= n; ++k) {
      for (int c = 0; c < n; ++c) size = std::max(size, std::abs(pts[k][c] - pts[best][c]));
    }
    if (vals[worst] - vals[best] <= tol * std::max(1.0, std::abs(vals[best])) && size < 1e-6) {
      converged = true;
      break;
    }
    ++iter;
    Theta centroid{};
    for (int k = 0; k <= n; ++k) {
      if (k == worst) continue;
      for (int c = 0; c < n; ++c) centroid[c] += pts[k][c] / n;
    }
    auto along = [&](double coef) {
      Theta t;
      for (int c = 0; c < n; ++c) t[c] = centroid[c] + coef * (pts[worst][c] - centroid[c]);
      return t;
    };
    const Theta reflected = along(-1.0);
    const double fr = f(reflected);
    if (fr < vals[best]) {
      const Theta expanded = along(-2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        pts[worst] = expanded;
        vals[worst] = fe;
      } else {
        pts[worst] = reflected;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = reflected;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const Theta contracted = along(outside ? -0.5 : 0.5);
    const double fc = f(contracted);
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = contracted;
      vals[worst] = fc;
      continue;
    }
    for (int k = 0; k <= n; ++k) {
      if (k == best) continue;
      for (int c = 0; c < n; ++c) pts[k][c] = pts[best][c] + 0.5 * (pts[k][c] - pts[best][c]);
      vals[k] = f(pts[k]);
    }
  }
  const int best = static_cast<int>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  return {pts[best], vals[best], iter, converged};
}

}  // namespace

EstimateParams default_init(PulseKind kind, int nb, LinearPhaseType type, double a, double b,
                            double c) {
  EstimateParams p{a, 1.0, 1.0, 1.0, b, 1.0, 2.0, 2.0, c, {}};
  p.provenance.source = Provenance::Source::Fitted;
  p.provenance.kind = kind;
  p.provenance.nb = nb;
  p.provenance.type = type;
  return p;
}

BasicCoefficients fit_initial_coefficients(const SweepGrid& grid) {
  const Objective f(samples_of(grid), FitBounds{}, true);
  double eps = 0.0;
  const EstimateParams p = f.solve(Theta{0.0, 1.0, 1.0, 0.0, 2.0, 2.0}, eps);
  if (!std::isfinite(eps)) throw Error(ErrorCode::Internal, "initial coefficient fit failed");
  return {p.a1, p.b1, p.c, eps};
}

EstimationError max_estimation_error(const EstimateParams& params, const SweepGrid& grid) {
  EstimationError worst{-1.0, 0, 0};
  for (std::size_t i = 0; i < grid.B_values.size(); ++i) {
    for (std::size_t j = 0; j < grid.delta_values.size(); ++j) {
      const int n = grid.n_min(i, j);
      if (n < 0) continue;
      const double e =
          std::abs(evaluate_estimate(params, grid.B_values[i], grid.delta_values[j]) - n);
      if (e > worst.eps) worst = {e, i, j};
    }
  }
  if (worst.eps < 0.0) throw Error(ErrorCode::InvalidArgument, "sweep grid has no usable cells");
  return worst;
}

FitResult fit(const FitProblem& problem, const FitOptions& options) {
  if (!problem.init.satisfies_constraints()) {
    throw Error(ErrorCode::InvalidArgument, "initial parameters violate a2, b2 > 0 or a4 <= b4");
  }
  const Objective f(samples_of(problem.grid), problem.bounds, options.fit_b_term);

  FitResult best{problem.init, max_estimation_error(problem.init, problem.grid).eps, 0, false};
  bool any_converged = false;
  bool improved_on_init = false;
  const Theta origin = theta_of(problem.init);
  const Theta step{0.3, 0.1, 0.1, 0.3, 0.1, 0.1};
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> jitter(-1.0, 1.0);

  for (int r = 0; r < std::max(1, options.restarts); ++r) {
    Theta start = origin;
    if (r > 0) {
      const Theta spread{1.0, 0.5, 0.25, 1.0, 0.5, 0.25};
      for (int c = 0; c < 6; ++c) start[c] += spread[c] * jitter(rng);
      if (f.violation(start) > 0.0) start = origin;
    }
    SimplexOutcome run = nelder_mead(f, start, step, options.max_iter, options.tol);
    int iterations = run.iterations;
    // Restarting from the collapsed simplex's best point escapes early stalls.
    for (int again = 0; again < 3; ++again) {
      SimplexOutcome next = nelder_mead(f, run.best, step, options.max_iter, options.tol);
      iterations += next.iterations;
      const bool improved = next.value < run.value - options.tol;
      if (next.value <= run.value) run = next;
      if (!improved) break;
    }
    best.iterations += iterations;
    any_converged = any_converged || run.converged;
    if (f.violation(run.best) > 0.0) continue;
    double eps = 0.0;
    EstimateParams candidate = f.solve(run.best, eps);
    if (!std::isfinite(eps)) continue;
    candidate.provenance = problem.init.provenance;
    candidate.provenance.source = Provenance::Source::Fitted;
    const double checked = max_estimation_error(candidate, problem.grid).eps;
    if (checked < best.eps) {
      best = {candidate, checked, best.iterations, run.converged};
      improved_on_init = true;
    }
  }
  if (!improved_on_init) best.converged = any_converged;
  return best;
}

}  // namespace dacfir
