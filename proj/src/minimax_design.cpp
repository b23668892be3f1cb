#include "dacfir/minimax_design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "dacfir/error.hpp"
#include "dacfir/linear_program.hpp"

namespace dacfir {
namespace {

constexpr double kPi = std::numbers::pi;

// Barycentric weights 1/prod_{j!=k}(x_k - x_j), scaled by a common factor.
std::vector<double> barycentric_weights(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<double> logs(n, 0.0);
  std::vector<double> signs(n, 1.0);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == k) continue;
      const double diff = x[k] - x[j];
      logs[k] -= std::log(std::abs(diff));
      if (diff < 0.0) signs[k] = -signs[k];
    }
  }
  const double top = n == 0 ? 0.0 : *std::max_element(logs.begin(), logs.end());
  std::vector<double> w(n);
  for (std::size_t k = 0; k < n; ++k) w[k] = signs[k] * std::exp(logs[k] - top);
  return w;
}

// Second-form barycentric interpolation; accurate inside the node hull.
double barycentric_eval(std::span<const double> x, std::span<const double> w,
                        std::span<const double> y, double at) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double diff = at - x[k];
    if (diff == 0.0) return y[k];
    const double t = w[k] / diff;
    num += t * y[k];
    den += t;
  }
  return num / den;
}

// Cosine coefficients p_k with sum_k p_k cos(k wT_j) = y_j at the n nodes.
// Solved in the cosine basis directly; sampling the interpolant outside the
// band to get them loses accuracy when the band is narrow.
std::vector<double> cosine_coefficients(std::span<const double> wT, std::span<const double> y) {
  const int n = static_cast<int>(wT.size());
  Eigen::MatrixXd A(n, n);
  Eigen::VectorXd b(n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) A(j, k) = std::cos(k * wT[j]);
    b(j) = y[j];
  }
  const Eigen::VectorXd p = A.colPivHouseholderQr().solve(b);
  return {p.data(), p.data() + n};
}

std::vector<int> extremal_subset(const std::vector<double>& error, double level_tol) {
  std::vector<int> idx = alternating_extrema(error);
  double peak = 0.0;
  for (double e : error) peak = std::max(peak, std::abs(e));
  std::vector<int> out;
  for (int i : idx) {
    if (std::abs(error[i]) >= (1.0 - level_tol) * peak) out.push_back(i);
  }
  return out;
}

// Trims an alternating index set to exactly `keep` points, never dropping the
// global peak.
void trim_extrema(std::vector<int>& ext, const std::vector<double>& error, std::size_t keep) {
  auto mag = [&](int i) { return std::abs(error[i]); };
  while (ext.size() > keep) {
    if (ext.size() - keep == 1) {
      if (mag(ext.front()) < mag(ext.back())) {
        ext.erase(ext.begin());
      } else {
        ext.pop_back();
      }
      continue;
    }
    std::size_t smallest = 0;
    for (std::size_t k = 1; k < ext.size(); ++k) {
      if (mag(ext[k]) < mag(ext[smallest])) smallest = k;
    }
    if (smallest == 0 || smallest + 1 == ext.size()) {
      ext.erase(ext.begin() + static_cast<std::ptrdiff_t>(smallest));
      continue;
    }
    // Removing an interior point leaves two same-sign neighbours; keep the larger.
    const std::size_t drop = mag(ext[smallest - 1]) < mag(ext[smallest + 1]) ? smallest - 1 : smallest + 1;
    const std::size_t first = std::min(smallest, drop);
    ext.erase(ext.begin() + static_cast<std::ptrdiff_t>(first),
              ext.begin() + static_cast<std::ptrdiff_t>(first) + 2);
  }
}

// Reference indices nearest to the Chebyshev-Lobatto points of the x = cos(wT)
// image of the grid; the first and last grid points are always included.
std::vector<int> initial_reference(const std::vector<double>& x, int r) {
  const int m = static_cast<int>(x.size());
  const double a = x.front();
  const double b = x.back();
  std::vector<int> ext(r);
  int prev = -1;
  for (int k = 0; k < r; ++k) {
    const double target = 0.5 * (a + b) - 0.5 * (b - a) * std::cos(kPi * k / (r - 1));
    // x is monotone along the grid; advance to the closest point after prev.
    int i = prev + 1;
    while (i + 1 < m - (r - 1 - k) && std::abs(x[i + 1] - target) <= std::abs(x[i] - target)) ++i;
    ext[k] = i;
    prev = i;
  }
  return ext;
}

struct Sampled {
  std::vector<double> wT;
  std::vector<double> x;
  std::vector<double> desired;
  std::vector<double> weight;
};

Sampled sample(const ChebyshevReduction& red, const FrequencyGrid& grid) {
  Sampled s;
  s.wT = grid.points;
  const std::size_t m = s.wT.size();
  s.x.resize(m);
  s.desired.resize(m);
  s.weight.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    s.x[i] = std::cos(s.wT[i]);
    s.desired[i] = red.reduced_desired(s.wT[i]);
    s.weight[i] = red.reduced_weight(s.wT[i]);
  }
  return s;
}

DesignResult finish(const ChebyshevReduction& red, const FrequencyGrid& grid,
                    const std::vector<double>& cosine, std::vector<double> extremal, int iterations,
                    Engine engine, bool converged) {
  const DesignProblem& prob = red.problem();
  FirFilter filter =
      FirFilter::from_expansion(prob.type, prob.order, red.expansion_from_cosine(cosine));
  double peak = 0.0;
  for (double w : grid.points) peak = std::max(peak, std::abs(reduced_error(red, filter, w)));
  return {std::move(filter), peak, std::move(extremal), iterations, engine, converged};
}

}  // namespace

void validate(const DesignProblem& problem) {
  validate(problem.band);
  if (!is_valid_band(problem.kind, problem.band.nb)) {
    throw Error(ErrorCode::InvalidCombination,
                std::string(to_string(problem.kind)) + " pulse is not used in Nyquist band " +
                    std::to_string(problem.band.nb));
  }
  if (!compatible(problem.kind, problem.type)) {
    throw Error(ErrorCode::InvalidCombination,
                std::string(to_string(problem.kind)) + " pulse cannot be equalized by a Type " +
                    std::string(to_string(problem.type)) + " filter");
  }
  if (!parity_matches(problem.type, problem.order)) {
    throw Error(ErrorCode::InvalidArgument, "order " + std::to_string(problem.order) +
                                                " has wrong parity for Type " +
                                                std::string(to_string(problem.type)));
  }
  if (problem.order < smallest_valid_order(problem.type)) {
    throw Error(ErrorCode::InvalidArgument, "Type " + std::string(to_string(problem.type)) +
                                                " needs order >= " +
                                                std::to_string(smallest_valid_order(problem.type)));
  }
}

ChebyshevReduction::ChebyshevReduction(const DesignProblem& problem)
    : problem_(problem),
      n_free_(expansion_length(problem.type, problem.order)),
      sign_(is_symmetric(problem.type) ? 1.0 : -1.0) {}

double ChebyshevReduction::amplitude(double wT) const { return pulse_amplitude(problem_.kind, wT); }
double ChebyshevReduction::desired(double wT) const { return sign_ / amplitude(wT); }
double ChebyshevReduction::weight(double wT) const { return amplitude(wT); }

double ChebyshevReduction::basis(int k, double wT) const {
  switch (problem_.type) {
    case LinearPhaseType::I: return std::cos(k * wT);
    case LinearPhaseType::II: return std::cos((k + 0.5) * wT);
    case LinearPhaseType::III: return std::sin((k + 1) * wT);
    case LinearPhaseType::IV: return std::sin((k + 0.5) * wT);
  }
  return 0.0;
}

double ChebyshevReduction::fixed_factor(double wT) const {
  switch (problem_.type) {
    case LinearPhaseType::I: return 1.0;
    case LinearPhaseType::II: return std::cos(wT / 2.0);
    case LinearPhaseType::III: return std::sin(wT);
    case LinearPhaseType::IV: return std::sin(wT / 2.0);
  }
  return 1.0;
}

double ChebyshevReduction::reduced_weight(double wT) const {
  return weight(wT) * std::abs(fixed_factor(wT));
}

std::vector<double> ChebyshevReduction::expansion_from_cosine(const std::vector<double>& p) const {
  std::vector<double> e(n_free_, 0.0);
  const int n = static_cast<int>(p.size());
  switch (problem_.type) {
    case LinearPhaseType::I:
      e = p;
      break;
    case LinearPhaseType::II:
      // cos(wT/2) cos(k wT) = [cos((k+1/2)wT) + cos((k-1/2)wT)]/2; e[m] <-> cos((m+1/2)wT)
      for (int k = 0; k < n; ++k) {
        e[k] += p[k] / 2.0;
        e[k == 0 ? 0 : k - 1] += p[k] / 2.0;
      }
      break;
    case LinearPhaseType::III:
      // sin(wT) cos(k wT) = [sin((k+1)wT) - sin((k-1)wT)]/2; e[m] <-> sin((m+1)wT)
      for (int k = 0; k < n; ++k) {
        if (k + 1 <= n_free_) e[k] += p[k] / 2.0;
        if (k == 0) {
          e[0] += p[0] / 2.0;
        } else if (k >= 2) {
          e[k - 2] -= p[k] / 2.0;
        }
      }
      break;
    case LinearPhaseType::IV:
      // sin(wT/2) cos(k wT) = [sin((k+1/2)wT) - sin((k-1/2)wT)]/2; e[m] <-> sin((m+1/2)wT)
      for (int k = 0; k < n; ++k) {
        e[k] += p[k] / 2.0;
        if (k == 0) {
          e[0] += p[0] / 2.0;
        } else {
          e[k - 1] -= p[k] / 2.0;
        }
      }
      break;
  }
  return e;
}

ChebyshevReduction reduce_to_chebyshev(const DesignProblem& problem) {
  validate(problem);
  ChebyshevReduction red(problem);
  for (double w : linspace(band_interval(problem.band).lo, band_interval(problem.band).hi, 10000)) {
    if (!(red.amplitude(w) > 0.0)) {
      throw Error(ErrorCode::InvalidCombination, "pulse amplitude is not positive on the band");
    }
  }
  return red;
}

std::string_view to_string(Engine engine) { return engine == Engine::Remez ? "remez" : "lp"; }

FrequencyGrid design_grid(const DesignProblem& problem, int density) {
  return make_grid(problem.band, std::max(1, expansion_length(problem.type, problem.order)), density);
}

std::vector<int> alternating_extrema(const std::vector<double>& error) {
  const int m = static_cast<int>(error.size());
  std::vector<int> out;
  for (int i = 0; i < m; ++i) {
    const double e = error[i];
    if (e == 0.0) continue;
    const bool left_ok = i == 0 || (e > 0 ? e >= error[i - 1] : e <= error[i - 1]);
    const bool right_ok = i == m - 1 || (e > 0 ? e >= error[i + 1] : e <= error[i + 1]);
    if (!left_ok || !right_ok) continue;
    if (!out.empty() && (error[out.back()] > 0) == (e > 0)) {
      if (std::abs(e) > std::abs(error[out.back()])) out.back() = i;
    } else {
      out.push_back(i);
    }
  }
  return out;
}

DesignResult design_remez(const DesignProblem& problem, const FrequencyGrid& grid, double tol,
                          int max_iter) {
  const ChebyshevReduction red = reduce_to_chebyshev(problem);
  const int n = red.free_parameters();
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "problem has no free parameters");
  const Sampled s = sample(red, grid);
  const int m = static_cast<int>(s.x.size());
  const int r = n + 1;
  if (m < r) throw Error(ErrorCode::InvalidArgument, "grid has fewer points than extremal set");

  std::vector<int> ext = initial_reference(s.x, r);

  std::vector<double> error(m);
  std::vector<double> best_cosine;
  std::vector<int> best_ext;
  double best_peak = std::numeric_limits<double>::infinity();
  bool converged = false;
  int iter = 0;
  std::vector<double> xe(r), ce(r);
  while (iter < max_iter) {
    ++iter;
    for (int k = 0; k < r; ++k) xe[k] = s.x[ext[k]];
    const std::vector<double> gamma = barycentric_weights(xe);
    double num = 0.0;
    double den = 0.0;
    for (int k = 0; k < r; ++k) {
      const double alt = (k % 2 == 0) ? 1.0 : -1.0;
      num += gamma[k] * s.desired[ext[k]];
      den += gamma[k] * alt / s.weight[ext[k]];
    }
    const double level = num / den;
    for (int k = 0; k < r; ++k) {
      const double alt = (k % 2 == 0) ? 1.0 : -1.0;
      ce[k] = s.desired[ext[k]] - alt * level / s.weight[ext[k]];
    }
    // The degree n-1 interpolant through any n of the points passes through
    // all r; dropping an interior one keeps every reference point in the hull.
    std::vector<double> xi(xe), ci(ce), wi(r);
    for (int k = 0; k < r; ++k) wi[k] = s.wT[ext[k]];
    xi.erase(xi.begin() + r / 2);
    ci.erase(ci.begin() + r / 2);
    wi.erase(wi.begin() + r / 2);
    const std::vector<double> beta = barycentric_weights(xi);
    double peak = 0.0;
    for (int i = 0; i < m; ++i) {
      error[i] = s.weight[i] * (s.desired[i] - barycentric_eval(xi, beta, ci, s.x[i]));
      peak = std::max(peak, std::abs(error[i]));
    }
    if (peak < best_peak) {
      best_peak = peak;
      best_cosine = cosine_coefficients(wi, ci);
      best_ext = ext;
    }
    if (peak == 0.0 || (peak - std::abs(level)) <= tol * peak) {
      converged = true;
      best_cosine = cosine_coefficients(wi, ci);
      best_ext = ext;
      break;
    }

    std::vector<int> next;
    for (int i : alternating_extrema(error)) {
      if (std::abs(error[i]) >= std::abs(level)) next.push_back(i);
    }
    if (static_cast<int>(next.size()) < r) next = alternating_extrema(error);
    if (static_cast<int>(next.size()) < r) break;
    trim_extrema(next, error, r);
    if (next == ext) break;
    ext = std::move(next);
  }

  std::vector<double> freqs;
  freqs.reserve(best_ext.size());
  for (int i : best_ext) freqs.push_back(s.wT[i]);
  return finish(red, grid, best_cosine, std::move(freqs), iter, Engine::Remez, converged);
}

DesignResult design_lp(const DesignProblem& problem, const FrequencyGrid& grid) {
  const ChebyshevReduction red = reduce_to_chebyshev(problem);
  const int n = red.free_parameters();
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "problem has no free parameters");
  const Sampled s = sample(red, grid);
  const int m = static_cast<int>(s.x.size());
  // Chebyshev polynomials of x = cos(wT) mapped onto the band span the same
  // space as cos(k wT) but stay well conditioned on narrow bands.
  const double xa = s.x.front();
  const double xb = s.x.back();
  auto chebyshev_row = [&](double x, auto&& out) {
    const double t = (2.0 * x - (xa + xb)) / (xb - xa);
    double prev = 1.0, cur = t;
    out(0) = 1.0;
    if (n > 1) out(1) = t;
    for (int k = 2; k < n; ++k) {
      const double next = 2.0 * t * cur - prev;
      prev = cur;
      cur = next;
      out(k) = cur;
    }
  };
  Eigen::MatrixXd A(m, n);
  Eigen::VectorXd d(m), w(m);
  for (int i = 0; i < m; ++i) {
    chebyshev_row(s.x[i], A.row(i));
    d(i) = s.desired[i];
    w(i) = s.weight[i];
  }
  // The LP solves for a correction to a weighted least-squares fit, scaled so
  // the optimal deviation is O(1); the pricing tolerance is then relative to
  // delta instead of to the desired response.
  const Eigen::VectorXd p0 = (w.asDiagonal() * A).colPivHouseholderQr().solve(w.cwiseProduct(d));
  const Eigen::VectorXd r = d - A * p0;
  const double scale = std::max((w.cwiseProduct(r)).cwiseAbs().maxCoeff(), 1e-300);
  const lp::ChebyshevSolution sol = lp::solve_chebyshev(A, r / scale, w);
  if (sol.status != lp::Status::Optimal) {
    throw Error(ErrorCode::NonConvergence, "LP design did not reach an optimal basis");
  }
  const Eigen::VectorXd coeffs = p0 + scale * sol.coefficients;
  // Back to cosine coefficients through values at well-spread grid points.
  std::vector<double> nodes, values;
  for (int i : n > 1 ? initial_reference(s.x, n) : std::vector<int>{0}) {
    Eigen::RowVectorXd row(n);
    chebyshev_row(s.x[i], row);
    nodes.push_back(s.wT[i]);
    values.push_back(row.dot(coeffs));
  }
  const std::vector<double> cosine = cosine_coefficients(nodes, values);
  DesignResult result = finish(red, grid, cosine, {}, sol.iterations, Engine::Lp, true);

  std::vector<double> error(m);
  for (int i = 0; i < m; ++i) error[i] = reduced_error(red, result.filter, s.wT[i]);
  for (int i : extremal_subset(error, 1e-4)) result.extremal_frequencies.push_back(s.wT[i]);
  return result;
}

DesignResult design(const DesignProblem& problem, const DesignOptions& options) {
  const FrequencyGrid grid = design_grid(problem, options.grid_density);
  DesignResult result = design_remez(problem, grid, options.tol, options.max_iter);
  if (result.converged) return result;
  try {
    DesignResult fallback = design_lp(problem, grid);
    fallback.iterations += result.iterations;
    return fallback;
  } catch (const Error& e) {
    // At very high orders the error sits at rounding level and the LP can
    // stall; the best exchange iterate is still a valid upper bound.
    if (e.code() != ErrorCode::NonConvergence) throw;
    return result;
  }
}

double reduced_error(const ChebyshevReduction& reduction, const FirFilter& filter, double wT) {
  return reduction.amplitude(wT) * zero_phase_response(filter, wT) - reduction.target_sign();
}

Verification verify_design(const FirFilter& filter, const DesignProblem& problem, int dense_factor,
                           int density) {
  validate(problem);
  if (filter.type() != problem.type || filter.order() != problem.order) {
    throw Error(ErrorCode::InvalidArgument, "filter does not match the design problem");
  }
  const int base = static_cast<int>(design_grid(problem, density).points.size());
  const Interval band = band_interval(problem.band);
  const double K = delay_K(problem.type, problem.order, problem.kind).value();
  Verification v{0.0, band.lo};
  for (double w : linspace(band.lo, band.hi, std::max(2, base * std::max(1, dense_factor)))) {
    const std::complex<double> e = frequency_response(filter, w) *
                                       pulse_frequency_response(problem.kind, w) -
                                   std::polar(1.0, -w * K);
    if (std::abs(e) > v.delta_verified) v = {std::abs(e), w};
  }
  return v;
}

}  // namespace dacfir
