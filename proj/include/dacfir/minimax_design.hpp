#pragma once

#include <string_view>
#include <vector>

#include "dacfir/band_geometry.hpp"
#include "dacfir/fir_types.hpp"
#include "dacfir/pulses.hpp"

namespace dacfir {

/// One equalizer design: pulse, band, filter type and order.
struct DesignProblem {
  PulseKind kind;
  BandSpec band;
  LinearPhaseType type;
  int order;
};

/// Throws InvalidCombination / InvalidArgument describing the first violated rule.
void validate(const DesignProblem& problem);

/// Weighted Chebyshev form of the equalization problem.
///
/// With K from delay_K the complex error reduces to the real error
/// A(wT) H_R(wT) - s, where s = +1 for Types I/II and s = -1 for Types
/// III/IV (the pulse's j times the filter's j). Hence |E| = W |D - H_R| with
/// W = A and D = s / A.
///
/// For the exchange engine H_R = Q(wT) * sum_k p_k cos(k wT) with the fixed
/// factor Q = 1, cos(wT/2), sin(wT), sin(wT/2) for Types I..IV; |Q| moves
/// into the weight and sign(Q) into the desired response.
class ChebyshevReduction {
 public:
  explicit ChebyshevReduction(const DesignProblem& problem);

  const DesignProblem& problem() const noexcept { return problem_; }
  int free_parameters() const noexcept { return n_free_; }
  double target_sign() const noexcept { return sign_; }

  double amplitude(double wT) const;
  double desired(double wT) const;  // s / A
  double weight(double wT) const;   // A
  /// k-th basis function of the zero-phase expansion (see FirFilter).
  double basis(int k, double wT) const;

  double fixed_factor(double wT) const;  // Q
  double reduced_desired(double wT) const { return desired(wT) / fixed_factor(wT); }
  double reduced_weight(double wT) const;

  /// Maps cosine-polynomial coefficients p_0..p_{n-1} of the reduced problem
  /// onto the zero-phase expansion of the filter type.
  std::vector<double> expansion_from_cosine(const std::vector<double>& p) const;

 private:
  DesignProblem problem_;
  int n_free_;
  double sign_;
};

/// Throws InvalidCombination if the amplitude is non-positive anywhere on the grid.
ChebyshevReduction reduce_to_chebyshev(const DesignProblem& problem);

enum class Engine { Remez, Lp };
std::string_view to_string(Engine engine);

struct DesignResult {
  FirFilter filter;
  double delta_N;  // peak |E| over the design grid
  std::vector<double> extremal_frequencies;
  int iterations;
  Engine engine;
  bool converged;
};

struct DesignOptions {
  int grid_density = kDefaultGridDensity;
  double tol = 1e-6;
  int max_iter = 250;
};

/// Parks-McClellan multiple-exchange on the reduced cosine problem.
/// On non-convergence returns the best iterate with converged = false;
/// throws InvalidArgument when the problem has no free parameter.
DesignResult design_remez(const DesignProblem& problem, const FrequencyGrid& grid,
                          double tol = 1e-6, int max_iter = 250);

/// Epigraph LP on the same grid, solved exactly by simplex.
DesignResult design_lp(const DesignProblem& problem, const FrequencyGrid& grid);

/// Remez on the default grid, falling back to the LP engine if the exchange
/// does not converge.
DesignResult design(const DesignProblem& problem, const DesignOptions& options = {});

FrequencyGrid design_grid(const DesignProblem& problem, int density = kDefaultGridDensity);

/// Real error A H_R - s at wT for an arbitrary filter.
double reduced_error(const ChebyshevReduction& reduction, const FirFilter& filter, double wT);

struct Verification {
  double delta_verified;
  double worst_wT;
};

/// Peak of |H(e^{jwT}) P(jw)/T - e^{-jwTK}| on a grid dense_factor times
/// denser than the design grid; uses the direct complex responses only.
Verification verify_design(const FirFilter& filter, const DesignProblem& problem,
                           int dense_factor = 8, int density = kDefaultGridDensity);

/// Local extrema of a sampled error with alternating sign, largest first
/// within each same-sign run.
std::vector<int> alternating_extrema(const std::vector<double>& error);

}  // namespace dacfir
