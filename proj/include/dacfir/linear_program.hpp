#pragma once

#include <vector>

#include <Eigen/Dense>

namespace dacfir::lp {

enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };

struct StandardFormResult {
  Status status = Status::IterationLimit;
  Eigen::VectorXd x;       // primal solution
  Eigen::VectorXd duals;   // simplex multipliers y with A^T y <= c at optimum
  std::vector<int> basis;  // column indices of the final basis
  double objective = 0.0;
  int iterations = 0;
};

/// Two-phase revised simplex for
///   minimize c^T x  subject to  A x = b,  x >= 0.
/// Phase one is skipped when a feasible initial_basis (one column per row) is given.
/// Dense; the basis is refactorized every iteration, which is fine for the
/// few-hundred-row problems this library produces.
StandardFormResult solve_standard_form(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                       const Eigen::VectorXd& c, int max_iterations = 0,
                                       const std::vector<int>& initial_basis = {});

struct ChebyshevSolution {
  Status status = Status::IterationLimit;
  Eigen::VectorXd coefficients;
  double deviation = 0.0;  // max_i |w_i (A_i x - d_i)| recomputed at the solution
  int iterations = 0;
};

/// Discrete weighted Chebyshev (minimax) fit:
///   minimize_x max_i | w_i ((A x)_i - d_i) |
/// posed as the epigraph LP  min t  s.t.  +-w_i (A_i x - d_i) <= t  and
/// solved through its dual, which is in standard form.
ChebyshevSolution solve_chebyshev(const Eigen::MatrixXd& A, const Eigen::VectorXd& d,
                                  const Eigen::VectorXd& w);

}  // namespace dacfir::lp
