#include "dacfir/linear_program.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dacfir/error.hpp"

namespace dacfir::lp {
namespace {

constexpr double kPivotTol = 1e-11;

struct Tableau {
  const Eigen::MatrixXd& A;
  const Eigen::VectorXd& b;
  int rows;
  int cols;  // structural columns; artificial column r has index cols + r

  Eigen::VectorXd column(int j) const {
    if (j < cols) return A.col(j);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(rows);
    e(j - cols) = 1.0;
    return e;
  }
};

Eigen::MatrixXd basis_matrix(const Tableau& t, const std::vector<int>& basis) {
  Eigen::MatrixXd B(t.rows, t.rows);
  for (int r = 0; r < t.rows; ++r) B.col(r) = t.column(basis[r]);
  return B;
}

// Runs simplex iterations with the given cost vector (indexed over
// structural + artificial columns). Artificial columns never re-enter.
Status iterate(const Tableau& t, const Eigen::VectorXd& cost, std::vector<int>& basis,
               Eigen::VectorXd& xb, Eigen::VectorXd& y, int& iterations, int max_iterations) {
  const double cost_scale = std::max(1.0, cost.head(t.cols).cwiseAbs().maxCoeff());
  int degenerate_run = 0;
  while (true) {
    const Eigen::MatrixXd B = basis_matrix(t, basis);
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(B);
    Eigen::VectorXd cb(t.rows);
    for (int r = 0; r < t.rows; ++r) cb(r) = cost(basis[r]);
    y = lu.transpose().solve(cb);
    xb = lu.solve(t.b);

    // Pricing: Dantzig, switching to Bland's rule on long degenerate runs.
    const bool bland = degenerate_run > 50;
    const Eigen::VectorXd reduced = cost.head(t.cols) - t.A.transpose() * y;
    int entering = -1;
    double best = -1e-11 * cost_scale;
    for (int j = 0; j < t.cols; ++j) {
      if (reduced(j) < best) {
        entering = j;
        if (bland) break;
        best = reduced(j);
      }
    }
    if (entering < 0) return Status::Optimal;
    if (iterations >= max_iterations) return Status::IterationLimit;

    const Eigen::VectorXd dir = lu.solve(t.A.col(entering));
    int leaving = -1;
    double ratio = std::numeric_limits<double>::infinity();
    for (int r = 0; r < t.rows; ++r) {
      if (dir(r) > kPivotTol) {
        const double q = std::max(xb(r), 0.0) / dir(r);
        if (q < ratio - 1e-14 || (q <= ratio + 1e-14 && leaving >= 0 && basis[r] < basis[leaving])) {
          ratio = q;
          leaving = r;
        }
      }
    }
    if (leaving < 0) return Status::Unbounded;
    degenerate_run = ratio <= 1e-14 ? degenerate_run + 1 : 0;
    basis[leaving] = entering;
    ++iterations;
  }
}

// Minimizes the sum of artificials, then pivots any zero-level artificial
// out of the basis.
Status phase_one(const Tableau& t, std::vector<int>& basis, Eigen::VectorXd& xb,
                 Eigen::VectorXd& y, int& iterations, int max_iterations) {
  Eigen::VectorXd cost = Eigen::VectorXd::Zero(t.cols + t.rows);
  cost.tail(t.rows).setOnes();
  const Status s = iterate(t, cost, basis, xb, y, iterations, max_iterations);
  if (s == Status::IterationLimit) return s;
  double infeasibility = 0.0;
  for (int r = 0; r < t.rows; ++r) {
    if (basis[r] >= t.cols) infeasibility += std::max(xb(r), 0.0);
  }
  if (infeasibility > 1e-9 * std::max(1.0, t.b.cwiseAbs().maxCoeff())) return Status::Infeasible;

  for (int r = 0; r < t.rows; ++r) {
    if (basis[r] < t.cols) continue;
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix(t, basis));
    const Eigen::RowVectorXd row = lu.inverse().row(r) * t.A;
    int best = -1;
    for (int j = 0; j < t.cols; ++j) {
      if (std::find(basis.begin(), basis.end(), j) != basis.end()) continue;
      if (std::abs(row(j)) > 1e-9 && (best < 0 || std::abs(row(j)) > std::abs(row(best)))) best = j;
    }
    if (best < 0) throw Error(ErrorCode::NonConvergence, "LP has redundant equality rows");
    basis[r] = best;
  }
  return Status::Optimal;
}

// Feasible starting basis for the dual of the Chebyshev LP: n+1 spread rows
// whose weighted basis rows admit a null combination sum c_k w_k A_k = 0;
// u_k is taken where c_k > 0 and v_k where c_k < 0. Returns an empty vector
// (phase one is used instead) when that combination has a zero entry.
std::vector<int> reference_basis(const Eigen::MatrixXd& A, const Eigen::VectorXd& w) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (m < n + 1) return {};
  std::vector<int> rows(n + 1);
  for (int k = 0; k <= n; ++k) {
    rows[k] = n == 0 ? 0 : static_cast<int>(std::lround(static_cast<double>(k) * (m - 1) / n));
  }
  Eigen::MatrixXd M(n, n + 1);
  for (int k = 0; k <= n; ++k) M.col(k) = w(rows[k]) * A.row(rows[k]).transpose();
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
  const Eigen::VectorXd null = svd.matrixV().col(n);
  const double scale = null.cwiseAbs().maxCoeff();
  std::vector<int> basis(n + 1);
  for (int k = 0; k <= n; ++k) {
    if (std::abs(null(k)) <= 1e-12 * scale) return {};
    basis[k] = null(k) > 0 ? rows[k] : m + rows[k];
  }
  return basis;
}

}  // namespace

StandardFormResult solve_standard_form(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                       const Eigen::VectorXd& c, int max_iterations,
                                       const std::vector<int>& initial_basis) {
  const int rows = static_cast<int>(A.rows());
  const int cols = static_cast<int>(A.cols());
  if (b.size() != rows || c.size() != cols) {
    throw Error(ErrorCode::Internal, "LP dimension mismatch");
  }
  if (max_iterations <= 0) max_iterations = 50 * (rows + cols);

  // Rows with negative right-hand side are negated so artificials start feasible.
  Eigen::MatrixXd As = A;
  Eigen::VectorXd bs = b;
  for (int r = 0; r < rows; ++r) {
    if (bs(r) < 0.0) {
      As.row(r) *= -1.0;
      bs(r) = -bs(r);
    }
  }
  const Tableau t{As, bs, rows, cols};

  StandardFormResult result;
  std::vector<int> basis(rows);
  Eigen::VectorXd xb, y;
  bool warm = false;
  if (static_cast<int>(initial_basis.size()) == rows) {
    basis = initial_basis;
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(basis_matrix(t, basis));
    if (lu.rcond() > 1e-13) {
      xb = lu.solve(bs);
      warm = xb.minCoeff() >= -1e-12;
    }
  }
  if (!warm) {
    for (int r = 0; r < rows; ++r) basis[r] = cols + r;
    if (Status s = phase_one(t, basis, xb, y, result.iterations, max_iterations);
        s != Status::Optimal) {
      result.status = s;
      return result;
    }
  }

  Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(cols + rows);
  phase2.head(cols) = c;
  const Status s = iterate(t, phase2, basis, xb, y, result.iterations, max_iterations);

  result.status = s;
  result.x = Eigen::VectorXd::Zero(cols);
  for (int r = 0; r < rows; ++r) {
    if (basis[r] < cols) result.x(basis[r]) = std::max(xb(r), 0.0);
  }
  // Undo the row negation for the multipliers.
  result.duals = y;
  for (int r = 0; r < rows; ++r) {
    if (b(r) < 0.0) result.duals(r) = -result.duals(r);
  }
  result.basis = basis;
  result.objective = c.dot(result.x);
  return result;
}

ChebyshevSolution solve_chebyshev(const Eigen::MatrixXd& A, const Eigen::VectorXd& d,
                                  const Eigen::VectorXd& w) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (d.size() != m || w.size() != m || m == 0 || n == 0) {
    throw Error(ErrorCode::Internal, "Chebyshev fit dimension mismatch");
  }
  // Primal variables z = (x, t); constraint rows
  //   u_i: [ w_i A_i, -1] z <= w_i d_i
  //   v_i: [-w_i A_i, -1] z <= -w_i d_i
  // Dual in standard form: min h^T lambda, G^T lambda = -e_t, lambda >= 0.
  // Its optimal simplex multipliers are the primal z.
  Eigen::MatrixXd G(2 * m, n + 1);
  Eigen::VectorXd h(2 * m);
  for (int i = 0; i < m; ++i) {
    G.row(i).head(n) = w(i) * A.row(i);
    G(i, n) = -1.0;
    h(i) = w(i) * d(i);
    G.row(m + i).head(n) = -w(i) * A.row(i);
    G(m + i, n) = -1.0;
    h(m + i) = -w(i) * d(i);
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  rhs(n) = -1.0;
  const StandardFormResult dual =
      solve_standard_form(G.transpose(), rhs, h, 0, reference_basis(A, w));

  ChebyshevSolution out;
  out.status = dual.status;
  out.iterations = dual.iterations;
  if (dual.status != Status::Optimal) return out;
  out.coefficients = dual.duals.head(n);
  out.deviation = (w.array() * (A * out.coefficients - d).array()).abs().maxCoeff();
  return out;
}

}  // namespace dacfir::lp
