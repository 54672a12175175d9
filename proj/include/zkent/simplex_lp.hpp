#pragma once

#include <Eigen/Dense>

namespace zkent {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
};

/// Dense two-phase simplex for: minimize c^T x subject to A x = b, x >= 0.
/// Pivoting follows Bland's rule, so runs are deterministic and never cycle.
/// Meant for small problems (tens of rows and columns).
LpSolution solve_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c);

}  // namespace zkent
