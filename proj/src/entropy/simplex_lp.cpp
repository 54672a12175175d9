#include "zkent/simplex_lp.hpp"

#include <cmath>
#include <vector>

namespace zkent {

namespace {

constexpr double kPivotEps = 1e-11;

struct Tableau {
  Eigen::MatrixXd t;               // rows: constraints; last column: rhs
  std::vector<Eigen::Index> basis; // basic variable of each row
  std::vector<bool> active;        // rows still in play (redundant rows are dropped)

  Eigen::Index cols() const { return t.cols() - 1; }

  void pivot(Eigen::Index row, Eigen::Index col) {
    t.row(row) /= t(row, col);
    for (Eigen::Index r = 0; r < t.rows(); ++r) {
      if (r == row || !active[r]) continue;
      const double f = t(r, col);
      if (f != 0.0) t.row(r) -= f * t.row(row);
    }
    basis[row] = col;
  }
};

enum class Outcome { optimal, unbounded };

// Minimizes cost^T x over the columns allowed by `usable`, starting from the current basis.
Outcome run(Tableau& tab, const Eigen::VectorXd& cost, Eigen::Index usable) {
  const Eigen::Index rhs = tab.cols();
  while (true) {
    Eigen::Index entering = -1;
    for (Eigen::Index j = 0; j < usable && entering < 0; ++j) {
      double reduced = cost(j);
      for (Eigen::Index r = 0; r < tab.t.rows(); ++r)
        if (tab.active[r]) reduced -= cost(tab.basis[r]) * tab.t(r, j);
      if (reduced < -kPivotEps) entering = j;
    }
    if (entering < 0) return Outcome::optimal;

    Eigen::Index leaving = -1;
    double best = 0.0;
    for (Eigen::Index r = 0; r < tab.t.rows(); ++r) {
      if (!tab.active[r] || tab.t(r, entering) <= kPivotEps) continue;
      const double ratio = tab.t(r, rhs) / tab.t(r, entering);
      if (leaving < 0 || ratio < best - kPivotEps ||
          (std::abs(ratio - best) <= kPivotEps && tab.basis[r] < tab.basis[leaving])) {
        leaving = r;
        best = ratio;
      }
    }
    if (leaving < 0) return Outcome::unbounded;
    tab.pivot(leaving, entering);
  }
}

}  // namespace

LpSolution solve_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();

  Tableau tab;
  tab.t = Eigen::MatrixXd::Zero(m, n + m + 1);
  tab.basis.resize(m);
  tab.active.assign(m, true);
  for (Eigen::Index r = 0; r < m; ++r) {
    const double sign = b(r) < 0 ? -1.0 : 1.0;
    tab.t.row(r).head(n) = sign * a.row(r);
    tab.t(r, n + r) = 1.0;
    tab.t(r, n + m) = sign * b(r);
    tab.basis[r] = n + r;
  }

  // Phase 1: drive the artificial variables to zero.
  Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(n + m);
  phase1.tail(m).setOnes();
  run(tab, phase1, n + m);
  double infeasibility = 0.0;
  for (Eigen::Index r = 0; r < m; ++r)
    if (tab.basis[r] >= n) infeasibility += tab.t(r, n + m);
  LpSolution out;
  if (infeasibility > 1e-9 * (1.0 + b.cwiseAbs().sum())) return out;

  // Pivot remaining artificials out of the basis; rows with no real pivot are redundant.
  for (Eigen::Index r = 0; r < m; ++r) {
    if (tab.basis[r] < n) continue;
    Eigen::Index col = -1;
    for (Eigen::Index j = 0; j < n && col < 0; ++j)
      if (std::abs(tab.t(r, j)) > kPivotEps) col = j;
    if (col >= 0) {
      tab.pivot(r, col);
    } else {
      tab.active[r] = false;
    }
  }

  Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(n + m);
  phase2.head(n) = c;
  if (run(tab, phase2, n) == Outcome::unbounded) {
    out.status = LpStatus::unbounded;
    return out;
  }
  out.status = LpStatus::optimal;
  out.x = Eigen::VectorXd::Zero(n);
  for (Eigen::Index r = 0; r < m; ++r)
    if (tab.active[r] && tab.basis[r] < n) out.x(tab.basis[r]) = tab.t(r, n + m);
  out.objective = c.dot(out.x);
  return out;
}

}  // namespace zkent
