// SPDX-License-Identifier: Apache-2.0
//
// Dense two-phase tableau simplex. Variables are shifted to zero lower
// bounds, rows are equilibrated by their largest coefficient and given a
// non-negative right-hand side before phase I.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "noma/solvers.hpp"

namespace noma::solvers {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-11;
constexpr std::size_t kMaxPivots = 200000;

struct Tableau {
  std::vector<std::vector<double>> rows;  // constraint rows, last entry = rhs
  std::vector<double> cost;               // reduced costs, last entry = -objective
  std::vector<std::size_t> basis;
  std::size_t cols = 0;
  std::size_t pivots = 0;

  double rhs(std::size_t i) const { return rows[i][cols]; }

  void pivot(std::size_t r, std::size_t c) {
    if (++pivots > kMaxPivots) throw std::runtime_error("simplex: pivot limit exceeded");
    auto& pr = rows[r];
    const double inv = 1.0 / pr[c];
    for (double& v : pr) v *= inv;
    pr[c] = 1.0;
    auto eliminate = [&](std::vector<double>& row) {
      const double f = row[c];
      if (f == 0.0) return;
      for (std::size_t j = 0; j <= cols; ++j) row[j] -= f * pr[j];
      row[c] = 0.0;
    };
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != r) eliminate(rows[i]);
    eliminate(cost);
    basis[r] = c;
  }

  void price(const std::vector<double>& c) {
    cost.assign(cols + 1, 0.0);
    for (std::size_t j = 0; j < cols; ++j) cost[j] = c[j];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double cb = c[basis[i]];
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= cols; ++j) cost[j] -= cb * rows[i][j];
    }
  }

  /// Bland's rule. Returns false when unbounded.
  bool optimize(const std::vector<bool>& allowed) {
    for (;;) {
      std::size_t enter = cols;
      for (std::size_t j = 0; j < cols; ++j)
        if (allowed[j] && cost[j] < -kCostTol) {
          enter = j;
          break;
        }
      if (enter == cols) return true;
      std::size_t leave = rows.size();
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const double a = rows[i][enter];
        if (a <= kPivotTol) continue;
        const double ratio = std::max(rhs(i), 0.0) / a;
        const double tie = leave == rows.size() ? 0.0 : 1e-12 * std::max(1.0, best);
        if (leave == rows.size() || ratio < best - tie) {
          best = ratio;
          leave = i;
        } else if (ratio <= best + tie && basis[i] < basis[leave]) {
          leave = i;
        }
      }
      if (leave == rows.size()) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

const char* to_string(LpStatus s) noexcept {
  switch (s) {
    case LpStatus::Optimal: return "Optimal";
    case LpStatus::Infeasible: return "Infeasible";
    case LpStatus::Unbounded: return "Unbounded";
  }
  return "Unknown";
}

double max_scaled_residual(const LinearProgram& lp, std::span<const double> x) {
  double worst = 0.0;
  for (const auto& row : lp.rows) {
    double lhs = 0.0;
    double scale = 0.0;
    for (std::size_t j = 0; j < row.coeffs.size(); ++j) {
      lhs += row.coeffs[j] * x[j];
      scale = std::max(scale, std::abs(row.coeffs[j]));
    }
    if (scale == 0.0) scale = 1.0;
    double viol = 0.0;
    switch (row.sense) {
      case RowSense::LessEqual: viol = lhs - row.rhs; break;
      case RowSense::GreaterEqual: viol = row.rhs - lhs; break;
      case RowSense::Equal: viol = std::abs(lhs - row.rhs); break;
    }
    worst = std::max(worst, viol / scale);
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double lb = lp.lower_bounds.empty() ? 0.0 : lp.lower_bounds[j];
    worst = std::max(worst, lb - x[j]);
  }
  return worst;
}

LpResult solve_lp(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars();
  if (!lp.lower_bounds.empty() && lp.lower_bounds.size() != n)
    throw std::invalid_argument("solve_lp: lower_bounds size mismatch");
  for (const auto& row : lp.rows)
    if (row.coeffs.size() != n) throw std::invalid_argument("solve_lp: row width mismatch");
  const std::vector<double> lb = lp.lower_bounds.empty() ? std::vector<double>(n, 0.0) : lp.lower_bounds;

  struct NormRow {
    std::vector<double> a;
    RowSense sense;
    double rhs;
  };
  std::vector<NormRow> norm;
  for (const auto& row : lp.rows) {
    NormRow r{row.coeffs, row.sense, row.rhs};
    double scale = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      r.rhs -= r.a[j] * lb[j];
      scale = std::max(scale, std::abs(r.a[j]));
    }
    if (scale == 0.0) {
      const double tol = 1e-12 * std::max(1.0, std::abs(row.rhs));
      const bool ok = (r.sense == RowSense::LessEqual && r.rhs >= -tol) ||
                      (r.sense == RowSense::GreaterEqual && r.rhs <= tol) ||
                      (r.sense == RowSense::Equal && std::abs(r.rhs) <= tol);
      if (!ok) return {LpStatus::Infeasible, {}, 0.0, 0};
      continue;
    }
    for (double& v : r.a) v /= scale;
    r.rhs /= scale;
    if (r.rhs < 0.0) {
      for (double& v : r.a) v = -v;
      r.rhs = -r.rhs;
      if (r.sense == RowSense::LessEqual) r.sense = RowSense::GreaterEqual;
      else if (r.sense == RowSense::GreaterEqual) r.sense = RowSense::LessEqual;
    }
    norm.push_back(std::move(r));
  }

  std::size_t n_slack = 0, n_art = 0;
  for (const auto& r : norm) {
    if (r.sense != RowSense::Equal) ++n_slack;
    if (r.sense != RowSense::LessEqual) ++n_art;
  }
  Tableau t;
  t.cols = n + n_slack + n_art;
  const std::size_t art0 = n + n_slack;
  std::size_t s = n, a = art0;
  for (const auto& r : norm) {
    std::vector<double> row(t.cols + 1, 0.0);
    std::copy(r.a.begin(), r.a.end(), row.begin());
    row[t.cols] = r.rhs;
    switch (r.sense) {
      case RowSense::LessEqual:
        row[s] = 1.0;
        t.basis.push_back(s++);
        break;
      case RowSense::GreaterEqual:
        row[s++] = -1.0;
        row[a] = 1.0;
        t.basis.push_back(a++);
        break;
      case RowSense::Equal:
        row[a] = 1.0;
        t.basis.push_back(a++);
        break;
    }
    t.rows.push_back(std::move(row));
  }

  std::vector<bool> allowed(t.cols, true);
  if (n_art > 0) {
    std::vector<double> c1(t.cols, 0.0);
    double rhs_sum = 0.0;
    for (std::size_t j = art0; j < t.cols; ++j) c1[j] = 1.0;
    for (std::size_t i = 0; i < t.rows.size(); ++i)
      if (t.basis[i] >= art0) rhs_sum += t.rhs(i);
    t.price(c1);
    t.optimize(allowed);
    const double infeas = -t.cost[t.cols];
    if (infeas > 1e-9 * std::max(1.0, rhs_sum)) return {LpStatus::Infeasible, {}, 0.0, t.pivots};

    for (std::size_t i = 0; i < t.rows.size();) {
      if (t.basis[i] < art0) {
        ++i;
        continue;
      }
      std::size_t col = art0;
      double best = 1e-9;
      for (std::size_t j = 0; j < art0; ++j)
        if (std::abs(t.rows[i][j]) > best) {
          best = std::abs(t.rows[i][j]);
          col = j;
        }
      if (col < art0) {
        t.pivot(i, col);
        ++i;
      } else {
        t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
        t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
    for (std::size_t j = art0; j < t.cols; ++j) allowed[j] = false;
  }

  std::vector<double> c2(t.cols, 0.0);
  std::copy(lp.objective.begin(), lp.objective.end(), c2.begin());
  t.price(c2);
  if (!t.optimize(allowed)) return {LpStatus::Unbounded, {}, 0.0, t.pivots};

  LpResult res;
  res.status = LpStatus::Optimal;
  res.pivots = t.pivots;
  res.x = lb;
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    if (t.basis[i] < n) res.x[t.basis[i]] += std::max(t.rhs(i), 0.0);
  for (std::size_t j = 0; j < n; ++j) res.value += lp.objective[j] * res.x[j];
  return res;
}

}  // namespace noma::solvers
