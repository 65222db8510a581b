// SPDX-License-Identifier: Apache-2.0
//
// Brute-force LP oracle for small problems.

#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "noma/solvers.hpp"

namespace noma::testing {

// Every constraint is written as a <= row (bounds included); the optimum of a
// bounded feasible LP sits at a vertex, so enumerate all n-subsets of rows.
struct VertexOracle {
  bool feasible = false;
  double value = std::numeric_limits<double>::infinity();
};

inline VertexOracle enumerate_vertices(const solvers::LinearProgram& lp) {
  const std::size_t n = lp.num_vars();
  std::vector<std::vector<double>> A;
  std::vector<double> b;
  std::vector<bool> eq;
  for (const auto& r : lp.rows) {
    const double s = r.sense == solvers::RowSense::GreaterEqual ? -1.0 : 1.0;
    std::vector<double> a(n);
    for (std::size_t j = 0; j < n; ++j) a[j] = s * r.coeffs[j];
    A.push_back(a);
    b.push_back(s * r.rhs);
    eq.push_back(r.sense == solvers::RowSense::Equal);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> a(n, 0.0);
    a[j] = -1.0;
    A.push_back(a);
    b.push_back(lp.lower_bounds.empty() ? 0.0 : -lp.lower_bounds[j]);
    eq.push_back(false);
  }
  const std::size_t m = A.size();
  VertexOracle out;
  std::vector<std::size_t> pick(n);
  for (std::size_t i = 0; i < n; ++i) pick[i] = i;
  if (m < n) return out;
  while (true) {
    Eigen::MatrixXd M(n, n);
    Eigen::VectorXd rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) M(i, j) = A[pick[i]][j];
      rhs(i) = b[pick[i]];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    if (lu.isInvertible()) {
      const Eigen::VectorXd x = lu.solve(rhs);
      bool ok = true;
      for (std::size_t r = 0; r < m && ok; ++r) {
        double v = 0.0;
        for (std::size_t j = 0; j < n; ++j) v += A[r][j] * x(j);
        const double tol = 1e-9 * (1.0 + std::abs(b[r]));
        if (v > b[r] + tol || (eq[r] && v < b[r] - tol)) ok = false;
      }
      if (ok) {
        double val = 0.0;
        for (std::size_t j = 0; j < n; ++j) val += lp.objective[j] * x(j);
        out.feasible = true;
        out.value = std::min(out.value, val);
      }
    }
    std::size_t i = n;
    while (i > 0 && pick[i - 1] == m - n + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t k = i; k < n; ++k) pick[k] = pick[k - 1] + 1;
  }
  return out;
}

}  // namespace noma::testing
