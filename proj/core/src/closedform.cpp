// SPDX-License-Identifier: Apache-2.0

#include "noma/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "noma/model.hpp"

namespace noma::closedform {

namespace {

void check_shape(const CellProblem& cell) {
  if (cell.min_rate.size() != cell.h_tilde.size()) throw std::invalid_argument("CellProblem: min_rate/h_tilde size mismatch");
}

double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

}  // namespace

double sumrate_beta(double min_rate) noexcept { return -std::expm1(-min_rate * std::numbers::ln2); }

double powermin_beta(double min_rate) noexcept { return std::expm1(min_rate * std::numbers::ln2); }

CellPowers sumrate_powers(const CellProblem& cell) {
  check_shape(cell);
  const std::size_t M = cell.size();
  CellPowers out;
  out.powers.assign(M, 0.0);
  if (M == 0) {
    out.feasible = true;
    return out;
  }
  bool ok = true;
  double remaining = cell.budget;
  for (std::size_t i = 0; i + 1 < M; ++i) {
    const double beta = sumrate_beta(cell.min_rate[i]);
    const double p = beta == 0.0 ? 0.0 : beta * (remaining + 1.0 / cell.h_tilde[i]);
    if (p < -kPowerTol) ok = false;
    out.powers[i] = std::max(p, 0.0);
    remaining -= p;
  }
  if (remaining < -kPowerTol) ok = false;
  out.powers[M - 1] = std::max(remaining, 0.0);
  if (ok && log2_1p(out.powers[M - 1] * cell.h_tilde[M - 1]) < cell.min_rate[M - 1] - kRateTol) ok = false;
  out.feasible = ok;
  return out;
}

std::vector<double> sumrate_powers_expanded(const CellProblem& cell) {
  check_shape(cell);
  const std::size_t M = cell.size();
  std::vector<double> beta(M);
  for (std::size_t i = 0; i < M; ++i) beta[i] = sumrate_beta(cell.min_rate[i]);
  std::vector<double> p(M, 0.0);
  double assigned = 0.0;
  for (std::size_t i = 0; i + 1 < M; ++i) {
    double prod = 1.0;
    for (std::size_t j = 0; j < i; ++j) prod *= 1.0 - beta[j];
    double tail = 0.0;
    for (std::size_t j = 0; j < i; ++j) {
      double inner = beta[j];
      for (std::size_t k = j + 1; k < i; ++k) inner *= 1.0 - beta[k];
      tail += inner / cell.h_tilde[j];
    }
    p[i] = beta[i] * (prod * cell.budget + 1.0 / cell.h_tilde[i] - tail);
    assigned += p[i];
  }
  if (M > 0) p[M - 1] = cell.budget - assigned;
  return p;
}

std::vector<double> approx_sumrate_powers(const CellProblem& cell) {
  check_shape(cell);
  const std::size_t M = cell.size();
  std::vector<double> p(M, 0.0);
  double prod = 1.0;
  double assigned = 0.0;
  for (std::size_t i = 0; i + 1 < M; ++i) {
    const double beta = sumrate_beta(cell.min_rate[i]);
    p[i] = std::max(cell.budget * beta * prod, 0.0);
    assigned += p[i];
    prod *= 1.0 - beta;
  }
  if (M > 0) p[M - 1] = std::max(cell.budget - assigned, 0.0);
  return p;
}

std::vector<double> equal_demand_coefficients(std::size_t M, double r_min) {
  if (M == 0) throw std::invalid_argument("equal_demand_coefficients: M must be >= 1");
  if (r_min < 0) throw std::invalid_argument("equal_demand_coefficients: r_min must be >= 0");
  std::vector<double> q(M);
  const double inv = std::exp2(-r_min);  // 1 / 2^r
  const double beta = sumrate_beta(r_min);
  double scale = 1.0;  // 2^{-r i}
  for (std::size_t i = 0; i + 1 < M; ++i) {
    q[i] = beta * scale;
    scale *= inv;
  }
  q[M - 1] = scale;
  return q;
}

std::vector<double> powermin_powers(const CellProblem& cell) {
  check_shape(cell);
  const std::size_t M = cell.size();
  std::vector<double> p(M, 0.0);
  double above = 0.0;
  for (std::size_t n = M; n-- > 0;) {
    const double beta = powermin_beta(cell.min_rate[n]);
    p[n] = beta == 0.0 ? 0.0 : beta * (1.0 / cell.h_tilde[n] + above);
    above += p[n];
  }
  return p;
}

double cell_optimal_value(const CellProblem& cell, double p_head) {
  check_shape(cell);
  const std::size_t M = cell.size();
  if (M == 0) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < M; ++i) total += cell.min_rate[i];
  return total + log2_1p(p_head * cell.h_tilde[M - 1]);
}

std::vector<double> cell_rates(const CellProblem& cell, const std::vector<double>& powers) {
  check_shape(cell);
  const std::size_t M = cell.size();
  if (powers.size() != M) throw std::invalid_argument("cell_rates: power vector size mismatch");
  std::vector<double> r(M);
  double above = 0.0;
  for (std::size_t n = M; n-- > 0;) {
    double rate = std::numeric_limits<double>::infinity();
    for (std::size_t k = n; k < M; ++k) {
      const double h = cell.h_tilde[k];
      rate = std::min(rate, log2_1p(powers[n] * h / (above * h + 1.0)));
    }
    r[n] = rate;
    above += powers[n];
  }
  return r;
}

}  // namespace noma::closedform
