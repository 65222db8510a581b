// SPDX-License-Identifier: Apache-2.0

#include "noma/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace noma::rates {

namespace {

double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

}  // namespace

double ici_power(const NetworkInstance& net, const AlphaVector& alpha, std::size_t b, std::size_t i) {
  double sum = 0.0;
  for (std::size_t j = 0; j < net.num_cells(); ++j)
    if (j != b) sum += alpha.values.at(j) * net.max_power[j] * net.cross_gain[j][b].at(i);
  return sum;
}

double ici_power(const NetworkInstance& net, const PowerAllocation& powers, std::size_t b, std::size_t i) {
  double sum = 0.0;
  for (std::size_t j = 0; j < net.num_cells(); ++j)
    if (j != b) sum += cell_power(powers, j) * net.cross_gain[j][b].at(i);
  return sum;
}

EffectiveCinr effective_cinr(const NetworkInstance& net, const AlphaVector& alpha) {
  EffectiveCinr out;
  out.h_tilde.resize(net.num_cells());
  for (std::size_t b = 0; b < net.num_cells(); ++b)
    for (std::size_t i = 0; i < net.num_users(b); ++i)
      out.h_tilde[b].push_back(net.direct_gain[b][i] / (ici_power(net, alpha, b, i) + net.noise_power[b][i]));
  return out;
}

EffectiveCinr effective_cinr(const NetworkInstance& net, const PowerAllocation& powers) {
  std::vector<double> totals(net.num_cells());
  for (std::size_t j = 0; j < net.num_cells(); ++j) totals[j] = cell_power(powers, j);
  EffectiveCinr out;
  out.h_tilde.resize(net.num_cells());
  for (std::size_t b = 0; b < net.num_cells(); ++b)
    for (std::size_t i = 0; i < net.num_users(b); ++i) {
      double ici = 0.0;
      for (std::size_t j = 0; j < net.num_cells(); ++j)
        if (j != b) ici += totals[j] * net.cross_gain[j][b][i];
      out.h_tilde[b].push_back(net.direct_gain[b][i] / (ici + net.noise_power[b][i]));
    }
  return out;
}

DecodingOrder ascending_order(const Matrix& key) {
  DecodingOrder out;
  out.order.resize(key.size());
  for (std::size_t b = 0; b < key.size(); ++b) {
    auto& cell = out.order[b];
    cell.resize(key[b].size());
    std::iota(cell.begin(), cell.end(), std::size_t{0});
    std::stable_sort(cell.begin(), cell.end(), [&](std::size_t x, std::size_t y) { return key[b][x] < key[b][y]; });
  }
  return out;
}

DecodingOrder cinr_order(const NetworkInstance& net, const AlphaVector& alpha) {
  return ascending_order(effective_cinr(net, alpha).h_tilde);
}

DecodingOrder cnr_order(const NetworkInstance& net) {
  Matrix cnr(net.num_cells());
  for (std::size_t b = 0; b < net.num_cells(); ++b)
    for (std::size_t i = 0; i < net.num_users(b); ++i) cnr[b].push_back(net.direct_gain[b][i] / net.noise_power[b][i]);
  return ascending_order(cnr);
}

double decoding_rate(const NetworkInstance& net, const PowerAllocation& powers, const DecodingOrder& order,
                     std::size_t b, std::size_t i, std::size_t k) {
  double intra = 0.0;
  for (std::size_t j : order.successors(b, i)) intra += powers.power[b][j];
  const double h = net.direct_gain[b][k];
  const double denom = intra * h + ici_power(net, powers, b, k) + net.noise_power[b][k];
  return log2_1p(powers.power[b][i] * h / denom);
}

double achievable_rate(const NetworkInstance& net, const PowerAllocation& powers, const DecodingOrder& order,
                       std::size_t b, std::size_t i) {
  double rate = decoding_rate(net, powers, order, b, i, i);
  for (std::size_t k : order.successors(b, i)) rate = std::min(rate, decoding_rate(net, powers, order, b, i, k));
  return rate;
}

Matrix achievable_rates(const NetworkInstance& net, const PowerAllocation& powers, const DecodingOrder& order) {
  Matrix out(net.num_cells());
  for (std::size_t b = 0; b < net.num_cells(); ++b)
    for (std::size_t i = 0; i < net.num_users(b); ++i) out[b].push_back(achievable_rate(net, powers, order, b, i));
  return out;
}

double cell_sum_rate(const std::vector<double>& h_tilde, const std::vector<std::size_t>& order,
                     const std::vector<double>& p) {
  double total = 0.0;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const std::size_t i = order[pos];
    double above = 0.0;
    for (std::size_t q = pos + 1; q < order.size(); ++q) above += p[order[q]];
    double rate = std::numeric_limits<double>::infinity();
    for (std::size_t q = pos; q < order.size(); ++q) {
      const double hk = h_tilde[order[q]];
      rate = std::min(rate, log2_1p(p[i] * hk / (above * hk + 1.0)));
    }
    total += rate;
  }
  return total;
}

bool sic_sufficient(const NetworkInstance& net, std::size_t b, std::size_t i, std::size_t k) {
  const double si = net.noise_power[b].at(i);
  const double sk = net.noise_power[b].at(k);
  const double hi = net.direct_gain[b][i] / si;
  const double hk = net.direct_gain[b][k] / sk;
  if (hk < hi) return false;
  // h~_i <= h~_k for every ICI level x_j in [0, P^max_j] iff
  // hk - hi >= sum_j x_j H_j at the worst case x_j = P^max_j when H_j > 0.
  double worst = 0.0;
  for (std::size_t j = 0; j < net.num_cells(); ++j) {
    if (j == b) continue;
    const double H = (net.cross_gain[j][b][k] / sk) * hi - (net.cross_gain[j][b][i] / si) * hk;
    if (H > 0.0) worst += net.max_power[j] * H;
  }
  return hk - hi >= worst;
}

std::size_t count_ici_dependent_pairs(const NetworkInstance& net) {
  const DecodingOrder cnr = cnr_order(net);
  std::size_t count = 0;
  for (std::size_t b = 0; b < net.num_cells(); ++b) {
    const auto& cell = cnr.order[b];
    for (std::size_t p = 0; p < cell.size(); ++p)
      for (std::size_t q = p + 1; q < cell.size(); ++q)
        if (!sic_sufficient(net, b, cell[p], cell[q])) ++count;
  }
  return count;
}

double adjacent_swap_gap(const NetworkInstance& net, const AlphaVector& alpha, const PowerAllocation& powers,
                         std::size_t b, std::size_t pos) {
  const EffectiveCinr cinr = effective_cinr(net, alpha);
  const DecodingOrder ord = ascending_order(cinr.h_tilde);
  const auto& cell = ord.order.at(b);
  if (pos + 1 >= cell.size()) throw std::out_of_range("adjacent_swap_gap: position has no upper neighbour");
  const std::size_t lo = cell[pos];
  const std::size_t hi = cell[pos + 1];
  double s2 = 0.0;  // powers at positions >= pos+2
  for (std::size_t q = pos + 2; q < cell.size(); ++q) s2 += powers.power[b][cell[q]];
  const double s1 = s2 + powers.power[b][hi];
  const double h0 = cinr(b, lo);
  const double h1 = cinr(b, hi);
  return ((std::log1p(s1 * h1) - std::log1p(s1 * h0)) + (std::log1p(s2 * h0) - std::log1p(s2 * h1))) /
         std::numbers::ln2;
}

}  // namespace noma::rates
