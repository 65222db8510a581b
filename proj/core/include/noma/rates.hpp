// SPDX-License-Identifier: Apache-2.0
//
// SINR and rate evaluation, CINR-based decoding orders and the power-free
// sufficient condition for a pair's decoding order.

#pragma once

#include "noma/model.hpp"

namespace noma::rates {

/// Noise-plus-interference normalized gains h / (I + sigma^2), per Watt.
struct EffectiveCinr {
  Matrix h_tilde;

  double operator()(std::size_t b, std::size_t i) const { return h_tilde[b][i]; }
};

/// Worst-case inter-cell interference at user (b, i) when every other BS j
/// transmits alpha_j * P^max_j.
double ici_power(const NetworkInstance& net, const AlphaVector& alpha, std::size_t b, std::size_t i);
/// Inter-cell interference from the actual per-cell power sums.
double ici_power(const NetworkInstance& net, const PowerAllocation& powers, std::size_t b, std::size_t i);

EffectiveCinr effective_cinr(const NetworkInstance& net, const AlphaVector& alpha);
EffectiveCinr effective_cinr(const NetworkInstance& net, const PowerAllocation& powers);

/// Per-cell ascending sort of key[b][i]; ties broken by ascending index.
DecodingOrder ascending_order(const Matrix& key);

DecodingOrder cinr_order(const NetworkInstance& net, const AlphaVector& alpha);
/// Ascending channel-to-noise ratio h / sigma^2.
DecodingOrder cnr_order(const NetworkInstance& net);

/// Rate of user k decoding the signal of user i (k == i or k above i).
double decoding_rate(const NetworkInstance& net, const PowerAllocation& powers, const DecodingOrder& order,
                     std::size_t b, std::size_t i, std::size_t k);

/// min over k in {i} and the users above i of decoding_rate.
double achievable_rate(const NetworkInstance& net, const PowerAllocation& powers, const DecodingOrder& order,
                       std::size_t b, std::size_t i);

Matrix achievable_rates(const NetworkInstance& net, const PowerAllocation& powers, const DecodingOrder& order);

/// Single-cell sum-rate with per-Watt gains h_tilde, in decoding order
/// (order[0] lowest), at powers p indexed by user.
double cell_sum_rate(const std::vector<double>& h_tilde, const std::vector<std::size_t>& order,
                     const std::vector<double>& p);

/// True when decoding order i -> k (k above i) is optimal for every power
/// allocation. Gains are normalized by each user's noise power.
bool sic_sufficient(const NetworkInstance& net, std::size_t b, std::size_t i, std::size_t k);

/// Number of user pairs, oriented by CNR, whose order can depend on ICI.
std::size_t count_ici_dependent_pairs(const NetworkInstance& net);

/// Sum-rate gain of decoding the stronger of the users at CINR-order
/// positions pos and pos+1 last, versus the swapped order, with cell b's
/// powers fixed. Throws std::out_of_range if pos+1 is not a valid position.
double adjacent_swap_gap(const NetworkInstance& net, const AlphaVector& alpha, const PowerAllocation& powers,
                         std::size_t b, std::size_t pos);

}  // namespace noma::rates
