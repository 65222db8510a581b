// SPDX-License-Identifier: Apache-2.0

#include "noma/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace noma {

namespace {

std::string indexed(std::string_view name, std::size_t a) {
  return std::string(name) + "[" + std::to_string(a) + "]";
}

std::string indexed(std::string_view name, std::size_t a, std::size_t b) {
  return indexed(name, a) + "[" + std::to_string(b) + "]";
}

std::string indexed(std::string_view name, std::size_t a, std::size_t b, std::size_t c) {
  return indexed(name, a, b) + "[" + std::to_string(c) + "]";
}

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

std::size_t NetworkInstance::total_users() const noexcept {
  return std::accumulate(users_per_cell.begin(), users_per_cell.end(), std::size_t{0});
}

double NetworkInstance::cross(std::size_t j, std::size_t b, std::size_t i) const {
  if (j == b) return 0.0;
  return cross_gain.at(j).at(b).at(i);
}

std::size_t DecodingOrder::position(std::size_t b, std::size_t i) const {
  const auto& cell = order.at(b);
  auto it = std::find(cell.begin(), cell.end(), i);
  if (it == cell.end()) throw std::out_of_range("user not present in decoding order");
  return static_cast<std::size_t>(it - cell.begin());
}

std::vector<std::size_t> DecodingOrder::successors(std::size_t b, std::size_t i) const {
  const auto& cell = order.at(b);
  const std::size_t pos = position(b, i);
  return {cell.begin() + static_cast<std::ptrdiff_t>(pos) + 1, cell.end()};
}

bool DecodingOrder::is_valid(const std::vector<std::size_t>& users_per_cell) const {
  if (order.size() != users_per_cell.size()) return false;
  for (std::size_t b = 0; b < order.size(); ++b) {
    if (order[b].size() != users_per_cell[b]) return false;
    std::vector<bool> seen(users_per_cell[b], false);
    for (std::size_t u : order[b]) {
      if (u >= seen.size() || seen[u]) return false;
      seen[u] = true;
    }
  }
  return true;
}

LambdaMatrix DecodingOrder::to_lambda(std::size_t b) const {
  const auto& cell = order.at(b);
  const std::size_t n = cell.size();
  LambdaMatrix lambda(n, std::vector<std::uint8_t>(n, 0));
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p; q < n; ++q) lambda[cell[p]][cell[q]] = 1;
  return lambda;
}

std::vector<std::size_t> DecodingOrder::cell_order_from_lambda(const LambdaMatrix& lambda) {
  const std::size_t n = lambda.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (lambda[i].size() != n) throw std::invalid_argument("lambda must be square");
    if (lambda[i][i] != 1) throw std::invalid_argument("lambda diagonal must be 1");
    for (std::size_t k = i + 1; k < n; ++k)
      if (lambda[i][k] + lambda[k][i] != 1)
        throw std::invalid_argument("lambda must decide exactly one direction per pair");
  }
  // The number of users decoding i fixes its position; a bijection of counts
  // implies transitivity.
  std::vector<std::size_t> result(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t above = 0;
    for (std::size_t k = 0; k < n; ++k)
      if (k != i && lambda[i][k]) ++above;
    const std::size_t pos = n - 1 - above;
    if (result[pos] != n) throw std::invalid_argument("lambda is not transitive");
    result[pos] = i;
  }
  return result;
}

PowerAllocation PowerAllocation::zeros(const NetworkInstance& net) {
  PowerAllocation p;
  p.power.resize(net.num_cells());
  for (std::size_t b = 0; b < net.num_cells(); ++b) p.power[b].assign(net.users_per_cell[b], 0.0);
  p.feasible_cell.assign(net.num_cells(), true);
  return p;
}

PowerAllocation PowerAllocation::equal_split(const NetworkInstance& net) {
  PowerAllocation p = zeros(net);
  for (std::size_t b = 0; b < net.num_cells(); ++b) {
    const auto n = net.users_per_cell[b];
    if (n > 0) std::fill(p.power[b].begin(), p.power[b].end(), net.max_power.at(b) / static_cast<double>(n));
  }
  return p;
}

std::string_view to_string(Scheme s) noexcept {
  switch (s) {
    case Scheme::JSPA: return "JSPA";
    case Scheme::JRPA: return "JRPA";
    case Scheme::FRPA: return "FRPA";
    case Scheme::PowerMin: return "PowerMin";
    case Scheme::FullyDistributed: return "FullyDistributed";
    case Scheme::SemiCentralized: return "SemiCentralized";
  }
  return "Unknown";
}

Scheme parse_scheme(std::string_view name) {
  std::string key;
  for (char c : name)
    if (c != '-' && c != '_' && c != ' ') key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (key == "jspa") return Scheme::JSPA;
  if (key == "jrpa") return Scheme::JRPA;
  if (key == "frpa") return Scheme::FRPA;
  if (key == "powermin") return Scheme::PowerMin;
  if (key == "fullydistributed" || key == "fd") return Scheme::FullyDistributed;
  if (key == "semicentralized" || key == "sc") return Scheme::SemiCentralized;
  throw std::invalid_argument("unknown scheme: " + std::string(name));
}

std::vector<Violation> validate(const NetworkInstance& net) {
  std::vector<Violation> out;
  auto flag = [&out](std::string field, std::string msg) { out.push_back({std::move(field), std::move(msg)}); };

  const std::size_t B = net.num_cells();
  if (B == 0) flag("users_per_cell", "network must have at least one cell");
  if (net.direct_gain.size() != B) flag("direct_gain", "expected one row per cell");
  if (net.noise_power.size() != B) flag("noise_power", "expected one row per cell");
  if (net.min_rate.size() != B) flag("min_rate", "expected one row per cell");
  if (net.max_power.size() != B) flag("max_power", "expected one entry per cell");
  if (net.cross_gain.size() != B) flag("cross_gain", "expected one block per transmitting cell");
  if (!out.empty()) return out;

  for (std::size_t b = 0; b < B; ++b) {
    const std::size_t n = net.users_per_cell[b];
    if (n == 0) flag(indexed("users_per_cell", b), "cell must serve at least one user");
    if (!(std::isfinite(net.max_power[b]) && net.max_power[b] > 0.0))
      flag(indexed("max_power", b), "must be finite and > 0");

    auto check_row = [&](const Matrix& m, std::string_view name, bool strictly_positive) {
      if (m[b].size() != n) {
        flag(indexed(name, b), "expected " + std::to_string(n) + " entries");
        return;
      }
      for (std::size_t i = 0; i < n; ++i) {
        const double v = m[b][i];
        const bool ok = strictly_positive ? (std::isfinite(v) && v > 0.0) : finite_nonneg(v);
        if (!ok) flag(indexed(name, b, i), strictly_positive ? "must be finite and > 0" : "must be finite and >= 0");
      }
    };
    check_row(net.direct_gain, "direct_gain", true);
    check_row(net.noise_power, "noise_power", true);
    check_row(net.min_rate, "min_rate", false);
  }

  for (std::size_t j = 0; j < B; ++j) {
    const auto& block = net.cross_gain[j];
    if (block.size() != B) {
      flag(indexed("cross_gain", j), "expected one row per receiving cell");
      continue;
    }
    for (std::size_t b = 0; b < B; ++b) {
      if (j == b) {
        if (!block[b].empty()) flag(indexed("cross_gain", j, b), "self entry must be empty");
        continue;
      }
      if (block[b].size() != net.users_per_cell[b]) {
        flag(indexed("cross_gain", j, b), "expected " + std::to_string(net.users_per_cell[b]) + " entries");
        continue;
      }
      for (std::size_t i = 0; i < block[b].size(); ++i)
        if (!finite_nonneg(block[b][i])) flag(indexed("cross_gain", j, b, i), "must be finite and >= 0");
    }
  }
  return out;
}

double cell_power(const PowerAllocation& powers, std::size_t b) {
  const auto& row = powers.power.at(b);
  return std::accumulate(row.begin(), row.end(), 0.0);
}

}  // namespace noma
