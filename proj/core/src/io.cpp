// SPDX-License-Identifier: Apache-2.0

#include "noma/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace noma::io {

using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;

json matrix_json(const Matrix& m) { return json(m); }

Matrix matrix_from(const json& j) { return j.get<Matrix>(); }

json powers_json(const PowerAllocation& p) {
  std::vector<bool> flags(p.feasible_cell.begin(), p.feasible_cell.end());
  return json{{"power", matrix_json(p.power)}, {"feasible_cell", flags}};
}

PowerAllocation powers_from(const json& j) {
  PowerAllocation p;
  p.power = matrix_from(j.at("power"));
  p.feasible_cell = j.at("feasible_cell").get<std::vector<bool>>();
  return p;
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("schema mismatch: ") + e.what());
  }
}

}  // namespace

std::string to_json(const NetworkInstance& net, int indent) {
  json j;
  j["format"] = "noma.network";
  j["version"] = kFormatVersion;
  j["num_cells"] = net.num_cells();
  j["users_per_cell"] = net.users_per_cell;
  j["direct_gain"] = matrix_json(net.direct_gain);
  j["cross_gain"] = net.cross_gain;
  j["noise_power_w"] = matrix_json(net.noise_power);
  j["max_power_w"] = net.max_power;
  j["min_rate_bps_hz"] = matrix_json(net.min_rate);
  return j.dump(indent);
}

NetworkInstance network_from_json(std::string_view text) {
  const json j = parse(text);
  return guarded([&] {
    NetworkInstance net;
    net.users_per_cell = j.at("users_per_cell").get<std::vector<std::size_t>>();
    if (j.contains("num_cells") && j.at("num_cells").get<std::size_t>() != net.users_per_cell.size())
      throw std::invalid_argument("num_cells disagrees with users_per_cell");
    net.direct_gain = matrix_from(j.at("direct_gain"));
    net.cross_gain = j.at("cross_gain").get<std::vector<Matrix>>();
    net.noise_power = matrix_from(j.at("noise_power_w"));
    net.max_power = j.at("max_power_w").get<std::vector<double>>();
    net.min_rate = matrix_from(j.at("min_rate_bps_hz"));
    const auto problems = validate(net);
    if (!problems.empty())
      throw std::invalid_argument("invalid network: " + problems.front().field + ": " + problems.front().message);
    return net;
  });
}

std::string to_json(const SolveReport& r, int indent) {
  json j;
  j["format"] = "noma.report";
  j["version"] = kFormatVersion;
  j["scheme"] = std::string(to_string(r.scheme));
  j["feasible"] = r.feasible;
  j["sum_rate_bps_hz"] = r.sum_rate;
  j["rates_bps_hz"] = matrix_json(r.rates);
  j["alpha"] = r.alpha.values;
  j["order"] = r.order.order;
  j["powers"] = powers_json(r.powers);
  j["trace"] = r.trace;
  if (r.oracle_evaluated) j["oracle_feasible"] = r.oracle_feasible;
  j["samples"] = {{"evaluated", r.samples_evaluated},
                  {"sic_rejected", r.samples_sic_rejected},
                  {"power_infeasible", r.samples_power_infeasible}};
  if (!r.note.empty()) j["note"] = r.note;
  return j.dump(indent);
}

SolveReport report_from_json(std::string_view text) {
  const json j = parse(text);
  return guarded([&] {
    SolveReport r;
    r.scheme = parse_scheme(j.at("scheme").get<std::string>());
    r.feasible = j.at("feasible").get<bool>();
    r.sum_rate = j.at("sum_rate_bps_hz").get<double>();
    r.rates = matrix_from(j.at("rates_bps_hz"));
    r.alpha = AlphaVector(j.at("alpha").get<std::vector<double>>());
    r.order.order = j.at("order").get<std::vector<std::vector<std::size_t>>>();
    r.powers = powers_from(j.at("powers"));
    r.trace = j.at("trace").get<std::vector<double>>();
    if (j.contains("oracle_feasible")) {
      r.oracle_evaluated = true;
      r.oracle_feasible = j.at("oracle_feasible").get<bool>();
    }
    if (j.contains("samples")) {
      const auto& s = j.at("samples");
      r.samples_evaluated = s.at("evaluated").get<std::size_t>();
      r.samples_sic_rejected = s.at("sic_rejected").get<std::size_t>();
      r.samples_power_infeasible = s.at("power_infeasible").get<std::size_t>();
    }
    if (j.contains("note")) r.note = j.at("note").get<std::string>();
    return r;
  });
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw std::runtime_error("read failed: " + path.string());
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace noma::io
