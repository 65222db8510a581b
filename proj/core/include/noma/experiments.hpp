// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo harness: sweeps one scenario parameter, solves every
// realization with each scheme and aggregates outage and sum-rate metrics.

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "noma/jrpa.hpp"
#include "noma/jspa.hpp"
#include "noma/model.hpp"
#include "noma/scenario.hpp"

namespace noma::experiments {

enum class SweepKind { UsersPerCell, MinRate, NoiseDbm, BsDistance };

const char* to_string(SweepKind k) noexcept;
/// "users_per_cell", "min_rate", "noise_dbm", "bs_distance".
SweepKind parse_sweep_kind(std::string_view name);

struct Sweep {
  SweepKind kind = SweepKind::MinRate;
  std::vector<double> values{1.0};
};

struct SolveSettings {
  jspa::GridSettings grid;
  jrpa::JrpaSettings jrpa;
};

struct ExperimentPlan {
  scenario::ScenarioConfig scenario;
  std::vector<Scheme> schemes{Scheme::JSPA, Scheme::JRPA, Scheme::FRPA};
  Sweep sweep;
  std::size_t realizations = 200;
  jspa::GridSettings grid;
  jrpa::JrpaSettings jrpa;
  std::size_t workers = 1;  // realizations solved concurrently
};

std::vector<Violation> validate(const ExperimentPlan& plan);

/// Scenario with the swept parameter set to value.
scenario::ScenarioConfig apply_sweep(scenario::ScenarioConfig cfg, SweepKind kind, double value);

/// Runs one scheme and fills the oracle verdict used for outage.
SolveReport solve(const NetworkInstance& net, Scheme scheme, const SolveSettings& settings = {});

/// Outage verdict of a report produced by solve().
bool in_outage(const SolveReport& report);

struct RealizationOutcome {
  double sweep_value = 0.0;
  std::size_t index = 0;
  std::size_t psi = 0;
  std::vector<SolveReport> reports;  // one per plan scheme, same order
};

struct MetricsRow {
  double sweep_value = 0.0;
  Scheme scheme = Scheme::JSPA;
  double outage_probability = 0.0;
  double mean_sum_rate = 0.0;     // bps/Hz, outage counted as 0
  std::vector<double> mean_alpha; // over realizations with a feasible report
  double mean_psi = 0.0;
  std::size_t realizations = 0;
  std::size_t infeasible = 0;
  bool operator==(const MetricsRow&) const = default;
};

/// Solver fault annotated with where it happened.
class ExperimentError : public std::runtime_error {
 public:
  ExperimentError(double sweep_value, std::size_t realization, const std::string& what);
  double sweep_value() const noexcept { return sweep_value_; }
  std::size_t realization() const noexcept { return realization_; }

 private:
  double sweep_value_;
  std::size_t realization_;
};

/// Every realization's reports, ordered by (sweep value, realization index).
/// Realization k uses the same random stream for every sweep value.
std::vector<RealizationOutcome> run_realizations(const ExperimentPlan& plan);
/// Rows ordered by sweep value, then plan scheme order.
std::vector<MetricsRow> aggregate(const ExperimentPlan& plan, const std::vector<RealizationOutcome>& outcomes);
std::vector<MetricsRow> run(const ExperimentPlan& plan);

struct ApproxGapRow {
  double noise_dbm = 0.0;
  scenario::Tier tier = scenario::Tier::Macro;
  double power_gap = 0.0;     // mean relative L1 gap, fraction
  double sum_rate_gap = 0.0;  // mean relative |sum-rate difference|, fraction
  std::size_t samples = 0;
  std::size_t skipped = 0;    // cells where the exact allocation is infeasible
};

/// Exact against approximate sum-rate powers per cell, with shadowing off and
/// every cell treated in isolation (no inter-cell interference).
std::vector<ApproxGapRow> approximation_gap_study(const ExperimentPlan& plan, const std::vector<double>& noise_sweep_dbm);

/// Column order: sweep_kind, sweep_value, scheme, realizations, infeasible,
/// outage_probability, mean_sum_rate_bps_hz, mean_alpha (';'-joined), mean_psi.
std::string csv_header();
std::string to_csv(const std::vector<MetricsRow>& rows, SweepKind kind);
std::vector<MetricsRow> rows_from_csv(std::string_view text);
void emit_csv(const std::vector<MetricsRow>& rows, SweepKind kind, const std::filesystem::path& path);

/// Same rows as a JSON document.
std::string rows_json(const std::vector<MetricsRow>& rows, SweepKind kind);

std::string approx_csv(const std::vector<ApproxGapRow>& rows);
std::string approx_json(const std::vector<ApproxGapRow>& rows);

/// JSON manifest with the plan, seed and library version.
std::string manifest_json(const ExperimentPlan& plan);

inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace noma::experiments
