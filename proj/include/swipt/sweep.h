#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "swipt/jccdf.h"
#include "swipt/montecarlo.h"
#include "swipt/scenario.h"

namespace swipt {

enum class MethodChoice { Analytic, MonteCarlo, Both };
MethodChoice parse_method(const std::string& name);
const char* to_string(MethodChoice m);

using AntennaPair = std::pair<int, int>;  // (N_t, N_r)

struct SweepSpec {
  std::vector<double> rate_grid;   // bit/s, strictly increasing
  std::vector<double> power_grid;  // W, strictly increasing
  std::vector<double> rho_list;
  std::vector<AntennaPair> antenna_list;
  double level = 0.75;
  MethodChoice method = MethodChoice::Analytic;

  void validate() const;
};

// Grids centred on the default operating point (these are tool defaults).
SweepSpec default_sweep();
// Reads the optional "sweep" section: rate_grid_bps, power_grid_dbm, rho_list,
// antennas ([[n_tx, n_rx], ...]), level, method. Missing keys keep defaults.
SweepSpec parse_sweep(const nlohmann::json& section, SweepSpec base = default_sweep());

// Parameter ranges the validation command samples from.
struct ValidationRanges {
  double rho_min = 0.2;
  double rho_max = 0.8;
  double rate_min = 2e4;
  double rate_max = 3e5;
  double power_min_w = 1e-11;  // -80 dBm
  double power_max_w = 1e-8;   // -50 dBm
  std::vector<AntennaPair> antenna_list{{1, 1}, {2, 1}, {2, 2}, {4, 2}};
};
ValidationRanges parse_validation_ranges(const nlohmann::json& section);

// Everything the commands need from a config file.
struct ToolConfig {
  RawConfig raw;
  Scenario scenario;
  SweepSpec sweep;
  ValidationRanges validation;
};
ToolConfig load_tool_config(const std::string& path);  // empty path: built-in defaults
ToolConfig tool_config_from_json(const nlohmann::json& j);

// One level-set point. power_target is NaN when the level cannot be reached
// at this rate target (sentinel row); jccdf then holds the rate marginal.
struct ContourPoint {
  double rho = 0.0;
  int n_tx = 1;
  int n_rx = 1;
  double rate_target = 0.0;
  double power_target = 0.0;
  double jccdf = 0.0;
  Method method = Method::Analytic;

  bool attained() const { return power_target == power_target; }
};

// For each rate target, the power target Q* with F_c(R*, Q*) = level, found by
// a bracketing search on log Q* until |F_c - level| <= 2 x evaluator tolerance.
// The bracket starts at [q_lo, q_hi] and grows geometrically as needed.
std::vector<ContourPoint> analytic_contour(const AnalyticEvaluator& ev, double rho,
                                           const std::vector<double>& rate_grid, double level, double q_lo,
                                           double q_hi);

// Monte Carlo level set: for each R*, the largest Q* such that at least
// ceil(level n) trials meet both targets (an order statistic of Q among the
// rate-feasible trials).
std::vector<ContourPoint> empirical_contour(const std::vector<TrialSample>& trials, const Scenario& s, double rho,
                                            const std::vector<double>& rate_grid, double level);

// Pointwise upper boundary of several contours over the same rate grid: for
// each R*, the largest attained Q* and the rho that attains it.
std::vector<ContourPoint> envelope_of_contours(const std::vector<std::vector<ContourPoint>>& contours);

struct EnvelopePoint {
  int n_tx = 1;
  int n_rx = 1;
  double rate_target = 0.0;
  double power_target = 0.0;
  double best_rho = 0.0;
  double best_jccdf = 0.0;
  Method method = Method::Analytic;
};

// argmax over rho_list of F_c at one target pair (ties keep the first rho).
EnvelopePoint best_rho(const std::vector<double>& rho_list, const std::vector<double>& values, int n_tx, int n_rx,
                       double rate_target, double power_target, Method method);

struct GridPoint {
  double rho = 0.0;
  int n_tx = 1;
  int n_rx = 1;
  double rate_target = 0.0;
  double power_target = 0.0;
  JccdfEstimate estimate;
};

// F_c over rho_list x antenna_list x rate_grid x power_grid.
std::vector<GridPoint> sweep_grid(const Scenario& s, const SweepSpec& spec, Method method,
                                  const QuadratureSpec& quad, std::size_t n_trials, std::uint64_t seed);

struct ValidationPoint {
  double rho = 0.5;
  int n_tx = 1;
  int n_rx = 1;
  double rate_target = 0.0;
  double power_target = 0.0;
};

struct ValidationResult {
  ValidationPoint point;
  JccdfEstimate analytic;
  JccdfEstimate monte_carlo;
  double abs_diff = 0.0;
  double tolerance = 0.0;  // max(0.02, 3 x CI half-width)
  bool pass = false;
};

// Draws n points: rho uniform, targets log-uniform, antennas uniform over the list.
std::vector<ValidationPoint> sample_validation_points(const ValidationRanges& ranges, std::size_t n,
                                                      std::uint64_t seed);

// Runs both methods; Monte Carlo trials are shared among points with the same
// antenna pair (seeded per pair).
std::vector<ValidationResult> cross_validate(const Scenario& s, const std::vector<ValidationPoint>& points,
                                             std::size_t n_trials, std::uint64_t seed, const QuadratureSpec& quad);

inline constexpr double kValidationFloor = 0.02;
inline constexpr double kValidationCiMultiple = 3.0;

// Deterministic report: no timings, fixed formatting. Returns overall pass.
bool write_validation_report(std::ostream& os, const std::vector<ValidationResult>& results, std::uint64_t seed,
                             std::size_t n_trials);

void write_contour_csv(std::ostream& os, const std::vector<ContourPoint>& rows);
void write_envelope_csv(std::ostream& os, const std::vector<EnvelopePoint>& rows);
void write_grid_csv(std::ostream& os, const std::vector<GridPoint>& rows);

}  // namespace swipt
