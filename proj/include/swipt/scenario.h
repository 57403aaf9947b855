#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <string>

#include <json.hpp>

namespace swipt {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kThermalNoiseDbmPerHz = -174.0;

enum class LinkState { Los, Nlos };

inline constexpr LinkState kLinkStates[] = {LinkState::Los, LinkState::Nlos};

const char* to_string(LinkState s);

// dB -> linear power ratio.
double db_to_ratio(double db);
// dBm -> Watt.
double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);

// Largest supported N_t + N_r (exact rational expansion of the gain density).
inline constexpr int kMaxAntennaSum = 16;

// Two-regime LOS/NLOS blockage: a link of length r is LOS with probability
// q_los_near for r in [0, D) and q_los_far for r in [D, inf).
struct BlockageModel {
  double breaking_distance_m = 0.0;
  double q_los_near = 1.0;
  double q_los_far = 1.0;

  // Probability that a link of length r is in `state`.
  double probability(LinkState state, double r) const;
  double q_near(LinkState state) const;
  double q_far(LinkState state) const;
};

// l_s(r) = kappa_s * r^beta_s with kappa_s = (4 pi / wavelength)^2.
struct PathLossModel {
  double beta_los = 2.5;
  double beta_nlos = 3.5;
  double kappa_los = 1.0;
  double kappa_nlos = 1.0;
  double wavelength_m = 1.0;

  double beta(LinkState s) const { return s == LinkState::Los ? beta_los : beta_nlos; }
  double kappa(LinkState s) const { return s == LinkState::Los ? kappa_los : kappa_nlos; }
  double loss(LinkState s, double r) const;
};

// Fully resolved network/radio parameters, SI units throughout.
struct Scenario {
  double density = 0.0;           // BS per m^2
  double tx_power_w = 1.0;        // P
  double bandwidth_hz = 1.0;      // B_w
  double noise_w = 0.0;           // sigma_N^2
  double id_noise_w = 0.0;        // sigma_ID^2
  double conversion_efficiency = 1.0;  // zeta
  int n_tx = 1;
  int n_rx = 1;
  BlockageModel blockage;
  PathLossModel pathloss;

  // Path-loss value at which state `s` crosses the breaking distance: kappa_s D^beta_s.
  double breaking_loss(LinkState s) const;

  // Throws ConfigError when an invariant is violated.
  void validate() const;

  Scenario with_antennas(int n_tx, int n_rx) const;
};

// Raw configuration values as they appear in the config file (dB/dBm units).
struct RawConfig {
  double carrier_hz = 2.1e9;
  double tx_power_dbm = 30.0;
  double bandwidth_hz = 200e3;
  double noise_figure_db = 10.0;
  double id_noise_dbm = -70.0;
  double conversion_efficiency = 0.8;
  double rho = 0.5;
  int n_tx = 4;
  int n_rx = 2;
  double density = std::numeric_limits<double>::quiet_NaN();
  double cell_radius_m = 83.4122;
  double d_m = 109.8517;
  double q_los_near = 0.7195;
  double q_los_far = 0.0002;
  double beta_los = 2.5;
  double beta_nlos = 3.5;
};

RawConfig parse_raw_config(const nlohmann::json& j);
RawConfig load_raw_config(const std::filesystem::path& path);
nlohmann::json to_json(const RawConfig& raw);

Scenario build_scenario(const RawConfig& raw);

// Resolved-scenario serialization (SI fields, no unit conversion).
nlohmann::json to_json(const Scenario& s);
Scenario scenario_from_json(const nlohmann::json& j);

// Target pair (R*, Q*) at power-splitting ratio rho, with the derived
// quantities used by the analytic evaluator.
struct Thresholds {
  double rate_target = 0.0;   // R*, bit/s
  double power_target = 0.0;  // Q*, W
  double rho = 0.5;
  double r_star = std::numeric_limits<double>::infinity();  // 1/(2^(R*/B_w) - 1)
  double sigma_star_sq = 0.0;  // sigma_N^2 + sigma_ID^2/(1 - rho)
  double q_star = 0.0;         // Q*/(rho zeta)
  double t_star = 0.0;         // (q* + sigma*^2)/(r* + 1)

  // R* = 0: the rate constraint is vacuous (r* = inf).
  bool rate_vacuous() const { return rate_target <= 0.0; }
  bool power_vacuous() const { return power_target <= 0.0; }
};

// Throws BoundaryError for rho outside (0, 1) and ConfigError for negative targets.
Thresholds derive_thresholds(const Scenario& s, double rho, double rate_target, double power_target);

}  // namespace swipt
