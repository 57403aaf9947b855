#include "swipt/scenario.h"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "swipt/errors.h"

namespace swipt {

const char* to_string(LinkState s) { return s == LinkState::Los ? "LOS" : "NLOS"; }

double db_to_ratio(double db) { return std::pow(10.0, db / 10.0); }
double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }

double BlockageModel::q_near(LinkState state) const {
  return state == LinkState::Los ? q_los_near : 1.0 - q_los_near;
}

double BlockageModel::q_far(LinkState state) const {
  return state == LinkState::Los ? q_los_far : 1.0 - q_los_far;
}

double BlockageModel::probability(LinkState state, double r) const {
  return r < breaking_distance_m ? q_near(state) : q_far(state);
}

double PathLossModel::loss(LinkState s, double r) const { return kappa(s) * std::pow(r, beta(s)); }

double Scenario::breaking_loss(LinkState s) const {
  return pathloss.kappa(s) * std::pow(blockage.breaking_distance_m, pathloss.beta(s));
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

}  // namespace

void Scenario::validate() const {
  require(std::isfinite(density) && density > 0.0, "density must be > 0");
  require(std::isfinite(tx_power_w) && tx_power_w > 0.0, "tx power must be > 0");
  require(std::isfinite(bandwidth_hz) && bandwidth_hz > 0.0, "bandwidth must be > 0");
  require(std::isfinite(noise_w) && noise_w > 0.0, "noise power must be > 0");
  require(std::isfinite(id_noise_w) && id_noise_w >= 0.0, "ID noise power must be >= 0");
  require(conversion_efficiency > 0.0 && conversion_efficiency <= 1.0, "conversion efficiency must lie in (0, 1]");
  require(n_tx >= 1 && n_rx >= 1, "antenna counts must be >= 1");
  require(n_tx + n_rx <= kMaxAntennaSum, "N_t + N_r must not exceed 16");
  require(std::isfinite(blockage.breaking_distance_m) && blockage.breaking_distance_m >= 0.0,
          "breaking distance must be >= 0");
  require(is_probability(blockage.q_los_near), "blockage.q_los_near must lie in [0, 1]");
  require(is_probability(blockage.q_los_far), "blockage.q_los_far must lie in [0, 1]");
  require(std::isfinite(pathloss.beta_los) && pathloss.beta_los > 2.0, "pathloss.beta_los must be > 2");
  require(std::isfinite(pathloss.beta_nlos) && pathloss.beta_nlos > 2.0, "pathloss.beta_nlos must be > 2");
  require(pathloss.kappa_los > 0.0 && pathloss.kappa_nlos > 0.0, "pathloss constants must be > 0");
}

Scenario Scenario::with_antennas(int ntx, int nrx) const {
  Scenario s = *this;
  s.n_tx = ntx;
  s.n_rx = nrx;
  s.validate();
  return s;
}

RawConfig parse_raw_config(const nlohmann::json& j) {
  RawConfig raw;
  try {
    auto get = [&](const nlohmann::json& obj, const char* key, auto& out) {
      if (obj.contains(key)) obj.at(key).get_to(out);
    };
    get(j, "carrier_hz", raw.carrier_hz);
    get(j, "tx_power_dbm", raw.tx_power_dbm);
    get(j, "bandwidth_hz", raw.bandwidth_hz);
    get(j, "noise_figure_db", raw.noise_figure_db);
    get(j, "id_noise_dbm", raw.id_noise_dbm);
    get(j, "conversion_efficiency", raw.conversion_efficiency);
    get(j, "rho", raw.rho);
    get(j, "n_tx", raw.n_tx);
    get(j, "n_rx", raw.n_rx);
    if (j.contains("density") && j.contains("cell_radius_m"))
      throw ConfigError("config: give either density or cell_radius_m, not both");
    if (j.contains("density")) {
      j.at("density").get_to(raw.density);
      raw.cell_radius_m = std::numeric_limits<double>::quiet_NaN();
    }
    get(j, "cell_radius_m", raw.cell_radius_m);
    if (j.contains("blockage")) {
      const auto& b = j.at("blockage");
      get(b, "d_m", raw.d_m);
      get(b, "q_los_near", raw.q_los_near);
      get(b, "q_los_far", raw.q_los_far);
    }
    if (j.contains("pathloss")) {
      const auto& p = j.at("pathloss");
      get(p, "beta_los", raw.beta_los);
      get(p, "beta_nlos", raw.beta_nlos);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return raw;
}

RawConfig load_raw_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return parse_raw_config(j);
}

nlohmann::json to_json(const RawConfig& raw) {
  nlohmann::json j;
  j["carrier_hz"] = raw.carrier_hz;
  j["tx_power_dbm"] = raw.tx_power_dbm;
  j["bandwidth_hz"] = raw.bandwidth_hz;
  j["noise_figure_db"] = raw.noise_figure_db;
  j["id_noise_dbm"] = raw.id_noise_dbm;
  j["conversion_efficiency"] = raw.conversion_efficiency;
  j["rho"] = raw.rho;
  j["n_tx"] = raw.n_tx;
  j["n_rx"] = raw.n_rx;
  if (std::isfinite(raw.density))
    j["density"] = raw.density;
  else
    j["cell_radius_m"] = raw.cell_radius_m;
  j["blockage"] = {{"d_m", raw.d_m}, {"q_los_near", raw.q_los_near}, {"q_los_far", raw.q_los_far}};
  j["pathloss"] = {{"beta_los", raw.beta_los}, {"beta_nlos", raw.beta_nlos}};
  return j;
}

Scenario build_scenario(const RawConfig& raw) {
  require(std::isfinite(raw.carrier_hz) && raw.carrier_hz > 0.0, "carrier_hz must be > 0");
  require(std::isfinite(raw.bandwidth_hz) && raw.bandwidth_hz > 0.0, "bandwidth_hz must be > 0");

  Scenario s;
  if (std::isfinite(raw.density)) {
    s.density = raw.density;
  } else {
    require(std::isfinite(raw.cell_radius_m) && raw.cell_radius_m > 0.0, "cell_radius_m must be > 0");
    s.density = 1.0 / (std::numbers::pi * raw.cell_radius_m * raw.cell_radius_m);
  }
  s.tx_power_w = dbm_to_watt(raw.tx_power_dbm);
  s.bandwidth_hz = raw.bandwidth_hz;
  s.noise_w = dbm_to_watt(kThermalNoiseDbmPerHz + 10.0 * std::log10(raw.bandwidth_hz) + raw.noise_figure_db);
  s.id_noise_w = dbm_to_watt(raw.id_noise_dbm);
  s.conversion_efficiency = raw.conversion_efficiency;
  s.n_tx = raw.n_tx;
  s.n_rx = raw.n_rx;
  s.blockage = {raw.d_m, raw.q_los_near, raw.q_los_far};
  s.pathloss.beta_los = raw.beta_los;
  s.pathloss.beta_nlos = raw.beta_nlos;
  s.pathloss.wavelength_m = kSpeedOfLight / raw.carrier_hz;
  const double k = 4.0 * std::numbers::pi / s.pathloss.wavelength_m;
  s.pathloss.kappa_los = k * k;
  s.pathloss.kappa_nlos = k * k;
  s.validate();
  return s;
}

nlohmann::json to_json(const Scenario& s) {
  nlohmann::json j;
  j["density"] = s.density;
  j["tx_power_w"] = s.tx_power_w;
  j["bandwidth_hz"] = s.bandwidth_hz;
  j["noise_w"] = s.noise_w;
  j["id_noise_w"] = s.id_noise_w;
  j["conversion_efficiency"] = s.conversion_efficiency;
  j["n_tx"] = s.n_tx;
  j["n_rx"] = s.n_rx;
  j["blockage"] = {{"d_m", s.blockage.breaking_distance_m},
                   {"q_los_near", s.blockage.q_los_near},
                   {"q_los_far", s.blockage.q_los_far}};
  j["pathloss"] = {{"beta_los", s.pathloss.beta_los},
                   {"beta_nlos", s.pathloss.beta_nlos},
                   {"kappa_los", s.pathloss.kappa_los},
                   {"kappa_nlos", s.pathloss.kappa_nlos},
                   {"wavelength_m", s.pathloss.wavelength_m}};
  return j;
}

Scenario scenario_from_json(const nlohmann::json& j) {
  Scenario s;
  try {
    j.at("density").get_to(s.density);
    j.at("tx_power_w").get_to(s.tx_power_w);
    j.at("bandwidth_hz").get_to(s.bandwidth_hz);
    j.at("noise_w").get_to(s.noise_w);
    j.at("id_noise_w").get_to(s.id_noise_w);
    j.at("conversion_efficiency").get_to(s.conversion_efficiency);
    j.at("n_tx").get_to(s.n_tx);
    j.at("n_rx").get_to(s.n_rx);
    const auto& b = j.at("blockage");
    b.at("d_m").get_to(s.blockage.breaking_distance_m);
    b.at("q_los_near").get_to(s.blockage.q_los_near);
    b.at("q_los_far").get_to(s.blockage.q_los_far);
    const auto& p = j.at("pathloss");
    p.at("beta_los").get_to(s.pathloss.beta_los);
    p.at("beta_nlos").get_to(s.pathloss.beta_nlos);
    p.at("kappa_los").get_to(s.pathloss.kappa_los);
    p.at("kappa_nlos").get_to(s.pathloss.kappa_nlos);
    p.at("wavelength_m").get_to(s.pathloss.wavelength_m);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  s.validate();
  return s;
}

Thresholds derive_thresholds(const Scenario& s, double rho, double rate_target, double power_target) {
  if (!(rho > 0.0 && rho < 1.0)) {
    throw BoundaryError(
        "rho must lie in (0, 1); the limits are degenerate: rho -> 0 harvests nothing (Q = 0), "
        "rho -> 1 decodes nothing (R = 0)");
  }
  require(std::isfinite(rate_target) && rate_target >= 0.0, "rate target must be finite and >= 0");
  require(std::isfinite(power_target) && power_target >= 0.0, "power target must be finite and >= 0");

  Thresholds t;
  t.rate_target = rate_target;
  t.power_target = power_target;
  t.rho = rho;
  t.r_star = rate_target > 0.0 ? 1.0 / std::expm1(std::log(2.0) * rate_target / s.bandwidth_hz)
                               : std::numeric_limits<double>::infinity();
  t.sigma_star_sq = s.noise_w + s.id_noise_w / (1.0 - rho);
  t.q_star = power_target > 0.0 ? power_target / (rho * s.conversion_efficiency) : 0.0;
  t.t_star = std::isfinite(t.r_star) ? (t.q_star + t.sigma_star_sq) / (t.r_star + 1.0) : 0.0;
  return t;
}

}  // namespace swipt
