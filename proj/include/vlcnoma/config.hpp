#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "vlcnoma/error.hpp"
#include "vlcnoma/montecarlo.hpp"

namespace vlcnoma {

/// JSON experiment description. Every physical parameter defaults to the
/// standard two-cell indoor setup; only `sweep` and `schemes` are required.
struct ExperimentConfig {
  struct Room {
    double length_m = 7.0;
    double width_m = 7.0;
    double ap_height_m = 2.5;
    double ue_height_m = 0.9;
    double ap_separation_m = 4.0;
    double reflectivity_floor = 0.3;
    double reflectivity_ceiling = 0.8;
    double reflectivity_walls = 0.8;
    bool nlos = true;
    double nlos_resolution_m = 0.5;
  } room;

  struct Devices {
    double half_power_semiangle_deg = 45.0;
    double fov_deg = 60.0;
    double pd_area_cm2 = 1.0;
    double responsivity = 0.58;
    double efficiency = 0.6;
    double modulation_index = 0.33;
    double concentrator_index = 1.0;  // accepted, no optical concentrator is modeled
    double center_radius_m = 0.5;
    int strong_per_cell = 1;
    int weak_count = 1;
    bool random_orientation = true;
    double orientation_mean_polar_deg = 41.0;
    double orientation_std_polar_deg = 9.0;
  } devices;

  struct Budget {
    double p_elec_dbm = 9.5;
    std::optional<double> i_dc_dbm = 25.0;  // exactly one of i_dc_dbm / i_dc_amp
    std::optional<double> i_dc_amp;
    double bandwidth_hz = 20e6;
    double rf_bandwidth_hz = 16e6;
    double noise_psd = 1e-21;
    double rf_noise_psd = 1e-21;
    double sigma_d = 1.0;
    double fill_factor = 0.75;
    double thermal_voltage_v = 0.025;
    double dark_current_a = 1e-10;
    double nakagami_f = 1.0;
    double pathloss_exponent = 2.0;
    double r_th = 10e6;  // nat/s
  } link_budget;

  std::size_t line_search_points = 1000;

  struct SweepDef {
    std::string variable;
    std::vector<double> values;
  } sweep;

  std::vector<std::string> schemes;
  std::vector<std::string> objectives{"sum"};
  std::size_t trials = 10000;
  std::uint64_t master_seed = 1;
  std::string amplitude_policy = "clamp";
  bool zero_fill_infeasible = false;
  unsigned threads = 1;
  std::string units = "nat";

  struct Output {
    std::string out_dir = "results";
    std::string csv_name = "aggregate.csv";
    std::string manifest_name = "manifest.json";
    bool raw_records = false;
  } output;

  /// I_DC in amperes; dBm is read as 10^(x/10) mA.
  double dc_bias_amp() const;
  /// Scenario and run settings. Throws ConfigError on invalid values.
  ExperimentSettings to_settings() const;
};

/// Collects every schema violation with its field path.
class ConfigErrors : public ConfigError {
 public:
  explicit ConfigErrors(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

/// Throws ConfigErrors listing all problems at once.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
nlohmann::json to_json(const ExperimentConfig& c);

/// The scheme/objective-independent part of a config, for tools that need
/// a link budget but no experiment.
SystemParams system_params(const ExperimentConfig& c);

}  // namespace vlcnoma
