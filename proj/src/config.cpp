#include "vlcnoma/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "vlcnoma/rates.hpp"

namespace vlcnoma {

using nlohmann::json;

namespace {

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& e : v) {
    if (!s.empty()) s += "\n";
    s += e;
  }
  return s;
}

/// Reads one JSON object, recording type errors and unknown keys under `path`.
class Section {
 public:
  Section(const json& j, std::string path, std::vector<std::string>& errors)
      : j_(j), path_(std::move(path)), errors_(errors) {
    if (!j_.is_object()) {
      fail("", "expected an object");
      ok_ = false;
    }
  }

  void mark(const char* key) { seen_.insert(key); }

  bool present(const char* key) const { return ok_ && j_.contains(key); }

  template <typename T>
  void get(const char* key, T& out, bool required = false) {
    seen_.insert(key);
    if (!ok_) return;
    if (!j_.contains(key)) {
      if (required) fail(key, "required field is missing");
      return;
    }
    read(key, j_.at(key), out);
  }

  template <typename T>
  void get_optional(const char* key, std::optional<T>& out) {
    seen_.insert(key);
    if (!ok_ || !j_.contains(key)) return;
    if (j_.at(key).is_null()) {
      out.reset();
      return;
    }
    T v{};
    if (read(key, j_.at(key), v)) out = v;
  }

  Section sub(const char* key) {
    seen_.insert(key);
    static const json empty = json::object();
    if (!ok_ || !j_.contains(key)) return Section(empty, field(key), errors_);
    return Section(j_.at(key), field(key), errors_);
  }

  void finish() {
    if (!ok_) return;
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) fail(it.key().c_str(), "unknown key");
  }

  void fail(const std::string& key, const std::string& msg) {
    errors_.push_back(field(key) + ": " + msg);
  }
  std::string field(const std::string& key) const {
    if (key.empty()) return path_.empty() ? "<root>" : path_;
    return path_.empty() ? key : path_ + "." + key;
  }

 private:
  bool read(const char* key, const json& v, double& out) {
    if (!v.is_number()) return type_error(key, "a number");
    out = v.get<double>();
    if (!std::isfinite(out)) return type_error(key, "a finite number");
    return true;
  }
  bool read(const char* key, const json& v, bool& out) {
    if (!v.is_boolean()) return type_error(key, "a boolean");
    out = v.get<bool>();
    return true;
  }
  bool read(const char* key, const json& v, std::string& out) {
    if (!v.is_string()) return type_error(key, "a string");
    out = v.get<std::string>();
    return true;
  }
  bool read(const char* key, const json& v, int& out) {
    if (!v.is_number_integer()) return type_error(key, "an integer");
    out = v.get<int>();
    return true;
  }
  bool read(const char* key, const json& v, unsigned& out) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
      return type_error(key, "a non-negative integer");
    out = v.get<unsigned>();
    return true;
  }
  bool read(const char* key, const json& v, std::size_t& out) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
      return type_error(key, "a non-negative integer");
    out = v.get<std::size_t>();
    return true;
  }
  bool read(const char* key, const json& v, std::vector<double>& out) {
    if (!v.is_array()) return type_error(key, "an array of numbers");
    out.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) {
        fail(std::string(key) + "[" + std::to_string(i) + "]", "expected a number");
        return false;
      }
      out.push_back(v[i].get<double>());
    }
    return true;
  }
  bool read(const char* key, const json& v, std::vector<std::string>& out) {
    if (!v.is_array()) return type_error(key, "an array of strings");
    out.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_string()) {
        fail(std::string(key) + "[" + std::to_string(i) + "]", "expected a string");
        return false;
      }
      out.push_back(v[i].get<std::string>());
    }
    return true;
  }
  bool type_error(const char* key, const char* what) {
    fail(key, std::string("expected ") + what);
    return false;
  }

  const json& j_;
  std::string path_;
  std::vector<std::string>& errors_;
  std::set<std::string> seen_;
  bool ok_ = true;
};

void check(bool cond, std::vector<std::string>& errors, const std::string& field,
           const std::string& msg) {
  if (!cond) errors.push_back(field + ": " + msg);
}

std::vector<std::string> validate(const ExperimentConfig& c) {
  std::vector<std::string> e;
  const auto& r = c.room;
  check(r.length_m > 0, e, "room.length_m", "must be positive");
  check(r.width_m > 0, e, "room.width_m", "must be positive");
  check(r.ap_height_m > r.ue_height_m && r.ue_height_m >= 0, e, "room.ap_height_m",
        "must exceed room.ue_height_m >= 0");
  check(r.ap_separation_m > 0 && r.ap_separation_m < r.length_m, e, "room.ap_separation_m",
        "must lie in (0, room.length_m)");
  for (auto [name, v] : {std::pair{"room.reflectivity_floor", r.reflectivity_floor},
                         std::pair{"room.reflectivity_ceiling", r.reflectivity_ceiling},
                         std::pair{"room.reflectivity_walls", r.reflectivity_walls}})
    check(v >= 0 && v < 1, e, name, "must lie in [0, 1)");
  check(r.nlos_resolution_m > 0, e, "room.nlos_resolution_m", "must be positive");

  const auto& d = c.devices;
  check(d.half_power_semiangle_deg > 0 && d.half_power_semiangle_deg < 90, e,
        "devices.half_power_semiangle_deg", "must lie in (0, 90)");
  check(d.fov_deg > 0 && d.fov_deg <= 90, e, "devices.fov_deg", "must lie in (0, 90]");
  check(d.pd_area_cm2 > 0, e, "devices.pd_area_cm2", "must be positive");
  check(d.responsivity > 0, e, "devices.responsivity", "must be positive");
  check(d.efficiency > 0, e, "devices.efficiency", "must be positive");
  check(d.modulation_index > 0 && d.modulation_index <= 1, e, "devices.modulation_index",
        "must lie in (0, 1]");
  check(d.concentrator_index > 0, e, "devices.concentrator_index", "must be positive");
  check(d.center_radius_m >= 0, e, "devices.center_radius_m", "must be non-negative");
  check(d.strong_per_cell >= 1, e, "devices.strong_per_cell", "must be at least 1");
  check(d.weak_count >= 1, e, "devices.weak_count", "must be at least 1");
  check(d.orientation_std_polar_deg >= 0, e, "devices.orientation_std_polar_deg",
        "must be non-negative");

  const auto& b = c.link_budget;
  check(b.i_dc_dbm.has_value() != b.i_dc_amp.has_value(), e, "link_budget.i_dc_dbm",
        "exactly one of i_dc_dbm and i_dc_amp must be set");
  if (b.i_dc_amp) check(*b.i_dc_amp > 0, e, "link_budget.i_dc_amp", "must be positive");
  check(b.bandwidth_hz > 0, e, "link_budget.bandwidth_hz", "must be positive");
  check(b.rf_bandwidth_hz > 0, e, "link_budget.rf_bandwidth_hz", "must be positive");
  check(b.noise_psd > 0, e, "link_budget.noise_psd", "must be positive");
  check(b.rf_noise_psd > 0, e, "link_budget.rf_noise_psd", "must be positive");
  check(b.sigma_d > 0, e, "link_budget.sigma_d", "must be positive");
  if (b.sigma_d > 0) {
    try {
      truncated_gaussian_power(b.sigma_d);
    } catch (const DomainError&) {
      e.push_back("link_budget.sigma_d: the truncated-Gaussian signal power is non-positive "
                  "above about 1.228");
    }
  }
  check(b.fill_factor > 0 && b.fill_factor <= 1, e, "link_budget.fill_factor",
        "must lie in (0, 1]");
  check(b.thermal_voltage_v > 0, e, "link_budget.thermal_voltage_v", "must be positive");
  check(b.dark_current_a > 0, e, "link_budget.dark_current_a", "must be positive");
  check(b.nakagami_f >= 0.5, e, "link_budget.nakagami_f", "must be at least 0.5");
  check(b.pathloss_exponent >= 0, e, "link_budget.pathloss_exponent", "must be non-negative");
  check(b.r_th >= 0, e, "link_budget.r_th", "must be non-negative");

  check(c.line_search_points >= 2, e, "solver.line_search_points", "must be at least 2");
  check(c.trials >= 1, e, "trials", "must be at least 1");
  check(!c.sweep.values.empty(), e, "sweep.values", "must not be empty");
  try {
    parse_sweep_var(c.sweep.variable);
  } catch (const ConfigError& ex) {
    e.push_back(std::string("sweep.variable: ") + ex.what());
  }
  check(!c.schemes.empty(), e, "schemes", "must not be empty");
  for (std::size_t i = 0; i < c.schemes.size(); ++i) {
    try {
      SchemeSpec::parse(c.schemes[i], Objective::sum);
    } catch (const ConfigError& ex) {
      e.push_back("schemes[" + std::to_string(i) + "]: " + ex.what());
    }
  }
  check(!c.objectives.empty(), e, "objectives", "must not be empty");
  for (std::size_t i = 0; i < c.objectives.size(); ++i) {
    try {
      parse_objective(c.objectives[i]);
    } catch (const ConfigError& ex) {
      e.push_back("objectives[" + std::to_string(i) + "]: " + ex.what());
    }
  }
  check(c.amplitude_policy == "error" || c.amplitude_policy == "clamp" ||
            c.amplitude_policy == "allow",
        e, "amplitude_policy", "must be one of error, clamp, allow");
  check(c.units == "nat" || c.units == "bit", e, "units", "must be nat or bit");
  check(!c.output.csv_name.empty(), e, "output.csv_name", "must not be empty");
  check(!c.output.manifest_name.empty(), e, "output.manifest_name", "must not be empty");
  return e;
}

}  // namespace

ConfigErrors::ConfigErrors(std::vector<std::string> errors)
    : ConfigError("invalid configuration:\n" + join(errors)), errors_(std::move(errors)) {}

ExperimentConfig parse_config(const json& j) {
  std::vector<std::string> errors;
  ExperimentConfig c;
  Section root(j, "", errors);

  {
    Section s = root.sub("room");
    auto& r = c.room;
    s.get("length_m", r.length_m);
    s.get("width_m", r.width_m);
    s.get("ap_height_m", r.ap_height_m);
    s.get("ue_height_m", r.ue_height_m);
    s.get("ap_separation_m", r.ap_separation_m);
    s.get("reflectivity_floor", r.reflectivity_floor);
    s.get("reflectivity_ceiling", r.reflectivity_ceiling);
    s.get("reflectivity_walls", r.reflectivity_walls);
    s.get("nlos", r.nlos);
    s.get("nlos_resolution_m", r.nlos_resolution_m);
    s.finish();
  }
  {
    Section s = root.sub("devices");
    auto& d = c.devices;
    s.get("half_power_semiangle_deg", d.half_power_semiangle_deg);
    s.get("fov_deg", d.fov_deg);
    s.get("pd_area_cm2", d.pd_area_cm2);
    s.get("responsivity", d.responsivity);
    s.get("efficiency", d.efficiency);
    s.get("modulation_index", d.modulation_index);
    s.get("concentrator_index", d.concentrator_index);
    s.get("center_radius_m", d.center_radius_m);
    s.get("strong_per_cell", d.strong_per_cell);
    s.get("weak_count", d.weak_count);
    s.get("random_orientation", d.random_orientation);
    s.get("orientation_mean_polar_deg", d.orientation_mean_polar_deg);
    s.get("orientation_std_polar_deg", d.orientation_std_polar_deg);
    s.finish();
  }
  {
    Section s = root.sub("link_budget");
    auto& b = c.link_budget;
    s.get("p_elec_dbm", b.p_elec_dbm);
    if (s.present("i_dc_dbm") || s.present("i_dc_amp")) {
      b.i_dc_dbm.reset();
      b.i_dc_amp.reset();
    }
    s.get_optional("i_dc_dbm", b.i_dc_dbm);
    s.get_optional("i_dc_amp", b.i_dc_amp);
    s.get("bandwidth_hz", b.bandwidth_hz);
    s.get("rf_bandwidth_hz", b.rf_bandwidth_hz);
    s.get("noise_psd", b.noise_psd);
    s.get("rf_noise_psd", b.rf_noise_psd);
    s.get("sigma_d", b.sigma_d);
    s.get("fill_factor", b.fill_factor);
    s.get("thermal_voltage_v", b.thermal_voltage_v);
    s.get("dark_current_a", b.dark_current_a);
    s.get("nakagami_f", b.nakagami_f);
    s.get("pathloss_exponent", b.pathloss_exponent);
    s.get("r_th", b.r_th);
    s.finish();
  }
  {
    Section s = root.sub("solver");
    s.get("line_search_points", c.line_search_points);
    s.finish();
  }
  if (!root.present("sweep")) {
    root.fail("sweep", "required field is missing");
    root.sub("sweep");
  } else {
    Section s = root.sub("sweep");
    s.get("variable", c.sweep.variable, true);
    s.get("values", c.sweep.values, true);
    s.finish();
  }
  root.get("schemes", c.schemes, true);
  root.get("objectives", c.objectives);
  root.get("trials", c.trials);
  if (root.present("master_seed")) {
    // Seeds use the full unsigned 64-bit range.
    const json& v = j.at("master_seed");
    if (v.is_number_unsigned())
      c.master_seed = v.get<std::uint64_t>();
    else
      root.fail("master_seed", "expected a non-negative integer");
  }
  root.mark("master_seed");
  root.get("amplitude_policy", c.amplitude_policy);
  root.get("zero_fill_infeasible", c.zero_fill_infeasible);
  root.get("threads", c.threads);
  root.get("units", c.units);
  {
    Section s = root.sub("output");
    s.get("out_dir", c.output.out_dir);
    s.get("csv_name", c.output.csv_name);
    s.get("manifest_name", c.output.manifest_name);
    s.get("raw_records", c.output.raw_records);
    s.finish();
  }
  root.finish();

  // Value checks run even after structural errors so that every problem is
  // reported at once; fields that already failed are not reported twice.
  for (std::string& v : validate(c)) {
    const std::string field = v.substr(0, v.find(':'));
    const bool seen = std::any_of(errors.begin(), errors.end(), [&](const std::string& e) {
      const std::string f = e.substr(0, e.find(':'));
      return f.rfind(field, 0) == 0 || field.rfind(f, 0) == 0;
    });
    if (!seen) errors.push_back(std::move(v));
  }
  if (!errors.empty()) throw ConfigErrors(std::move(errors));
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

json to_json(const ExperimentConfig& c) {
  json j;
  const auto& r = c.room;
  j["room"] = {{"length_m", r.length_m},
               {"width_m", r.width_m},
               {"ap_height_m", r.ap_height_m},
               {"ue_height_m", r.ue_height_m},
               {"ap_separation_m", r.ap_separation_m},
               {"reflectivity_floor", r.reflectivity_floor},
               {"reflectivity_ceiling", r.reflectivity_ceiling},
               {"reflectivity_walls", r.reflectivity_walls},
               {"nlos", r.nlos},
               {"nlos_resolution_m", r.nlos_resolution_m}};
  const auto& d = c.devices;
  j["devices"] = {{"half_power_semiangle_deg", d.half_power_semiangle_deg},
                  {"fov_deg", d.fov_deg},
                  {"pd_area_cm2", d.pd_area_cm2},
                  {"responsivity", d.responsivity},
                  {"efficiency", d.efficiency},
                  {"modulation_index", d.modulation_index},
                  {"concentrator_index", d.concentrator_index},
                  {"center_radius_m", d.center_radius_m},
                  {"strong_per_cell", d.strong_per_cell},
                  {"weak_count", d.weak_count},
                  {"random_orientation", d.random_orientation},
                  {"orientation_mean_polar_deg", d.orientation_mean_polar_deg},
                  {"orientation_std_polar_deg", d.orientation_std_polar_deg}};
  const auto& b = c.link_budget;
  json lb = {{"p_elec_dbm", b.p_elec_dbm},
             {"bandwidth_hz", b.bandwidth_hz},
             {"rf_bandwidth_hz", b.rf_bandwidth_hz},
             {"noise_psd", b.noise_psd},
             {"rf_noise_psd", b.rf_noise_psd},
             {"sigma_d", b.sigma_d},
             {"fill_factor", b.fill_factor},
             {"thermal_voltage_v", b.thermal_voltage_v},
             {"dark_current_a", b.dark_current_a},
             {"nakagami_f", b.nakagami_f},
             {"pathloss_exponent", b.pathloss_exponent},
             {"r_th", b.r_th}};
  if (b.i_dc_dbm) lb["i_dc_dbm"] = *b.i_dc_dbm;
  if (b.i_dc_amp) lb["i_dc_amp"] = *b.i_dc_amp;
  j["link_budget"] = lb;
  j["solver"] = {{"line_search_points", c.line_search_points}};
  j["sweep"] = {{"variable", c.sweep.variable}, {"values", c.sweep.values}};
  j["schemes"] = c.schemes;
  j["objectives"] = c.objectives;
  j["trials"] = c.trials;
  j["master_seed"] = c.master_seed;
  j["amplitude_policy"] = c.amplitude_policy;
  j["zero_fill_infeasible"] = c.zero_fill_infeasible;
  j["threads"] = c.threads;
  j["units"] = c.units;
  j["output"] = {{"out_dir", c.output.out_dir},
                 {"csv_name", c.output.csv_name},
                 {"manifest_name", c.output.manifest_name},
                 {"raw_records", c.output.raw_records}};
  return j;
}

double ExperimentConfig::dc_bias_amp() const {
  if (link_budget.i_dc_amp) return *link_budget.i_dc_amp;
  return std::pow(10.0, *link_budget.i_dc_dbm / 10.0) * 1e-3;
}

SystemParams system_params(const ExperimentConfig& c) {
  SystemParams sp;
  const auto& b = c.link_budget;
  sp.p_elec = dbm_to_watt(b.p_elec_dbm);
  sp.bandwidth = b.bandwidth_hz;
  sp.rf_bandwidth = b.rf_bandwidth_hz;
  sp.noise_psd = b.noise_psd;
  sp.rf_noise_psd = b.rf_noise_psd;
  sp.responsivity = c.devices.responsivity;
  sp.efficiency = c.devices.efficiency;
  sp.sigma_s2 = truncated_gaussian_power(b.sigma_d);
  sp.dc_bias = c.dc_bias_amp();
  sp.modulation_index = c.devices.modulation_index;
  sp.fill_factor = b.fill_factor;
  sp.thermal_voltage = b.thermal_voltage_v;
  sp.dark_current = b.dark_current_a;
  sp.r_th = b.r_th;
  sp.line_search_points = c.line_search_points;
  return sp;
}

ExperimentSettings ExperimentConfig::to_settings() const {
  const auto errors = validate(*this);
  if (!errors.empty()) throw ConfigErrors(errors);
  ExperimentSettings s;
  Scenario& sc = s.scenario;
  sc.room.length = room.length_m;
  sc.room.width = room.width_m;
  sc.room.ap_height = room.ap_height_m;
  sc.room.ue_height = room.ue_height_m;
  sc.room.ap_separation = room.ap_separation_m;
  sc.room.reflectivity = {room.reflectivity_floor, room.reflectivity_ceiling,
                          room.reflectivity_walls, room.reflectivity_walls,
                          room.reflectivity_walls, room.reflectivity_walls};
  sc.nlos = room.nlos;
  sc.nlos_resolution = room.nlos_resolution_m;

  sc.ap.half_power_semiangle = deg_to_rad(devices.half_power_semiangle_deg);
  sc.ap.efficiency = devices.efficiency;
  sc.ap.dc_bias = dc_bias_amp();
  sc.ap.modulation_index = devices.modulation_index;

  sc.placement.center_radius = devices.center_radius_m;
  sc.placement.half_power_semiangle = sc.ap.half_power_semiangle;
  sc.placement.strong_per_cell = devices.strong_per_cell;
  sc.placement.weak_count = devices.weak_count;
  sc.placement.receiver.pd_area = devices.pd_area_cm2 * 1e-4;
  sc.placement.receiver.responsivity = devices.responsivity;
  sc.placement.receiver.fov = deg_to_rad(devices.fov_deg);
  sc.random_orientation = devices.random_orientation;
  sc.orientation.mean_polar_deg = devices.orientation_mean_polar_deg;
  sc.orientation.std_polar_deg = devices.orientation_std_polar_deg;

  sc.system = system_params(*this);
  sc.nakagami_f = link_budget.nakagami_f;
  sc.pathloss_exponent = link_budget.pathloss_exponent;

  for (const std::string& o : objectives)
    for (const std::string& t : schemes) sc.schemes.push_back(SchemeSpec::parse(t, parse_objective(o)));

  s.sweep.var = parse_sweep_var(sweep.variable);
  s.sweep.values = sweep.values;
  s.trials = trials;
  s.master_seed = master_seed;
  s.zero_fill_infeasible = zero_fill_infeasible;
  s.amplitude_policy = amplitude_policy == "error"   ? AmplitudePolicy::error
                       : amplitude_policy == "clamp" ? AmplitudePolicy::clamp
                                                     : AmplitudePolicy::allow;
  s.threads = threads;
  s.keep_records = output.raw_records;
  return s;
}

}  // namespace vlcnoma
