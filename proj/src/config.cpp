#include "refl1d/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "refl1d/error.hpp"

namespace refl1d {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

struct Setter {
  std::function<void(RunConfig&, const std::string&, const std::string&)> set;
};

double parse_float(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (...) {
    fail(ErrKind::config, "key '" + key + "': expected a number, got '" + v + "'");
  }
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    long n = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return static_cast<int>(n);
  } catch (...) {
    fail(ErrKind::config, "key '" + key + "': expected an integer, got '" + v + "'");
  }
}

std::string parse_string(const std::string& key, const std::string& v) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
  fail(ErrKind::config, "key '" + key + "': expected a quoted string, got '" + v + "'");
}

using KeyMap = std::map<std::string, Setter>;

const KeyMap& key_map() {
  static const KeyMap m = [] {
    KeyMap k;
    auto str = [](std::string RunConfig::* f) {
      return Setter{[f](RunConfig& c, const std::string& key, const std::string& v) {
        c.*f = parse_string(key, v);
      }};
    };
    auto flt = [](double RunConfig::* f) {
      return Setter{[f](RunConfig& c, const std::string& key, const std::string& v) {
        c.*f = parse_float(key, v);
      }};
    };
    auto num = [](int RunConfig::* f) {
      return Setter{[f](RunConfig& c, const std::string& key, const std::string& v) {
        c.*f = parse_int(key, v);
      }};
    };
    auto vflt = [](double VerifyThresholds::* f) {
      return Setter{[f](RunConfig& c, const std::string& key, const std::string& v) {
        c.vt.*f = parse_float(key, v);
      }};
    };
    k["eos.kind"] = str(&RunConfig::eos_kind);
    k["eos.K"] = flt(&RunConfig::eos_K);
    k["eos.gamma"] = flt(&RunConfig::eos_gamma);
    k["ahead.kind"] = str(&RunConfig::ahead_kind);
    k["ahead.rho"] = flt(&RunConfig::ahead_rho);
    k["ahead.w"] = flt(&RunConfig::ahead_w);
    k["ahead.delta"] = flt(&RunConfig::ahead_delta);
    k["ahead.L"] = flt(&RunConfig::ahead_L);
    k["ahead.T"] = flt(&RunConfig::ahead_T);
    k["domain.epsilon"] = flt(&RunConfig::epsilon);
    k["grid.n_sigma"] = num(&RunConfig::n_sigma);
    k["grid.n_tau"] = num(&RunConfig::n_tau);
    k["solver.tol_value"] = flt(&RunConfig::tol_value);
    k["solver.tol_norm"] = flt(&RunConfig::tol_norm);
    k["solver.max_iter"] = num(&RunConfig::max_iter);
    k["solver.threads"] = num(&RunConfig::threads);
    k["verify.euler_max"] = vflt(&VerifyThresholds::euler_max);
    k["verify.euler_order_min"] = vflt(&VerifyThresholds::euler_order_min);
    k["verify.euler_noise_floor"] = vflt(&VerifyThresholds::euler_noise_floor);
    k["verify.rh_speed_max"] = vflt(&VerifyThresholds::rh_speed_max);
    k["verify.j_max"] = vflt(&VerifyThresholds::j_max);
    k["verify.rh_v0_max"] = vflt(&VerifyThresholds::rh_v0_max);
    k["verify.wall_max"] = vflt(&VerifyThresholds::wall_max);
    k["verify.determinism_min"] = vflt(&VerifyThresholds::determinism_min);
    k["verify.containment_min"] = vflt(&VerifyThresholds::containment_min);
    k["verify.jacobian_dev_max"] = vflt(&VerifyThresholds::jacobian_dev_max);
    k["verify.asym_ratio_lo"] = vflt(&VerifyThresholds::asym_ratio_lo);
    k["verify.asym_ratio_hi"] = vflt(&VerifyThresholds::asym_ratio_hi);
    k["verify.uniqueness_factor"] = vflt(&VerifyThresholds::uniqueness_factor);
    k["output.dir"] = str(&RunConfig::output_dir);
    return k;
  }();
  return m;
}

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrKind::config, origin + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    auto it = key_map().find(key);
    if (it == key_map().end())
      fail(ErrKind::config, origin + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    it->second.set(cfg, key, value);
  }
  validate_config(cfg);
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrKind::config, "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

void validate_config(const RunConfig& cfg) {
  if (cfg.eos_kind != "polytropic" && cfg.eos_kind != "isothermal")
    fail(ErrKind::config, "eos.kind must be \"polytropic\" or \"isothermal\"");
  if (!(cfg.eos_K > 0.0)) fail(ErrKind::config, "eos.K must be > 0");
  if (!(cfg.eos_gamma >= 1.0)) fail(ErrKind::config, "eos.gamma must be >= 1");
  if (cfg.ahead_kind != "constant" && cfg.ahead_kind != "simple_wave")
    fail(ErrKind::config, "ahead.kind must be \"constant\" or \"simple_wave\"");
  if (!(cfg.ahead_rho > 0.0)) fail(ErrKind::config, "ahead.rho must be > 0");
  if (!(cfg.ahead_L > 0.0)) fail(ErrKind::config, "ahead.L must be > 0");
  if (cfg.ahead_T < 0.0) fail(ErrKind::config, "ahead.T must be >= 0");
  if (!(cfg.epsilon > 0.0)) fail(ErrKind::config, "domain.epsilon must be > 0");
  if (cfg.n_sigma < 8 || cfg.n_sigma % 2 != 0)
    fail(ErrKind::config, "grid.n_sigma must be an even integer >= 8");
  if (cfg.n_tau < 8 || cfg.n_tau % 2 != 0)
    fail(ErrKind::config, "grid.n_tau must be an even integer >= 8");
  if (!(cfg.tol_value > 0.0)) fail(ErrKind::config, "solver.tol_value must be > 0");
  if (!(cfg.tol_norm > 0.0)) fail(ErrKind::config, "solver.tol_norm must be > 0");
  if (cfg.max_iter < 1) fail(ErrKind::config, "solver.max_iter must be >= 1");
  if (cfg.threads < 0) fail(ErrKind::config, "solver.threads must be >= 0");
}

nlohmann::ordered_json config_to_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["eos.kind"] = cfg.eos_kind;
  j["eos.K"] = cfg.eos_K;
  j["eos.gamma"] = cfg.eos_gamma;
  j["ahead.kind"] = cfg.ahead_kind;
  j["ahead.rho"] = cfg.ahead_rho;
  j["ahead.w"] = cfg.ahead_w;
  j["ahead.delta"] = cfg.ahead_delta;
  j["ahead.L"] = cfg.ahead_L;
  j["ahead.T"] = cfg.ahead_T;
  j["domain.epsilon"] = cfg.epsilon;
  j["grid.n_sigma"] = cfg.n_sigma;
  j["grid.n_tau"] = cfg.n_tau;
  j["solver.tol_value"] = cfg.tol_value;
  j["solver.tol_norm"] = cfg.tol_norm;
  j["solver.max_iter"] = cfg.max_iter;
  j["solver.threads"] = cfg.threads;
  j["verify.euler_max"] = cfg.vt.euler_max;
  j["verify.euler_order_min"] = cfg.vt.euler_order_min;
  j["verify.euler_noise_floor"] = cfg.vt.euler_noise_floor;
  j["verify.rh_speed_max"] = cfg.vt.rh_speed_max;
  j["verify.j_max"] = cfg.vt.j_max;
  j["verify.rh_v0_max"] = cfg.vt.rh_v0_max;
  j["verify.wall_max"] = cfg.vt.wall_max;
  j["verify.determinism_min"] = cfg.vt.determinism_min;
  j["verify.containment_min"] = cfg.vt.containment_min;
  j["verify.jacobian_dev_max"] = cfg.vt.jacobian_dev_max;
  j["verify.asym_ratio_lo"] = cfg.vt.asym_ratio_lo;
  j["verify.asym_ratio_hi"] = cfg.vt.asym_ratio_hi;
  j["verify.uniqueness_factor"] = cfg.vt.uniqueness_factor;
  j["output.dir"] = cfg.output_dir;
  return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
  RunConfig cfg;
  cfg.eos_kind = j.at("eos.kind").get<std::string>();
  cfg.eos_K = j.at("eos.K").get<double>();
  cfg.eos_gamma = j.at("eos.gamma").get<double>();
  cfg.ahead_kind = j.at("ahead.kind").get<std::string>();
  cfg.ahead_rho = j.at("ahead.rho").get<double>();
  cfg.ahead_w = j.at("ahead.w").get<double>();
  cfg.ahead_delta = j.at("ahead.delta").get<double>();
  cfg.ahead_L = j.at("ahead.L").get<double>();
  cfg.ahead_T = j.at("ahead.T").get<double>();
  cfg.epsilon = j.at("domain.epsilon").get<double>();
  cfg.n_sigma = j.at("grid.n_sigma").get<int>();
  cfg.n_tau = j.at("grid.n_tau").get<int>();
  cfg.tol_value = j.at("solver.tol_value").get<double>();
  cfg.tol_norm = j.at("solver.tol_norm").get<double>();
  cfg.max_iter = j.at("solver.max_iter").get<int>();
  cfg.threads = j.at("solver.threads").get<int>();
  cfg.vt.euler_max = j.at("verify.euler_max").get<double>();
  cfg.vt.euler_order_min = j.at("verify.euler_order_min").get<double>();
  cfg.vt.euler_noise_floor = j.at("verify.euler_noise_floor").get<double>();
  cfg.vt.rh_speed_max = j.at("verify.rh_speed_max").get<double>();
  cfg.vt.j_max = j.at("verify.j_max").get<double>();
  cfg.vt.rh_v0_max = j.at("verify.rh_v0_max").get<double>();
  cfg.vt.wall_max = j.at("verify.wall_max").get<double>();
  cfg.vt.determinism_min = j.at("verify.determinism_min").get<double>();
  cfg.vt.containment_min = j.at("verify.containment_min").get<double>();
  cfg.vt.jacobian_dev_max = j.at("verify.jacobian_dev_max").get<double>();
  cfg.vt.asym_ratio_lo = j.at("verify.asym_ratio_lo").get<double>();
  cfg.vt.asym_ratio_hi = j.at("verify.asym_ratio_hi").get<double>();
  cfg.vt.uniqueness_factor = j.at("verify.uniqueness_factor").get<double>();
  cfg.output_dir = j.at("output.dir").get<std::string>();
  validate_config(cfg);
  return cfg;
}

Problem build_problem(const RunConfig& cfg) {
  validate_config(cfg);
  BarotropicEos eos = BarotropicEos::from_config(cfg.eos_kind, cfg.eos_K, cfg.eos_gamma);
  ReflectionPointData refl = solve_reflection_point(eos, {cfg.ahead_rho, cfg.ahead_w});

  double T = cfg.ahead_T;
  if (T == 0.0) T = 2.0 * cfg.epsilon * (1.0 + refl.a) / refl.eta0;
  AheadField ahead = cfg.ahead_kind == "constant"
                         ? AheadField::constant(eos, cfg.ahead_rho, cfg.ahead_w)
                         : AheadField::simple_wave(eos, cfg.ahead_rho, cfg.ahead_w,
                                                   cfg.ahead_delta, cfg.ahead_L, T);
  check_ahead_compatibility(ahead, refl);
  refl.beta0_prime = beta0_prime(eos, refl, ahead.grads(0.0, 0.0).origin_gradients());
  refl.beta0_prime_set = true;

  DomainSpec spec{cfg.epsilon, refl.a, cfg.n_sigma, cfg.n_tau};
  spec.validate();
  SolverConfig sc{cfg.tol_value, cfg.tol_norm, cfg.max_iter};
  return Problem{eos, ahead, refl, spec, sc};
}

}  // namespace refl1d
