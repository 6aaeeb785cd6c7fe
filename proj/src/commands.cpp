#include "refl1d/commands.hpp"

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "refl1d/error.hpp"
#include "refl1d/parallel.hpp"

namespace refl1d {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  if (!out) fail(ErrKind::io, "cannot write '" + p.string() + "'");
  out << content;
  if (!out) fail(ErrKind::io, "short write to '" + p.string() + "'");
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) fail(ErrKind::io, "cannot read '" + p.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int report_error(const Error& e) {
  ordered_json j;
  j["error"]["kind"] = kind_name(e.kind());
  j["error"]["message"] = e.what();
  std::cout << j.dump(2) << "\n";
  return exit_code(e.kind());
}

ordered_json diagnostics_json(const Diagnostics& d) {
  ordered_json j;
  j["converged"] = d.converged;
  j["iterations"] = d.iterations;
  j["value_delta"] = d.value_delta;
  j["norm_delta"] = d.norm_delta;
  j["ratio_value"] = d.ratio_value;
  j["ratio_norm"] = d.ratio_norm;
  j["max_ratio_value"] = d.max_ratio_value;
  j["max_ratio_norm"] = d.max_ratio_norm;
  j["B_monitor"] = d.B_monitor;
  j["N0_monitor"] = d.N0_monitor;
  j["determinism_min_margin"] = d.determinism_min_margin;
  j["containment_min_margin"] = d.containment_min_margin;
  j["jacobian_min"] = d.jacobian_min;
  j["jacobian_origin"] = d.jacobian_origin;
  j["xuv_minus_M_sup"] = d.xuv_minus_M_sup;
  j["shock_bc_residual"] = d.shock_bc_residual;
  j["left_of_B_events"] = d.left_of_B_events;
  if (!d.failure.empty()) j["failure"] = d.failure;
  return j;
}

std::string shock_csv(const Solution& sol) {
  std::ostringstream out;
  out << "v,u,t,x,V,Gamma,J_residual\n";
  const ShockTraces& tr = sol.traces;
  for (std::size_t k = 0; k < tr.v.size(); ++k) {
    out << format_double(tr.v[k]) << ',' << format_double(sol.spec.a * tr.v[k]) << ','
        << format_double(tr.t_plus[k]) << ',' << format_double(tr.x_plus[k]) << ','
        << format_double(tr.V[k]) << ',' << format_double(tr.Gamma[k]) << ','
        << format_double(sol.J_residual[k]) << '\n';
  }
  return out.str();
}

std::string fields_csv(const Solution& sol) {
  std::ostringstream out;
  out << "sigma,tau,u,v,t,x,alpha,beta,rho,w\n";
  const DomainSpec& sp = sol.spec;
  for (int i = 0; i <= sp.n_sigma; ++i)
    for (int j = 0; j <= sp.n_tau; ++j) {
      out << format_double(sp.sigma(i)) << ',' << format_double(sp.tau(j)) << ','
          << format_double(sp.u_node(i)) << ',' << format_double(sp.v_node(i, j)) << ','
          << format_double(sol.t(i, j)) << ',' << format_double(sol.x(i, j)) << ','
          << format_double(sol.alpha(i, j)) << ',' << format_double(sol.beta(i, j)) << ','
          << format_double(sol.rho(i, j)) << ',' << format_double(sol.w(i, j)) << '\n';
    }
  return out.str();
}

ordered_json report_json(const VerificationReport& r) {
  ordered_json j;
  j["euler_residual_sup"] = r.euler_residual_sup;
  j["euler_order"] = r.euler_order;
  j["rh_speed_residual_sup"] = r.rh_speed_residual_sup;
  j["rh_jump_residual_sup"] = r.rh_jump_residual_sup;
  j["rh_v0_deviation"] = r.rh_v0_deviation;
  j["wall_residual_sup"] = r.wall_residual_sup;
  j["determinism_min_margin"] = r.determinism_min_margin;
  j["containment_min_margin"] = r.containment_min_margin;
  j["jacobian_min"] = r.jacobian_min;
  j["jacobian_origin_value"] = r.jacobian_origin_value;
  j["jacobian_min_rel_deviation"] = r.jacobian_min_rel_deviation;
  j["asym_R_alpha"] = r.asym_R_alpha;
  j["asym_R_beta"] = r.asym_R_beta;
  j["asym_R_t"] = r.asym_R_t;
  j["asym_R_x"] = r.asym_R_x;
  j["asym_R_alpha_fine"] = r.asym_R_alpha_fine;
  j["asym_R_beta_fine"] = r.asym_R_beta_fine;
  j["asym_R_t_fine"] = r.asym_R_t_fine;
  j["asym_R_x_fine"] = r.asym_R_x_fine;
  j["asym_ratio_alpha"] = r.asym_ratio_alpha;
  j["asym_ratio_beta"] = r.asym_ratio_beta;
  j["asym_ratio_t"] = r.asym_ratio_t;
  j["asym_ratio_x"] = r.asym_ratio_x;
  j["asym_exact"] = r.asym_exact ? 1.0 : 0.0;
  j["uniqueness_delta"] = r.uniqueness_delta;
  j["iterations"] = static_cast<double>(r.iterations);
  j["max_contraction_ratio"] = r.max_contraction_ratio;
  j["passed"] = r.passed ? 1.0 : 0.0;
  return j;
}

void apply_thread_config(const RunConfig& cfg) { set_threads(cfg.threads); }

// checks files recorded in an existing summary.json against their checksums
void check_output_integrity(const fs::path& dir) {
  fs::path summary = dir / "summary.json";
  if (!fs::exists(summary)) return;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(summary));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrKind::io, "summary.json is not valid JSON: " + std::string(e.what()));
  }
  if (!j.contains("checksums")) return;
  for (auto& [name, hash] : j["checksums"].items()) {
    fs::path p = dir / name;
    if (!fs::exists(p)) fail(ErrKind::io, "checksum mismatch: '" + name + "' is missing");
    if (fnv1a64_hex(read_file(p)) != hash.get<std::string>())
      fail(ErrKind::io, "checksum mismatch: '" + name + "' was modified");
  }
}

}  // namespace

int cmd_hugoniot(const RunConfig& cfg) {
  try {
    apply_thread_config(cfg);
    Problem p = build_problem(cfg);
    DeterminismMargins m = determinism_margins(
        p.eos, {p.refl.beta0, p.refl.beta0}, {p.refl.alpha_minus0, p.refl.beta_minus0}, p.refl.V0);
    ordered_json j;
    j["rho0"] = p.refl.rho0;
    j["V0"] = p.refl.V0;
    j["eta0"] = p.refl.eta0;
    j["a"] = p.refl.a;
    j["beta0"] = p.refl.beta0;
    j["beta0_prime"] = p.refl.beta0_prime;
    j["margin_lower"] = m.lower;
    j["margin_upper"] = m.upper;
    j["multiple_roots"] = p.refl.multiple_roots;
    std::cout << j.dump(2) << "\n";
    return 0;
  } catch (const Error& e) {
    return report_error(e);
  }
}

int cmd_solve(const RunConfig& cfg) {
  Diagnostics diag;
  auto t0 = std::chrono::steady_clock::now();
  auto wall_seconds = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  fs::path dir(cfg.output_dir);
  try {
    apply_thread_config(cfg);
    Problem p = build_problem(cfg);
    Solution sol = solve(p.solver, p.eos, p.ahead, p.refl, p.spec, nullptr, &diag);

    fs::create_directories(dir);
    std::string shock = shock_csv(sol);
    std::string fields = fields_csv(sol);
    write_file(dir / "shock.csv", shock);
    write_file(dir / "fields.csv", fields);

    ordered_json j;
    j["config"] = config_to_json(cfg);
    j["diagnostics"] = diagnostics_json(sol.diag);
    j["reflection"] = {{"rho0", p.refl.rho0}, {"V0", p.refl.V0},     {"eta0", p.refl.eta0},
                       {"a", p.refl.a},       {"beta0", p.refl.beta0},
                       {"beta0_prime", p.refl.beta0_prime}};
    j["checksums"] = {{"shock.csv", fnv1a64_hex(shock)}, {"fields.csv", fnv1a64_hex(fields)}};
    j["wall_clock_seconds"] = wall_seconds();
    write_file(dir / "summary.json", j.dump(2) + "\n");
    std::cout << "solve: converged in " << sol.diag.iterations << " iterations, outputs in '"
              << dir.string() << "'\n";
    return 0;
  } catch (const Error& e) {
    // diagnostics are still written for post-mortem use
    try {
      fs::create_directories(dir);
      ordered_json j;
      j["config"] = config_to_json(cfg);
      j["diagnostics"] = diagnostics_json(diag);
      j["error"] = {{"kind", kind_name(e.kind())}, {"message", e.what()}};
      j["wall_clock_seconds"] = wall_seconds();
      write_file(dir / "summary.json", j.dump(2) + "\n");
    } catch (...) {
    }
    return report_error(e);
  }
}

int cmd_verify(const RunConfig& cfg) {
  fs::path dir(cfg.output_dir);
  try {
    apply_thread_config(cfg);
    check_output_integrity(dir);
    Problem p = build_problem(cfg);
    VerificationReport r = run_verification(cfg.vt, p.solver, p.eos, p.ahead, p.refl, p.spec);
    fs::create_directories(dir);
    write_file(dir / "report.json", report_json(r).dump(2) + "\n");
    std::cout << "verify: " << (r.passed ? "PASS" : "FAIL") << ", report in '"
              << (dir / "report.json").string() << "'\n";
    return r.passed ? 0 : 1;
  } catch (const Error& e) {
    return report_error(e);
  }
}

int cmd_sweep(const RunConfig& cfg, const std::vector<double>& epsilons) {
  fs::path dir(cfg.output_dir);
  try {
    apply_thread_config(cfg);
    if (epsilons.empty()) fail(ErrKind::config, "sweep needs a non-empty --epsilons list");
    std::ostringstream out;
    out << "epsilon,converged,iterations,max_ratio_value,max_ratio_norm,"
           "R_alpha,R_beta,R_t,R_x,determinism_min,containment_min,error\n";
    for (double eps : epsilons) {
      RunConfig c = cfg;
      c.epsilon = eps;
      std::string err;
      Diagnostics diag;
      bool converged = false;
      AsymptoticNumerators an{};
      try {
        Problem p = build_problem(c);
        Solution sol = solve(p.solver, p.eos, p.ahead, p.refl, p.spec, nullptr, &diag);
        an = asymptotic_numerators(sol);
        converged = true;
      } catch (const Error& e) {
        err = e.what();
        for (char& ch : err)
          if (ch == ',' || ch == '\n') ch = ';';
      }
      auto num = [&](double x) { return converged ? format_double(x) : "nan"; };
      out << format_double(eps) << ',' << (converged ? 1 : 0) << ',' << diag.iterations << ','
          << format_double(diag.max_ratio_value) << ',' << format_double(diag.max_ratio_norm)
          << ',' << num(an.R_alpha) << ',' << num(an.R_beta) << ',' << num(an.R_t) << ','
          << num(an.R_x) << ',' << num(diag.determinism_min_margin) << ','
          << num(diag.containment_min_margin) << ',' << err << '\n';
      std::cout << "sweep eps=" << format_double(eps) << ": "
                << (converged ? "converged" : ("failed (" + err + ")")) << "\n";
    }
    fs::create_directories(dir);
    write_file(dir / "sweep.csv", out.str());
    return 0;
  } catch (const Error& e) {
    return report_error(e);
  }
}

}  // namespace refl1d
