#include "refl1d/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "refl1d/error.hpp"
#include "refl1d/parallel.hpp"

namespace refl1d {

namespace {

double sup_abs_diff(const Field2& a, const Field2& b) {
  auto da = a.data(), db = b.data();
  double s = 0.0;
  for (std::size_t k = 0; k < da.size(); ++k) s = std::max(s, std::abs(da[k] - db[k]));
  return s;
}

double sup_abs_diff(const Trace1& a, const Trace1& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s = std::max(s, std::abs(a[k] - b[k]));
  return s;
}

Field2 diff(const Field2& a, const Field2& b) {
  Field2 d(a.n_sigma(), a.n_tau());
  auto da = a.data(), db = b.data();
  auto dd = d.data();
  for (std::size_t k = 0; k < da.size(); ++k) dd[k] = da[k] - db[k];
  return d;
}

Trace1 shock_knots(const DomainSpec& spec) {
  Trace1 v(spec.n_sigma + 1);
  for (int k = 0; k <= spec.n_sigma; ++k) v[k] = spec.epsilon * spec.sigma(k);
  return v;
}

}  // namespace

Iterate init_iterate(const ReflectionPointData& refl, const DomainSpec& spec) {
  const int ns = spec.n_sigma, nt = spec.n_tau;
  Iterate it;
  it.x = Field2(ns, nt);
  it.x_u = Field2(ns, nt, -1.0);
  it.x_v = Field2(ns, nt, 1.0);
  it.x_uu = Field2(ns, nt, 0.0);
  it.x_uv = Field2(ns, nt, 0.0);
  it.x_vv = Field2(ns, nt, 0.0);
  for (int i = 0; i <= ns; ++i) {
    double u = spec.u_node(i);
    for (int j = 0; j <= nt; ++j) it.x(i, j) = spec.v_node(i, j) - u;
  }
  it.beta_plus.resize(ns + 1);
  for (int k = 0; k <= ns; ++k)
    it.beta_plus[k] = (k == 0) ? refl.beta0
                               : refl.beta0 + refl.beta0_prime * (spec.epsilon * spec.sigma(k));
  return it;
}

InvariantFields assemble_invariant_fields(const BarotropicEos& eos, const DomainSpec& spec,
                                          const Trace1& beta_plus, double beta0_prime) {
  const int ns = spec.n_sigma, nt = spec.n_tau;
  InvariantFields f;
  f.bp = CubicSpline(shock_knots(spec), beta_plus, CubicSpline::End::clamped,
                     CubicSpline::End::not_a_knot, beta0_prime);
  f.alpha = Field2(ns, nt);
  f.beta = Field2(ns, nt);
  f.bp1_u = Field2(ns, nt);
  f.bp1_v = Field2(ns, nt);
  f.bp2_u = Field2(ns, nt);
  f.bp2_v = Field2(ns, nt);
  f.c_in = Field2(ns, nt);
  f.c_out = Field2(ns, nt);
  par_for(ns + 1, [&](std::size_t ii) {
    int i = static_cast<int>(ii);
    double u = spec.u_node(i);
    double au = f.bp.value(u), a1u = f.bp.deriv(u), a2u = f.bp.deriv2(u);
    for (int j = 0; j <= nt; ++j) {
      double v = spec.v_node(i, j);
      // tau = 0 gives v == u bitwise, so alpha = beta on the wall exactly
      double bv = (j == 0) ? au : f.bp.value(v);
      f.alpha(i, j) = au;
      f.beta(i, j) = bv;
      f.bp1_u(i, j) = a1u;
      f.bp2_u(i, j) = a2u;
      f.bp1_v(i, j) = (j == 0) ? a1u : f.bp.deriv(v);
      f.bp2_v(i, j) = (j == 0) ? a2u : f.bp.deriv2(v);
      CharSpeeds cs = eos.char_speeds({au, bv});
      f.c_in(i, j) = cs.c_in;
      f.c_out(i, j) = cs.c_out;
    }
  });
  return f;
}

TimeField compute_time_field(const BarotropicEos& eos, const DomainSpec& spec,
                             const Iterate& it, const InvariantFields& inv) {
  const int ns = spec.n_sigma, nt = spec.n_tau;
  TimeField tf;
  tf.t = Field2(ns, nt);
  tf.t_u = Field2(ns, nt);
  tf.t_v = Field2(ns, nt);

  Field2 phi(ns, nt), psi(ns, nt), dpsi_du(ns, nt);
  par_for(ns + 1, [&](std::size_t ii) {
    int i = static_cast<int>(ii);
    for (int j = 0; j <= nt; ++j) {
      double ci = inv.c_in(i, j), co = inv.c_out(i, j);
      SpeedPartials sp = eos.speed_partials({inv.alpha(i, j), inv.beta(i, j)});
      phi(i, j) = it.x_u(i, j) / ci;
      psi(i, j) = it.x_v(i, j) / co;
      // d psi/du = (dh/du) x_v + h x_uv, h = 1/c_out
      double h_u = -sp.co_a * inv.bp1_u(i, j) / (co * co);
      dpsi_du(i, j) = h_u * it.x_v(i, j) + it.x_uv(i, j) / co;
    }
  });

  Field2 phi_psi(ns, nt);
  for (int i = 0; i <= ns; ++i)
    for (int j = 0; j <= nt; ++j) phi_psi(i, j) = phi(i, j) + psi(i, j);
  std::vector<double> wall(ns + 1);
  wall_cumulative(spec, phi_psi, wall);

  par_for(ns + 1, [&](std::size_t ii) {
    int i = static_cast<int>(ii);
    std::vector<double> cpsi(nt + 1), cdu(nt + 1);
    outgoing_cumulative(spec, psi, i, cpsi);
    outgoing_cumulative(spec, dpsi_du, i, cdu);
    for (int j = 0; j <= nt; ++j) {
      tf.t(i, j) = wall[i] + cpsi[j];
      tf.t_v(i, j) = psi(i, j);
      tf.t_u(i, j) = phi(i, 0) + cdu[j];
    }
  });
  return tf;
}

ShockTraces compute_shock_traces(const BarotropicEos& eos, const AheadField& ahead,
                                 const BoundaryChar& bchar, const DomainSpec& spec,
                                 const Iterate& it, const InvariantFields& inv,
                                 const TimeField& tf) {
  const int ns = spec.n_sigma, nt = spec.n_tau;
  ShockTraces tr;
  tr.v = shock_knots(spec);
  tr.t_plus.resize(ns + 1);
  tr.x_plus.resize(ns + 1);
  for (int k = 0; k <= ns; ++k) {
    tr.t_plus[k] = tf.t(k, nt);
    tr.x_plus[k] = it.x(k, nt);
  }

  tr.containment_margin = containment_margin(bchar, tr.t_plus, tr.x_plus);
  if (tr.containment_margin < -1e-9)
    fail(ErrKind::solver, "containment violation: shock trace left the future development");

  tr.alpha_minus.resize(ns + 1);
  tr.beta_minus.resize(ns + 1);
  tr.alpha_plus.resize(ns + 1);
  tr.V.resize(ns + 1);
  tr.Gamma.resize(ns + 1);
  tr.margin_lo.resize(ns + 1);
  tr.margin_hi.resize(ns + 1);
  for (int k = 0; k <= ns; ++k) {
    InvariantPair minus = ahead.eval(tr.t_plus[k], tr.x_plus[k], &tr.left_of_B);
    tr.alpha_minus[k] = minus.alpha;
    tr.beta_minus[k] = minus.beta;
    tr.alpha_plus[k] = inv.bp.value(spec.a * tr.v[k]);
    InvariantPair plus{tr.alpha_plus[k], it.beta_plus[k]};
    FluidState sp = eos.from_invariants(plus);
    FluidState sm = eos.from_invariants(minus);
    if (std::abs(sp.rho - sm.rho) < 1e-10 * sp.rho)
      fail(ErrKind::solver, "shock vanished: degenerate jump at shock node " + std::to_string(k));
    tr.V[k] = shock_speed(eos, sp, sm);
    CharSpeeds cp = eos.char_speeds(plus);
    CharSpeeds cm = eos.char_speeds(minus);
    tr.margin_lo[k] = tr.V[k] - cm.c_out;
    tr.margin_hi[k] = cp.c_out - tr.V[k];
    double den = cp.c_out - tr.V[k];
    if (den <= 0.0)
      fail(ErrKind::solver, "determinism failure along the shock at node " + std::to_string(k));
    tr.Gamma[k] = spec.a * (cp.c_out / cp.c_in) * (tr.V[k] - cp.c_in) / den;
  }

  tr.gamma_spline = CubicSpline(tr.v, tr.Gamma);
  tr.Gamma_prime.resize(ns + 1);
  for (int k = 0; k <= ns; ++k) tr.Gamma_prime[k] = tr.gamma_spline.deriv(tr.v[k]);
  return tr;
}

CoefficientFields compute_coefficient_fields(const BarotropicEos& eos, const DomainSpec& spec,
                                             const Iterate& it, const InvariantFields& inv,
                                             const ShockTraces& tr) {
  const int ns = spec.n_sigma, nt = spec.n_tau;
  CoefficientFields cf;
  cf.mu = Field2(ns, nt);
  cf.nu = Field2(ns, nt);
  cf.M = Field2(ns, nt);
  cf.M_u = Field2(ns, nt);
  cf.M_v = Field2(ns, nt);

  par_for(ns + 1, [&](std::size_t ii) {
    int i = static_cast<int>(ii);
    for (int j = 0; j <= nt; ++j) {
      double ci = inv.c_in(i, j), co = inv.c_out(i, j);
      SpeedPartials sp = eos.speed_partials({inv.alpha(i, j), inv.beta(i, j)});
      double b1u = inv.bp1_u(i, j), b1v = inv.bp1_v(i, j);
      double b2u = inv.bp2_u(i, j), b2v = inv.bp2_v(i, j);

      // d c/du through alpha only, d c/dv through beta only (eq. 18)
      double ci_u = sp.ci_a * b1u, ci_v = sp.ci_b * b1v;
      double co_u = sp.co_a * b1u, co_v = sp.co_b * b1v;
      double ci_v_u = sp.ci_ab * b1u * b1v;
      double ci_v_v = sp.ci_bb * b1v * b1v + sp.ci_b * b2v;
      double co_u_u = sp.co_aa * b1u * b1u + sp.co_a * b2u;
      double co_u_v = sp.co_ab * b1v * b1u;

      double W = co - ci, W_u = co_u - ci_u, W_v = co_v - ci_v;
      double num = co * ci_v, den = W * ci;
      double num_u = co_u * ci_v + co * ci_v_u;
      double num_v = co_v * ci_v + co * ci_v_v;
      double den_u = W_u * ci + W * ci_u;
      double den_v = W_v * ci + W * ci_v;
      double mu = num / den;
      double mu_u = (num_u * den - num * den_u) / (den * den);
      double mu_v = (num_v * den - num * den_v) / (den * den);

      double num2 = ci * co_u, den2 = W * co;
      double num2_u = ci_u * co_u + ci * co_u_u;
      double num2_v = ci_v * co_u + ci * co_u_v;
      double den2_u = W_u * co + W * co_u;
      double den2_v = W_v * co + W * co_v;
      double nu = -num2 / den2;
      double nu_u = -(num2_u * den2 - num2 * den2_u) / (den2 * den2);
      double nu_v = -(num2_v * den2 - num2 * den2_v) / (den2 * den2);

      double xu = it.x_u(i, j), xv = it.x_v(i, j);
      cf.mu(i, j) = mu;
      cf.nu(i, j) = nu;
      cf.M(i, j) = mu * xu + nu * xv;
      cf.M_u(i, j) = mu_u * xu + mu * it.x_uu(i, j) + nu_u * xv + nu * it.x_uv(i, j);
      cf.M_v(i, j) = mu_v * xu + mu * it.x_uv(i, j) + nu_v * xv + nu * it.x_vv(i, j);
    }
  });

  // Lambda(u) = Gamma a x_uu(au,u) + Gamma' x_u(au,u) + Gamma M(au,u); for a
  // knot parameter the point (au,u) is the shock-edge node itself
  cf.lambda.resize(ns + 1);
  for (int k = 0; k <= ns; ++k)
    cf.lambda[k] = tr.Gamma[k] * spec.a * it.x_uu(k, nt) + tr.Gamma_prime[k] * it.x_u(k, nt) +
                   tr.Gamma[k] * cf.M(k, nt);
  return cf;
}

Iterate update_x(const DomainSpec& spec, const Iterate& prev, const ShockTraces& tr,
                 const CoefficientFields& cf) {
  const int ns = spec.n_sigma, nt = spec.n_tau;
  const double a = spec.a, eps = spec.epsilon;

  std::vector<double> lcum(ns + 1);
  shock_cumulative(spec, cf.lambda, lcum);
  auto lcum_at = [&](double p) { return eval_cubic_uniform(lcum, p / eps * ns); };

  // shock-edge arrays of the previous iterate for the Lambda evaluator
  std::vector<double> xuu_e(ns + 1), xu_e(ns + 1), M_e(ns + 1);
  for (int k = 0; k <= ns; ++k) {
    xuu_e[k] = prev.x_uu(k, nt);
    xu_e[k] = prev.x_u(k, nt);
    M_e[k] = cf.M(k, nt);
  }
  auto edge_at = [&](const std::vector<double>& e, double p) {
    return eval_cubic_uniform(e, p / eps * ns);
  };
  auto lambda_at = [&](double p) {
    double g = tr.gamma_spline.value(p), gp = tr.gamma_spline.deriv(p);
    return g * a * edge_at(xuu_e, p) + gp * edge_at(xu_e, p) + g * edge_at(M_e, p);
  };

  Iterate next;
  next.x = Field2(ns, nt);
  next.x_u = Field2(ns, nt);
  next.x_v = Field2(ns, nt);
  next.x_uu = Field2(ns, nt);
  next.x_uv = cf.M;
  next.x_vv = Field2(ns, nt);

  // Phi(u,v) = int_0^v Lambda + int_{av}^u M(.,v); also x_vv's incoming part
  Field2 Phi(ns, nt);
  par_for(static_cast<std::size_t>(ns + 1) * (nt + 1), [&](std::size_t idx) {
    int i = static_cast<int>(idx / (nt + 1));
    int j = static_cast<int>(idx % (nt + 1));
    double u = spec.u_node(i), v = spec.v_node(i, j);
    Phi(i, j) = lcum_at(v) + integrate_incoming(spec, cf.M, v, u);
    next.x_vv(i, j) = lambda_at(v) - a * edge_at(M_e, v) + integrate_incoming(spec, cf.M_v, v, u);
  });

  par_for(ns + 1, [&](std::size_t ii) {
    int i = static_cast<int>(ii);
    double u = spec.u_node(i);
    std::vector<double> cphi(nt + 1), cm(nt + 1), cmu(nt + 1);
    outgoing_cumulative(spec, Phi, i, cphi);
    outgoing_cumulative(spec, cf.M, i, cm);
    outgoing_cumulative(spec, cf.M_u, i, cmu);
    // wall-point incoming integrals, shared along the sigma-line
    double inc_M = integrate_incoming(spec, cf.M, u, u);
    double inc_Mv = integrate_incoming(spec, cf.M_v, u, u);
    double xu_base = -1.0 - lcum_at(u) - inc_M;
    double xuu_base = -lambda_at(u) + a * edge_at(M_e, u) - 2.0 * cf.M(i, 0) - inc_Mv;
    for (int j = 0; j <= nt; ++j) {
      next.x(i, j) = (spec.v_node(i, j) - u) + cphi[j];
      next.x_v(i, j) = 1.0 + Phi(i, j);
      next.x_u(i, j) = xu_base + cm[j];
      next.x_uu(i, j) = xuu_base + cmu[j];
    }
  });
  return next;
}

Trace1 update_beta_plus(const BarotropicEos& eos, const Iterate& prev, const ShockTraces& tr) {
  const std::size_t n = prev.beta_plus.size();
  Trace1 next(n);
  for (std::size_t k = 0; k < n; ++k) {
    try {
      next[k] = solve_H(eos, tr.alpha_plus[k], tr.alpha_minus[k], tr.beta_minus[k],
                        prev.beta_plus[k]);
    } catch (const Error& e) {
      fail(e.kind(), std::string(e.what()) + " at shock node " + std::to_string(k));
    }
  }
  return next;
}

Solution solve(const SolverConfig& cfg, const BarotropicEos& eos, const AheadField& ahead,
               const ReflectionPointData& refl, const DomainSpec& spec,
               const Iterate* custom_init, Diagnostics* diag_out) {
  spec.validate();
  if (!refl.beta0_prime_set)
    fail(ErrKind::solver, "reflection data incomplete: beta0_prime has not been set");
  if (!(cfg.tol_value > 0.0) || !(cfg.tol_norm > 0.0) || cfg.max_iter < 1)
    fail(ErrKind::config, "solver tolerances must be positive and max_iter >= 1");

  Diagnostics local;
  Diagnostics& diag = diag_out ? *diag_out : local;
  diag = Diagnostics{};

  double T_work = 2.0 * spec.epsilon * (1.0 + refl.a) / refl.eta0;
  BoundaryChar bchar(ahead, std::min(ahead.horizon(), T_work));

  Iterate it = custom_init ? *custom_init : init_iterate(refl, spec);
  if (custom_init) {
    // ball membership, eq. 118/119 endpoint conditions, checked bitwise
    if (it.beta_plus.size() != static_cast<std::size_t>(spec.n_sigma + 1) ||
        it.x.n_sigma() != spec.n_sigma || it.x.n_tau() != spec.n_tau)
      fail(ErrKind::config, "custom initial iterate has wrong grid size");
    if (it.beta_plus[0] != refl.beta0)
      fail(ErrKind::config, "custom initial iterate violates beta+(0) = beta0");
    if (it.x(0, 0) != 0.0 || it.x_v(0, 0) != 1.0 || it.x_u(0, 0) != -1.0)
      fail(ErrKind::config, "custom initial iterate violates the origin normalization");
  }

  const Trace1 knots = shock_knots(spec);
  auto bp2_at_knots = [&](const Trace1& bp) {
    CubicSpline s(knots, bp, CubicSpline::End::clamped, CubicSpline::End::not_a_knot,
                  refl.beta0_prime);
    Trace1 out(bp.size());
    for (std::size_t k = 0; k < bp.size(); ++k) out[k] = s.deriv2(knots[k]);
    return out;
  };

  bool converged = false;
  InvariantFields inv;
  TimeField tf;
  ShockTraces tr;
  CoefficientFields cf;

  for (int m = 1; m <= cfg.max_iter; ++m) {
    inv = assemble_invariant_fields(eos, spec, it.beta_plus, refl.beta0_prime);
    tf = compute_time_field(eos, spec, it, inv);
    tr = compute_shock_traces(eos, ahead, bchar, spec, it, inv, tf);
    diag.left_of_B_events += tr.left_of_B;
    cf = compute_coefficient_fields(eos, spec, it, inv, tr);

    Iterate next = update_x(spec, it, tr, cf);
    next.beta_plus = update_beta_plus(eos, it, tr);

    double dval = sup_abs_diff(next.x, it.x) + sup_abs_diff(next.beta_plus, it.beta_plus);
    Trace1 bp2_new = bp2_at_knots(next.beta_plus);
    Trace1 bp2_old = bp2_at_knots(it.beta_plus);
    Trace1 bp2_diff(bp2_new.size());
    for (std::size_t k = 0; k < bp2_new.size(); ++k) bp2_diff[k] = bp2_new[k] - bp2_old[k];
    auto [n2, n1] = discrete_norms(diff(next.x_uu, it.x_uu), diff(next.x_uv, it.x_uv),
                                   diff(next.x_vv, it.x_vv), bp2_diff);
    double dnorm = n2 + n1;

    diag.value_delta.push_back(dval);
    diag.norm_delta.push_back(dnorm);
    auto [N0_2, B_1] = discrete_norms(next.x_uu, next.x_uv, next.x_vv, bp2_new);
    diag.N0_monitor.push_back(N0_2);
    diag.B_monitor.push_back(B_1);
    if (diag.value_delta.size() >= 2) {
      std::size_t k = diag.value_delta.size() - 1;
      if (diag.value_delta[k - 1] > 0.0)
        diag.ratio_value.push_back(diag.value_delta[k] / diag.value_delta[k - 1]);
      if (diag.norm_delta[k - 1] > 0.0)
        diag.ratio_norm.push_back(diag.norm_delta[k] / diag.norm_delta[k - 1]);
    }
    diag.iterations = m;
    it = std::move(next);
    if (dval < cfg.tol_value && dnorm < cfg.tol_norm) {
      converged = true;
      break;
    }
  }
  for (double r : diag.ratio_value) diag.max_ratio_value = std::max(diag.max_ratio_value, r);
  for (double r : diag.ratio_norm) diag.max_ratio_norm = std::max(diag.max_ratio_norm, r);
  diag.converged = converged;

  if (!converged) {
    std::string hist;
    std::size_t from = diag.ratio_value.size() > 5 ? diag.ratio_value.size() - 5 : 0;
    for (std::size_t k = from; k < diag.ratio_value.size(); ++k)
      hist += (hist.empty() ? "" : ", ") + std::to_string(diag.ratio_value[k]);
    diag.failure = "no contraction within max_iter";
    fail(ErrKind::solver,
         "solver did not contract within " + std::to_string(cfg.max_iter) +
             " iterations (last contraction ratios: " + hist + ")");
  }

  // final self-consistent realization of the converged iterate
  inv = assemble_invariant_fields(eos, spec, it.beta_plus, refl.beta0_prime);
  tf = compute_time_field(eos, spec, it, inv);
  tr = compute_shock_traces(eos, ahead, bchar, spec, it, inv, tf);
  cf = compute_coefficient_fields(eos, spec, it, inv, tr);

  diag.containment_min_margin = tr.containment_margin;
  diag.determinism_min_margin = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= spec.n_sigma; ++k)
    diag.determinism_min_margin =
        std::min({diag.determinism_min_margin, tr.margin_lo[k], tr.margin_hi[k]});
  if (diag.determinism_min_margin <= 0.0) {
    diag.failure = "determinism margin non-positive after convergence";
    fail(ErrKind::solver, diag.failure);
  }

  diag.xuv_minus_M_sup = sup_abs_diff(it.x_uv, cf.M);
  diag.shock_bc_residual = 0.0;
  for (int k = 0; k <= spec.n_sigma; ++k)
    diag.shock_bc_residual = std::max(
        diag.shock_bc_residual,
        std::abs(it.x_v(k, spec.n_tau) - tr.Gamma[k] * it.x_u(k, spec.n_tau)));

  Solution sol;
  sol.spec = spec;
  sol.refl = refl;
  sol.t = tf.t;
  sol.t_u = tf.t_u;
  sol.t_v = tf.t_v;
  sol.x = it.x;
  sol.x_u = it.x_u;
  sol.x_v = it.x_v;
  sol.x_uu = it.x_uu;
  sol.x_uv = it.x_uv;
  sol.x_vv = it.x_vv;
  sol.alpha = inv.alpha;
  sol.beta = inv.beta;
  sol.beta_plus = it.beta_plus;
  sol.traces = tr;

  const int ns = spec.n_sigma, nt = spec.n_tau;
  sol.rho = Field2(ns, nt);
  sol.w = Field2(ns, nt);
  diag.jacobian_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= ns; ++i)
    for (int j = 0; j <= nt; ++j) {
      FluidState s = eos.from_invariants({inv.alpha(i, j), inv.beta(i, j)});
      sol.rho(i, j) = s.rho;
      sol.w(i, j) = s.w;
      double jac = (inv.c_out(i, j) - inv.c_in(i, j)) * tf.t_u(i, j) * tf.t_v(i, j);
      diag.jacobian_min = std::min(diag.jacobian_min, jac);
    }
  diag.jacobian_origin = (inv.c_out(0, 0) - inv.c_in(0, 0)) * tf.t_u(0, 0) * tf.t_v(0, 0);
  if (diag.jacobian_min <= 0.0) {
    diag.failure = "Jacobian (c_out - c_in) t_u t_v vanished";
    fail(ErrKind::solver, diag.failure);
  }

  sol.J_residual.resize(ns + 1);
  for (int k = 0; k <= ns; ++k)
    sol.J_residual[k] = residual_J(eos, tr.alpha_plus[k], it.beta_plus[k], tr.alpha_minus[k],
                                   tr.beta_minus[k]);

  sol.diag = diag;
  return sol;
}

}  // namespace refl1d
