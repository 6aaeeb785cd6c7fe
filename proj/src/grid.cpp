#include "refl1d/grid.hpp"

#include <algorithm>
#include <cmath>

#include "refl1d/error.hpp"

namespace refl1d {

void DomainSpec::validate() const {
  if (!(epsilon > 0.0)) fail(ErrKind::config, "domain.epsilon must be > 0");
  if (!(a > 0.0 && a < 1.0)) fail(ErrKind::physics, "coordinate ratio a must lie in (0,1)");
  if (n_sigma < 8 || n_sigma % 2 != 0) fail(ErrKind::config, "grid.n_sigma must be an even integer >= 8");
  if (n_tau < 8 || n_tau % 2 != 0) fail(ErrKind::config, "grid.n_tau must be an even integer >= 8");
}

UV map_to_uv(const DomainSpec& spec, double sigma, double tau) {
  if (!(sigma >= 0.0 && sigma <= 1.0 && tau >= 0.0 && tau <= 1.0))
    fail(ErrKind::solver, "map_to_uv: parameters outside [0,1]");
  double u = spec.a * spec.epsilon * sigma;
  double v = u + spec.epsilon * sigma * tau * (1.0 - spec.a);
  return {u, v};
}

void cumulative_uniform(double h, std::span<const double> f, std::span<double> out) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n < 3) fail(ErrKind::solver, "cumulative_uniform: need at least 4 samples");
  out[0] = 0.0;
  for (int j = 0; j < n; ++j) {
    double q;
    if (j == 0)
      q = h * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]) / 24.0;
    else if (j == n - 1)
      q = h * (f[n - 3] - 5.0 * f[n - 2] + 19.0 * f[n - 1] + 9.0 * f[n]) / 24.0;
    else
      q = h * (-f[j - 1] + 13.0 * f[j] + 13.0 * f[j + 1] - f[j + 2]) / 24.0;
    out[j + 1] = out[j] + q;
  }
}

namespace {

inline void lagrange4(double r, double w[4]) {
  w[0] = -(r - 1.0) * (r - 2.0) * (r - 3.0) / 6.0;
  w[1] = r * (r - 2.0) * (r - 3.0) / 2.0;
  w[2] = -r * (r - 1.0) * (r - 3.0) / 2.0;
  w[3] = r * (r - 1.0) * (r - 2.0) / 6.0;
}

inline int stencil_start(double s, int n) {
  int j = static_cast<int>(std::floor(s));
  j = std::clamp(j, 0, n - 1);
  return std::clamp(j - 1, 0, n - 3);
}

// rounding guard for parameters that must land in [0,1]
inline double clamp_unit(double x, const char* what) {
  if (x < 0.0 || x > 1.0) {
    if (x < -1e-9 || x > 1.0 + 1e-9) fail(ErrKind::solver, std::string(what) + " escaped [0,1]");
    x = std::clamp(x, 0.0, 1.0);
  }
  return x;
}

}  // namespace

double eval_cubic_uniform(std::span<const double> y, double s) {
  const int n = static_cast<int>(y.size()) - 1;
  if (n < 3) fail(ErrKind::solver, "eval_cubic_uniform: need at least 4 samples");
  int j0 = stencil_start(s, n);
  double r = s - j0;
  double w[4];
  lagrange4(r, w);
  return w[0] * y[j0] + w[1] * y[j0 + 1] + w[2] * y[j0 + 2] + w[3] * y[j0 + 3];
}

double interp2(const Field2& f, double sigma, double tau) {
  const int ns = f.n_sigma(), nt = f.n_tau();
  sigma = clamp_unit(sigma, "interp2 sigma");
  tau = clamp_unit(tau, "interp2 tau");
  double ss = sigma * ns, st = tau * nt;
  int i0 = stencil_start(ss, ns), j0 = stencil_start(st, nt);
  double ws[4], wt[4];
  lagrange4(ss - i0, ws);
  lagrange4(st - j0, wt);
  double acc = 0.0;
  for (int p = 0; p < 4; ++p) {
    double row = 0.0;
    for (int q = 0; q < 4; ++q) row += wt[q] * f(i0 + p, j0 + q);
    acc += ws[p] * row;
  }
  return acc;
}

void outgoing_cumulative(const DomainSpec& spec, const Field2& f, int i, std::span<double> out) {
  const int nt = spec.n_tau;
  if (i == 0) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  std::vector<double> line(nt + 1);
  for (int j = 0; j <= nt; ++j) line[j] = f(i, j);
  cumulative_uniform(spec.dv_line(i), line, out);
}

double integrate_outgoing(const DomainSpec& spec, const Field2& f, int i, double tau_upper) {
  tau_upper = clamp_unit(tau_upper, "integrate_outgoing tau");
  std::vector<double> cum(spec.n_tau + 1);
  outgoing_cumulative(spec, f, i, cum);
  return eval_cubic_uniform(cum, tau_upper * spec.n_tau);
}

double integrate_incoming(const DomainSpec& spec, const Field2& f, double v, double u_upper) {
  const double lo = spec.a * v;
  if (u_upper <= lo) return 0.0;
  const int m = 2 * spec.n_sigma;
  const double h = (u_upper - lo) / m;
  const double ae = spec.a * spec.epsilon;
  std::vector<double> samples(m + 1);
  for (int k = 0; k <= m; ++k) {
    double up = lo + h * k;
    double sg, tg;
    if (up <= 0.0) {
      sg = 0.0;
      tg = 1.0;
    } else {
      sg = up / ae;
      tg = spec.a * (v - up) / (up * (1.0 - spec.a));
    }
    samples[k] = interp2(f, clamp_unit(sg, "incoming sigma"), clamp_unit(tg, "incoming tau"));
  }
  std::vector<double> cum(m + 1);
  cumulative_uniform(h, samples, cum);
  return cum[m];
}

void wall_cumulative(const DomainSpec& spec, const Field2& f, std::span<double> out) {
  const int ns = spec.n_sigma;
  std::vector<double> edge(ns + 1);
  for (int i = 0; i <= ns; ++i) edge[i] = f(i, 0);
  cumulative_uniform(spec.a * spec.epsilon / ns, edge, out);
}

double integrate_wall(const DomainSpec& spec, const Field2& f, double u_upper) {
  std::vector<double> cum(spec.n_sigma + 1);
  wall_cumulative(spec, f, cum);
  double s = u_upper / (spec.a * spec.epsilon) * spec.n_sigma;
  return eval_cubic_uniform(cum, s);
}

void shock_cumulative(const DomainSpec& spec, const Trace1& lambda, std::span<double> out) {
  cumulative_uniform(spec.epsilon / spec.n_sigma, lambda, out);
}

double cumulative_shock_integral(const DomainSpec& spec, const Trace1& lambda, double v_upper) {
  if (v_upper > spec.epsilon * (1.0 + 1e-12))
    fail(ErrKind::solver, "cumulative_shock_integral: upper limit beyond eps");
  std::vector<double> cum(lambda.size());
  shock_cumulative(spec, lambda, cum);
  return eval_cubic_uniform(cum, v_upper / spec.epsilon * spec.n_sigma);
}

std::pair<double, double> discrete_norms(const Field2& xuu, const Field2& xuv,
                                         const Field2& xvv, std::span<const double> bp2) {
  double n2 = 0.0;
  for (double x : xuu.data()) n2 = std::max(n2, std::abs(x));
  for (double x : xuv.data()) n2 = std::max(n2, std::abs(x));
  for (double x : xvv.data()) n2 = std::max(n2, std::abs(x));
  double n1 = 0.0;
  for (double x : bp2) n1 = std::max(n1, std::abs(x));
  return {n2, n1};
}

}  // namespace refl1d
