#pragma once

#include <span>
#include <utility>
#include <vector>

namespace refl1d {

// Discrete representation of the triangular domain
//   T_eps = { 0 <= u <= v <= u/a <= eps }
// as the image of the unit square under
//   (sigma, tau) |-> (u, v) = (a eps sigma, eps sigma (a + tau (1-a))).
// tau = 0 is the wall u = v, tau = 1 is the shock u = a v, sigma = const
// lines are the outgoing characteristics. The sigma = 0 edge collapses to
// the origin.
struct DomainSpec {
  double epsilon = 0.1;
  double a = 0.5;
  int n_sigma = 64;
  int n_tau = 64;

  void validate() const;

  double sigma(int i) const { return static_cast<double>(i) / n_sigma; }
  double tau(int j) const { return static_cast<double>(j) / n_tau; }
  double u_node(int i) const { return a * epsilon * sigma(i); }
  // v = u + eps sigma tau (1-a): the tau = 0 edge satisfies v == u bitwise,
  // which makes the wall identities exact rather than rounded
  double v_node(int i, int j) const {
    return u_node(i) + epsilon * sigma(i) * tau(j) * (1.0 - a);
  }
  // spacing of v along the sigma-line i
  double dv_line(int i) const { return epsilon * sigma(i) * (1.0 - a) / n_tau; }
};

struct UV {
  double u, v;
};

// errors on parameters outside [0,1]
UV map_to_uv(const DomainSpec& spec, double sigma, double tau);

// Values on the (n_sigma+1) x (n_tau+1) tensor grid in (sigma, tau).
class Field2 {
 public:
  Field2() = default;
  Field2(int n_sigma, int n_tau, double init = 0.0)
      : ns_(n_sigma), nt_(n_tau), v_((n_sigma + 1) * (n_tau + 1), init) {}

  double& operator()(int i, int j) { return v_[static_cast<std::size_t>(i) * (nt_ + 1) + j]; }
  double operator()(int i, int j) const { return v_[static_cast<std::size_t>(i) * (nt_ + 1) + j]; }

  int n_sigma() const { return ns_; }
  int n_tau() const { return nt_; }
  std::size_t size() const { return v_.size(); }
  std::span<const double> data() const { return v_; }
  std::span<double> data() { return v_; }

 private:
  int ns_ = 0, nt_ = 0;
  std::vector<double> v_;
};

// 1D trace along an edge, one value per sigma node.
using Trace1 = std::vector<double>;

// ---- quadrature and interpolation kernels ------------------------------
// Cumulative integral over uniformly spaced samples, 4-point Newton-Cotes
// per interval (exact on cubics at every node, O(h^4)); out[0] = 0.
void cumulative_uniform(double h, std::span<const double> f, std::span<double> out);

// Local 4-point Lagrange cubic on a uniform grid; s in index units [0, n].
// Reproduces grid values exactly at nodes and cubics exactly everywhere.
double eval_cubic_uniform(std::span<const double> y, double s);

// Tensor 4-point Lagrange evaluation of a Field2 at (sigma, tau) in [0,1]^2.
double interp2(const Field2& f, double sigma, double tau);

// ---- spec-level integral operations -------------------------------------
// int_u^v f(u, v') dv' along the sigma-line i, upper limit tau in [0,1]
// (off-grid upper limits via cubic evaluation of the cumulative integral)
double integrate_outgoing(const DomainSpec& spec, const Field2& f, int i, double tau_upper);
void outgoing_cumulative(const DomainSpec& spec, const Field2& f, int i, std::span<double> out);

// int_{a v}^{u_upper} f(u', v) du' along an incoming characteristic,
// 2 n_sigma panels, tensor interpolation of f
double integrate_incoming(const DomainSpec& spec, const Field2& f, double v, double u_upper);

// int_0^{u_upper} f(u', u') du' along the wall edge
double integrate_wall(const DomainSpec& spec, const Field2& f, double u_upper);
void wall_cumulative(const DomainSpec& spec, const Field2& f, std::span<double> out);

// int_0^{v_upper} Lambda(u') du' with Lambda sampled on the shock knots
// v_k = eps sigma_k; errors if v_upper > eps
double cumulative_shock_integral(const DomainSpec& spec, const Trace1& lambda, double v_upper);
void shock_cumulative(const DomainSpec& spec, const Trace1& lambda, std::span<double> out);

// Discrete analogs of the paper's C^2 ball norms: (max of the three
// second-derivative sups, sup of the trace second derivative).
std::pair<double, double> discrete_norms(const Field2& xuu, const Field2& xuv,
                                         const Field2& xvv, std::span<const double> bp2);

}  // namespace refl1d
