#include "refl1d/eos.hpp"

#include <cmath>

#include "refl1d/error.hpp"

namespace refl1d {

BarotropicEos::BarotropicEos(EosKind kind, double K, double gamma)
    : kind_(kind), K_(K), gamma_(gamma), sqrt_Kgamma_(std::sqrt(K * gamma)) {
  if (!(K > 0.0)) fail(ErrKind::config, "eos.K must be > 0");
  if (kind == EosKind::polytropic && !(gamma > 1.0))
    fail(ErrKind::config, "polytropic eos requires eos.gamma > 1");
}

BarotropicEos BarotropicEos::polytropic(double K, double gamma) {
  return BarotropicEos(EosKind::polytropic, K, gamma);
}

BarotropicEos BarotropicEos::isothermal(double K) {
  return BarotropicEos(EosKind::isothermal, K, 1.0);
}

BarotropicEos BarotropicEos::from_config(const std::string& kind, double K, double gamma) {
  if (kind == "polytropic") return polytropic(K, gamma);
  if (kind == "isothermal") {
    if (gamma != 1.0) fail(ErrKind::config, "isothermal eos requires eos.gamma = 1");
    return isothermal(K);
  }
  fail(ErrKind::config, "unknown eos.kind '" + kind + "' (expected polytropic | isothermal)");
}

double BarotropicEos::pressure(double rho) const {
  if (!(rho > 0.0)) fail(ErrKind::physics, "pressure: rho must be > 0");
  return kind_ == EosKind::polytropic ? K_ * std::pow(rho, gamma_) : K_ * rho;
}

double BarotropicEos::dp_drho(double rho) const {
  if (!(rho > 0.0)) fail(ErrKind::physics, "dp_drho: rho must be > 0");
  return kind_ == EosKind::polytropic ? K_ * gamma_ * std::pow(rho, gamma_ - 1.0) : K_;
}

double BarotropicEos::sound_speed(double rho) const {
  if (!(rho > 0.0)) fail(ErrKind::physics, "sound_speed: rho must be > 0");
  return kind_ == EosKind::polytropic ? sqrt_Kgamma_ * std::pow(rho, 0.5 * (gamma_ - 1.0))
                                      : std::sqrt(K_);
}

double BarotropicEos::riemann_potential(double rho) const {
  if (!(rho > 0.0)) fail(ErrKind::physics, "riemann_potential: rho must be > 0");
  if (kind_ == EosKind::polytropic) return 2.0 * sound_speed(rho) / (gamma_ - 1.0);
  return std::sqrt(K_) * std::log(rho);
}

double BarotropicEos::potential_inverse(double m) const {
  if (kind_ == EosKind::polytropic) {
    // P(rho) -> 0 as rho -> 0+, so m <= 0 has no positive-density preimage.
    if (!(m > 0.0)) fail(ErrKind::physics, "vacuum state: (alpha+beta)/2 below range of P");
    return std::pow(m * (gamma_ - 1.0) / (2.0 * sqrt_Kgamma_), 2.0 / (gamma_ - 1.0));
  }
  return std::exp(m / std::sqrt(K_));
}

double BarotropicEos::potential_slope() const {
  return kind_ == EosKind::polytropic ? 0.5 * (gamma_ - 1.0) : 0.0;
}

InvariantPair BarotropicEos::to_invariants(const FluidState& s) const {
  double P = riemann_potential(s.rho);
  return {P + s.w, P - s.w};
}

FluidState BarotropicEos::from_invariants(const InvariantPair& p) const {
  return {potential_inverse(0.5 * (p.alpha + p.beta)), 0.5 * (p.alpha - p.beta)};
}

CharSpeeds BarotropicEos::char_speeds(const InvariantPair& p) const {
  FluidState s = from_invariants(p);
  double eta = sound_speed(s.rho);
  return {s.w - eta, s.w + eta};
}

StateJacobian BarotropicEos::state_jacobian(const InvariantPair& p) const {
  FluidState s = from_invariants(p);
  double eta = sound_speed(s.rho);
  double r = s.rho / (2.0 * eta);
  return {r, r, 0.5, -0.5};
}

SpeedPartials BarotropicEos::speed_partials(const InvariantPair&) const {
  double np = potential_slope();  // N'(m); N'' = 0 for both families
  SpeedPartials sp;
  sp.co_a = 0.5 + 0.5 * np;
  sp.co_b = -0.5 + 0.5 * np;
  sp.ci_a = 0.5 - 0.5 * np;
  sp.ci_b = -0.5 - 0.5 * np;
  sp.ci_aa = sp.ci_ab = sp.ci_bb = 0.0;
  sp.co_aa = sp.co_ab = sp.co_bb = 0.0;
  return sp;
}

}  // namespace refl1d
