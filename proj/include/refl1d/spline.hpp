#pragma once

#include <vector>

namespace refl1d {

// Cubic spline interpolant with selectable end conditions. Used for the
// shock-edge traces (values, first and second derivatives at arbitrary
// parameters). Clamped ends impose an analytic first derivative; not-a-knot
// keeps O(h^3) derivative accuracy when no analytic value exists.
class CubicSpline {
 public:
  enum class End { not_a_knot, clamped, natural };

  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> y,
              End left = End::not_a_knot, End right = End::not_a_knot,
              double left_deriv = 0.0, double right_deriv = 0.0);

  double value(double x) const;
  double deriv(double x) const;
  double deriv2(double x) const;

  const std::vector<double>& knots() const { return x_; }
  const std::vector<double>& values() const { return y_; }

 private:
  int interval(double x) const;

  std::vector<double> x_, y_, m_;  // m_: second derivatives at knots
};

}  // namespace refl1d
