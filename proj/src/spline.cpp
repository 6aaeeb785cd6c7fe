#include "refl1d/spline.hpp"

#include <algorithm>
#include <cstddef>

#include "refl1d/error.hpp"

namespace refl1d {

// Unknowns are the second derivatives m_i. Interior rows:
//   h_{i-1} m_{i-1} + 2(h_{i-1}+h_i) m_i + h_i m_{i+1} = r_i,
//   r_i = 6[(y_{i+1}-y_i)/h_i - (y_i-y_{i-1})/h_{i-1}].
// Not-a-knot ends are eliminated into the adjacent interior row and
// recovered after the tridiagonal solve.
CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y,
                         End left, End right, double left_deriv, double right_deriv)
    : x_(std::move(x)), y_(std::move(y)) {
  const int n = static_cast<int>(x_.size()) - 1;
  if (n < 3) fail(ErrKind::solver, "CubicSpline: need at least 4 knots");
  std::vector<double> h(n);
  for (int i = 0; i < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    if (!(h[i] > 0.0)) fail(ErrKind::solver, "CubicSpline: knots must be strictly increasing");
  }

  std::vector<double> a(n + 1, 0.0), b(n + 1, 0.0), c(n + 1, 0.0), d(n + 1, 0.0);
  for (int i = 1; i < n; ++i) {
    a[i] = h[i - 1];
    b[i] = 2.0 * (h[i - 1] + h[i]);
    c[i] = h[i];
    d[i] = 6.0 * ((y_[i + 1] - y_[i]) / h[i] - (y_[i] - y_[i - 1]) / h[i - 1]);
  }

  int lo = 0, hi = n;
  switch (left) {
    case End::natural:
      b[0] = 1.0; c[0] = 0.0; d[0] = 0.0;
      break;
    case End::clamped:
      b[0] = 2.0 * h[0]; c[0] = h[0];
      d[0] = 6.0 * ((y_[1] - y_[0]) / h[0] - left_deriv);
      break;
    case End::not_a_knot: {
      // m_0 = (1 + h0/h1) m_1 - (h0/h1) m_2, substituted into row 1
      lo = 1;
      double q = h[0] / h[1];
      b[1] += h[0] * (1.0 + q);
      c[1] -= h[0] * q;
      a[1] = 0.0;
      break;
    }
  }
  switch (right) {
    case End::natural:
      a[n] = 0.0; b[n] = 1.0; d[n] = 0.0;
      break;
    case End::clamped:
      a[n] = h[n - 1]; b[n] = 2.0 * h[n - 1];
      d[n] = 6.0 * (right_deriv - (y_[n] - y_[n - 1]) / h[n - 1]);
      break;
    case End::not_a_knot: {
      hi = n - 1;
      double q = h[n - 1] / h[n - 2];
      b[n - 1] += h[n - 1] * (1.0 + q);
      a[n - 1] -= h[n - 1] * q;
      c[n - 1] = 0.0;
      break;
    }
  }

  // Thomas solve on rows lo..hi
  m_.assign(n + 1, 0.0);
  std::vector<double> cp(n + 1, 0.0), dp(n + 1, 0.0);
  cp[lo] = c[lo] / b[lo];
  dp[lo] = d[lo] / b[lo];
  for (int i = lo + 1; i <= hi; ++i) {
    double den = b[i] - a[i] * cp[i - 1];
    cp[i] = c[i] / den;
    dp[i] = (d[i] - a[i] * dp[i - 1]) / den;
  }
  m_[hi] = dp[hi];
  for (int i = hi - 1; i >= lo; --i) m_[i] = dp[i] - cp[i] * m_[i + 1];

  if (left == End::not_a_knot) {
    double q = h[0] / h[1];
    m_[0] = (1.0 + q) * m_[1] - q * m_[2];
  }
  if (right == End::not_a_knot) {
    double q = h[n - 1] / h[n - 2];
    m_[n] = (1.0 + q) * m_[n - 1] - q * m_[n - 2];
  }
}

int CubicSpline::interval(double x) const {
  const int n = static_cast<int>(x_.size()) - 1;
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  int i = static_cast<int>(it - x_.begin()) - 1;
  return std::clamp(i, 0, n - 1);
}

double CubicSpline::value(double x) const {
  int i = interval(x);
  double hi = x_[i + 1] - x_[i];
  double s = x - x_[i];
  double c1 = (y_[i + 1] - y_[i]) / hi - hi * (2.0 * m_[i] + m_[i + 1]) / 6.0;
  return y_[i] + s * (c1 + s * (0.5 * m_[i] + s * (m_[i + 1] - m_[i]) / (6.0 * hi)));
}

double CubicSpline::deriv(double x) const {
  int i = interval(x);
  double hi = x_[i + 1] - x_[i];
  double s = x - x_[i];
  double c1 = (y_[i + 1] - y_[i]) / hi - hi * (2.0 * m_[i] + m_[i + 1]) / 6.0;
  return c1 + s * (m_[i] + s * (m_[i + 1] - m_[i]) / (2.0 * hi));
}

double CubicSpline::deriv2(double x) const {
  int i = interval(x);
  double s = x - x_[i];
  return m_[i] + s * (m_[i + 1] - m_[i]) / (x_[i + 1] - x_[i]);
}

}  // namespace refl1d
