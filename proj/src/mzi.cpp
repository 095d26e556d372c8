#include "gm/mzi.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "gm/errors.hpp"

namespace gm {
namespace {

// e^{-i a X}
Eigen::Matrix2cd exp_x(double a) {
  const double c = std::cos(a);
  const Complex s = -kI * std::sin(a);
  Eigen::Matrix2cd m;
  m << c, s, s, c;
  return m;
}

Eigen::Matrix2cd build(const MZIParams& p, double g1, double g2) {
  const double h = 0.5 * p.theta;
  constexpr double q = std::numbers::pi / 4.0;
  Eigen::Matrix2cd middle = Eigen::Matrix2cd::Zero();
  middle(0, 0) = g1 * std::polar(1.0, -h);
  middle(1, 1) = g2 * std::polar(1.0, h);
  Eigen::Matrix2cd m = exp_x(p.beta + q) * middle * exp_x(p.alpha + q);
  m.col(0) *= std::polar(1.0, p.phi);
  return -std::polar(1.0, h) * m;
}

double ratio(double num, double den) {
  num = std::abs(num);
  den = std::abs(den);
  if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return num / den;
}

}  // namespace

Eigen::Matrix2cd ideal_transfer(double theta, double phi) {
  const double s = std::sin(0.5 * theta);
  const double c = std::cos(0.5 * theta);
  const Complex e = std::polar(1.0, phi);
  const Complex pre = kI * std::polar(1.0, 0.5 * theta);
  Eigen::Matrix2cd t;
  t << e * s, c, e * c, -s;
  return pre * t;
}

Eigen::Matrix2cd noisy_transfer(const MZIParams& p) { return build(p, 1.0, 1.0); }

Eigen::Matrix2cd lossy_transfer(const MZIParams& p) { return build(p, p.gamma1, p.gamma2); }

// |T11/T12|^2 is a ratio of two affine functions of cos(theta), so it is
// monotone in theta on [0, pi] and its extremes sit at theta = 0 and theta = pi.
// Writing S = alpha + beta and A = alpha - beta gives the closed forms below.
SplittingBounds splitting_bounds(const MZIParams& p) {
  const double g1 = p.gamma1;
  const double g2 = p.gamma2;
  if (g1 == 0.0 && g2 == 0.0) {
    throw Error(ErrorKind::kDegenerateDevice, "splitting_bounds: both arm transmissions are zero");
  }
  const double s = p.alpha + p.beta;
  const double a = p.alpha - p.beta;
  const double cs = std::cos(s), ss = std::sin(s), ca = std::cos(a), sa = std::sin(a);

  const double at_cross = ratio(g1 * (ca - ss) - g2 * (ca + ss), g1 * (cs + sa) + g2 * (cs - sa));
  const double at_bar = ratio(g1 * (ca - ss) + g2 * (ca + ss), g1 * (cs + sa) - g2 * (cs - sa));

  SplittingBounds b{at_cross, at_bar};
  if (b.lower > b.upper) std::swap(b.lower, b.upper);
  return b;
}

}  // namespace gm
