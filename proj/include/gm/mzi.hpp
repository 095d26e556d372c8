#pragma once

#include "gm/numerics.hpp"

namespace gm {

// One programmable Mach-Zehnder interferometer. alpha and beta are the
// deviations of the first and second internal splitter from 50:50; gamma1 and
// gamma2 are amplitude transmissions of the two internal arms.
struct MZIParams {
  double theta = 0.0;
  double phi = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma1 = 1.0;
  double gamma2 = 1.0;
};

struct SplittingBounds {
  double lower = 0.0;
  double upper = 0.0;
};

// i e^{i theta/2} [[e^{i phi} sin(theta/2), cos(theta/2)],
//                  [e^{i phi} cos(theta/2), -sin(theta/2)]]
Eigen::Matrix2cd ideal_transfer(double theta, double phi);

// -e^{i theta/2} e^{-i(beta+pi/4) X} e^{-i(theta/2) Z} e^{-i(alpha+pi/4) X} diag(e^{i phi}, 1).
// The arm transmissions in p are ignored.
Eigen::Matrix2cd noisy_transfer(const MZIParams& p);

// noisy_transfer with diag(gamma1, gamma2) acting on the internal arms.
Eigen::Matrix2cd lossy_transfer(const MZIParams& p);

// Range of |T11 / T12| reachable by sweeping theta for fixed errors and arm
// transmissions. theta and phi in p are ignored.
SplittingBounds splitting_bounds(const MZIParams& p);

}  // namespace gm
