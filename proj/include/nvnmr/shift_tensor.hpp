#pragma once

#include <stdexcept>

#include <Eigen/Dense>

#include "constants.hpp"

namespace nvnmr {

// Chemical-shift tensor: principal values (Hz at the working field) plus
// the rotation taking the principal-axis system into the laboratory frame.
struct ShiftTensor {
  Eigen::Vector3d principal_values_hz{0.0, 0.0, 0.0}; // (dX, dY, dZ)
  Eigen::Matrix3d pas_rotation = Eigen::Matrix3d::Identity(); // PAS -> lab

  double iso() const { return principal_values_hz.sum() / 3.0; }

  // Columns are the principal axes expressed in the lab frame.
  Eigen::Vector3d principal_axis(int i) const { return pas_rotation.col(i); }

  // R diag(d) R^T, symmetric 3x3 in Hz.
  Eigen::Matrix3d lab_tensor() const {
    return pas_rotation * principal_values_hz.asDiagonal() *
           pas_rotation.transpose();
  }

  static ShiftTensor from_euler_zyz(const Eigen::Vector3d& principal_hz,
                                    double alpha, double beta, double gamma) {
    using Eigen::AngleAxisd;
    using Eigen::Vector3d;
    Eigen::Matrix3d r = (AngleAxisd(alpha, Vector3d::UnitZ()) *
                         AngleAxisd(beta, Vector3d::UnitY()) *
                         AngleAxisd(gamma, Vector3d::UnitZ()))
                            .toRotationMatrix();
    return ShiftTensor{principal_hz, r};
  }
};

// Secular shift for field direction b_hat:
//   sigma(b) = sum_i cos^2(theta_i) * delta_i,
// theta_i the angle between b_hat and principal axis i. Equals
// b^T sigma_lab b for unit b.
inline double secular_shift(const ShiftTensor& tensor, const Eigen::Vector3d& b_hat) {
  if (std::abs(b_hat.norm() - 1.0) > 1e-9)
    throw std::invalid_argument("secular_shift: b_hat is not a unit vector");
  double acc = 0.0;
  for (int i = 0; i < 3; ++i) {
    double c = tensor.principal_axis(i).dot(b_hat);
    acc += c * c * tensor.principal_values_hz(i);
  }
  return acc;
}

} // namespace nvnmr
