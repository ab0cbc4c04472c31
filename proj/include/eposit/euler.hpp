#pragma once

#include <Eigen/Core>

namespace eposit {

// Intrinsic XYZ convention throughout: R = Rx(a) * Ry(b) * Rz(c).
// Angles in degrees.

Eigen::Matrix3d rotation_from_euler_xyz(const Eigen::Vector3d& angles_deg);
Eigen::Vector3d euler_xyz_from_rotation(const Eigen::Matrix3d& rotation);

// Wrap an angle in degrees to (-180, 180].
double wrap_angle_deg(double deg);

}  // namespace eposit
