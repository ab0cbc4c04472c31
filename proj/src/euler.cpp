#include "eposit/euler.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>

namespace eposit {

namespace {
constexpr double kDegPerRad = 57.29577951308232;
}

double wrap_angle_deg(double deg) {
  double w = std::fmod(deg, 360.0);
  if (w > 180.0)
    w -= 360.0;
  else if (w <= -180.0)
    w += 360.0;
  return w;
}

Eigen::Matrix3d rotation_from_euler_xyz(const Eigen::Vector3d& angles_deg) {
  const Eigen::Vector3d a = angles_deg / kDegPerRad;
  return (Eigen::AngleAxisd(a.x(), Eigen::Vector3d::UnitX()) *
          Eigen::AngleAxisd(a.y(), Eigen::Vector3d::UnitY()) *
          Eigen::AngleAxisd(a.z(), Eigen::Vector3d::UnitZ()))
      .toRotationMatrix();
}

Eigen::Vector3d euler_xyz_from_rotation(const Eigen::Matrix3d& rotation) {
  // R = Rx(a) Ry(b) Rz(c) has R(0,2) = sin(b), R(1,2) = -sin(a)cos(b),
  // R(2,2) = cos(a)cos(b), R(0,1) = -cos(b)sin(c), R(0,0) = cos(b)cos(c).
  const double sb = std::clamp(rotation(0, 2), -1.0, 1.0);
  const double b = std::asin(sb);
  double a, c;
  if (std::abs(sb) < 1.0 - 1e-12) {
    a = std::atan2(-rotation(1, 2), rotation(2, 2));
    c = std::atan2(-rotation(0, 1), rotation(0, 0));
  } else {
    // Gimbal lock: only a -+ c is observable; fold it into a.
    a = std::atan2(rotation(2, 1), rotation(1, 1));
    c = 0.0;
  }
  return Eigen::Vector3d(a, b, c) * kDegPerRad;
}

}  // namespace eposit
