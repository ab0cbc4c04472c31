#pragma once

#include <array>
#include <span>

#include "eposit/solver.hpp"

namespace eposit {

struct PoseError {
  // Per-axis intrinsic-XYZ Euler angle differences, degrees, wrapped to
  // (-180, 180].
  Eigen::Vector3d rot_err = Eigen::Vector3d::Zero();
  Eigen::Vector3d trans_err = Eigen::Vector3d::Zero();  // mm
};

// Tukey boxplot statistics (type-7 quartiles, 1.5*IQR whiskers) plus mean.
struct BoxplotSummary {
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double whisker_lo = 0.0;
  double whisker_hi = 0.0;
  double mean = 0.0;
  int outlier_count = 0;
};

PoseError pose_error(const Pose& estimate, const Pose& truth);

// RMS image-plane distance between the measured points (M0 and each Mi) and
// re-projections of the object points under the estimated pose.
double reprojection_error(const CorrespondenceSet& corr, const Pose& estimate,
                          CameraModel model, const Intrinsics& intr);

BoxplotSummary summarize(std::span<const double> values);

// Channel order: rot x, y, z then trans x, y, z.
inline constexpr std::array<const char*, 6> kErrorChannelNames = {
    "rot_x", "rot_y", "rot_z", "trans_x", "trans_y", "trans_z"};

std::array<BoxplotSummary, 6> summarize(std::span<const PoseError> errors);

}  // namespace eposit
