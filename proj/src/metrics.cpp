#include "eposit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "eposit/euler.hpp"

namespace eposit {

namespace {

// Type-7 quantile (linear interpolation) on sorted data.
double quantile(const std::vector<double>& sorted, double p) {
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

PoseError pose_error(const Pose& estimate, const Pose& truth) {
  PoseError err;
  const Eigen::Vector3d ee = euler_xyz_from_rotation(estimate.rotation);
  const Eigen::Vector3d et = euler_xyz_from_rotation(truth.rotation);
  for (int k = 0; k < 3; ++k) err.rot_err[k] = wrap_angle_deg(ee[k] - et[k]);
  err.trans_err = estimate.translation - truth.translation;
  return err;
}

double reprojection_error(const CorrespondenceSet& corr, const Pose& estimate,
                          CameraModel model, const Intrinsics& intr) {
  if (corr.image_pts.size() != corr.object.offsets.size())
    throw std::invalid_argument(
        "correspondence set: image point count differs from offset count");
  auto sq = [](double v) { return v * v; };
  const CenteredImagePoint ref = project(model, intr, estimate.translation);
  double sum = sq(ref.x - corr.image_ref.x) + sq(ref.y - corr.image_ref.y);
  for (std::size_t i = 0; i < corr.image_pts.size(); ++i) {
    const Eigen::Vector3d p_cam =
        estimate.rotation * corr.object.offsets[i] + estimate.translation;
    const CenteredImagePoint p = project(model, intr, p_cam);
    sum += sq(p.x - corr.image_pts[i].x) + sq(p.y - corr.image_pts[i].y);
  }
  return std::sqrt(sum / static_cast<double>(corr.image_pts.size() + 1));
}

BoxplotSummary summarize(std::span<const double> values) {
  if (values.empty()) throw EmptyInput("summarize requires at least one value");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());

  BoxplotSummary s;
  s.q1 = quantile(v, 0.25);
  s.median = quantile(v, 0.5);
  s.q3 = quantile(v, 0.75);
  const double iqr = s.q3 - s.q1;
  const double lo_fence = s.q1 - 1.5 * iqr;
  const double hi_fence = s.q3 + 1.5 * iqr;
  s.whisker_lo = s.q1;
  s.whisker_hi = s.q3;
  for (double x : v) {
    if (x >= lo_fence) {
      s.whisker_lo = x;  // v sorted: first in-fence value wins
      break;
    }
  }
  for (auto it = v.rbegin(); it != v.rend(); ++it) {
    if (*it <= hi_fence) {
      s.whisker_hi = *it;
      break;
    }
  }
  double sum = 0.0;
  for (double x : v) {
    sum += x;
    if (x < lo_fence || x > hi_fence) ++s.outlier_count;
  }
  s.mean = sum / static_cast<double>(v.size());
  return s;
}

std::array<BoxplotSummary, 6> summarize(std::span<const PoseError> errors) {
  if (errors.empty()) throw EmptyInput("summarize requires at least one error");
  std::array<BoxplotSummary, 6> out;
  std::vector<double> channel(errors.size());
  for (int c = 0; c < 6; ++c) {
    for (std::size_t i = 0; i < errors.size(); ++i)
      channel[i] = c < 3 ? errors[i].rot_err[c] : errors[i].trans_err[c - 3];
    out[c] = summarize(channel);
  }
  return out;
}

}  // namespace eposit
