#include "eposit/metrics.hpp"

#include <gtest/gtest.h>

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <random>

#include "eposit/euler.hpp"
#include "eposit/scene_sim.hpp"
#include "test_scenes.hpp"

using namespace eposit;

namespace {

// Same intrinsic-XYZ decomposition computed from quaternion components,
// never forming the extraction's matrix entries.
Eigen::Vector3d euler_xyz_from_quaternion(const Eigen::Quaterniond& q) {
  const double w = q.w(), x = q.x(), y = q.y(), z = q.z();
  const double sb = std::clamp(2.0 * (x * z + w * y), -1.0, 1.0);
  const double a = std::atan2(2.0 * (w * x - y * z), 1.0 - 2.0 * (x * x + y * y));
  const double c = std::atan2(2.0 * (w * z - x * y), 1.0 - 2.0 * (y * y + z * z));
  return Eigen::Vector3d(a, std::asin(sb), c) * 57.29577951308232;
}

}  // namespace

TEST(PoseError, ZeroForIdenticalPoses) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    Pose p;
    p.rotation = test::random_rotation(rng);
    p.translation = {1.0, -2.0, 2000.0};
    const PoseError err = pose_error(p, p);
    EXPECT_EQ(err.rot_err, Eigen::Vector3d::Zero());
    EXPECT_EQ(err.trans_err, Eigen::Vector3d::Zero());
  }
}

TEST(PoseError, SingleAxisOffset) {
  Pose truth;
  Pose est;
  est.rotation = rotation_from_euler_xyz({1.0, 0.0, 0.0});
  const PoseError err = pose_error(est, truth);
  EXPECT_NEAR(err.rot_err[0], 1.0, 1e-9);
  EXPECT_NEAR(err.rot_err[1], 0.0, 1e-9);
  EXPECT_NEAR(err.rot_err[2], 0.0, 1e-9);
}

TEST(PoseError, WrapsAcrossPi) {
  Pose truth, est;
  truth.rotation = rotation_from_euler_xyz({0.0, 0.0, -179.0});
  est.rotation = rotation_from_euler_xyz({0.0, 0.0, 179.0});
  const PoseError err = pose_error(est, truth);
  EXPECT_NEAR(err.rot_err[2], -2.0, 1e-9);
}

TEST(PoseError, MatchesQuaternionOracle) {
  std::mt19937_64 rng(42);
  Pose truth;  // identity: per-axis errors equal the estimate's own angles
  for (int trial = 0; trial < 200; ++trial) {
    Pose est;
    est.rotation = test::random_rotation(rng);
    const PoseError err = pose_error(est, truth);
    const Eigen::Vector3d oracle =
        euler_xyz_from_quaternion(Eigen::Quaterniond(est.rotation));
    for (int k = 0; k < 3; ++k)
      EXPECT_NEAR(wrap_angle_deg(err.rot_err[k] - oracle[k]), 0.0, 1e-9);
  }
}

TEST(PoseError, TranslationIsLinearInTruthShift) {
  std::mt19937_64 rng(43);
  Pose truth, est;
  est.rotation = test::random_rotation(rng);
  est.translation = {5.0, 6.0, 2000.0};
  truth.translation = {1.0, 2.0, 1990.0};
  const Eigen::Vector3d delta(0.5, -2.25, 4.0);
  const PoseError base = pose_error(est, truth);
  Pose shifted = truth;
  shifted.translation += delta;
  const PoseError moved = pose_error(est, shifted);
  EXPECT_EQ(moved.trans_err, base.trans_err - delta);
}

TEST(ReprojectionError, ZeroAtExactPose) {
  std::mt19937_64 rng(44);
  const auto scene = test::random_scene(rng);
  const Intrinsics intr(541.0);
  const auto corr = test::make_correspondences(scene.pose, scene.object,
                                               CameraModel::Equidistance, intr);
  EXPECT_NEAR(reprojection_error(corr, scene.pose, CameraModel::Equidistance, intr), 0.0,
              1e-9);
}

// With the true pose, the residual at each point is exactly the injected
// noise; the pooled RMS over many frames is a Monte Carlo estimate of
// sigma*sqrt(2).
TEST(ReprojectionError, MatchesNoiseMonteCarlo) {
  const HelixTrajectory traj;
  const Intrinsics intr(541.0);
  NoiseSpec noise;
  noise.sigma = 0.4;
  noise.seed = 5;
  const int frames = 10000;
  double pooled_sq = 0.0;
  double direct_sq = 0.0;
  for (int i = 0; i < frames; ++i) {
    const FrameSample frame =
        synthesize_frame(traj, i * 0.036, reference_object_points(),
                         CameraModel::Equidistance, intr, noise);
    const double rms =
        reprojection_error(frame.corr, frame.truth, CameraModel::Equidistance, intr);
    pooled_sq += rms * rms;

    auto add = [&](const CenteredImagePoint& a, const CenteredImagePoint& b) {
      direct_sq += (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y);
    };
    add(frame.corr.image_ref, frame.corr_clean.image_ref);
    for (std::size_t k = 0; k < frame.corr.image_pts.size(); ++k)
      add(frame.corr.image_pts[k], frame.corr_clean.image_pts[k]);
  }
  const double pooled = std::sqrt(pooled_sq / frames);
  const double direct = std::sqrt(direct_sq / (frames * 4.0));
  EXPECT_NEAR(pooled, direct, 1e-9);  // residuals are exactly the noise
  EXPECT_NEAR(pooled, 0.4 * std::sqrt(2.0), 0.01 * 0.4 * std::sqrt(2.0));
}

TEST(Summarize, SingleElement) {
  const double x = 3.25;
  const BoxplotSummary s = summarize(std::span<const double>(&x, 1));
  EXPECT_EQ(s.median, x);
  EXPECT_EQ(s.q1, x);
  EXPECT_EQ(s.q3, x);
  EXPECT_EQ(s.mean, x);
  EXPECT_EQ(s.whisker_lo, x);
  EXPECT_EQ(s.whisker_hi, x);
  EXPECT_EQ(s.outlier_count, 0);
}

TEST(Summarize, TextbookQuartiles) {
  const std::vector<double> v = {1.0, 2.0, 3.0, 4.0, 5.0};
  const BoxplotSummary s = summarize(v);
  EXPECT_EQ(s.median, 3.0);
  EXPECT_EQ(s.q1, 2.0);
  EXPECT_EQ(s.q3, 4.0);
  EXPECT_EQ(s.mean, 3.0);
  EXPECT_EQ(s.whisker_lo, 1.0);
  EXPECT_EQ(s.whisker_hi, 5.0);
  EXPECT_EQ(s.outlier_count, 0);
}

TEST(Summarize, FlagsOutliers) {
  const std::vector<double> v = {1.0, 1.1, 0.9, 1.05, 0.95, 1.0, 25.0};
  const BoxplotSummary s = summarize(v);
  EXPECT_EQ(s.outlier_count, 1);
  EXPECT_EQ(s.whisker_hi, 1.1);
  EXPECT_EQ(s.whisker_lo, 0.9);
}

TEST(Summarize, PermutationInvariant) {
  std::mt19937_64 rng(45);
  std::vector<double> v(101);
  std::normal_distribution<double> n(0.0, 3.0);
  for (double& x : v) x = n(rng);
  const BoxplotSummary a = summarize(v);
  std::shuffle(v.begin(), v.end(), rng);
  const BoxplotSummary b = summarize(v);
  EXPECT_EQ(a.median, b.median);
  EXPECT_EQ(a.q1, b.q1);
  EXPECT_EQ(a.q3, b.q3);
  EXPECT_EQ(a.whisker_lo, b.whisker_lo);
  EXPECT_EQ(a.whisker_hi, b.whisker_hi);
  EXPECT_EQ(a.outlier_count, b.outlier_count);
  EXPECT_NEAR(a.mean, b.mean, 1e-12);
}

TEST(Summarize, EmptyInputThrows) {
  EXPECT_THROW(summarize(std::span<const double>()), EmptyInput);
  EXPECT_THROW(summarize(std::span<const PoseError>()), EmptyInput);
}

TEST(Summarize, ChannelsMapRotationThenTranslation) {
  std::vector<PoseError> errors(3);
  for (int i = 0; i < 3; ++i) {
    errors[i].rot_err = Eigen::Vector3d(i, 10 + i, 20 + i);
    errors[i].trans_err = Eigen::Vector3d(30 + i, 40 + i, 50 + i);
  }
  const auto channels = summarize(std::span<const PoseError>(errors));
  for (int c = 0; c < 6; ++c) EXPECT_EQ(channels[c].median, 10.0 * c + 1.0);
}
