#include "eposit/scene_sim.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "eposit/euler.hpp"
#include "eposit/metrics.hpp"

using namespace eposit;

namespace {

bool same_point(const CenteredImagePoint& a, const CenteredImagePoint& b) {
  return a.x == b.x && a.y == b.y;
}

bool same_correspondences(const CorrespondenceSet& a, const CorrespondenceSet& b) {
  if (!same_point(a.image_ref, b.image_ref)) return false;
  if (a.image_pts.size() != b.image_pts.size()) return false;
  for (std::size_t i = 0; i < a.image_pts.size(); ++i)
    if (!same_point(a.image_pts[i], b.image_pts[i])) return false;
  return true;
}

}  // namespace

TEST(HelixPose, StartAndQuarterTurn) {
  const HelixTrajectory traj;
  const Pose start = helix_pose(traj, 0.0);
  EXPECT_NEAR(start.translation.x(), 100.0, 1e-9);
  EXPECT_NEAR(start.translation.y(), 100.0, 1e-9);
  EXPECT_NEAR(start.translation.z(), 2000.0, 1e-9);
  EXPECT_EQ(start.rotation, Eigen::Matrix3d::Identity());

  // direct evaluation: 100*sqrt(2)*cos(135 deg) = -100, z = 2000 + 0.25*90
  const Pose quarter = helix_pose(traj, 90.0);
  EXPECT_NEAR(quarter.translation.x(), -100.0, 1e-9);
  EXPECT_NEAR(quarter.translation.y(), 100.0, 1e-9);
  EXPECT_NEAR(quarter.translation.z(), 2022.5, 1e-9);
  const Eigen::Vector3d angles = euler_xyz_from_rotation(quarter.rotation);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(angles[k], 9.0, 1e-9);
}

TEST(HelixPose, PerAxisRotationRates) {
  HelixTrajectory traj;
  traj.angular_rates_deg = {0.0, 0.2, 0.0};
  const Eigen::Vector3d angles = euler_xyz_from_rotation(helix_pose(traj, 45.0).rotation);
  EXPECT_NEAR(angles[0], 0.0, 1e-12);
  EXPECT_NEAR(angles[1], 9.0, 1e-9);
  EXPECT_NEAR(angles[2], 0.0, 1e-12);
}

TEST(HelixPose, RejectsNonPositiveDepth) {
  HelixTrajectory traj;
  traj.z_offset = 10.0;
  traj.z_rate = -1.0;
  EXPECT_THROW(helix_pose(traj, 10.0), DomainError);
}

TEST(SynthesizeFrame, ZeroSigmaMatchesCleanChannel) {
  const HelixTrajectory traj;
  const Intrinsics intr(541.0);
  NoiseSpec noise;
  noise.sigma = 0.0;
  noise.seed = 99;
  const FrameSample frame = synthesize_frame(traj, 17.0, reference_object_points(),
                                             CameraModel::Equidistance, intr, noise);
  EXPECT_TRUE(same_correspondences(frame.corr, frame.corr_clean));
}

TEST(SynthesizeFrame, PinholeReferenceProjection) {
  const HelixTrajectory traj;
  const Intrinsics intr(1353.0);
  const FrameSample frame = synthesize_frame(traj, 0.0, reference_object_points(),
                                             CameraModel::Perspective, intr, {});
  // x = X*f/Z = 100*1353/2000 before noise
  EXPECT_NEAR(frame.corr_clean.image_ref.x, 67.65, 1e-9);
  EXPECT_NEAR(frame.corr_clean.image_ref.y, 67.65, 1e-9);
}

TEST(SynthesizeFrame, DeterministicPerSeedAndTime) {
  const HelixTrajectory traj;
  const Intrinsics intr(541.0);
  NoiseSpec noise;
  noise.seed = 42;
  const auto a = synthesize_frame(traj, 3.0, reference_object_points(),
                                  CameraModel::Equisolid, intr, noise);
  const auto b = synthesize_frame(traj, 3.0, reference_object_points(),
                                  CameraModel::Equisolid, intr, noise);
  EXPECT_TRUE(same_correspondences(a.corr, b.corr));

  noise.seed = 43;
  const auto c = synthesize_frame(traj, 3.0, reference_object_points(),
                                  CameraModel::Equisolid, intr, noise);
  EXPECT_FALSE(same_correspondences(a.corr, c.corr));

  EXPECT_NE(frame_seed(42, 3.0), frame_seed(42, 4.0));
  EXPECT_NE(frame_seed(42, 3.0), frame_seed(43, 3.0));
}

TEST(SynthesizeFrame, RejectsNegativeSigma) {
  NoiseSpec noise;
  noise.sigma = -0.1;
  EXPECT_THROW(synthesize_frame(HelixTrajectory{}, 0.0, reference_object_points(),
                                CameraModel::Perspective, Intrinsics(1353.0), noise),
               std::invalid_argument);
}

TEST(GaussianStream, MomentsMatchSpec) {
  GaussianStream stream(7);
  const int n = 200000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = stream.next(0.0, 0.4);
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sum_sq / n - mean * mean);
  EXPECT_NEAR(mean, 0.0, 0.01);
  EXPECT_NEAR(sd, 0.4, 0.02 * 0.4);
}

TEST(SimulateRun, CleanChannelSolvesToTruth) {
  const HelixTrajectory traj;
  const Intrinsics intr(1353.0);
  NoiseSpec noise;
  noise.sigma = 0.0;
  const auto frames =
      simulate_run(traj, 12, 30.0, reference_object_points(), CameraModel::Perspective,
                   intr, noise);
  ASSERT_EQ(frames.size(), 12u);
  for (const FrameSample& frame : frames) {
    const PoseEstimate est = solve(frame.corr_clean, CameraModel::Perspective, intr);
    EXPECT_TRUE(est.converged);
    const PoseError err = pose_error(est.pose(), frame.truth);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(err.rot_err[k], 0.0, 0.01);
    EXPECT_LE(err.trans_err.norm(), 0.1);
  }
}
