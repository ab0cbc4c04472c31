#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "eposit/solver.hpp"

namespace eposit {

// Cylindrical helix ground-truth trajectory. The time parameter t is in
// degrees inside the trig terms; one unit of t per frame by default.
struct HelixTrajectory {
  double radius_scale = 141.42135623730951;  // 100*sqrt(2) mm
  double phase_deg = 45.0;
  double z_offset = 2000.0;  // mm
  double z_rate = 0.25;      // mm per time unit
  // Intrinsic XYZ rotation rates, deg per time unit. Equal-rate about all
  // three axes by default; zero a component to pin that axis.
  Eigen::Vector3d angular_rates_deg = {0.1, 0.1, 0.1};
};

struct NoiseSpec {
  double sigma = 0.4;  // pixels, per coordinate
  double mean = 0.0;
  std::uint64_t seed = 0;
};

// One simulated time step.
struct FrameSample {
  double t = 0.0;
  Pose truth;
  CorrespondenceSet corr;        // noisy
  CorrespondenceSet corr_clean;  // same projections without noise
};

// Deterministic Gaussian stream: mt19937_64 driven through the Box-Muller
// transform, so draws are identical across standard-library implementations.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  double next(double mean, double sigma);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Per-frame stream seed: splitmix64(splitmix64(run_seed) ^ bits(t)).
// Frames are independent, so runs may be generated in any order or in
// parallel.
std::uint64_t frame_seed(std::uint64_t run_seed, double t);

// Ground-truth pose at time t. Throws DomainError once Z(t) <= 0.
Pose helix_pose(const HelixTrajectory& traj, double t);

// Transforms the object points by helix_pose(t), projects them through the
// chosen model and adds independent per-coordinate Gaussian noise. The same
// (traj, t, object, model, intr, noise.seed) always yields a bit-identical
// sample.
FrameSample synthesize_frame(const HelixTrajectory& traj, double t,
                             const ObjectPointSet& object, CameraModel model,
                             const Intrinsics& intr, const NoiseSpec& noise);

std::vector<FrameSample> simulate_run(const HelixTrajectory& traj, int frames,
                                      double dt, const ObjectPointSet& object,
                                      CameraModel model, const Intrinsics& intr,
                                      const NoiseSpec& noise);

// The benchmark scene: offsets (200,0,0), (0,200,0), (0,0,-50) mm around M0.
ObjectPointSet reference_object_points();

}  // namespace eposit
