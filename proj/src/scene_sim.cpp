#include "eposit/scene_sim.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "eposit/euler.hpp"

namespace eposit {

namespace {

constexpr double kRadPerDeg = 0.017453292519943295;
constexpr double kTwoPi = 6.283185307179586;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t frame_seed(std::uint64_t run_seed, double t) {
  return splitmix64(splitmix64(run_seed) ^ std::bit_cast<std::uint64_t>(t));
}

double GaussianStream::next(double mean, double sigma) {
  if (has_spare_) {
    has_spare_ = false;
    return mean + sigma * spare_;
  }
  const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;  // (0,1]
  const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;        // [0,1)
  const double m = std::sqrt(-2.0 * std::log(u1));
  const double a = kTwoPi * u2;
  spare_ = m * std::sin(a);
  has_spare_ = true;
  return mean + sigma * (m * std::cos(a));
}

Pose helix_pose(const HelixTrajectory& traj, double t) {
  const double z = traj.z_offset + traj.z_rate * t;
  if (!(z > 0.0)) throw DomainError("helix depth Z(t) must stay positive");
  const double arg = (traj.phase_deg + t) * kRadPerDeg;
  Pose pose;
  pose.translation = {traj.radius_scale * std::cos(arg),
                      traj.radius_scale * std::sin(arg), z};
  pose.rotation = rotation_from_euler_xyz(traj.angular_rates_deg * t);
  return pose;
}

FrameSample synthesize_frame(const HelixTrajectory& traj, double t,
                             const ObjectPointSet& object, CameraModel model,
                             const Intrinsics& intr, const NoiseSpec& noise) {
  if (!(noise.sigma >= 0.0))
    throw std::invalid_argument("noise sigma must be nonnegative");

  FrameSample frame;
  frame.t = t;
  frame.truth = helix_pose(traj, t);

  frame.corr_clean.object = object;
  frame.corr_clean.image_ref = project(model, intr, frame.truth.translation);
  frame.corr_clean.image_pts.reserve(object.offsets.size());
  for (const Eigen::Vector3d& off : object.offsets) {
    const Eigen::Vector3d p_cam = frame.truth.rotation * off + frame.truth.translation;
    frame.corr_clean.image_pts.push_back(project(model, intr, p_cam));
  }

  GaussianStream rng(frame_seed(noise.seed, t));
  frame.corr = frame.corr_clean;
  auto jitter = [&](CenteredImagePoint& p) {
    p.x += rng.next(noise.mean, noise.sigma);
    p.y += rng.next(noise.mean, noise.sigma);
  };
  jitter(frame.corr.image_ref);
  for (CenteredImagePoint& p : frame.corr.image_pts) jitter(p);
  return frame;
}

std::vector<FrameSample> simulate_run(const HelixTrajectory& traj, int frames,
                                      double dt, const ObjectPointSet& object,
                                      CameraModel model, const Intrinsics& intr,
                                      const NoiseSpec& noise) {
  std::vector<FrameSample> out;
  out.reserve(frames);
  for (int i = 0; i < frames; ++i)
    out.push_back(synthesize_frame(traj, i * dt, object, model, intr, noise));
  return out;
}

ObjectPointSet reference_object_points() {
  return {{{200.0, 0.0, 0.0}, {0.0, 200.0, 0.0}, {0.0, 0.0, -50.0}}};
}

}  // namespace eposit
