#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "eposit/metrics.hpp"
#include "eposit/scene_sim.hpp"

namespace eposit {

inline constexpr int kFormatVersion = 1;

// Everything needed to reproduce a run bit-identically with the same binary.
struct RunManifest {
  int format_version = kFormatVersion;
  std::string model = "perspective";
  Intrinsics intrinsics{1.0};
  HelixTrajectory trajectory;
  NoiseSpec noise;
  SolverConfig solver;
  int frames = 0;
  double dt = 1.0;
  std::vector<Eigen::Vector3d> object_offsets;
  std::string euler_convention = "intrinsic-xyz";
  std::string rng_algorithm = "splitmix64+mt19937_64+box-muller";
};

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);

// Throws ManifestVersionError when format_version differs from this build's.
RunManifest read_manifest(const std::filesystem::path& path);

// Correspondence files: comma-separated, '#' comments, header
//   tag,du,dv,dw,u,v
// with exactly one row tagged M0 (zero offsets) and one row per offset
// point. u, v are raw pixels, centered through the intrinsics at load time.
// A coplanar point set is accepted here; the solver rejects it.
CorrespondenceSet read_correspondences(const std::filesystem::path& path,
                                       const Intrinsics& intr);

void write_correspondences(const std::filesystem::path& path,
                           const CorrespondenceSet& corr, const Intrinsics& intr);

// One solved frame of a results file.
struct FrameRecord {
  double t = 0.0;
  Pose truth;
  PoseEstimate estimate;
  PoseError error;
};

// Results files: column order (t, truth pose 12 values row-major R then T,
// estimate 12 values, rot error 3, trans error 3, iterations, converged),
// 9 significant digits. A sibling "<stem>.manifest.json" is not written
// here; pair write_results with write_manifest.
void write_results(const std::filesystem::path& path,
                   std::span<const FrameRecord> frames);

std::vector<FrameRecord> read_results(const std::filesystem::path& path);

// Frames files (simulation output): one row per frame with the ground-truth
// pose and the noisy raw pixel coordinates of M0 and each Mi.
void write_frames(const std::filesystem::path& path,
                  std::span<const FrameSample> frames, const Intrinsics& intr);

struct SimulatedFrame {
  double t = 0.0;
  Pose truth;
  CorrespondenceSet corr;
};

std::vector<SimulatedFrame> read_frames(const std::filesystem::path& path,
                                        const Intrinsics& intr,
                                        const ObjectPointSet& object);

// Writes via a temp file + rename so readers never observe partial output.
void atomic_write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace eposit
