#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <vector>

#include "eposit/io_formats.hpp"

namespace eposit::bench {

struct Options {
  std::vector<CameraModel> models;
  int frames = 360;
  double dt = 1.0;
  double sigma = 0.4;
  double mean = 0.0;
  std::uint64_t seed = 0;
  std::optional<double> focal_override;
  Eigen::Vector2d pp_offset{20.0, 15.0};
  std::filesystem::path out_dir = ".";
  SolverConfig solver;
};

// Benchmark intrinsics: fish-eye f = 541 px (principal point 782.41, 613.71),
// pinhole f = 1353 px (807.41, 602.47).
Intrinsics default_intrinsics(CameraModel model,
                              std::optional<double> focal_override = std::nullopt);

struct ModelResult {
  CameraModel model = CameraModel::Perspective;
  std::vector<FrameRecord> records;
  std::array<BoxplotSummary, 6> summary{};  // signed errors per channel
  std::array<double, 6> mean_abs{};         // mean |error| per channel
  // Mean per-frame estimate shift when the principal point assumed by the
  // solver is displaced by pp_offset.
  std::array<double, 6> pp_delta_mean{};
};

// Re-centers image coordinates as if the principal point moved by (dx, dy)
// raw pixels.
CorrespondenceSet shift_principal_point(const CorrespondenceSet& corr,
                                        const Intrinsics& intr, double dx, double dy);

ModelResult run_model(const Options& opt, CameraModel model);

// Full benchmark: per-model runs, results/manifest files, summary tables,
// cross-model differences and the principal-point perturbation study.
int run(const Options& opt);

}  // namespace eposit::bench
