#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "bench.hpp"
#include "eposit/euler.hpp"
#include "eposit/io_formats.hpp"
#include "svg_plot.hpp"

namespace fs = std::filesystem;
using namespace eposit;

namespace {

// Exit statuses, stable for scripted pipelines:
//   0 success (solve: converged)   2 usage or validation error
//   3 not converged                4 singular configuration
//   5 diverged                     6 domain error
//   7 parse or I/O error
enum ExitCode {
  kOk = 0,
  kUsage = 2,
  kNotConverged = 3,
  kSingular = 4,
  kDiverged = 5,
  kDomain = 6,
  kIo = 7,
};

template <typename Fn>
int run_guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const SingularConfiguration& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kSingular;
  } catch (const Diverged& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kDiverged;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kDomain;
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kIo;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kIo;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

fs::path default_out_dir() {
  if (const char* env = std::getenv("EPOSIT_OUT_DIR")) return env;
  return ".";
}

struct IntrinsicsFlags {
  std::optional<double> f, u0, v0, kx, ky;

  void attach(CLI::App* cmd) {
    cmd->add_option("--f", f, "focal length in pixels (default 541 fish-eye, 1353 pinhole)");
    cmd->add_option("--u0", u0, "principal point x (default: benchmark intrinsics)");
    cmd->add_option("--v0", v0, "principal point y (default: benchmark intrinsics)");
    cmd->add_option("--kx", kx, "pixels per unit along x (default f)");
    cmd->add_option("--ky", ky, "pixels per unit along y (default f)");
  }

  Intrinsics resolve(CameraModel model) const {
    const Intrinsics base = bench::default_intrinsics(model, f);
    return {base.f, u0.value_or(base.u0), v0.value_or(base.v0), kx.value_or(base.f),
            ky.value_or(base.f)};
  }
};

CameraModel parse_model(const std::string& name) {
  const auto model = camera_model_from_string(name);
  if (!model) throw ValidationError("unknown camera model '" + name + "'");
  return *model;
}

constexpr std::array<const char*, 5> kModelNames = {
    "perspective", "stereographic", "equidistance", "equisolid", "orthogonal"};

int cmd_simulate(const std::string& model_name, const IntrinsicsFlags& intr_flags,
                 int frames, double dt, double sigma, double mean, std::uint64_t seed,
                 const fs::path& out_dir) {
  const CameraModel model = parse_model(model_name);
  const Intrinsics intr = intr_flags.resolve(model);
  NoiseSpec noise{sigma, mean, seed};
  const auto samples = simulate_run(HelixTrajectory{}, frames, dt,
                                    reference_object_points(), model, intr, noise);
  fs::create_directories(out_dir);
  write_frames(out_dir / "frames.csv", samples, intr);

  RunManifest manifest;
  manifest.model = to_string(model);
  manifest.intrinsics = intr;
  manifest.noise = noise;
  manifest.frames = frames;
  manifest.dt = dt;
  manifest.object_offsets = reference_object_points().offsets;
  write_manifest(out_dir / "manifest.json", manifest);

  std::printf("wrote %zu frames to %s\n", samples.size(),
              (out_dir / "frames.csv").string().c_str());
  return kOk;
}

int cmd_solve(const fs::path& input, const std::string& model_name,
              const IntrinsicsFlags& intr_flags, double epsilon_tol, int max_iters,
              const std::optional<fs::path>& out_path) {
  const CameraModel model = parse_model(model_name);
  const Intrinsics intr = intr_flags.resolve(model);
  const CorrespondenceSet corr = read_correspondences(input, intr);

  SolverConfig config;
  config.epsilon_tol = epsilon_tol;
  config.max_iters = max_iters;
  const PoseEstimate est = solve(corr, model, intr, config);
  const Eigen::Vector3d euler = euler_xyz_from_rotation(est.rotation);
  const double rms = reprojection_error(corr, est.pose(), model, intr);

  std::printf("model: %s  (f = %.6g px)\n", to_string(model), intr.f);
  std::printf("converged: %s  (%d iterations, final |delta eps| %.3g)\n",
              est.converged ? "yes" : "no", est.iterations, est.epsilon_final);
  std::printf("rotation (rows = camera axes in object frame):\n");
  for (int r = 0; r < 3; ++r)
    std::printf("  %12.9f %12.9f %12.9f\n", est.rotation(r, 0), est.rotation(r, 1),
                est.rotation(r, 2));
  std::printf("euler intrinsic-xyz (deg): %.6g %.6g %.6g\n", euler.x(), euler.y(),
              euler.z());
  std::printf("translation (mm): %.6g %.6g %.6g\n", est.translation.x(),
              est.translation.y(), est.translation.z());
  std::printf("reprojection rms (px): %.6g\n", rms);
  if (!est.sop_extent_ok)
    std::printf("note: object extent exceeds 0.1 * Z0; accuracy may degrade\n");

  if (out_path) {
    nlohmann::json j;
    j["model"] = to_string(model);
    j["rotation"] = {{est.rotation(0, 0), est.rotation(0, 1), est.rotation(0, 2)},
                     {est.rotation(1, 0), est.rotation(1, 1), est.rotation(1, 2)},
                     {est.rotation(2, 0), est.rotation(2, 1), est.rotation(2, 2)}};
    j["euler_xyz_deg"] = {euler.x(), euler.y(), euler.z()};
    j["translation_mm"] = {est.translation.x(), est.translation.y(), est.translation.z()};
    j["iterations"] = est.iterations;
    j["converged"] = est.converged;
    j["epsilon_final"] = est.epsilon_final;
    j["reprojection_rms_px"] = rms;
    j["sop_extent_ok"] = est.sop_extent_ok;
    atomic_write_text(*out_path, j.dump(2) + "\n");
  }
  return est.converged ? kOk : kNotConverged;
}

std::vector<double> euler_channel(const std::vector<FrameRecord>& records, int axis,
                                  bool truth) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const FrameRecord& r : records)
    out.push_back(
        euler_xyz_from_rotation(truth ? r.truth.rotation : r.estimate.rotation)[axis]);
  return out;
}

std::vector<double> translation_channel(const std::vector<FrameRecord>& records, int axis,
                                        bool truth) {
  std::vector<double> out;
  out.reserve(records.size());
  for (const FrameRecord& r : records)
    out.push_back(truth ? r.truth.translation[axis] : r.estimate.translation[axis]);
  return out;
}

int cmd_plot(const std::vector<fs::path>& inputs, const std::string& channel,
             const fs::path& out_path) {
  static const std::array<const char*, 6> curve_names = {"rot_x",   "rot_y",   "rot_z",
                                                         "trans_x", "trans_y", "trans_z"};
  std::vector<std::vector<FrameRecord>> runs;
  for (const fs::path& input : inputs) {
    runs.push_back(read_results(input));
    if (runs.back().empty())
      throw ValidationError("results file " + input.string() + " has no frames");
  }

  for (int c = 0; c < 6; ++c) {
    if (channel != curve_names[c]) continue;
    if (runs.size() != 1)
      throw ValidationError("curve channels take exactly one results file");
    const auto& records = runs.front();
    std::vector<double> t;
    t.reserve(records.size());
    for (const FrameRecord& r : records) t.push_back(r.t);
    const bool rot = c < 3;
    const int axis = c % 3;
    plot::Series truth{"truth", t,
                       rot ? euler_channel(records, axis, true)
                           : translation_channel(records, axis, true),
                       "#1f77b4"};
    plot::Series est{"estimate", t,
                     rot ? euler_channel(records, axis, false)
                         : translation_channel(records, axis, false),
                     "#d62728"};
    plot::write_line_chart(out_path, std::string(channel) + ": truth vs estimate",
                           "t (time units)", rot ? "angle (deg)" : "position (mm)",
                           {truth, est});
    std::printf("wrote %s\n", out_path.string().c_str());
    return kOk;
  }

  if (channel == "boxplot_rot" || channel == "boxplot_trans") {
    const bool rot = channel == "boxplot_rot";
    std::vector<plot::Box> boxes;
    for (std::size_t run = 0; run < runs.size(); ++run) {
      std::vector<PoseError> errors;
      errors.reserve(runs[run].size());
      for (const FrameRecord& r : runs[run]) errors.push_back(r.error);
      const auto channels = summarize(std::span<const PoseError>(errors));
      for (int axis = 0; axis < 3; ++axis) {
        std::string label = kErrorChannelNames[(rot ? 0 : 3) + axis];
        if (runs.size() > 1) label = inputs[run].stem().string() + ":" + label;
        boxes.push_back({label, channels[(rot ? 0 : 3) + axis]});
      }
    }
    plot::write_box_chart(out_path,
                          rot ? "rotation estimation errors" : "translation estimation errors",
                          rot ? "error (deg)" : "error (mm)", boxes);
    std::printf("wrote %s\n", out_path.string().c_str());
    return kOk;
  }

  throw ValidationError("unknown channel '" + channel +
                        "' (rot_x|rot_y|rot_z|trans_x|trans_y|trans_z|boxplot_rot|boxplot_trans)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EPOSIT: 6DOF pose estimation for pinhole and fish-eye cameras"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "synthesize a noisy helix run");
  std::string sim_model;
  sim->add_option("--model", sim_model, "camera model")
      ->required()
      ->check(CLI::IsMember(kModelNames));
  IntrinsicsFlags sim_intr;
  sim_intr.attach(sim);
  int sim_frames = 360;
  double sim_dt = 1.0, sim_sigma = 0.4, sim_mean = 0.0;
  std::uint64_t sim_seed = 0;
  fs::path sim_out = default_out_dir();
  sim->add_option("--frames", sim_frames, "frame count")->check(CLI::PositiveNumber);
  sim->add_option("--dt", sim_dt, "time step per frame");
  sim->add_option("--sigma", sim_sigma, "pixel noise standard deviation")
      ->check(CLI::NonNegativeNumber);
  sim->add_option("--mean", sim_mean, "pixel noise mean");
  sim->add_option("--seed", sim_seed, "noise seed");
  sim->add_option("--out", sim_out, "output directory (env EPOSIT_OUT_DIR)");

  // solve
  auto* slv = app.add_subcommand("solve", "estimate a pose from a correspondence file");
  fs::path slv_input;
  std::string slv_model;
  IntrinsicsFlags slv_intr;
  double slv_tol = 1e-6;
  int slv_iters = 50;
  std::optional<fs::path> slv_out;
  slv->add_option("--input", slv_input, "correspondence csv")
      ->required()
      ->check(CLI::ExistingFile);
  slv->add_option("--model", slv_model, "camera model")
      ->required()
      ->check(CLI::IsMember(kModelNames));
  slv_intr.attach(slv);
  slv->add_option("--epsilon-tol", slv_tol, "convergence threshold on max |delta eps|");
  slv->add_option("--max-iters", slv_iters, "iteration cap")->check(CLI::PositiveNumber);
  slv->add_option("--out", slv_out, "write the pose as JSON");

  // bench
  auto* bch = app.add_subcommand("bench", "reproduce the synthetic benchmark");
  std::vector<std::string> bch_models = {"stereographic", "equidistance", "equisolid",
                                         "orthogonal"};
  bench::Options bopt;
  std::vector<double> bch_pp = {20.0, 15.0};
  std::optional<double> bch_f;
  bch->add_option("--models", bch_models, "camera models to compare")
      ->delimiter(',')
      ->check(CLI::IsMember(kModelNames));
  bch->add_option("--frames", bopt.frames, "frames per run")->check(CLI::PositiveNumber);
  bch->add_option("--dt", bopt.dt, "time step per frame");
  bch->add_option("--sigma", bopt.sigma, "pixel noise standard deviation")
      ->check(CLI::NonNegativeNumber);
  bch->add_option("--seed", bopt.seed, "noise seed (shared across models)");
  bch->add_option("--f", bch_f, "focal length override");
  bch->add_option("--pp-offset", bch_pp, "principal-point perturbation dx dy (px)")
      ->expected(2);
  fs::path bch_out = default_out_dir();
  bch->add_option("--out", bch_out, "output directory (env EPOSIT_OUT_DIR)");

  // plot
  auto* plt = app.add_subcommand("plot", "render results as an SVG figure");
  std::vector<fs::path> plt_inputs;
  std::string plt_channel;
  fs::path plt_out;
  plt->add_option("--input", plt_inputs, "results csv (repeatable for boxplots)")
      ->required()
      ->check(CLI::ExistingFile);
  plt->add_option("--channel", plt_channel, "what to draw")->required();
  plt->add_option("--out", plt_out, "output .svg path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (*sim)
    return run_guarded([&] {
      return cmd_simulate(sim_model, sim_intr, sim_frames, sim_dt, sim_sigma, sim_mean,
                          sim_seed, sim_out);
    });
  if (*slv)
    return run_guarded(
        [&] { return cmd_solve(slv_input, slv_model, slv_intr, slv_tol, slv_iters, slv_out); });
  if (*bch)
    return run_guarded([&] {
      bopt.models.clear();
      for (const std::string& name : bch_models) bopt.models.push_back(parse_model(name));
      bopt.focal_override = bch_f;
      bopt.pp_offset = {bch_pp[0], bch_pp[1]};
      bopt.out_dir = bch_out;
      return bench::run(bopt);
    });
  return run_guarded([&] { return cmd_plot(plt_inputs, plt_channel, plt_out); });
}
