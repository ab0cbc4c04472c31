#include "eposit/solver.hpp"

#include <Eigen/Geometry>
#include <cmath>
#include <stdexcept>

namespace eposit {

namespace {

void check_correspondences(const CorrespondenceSet& corr) {
  if (corr.image_pts.size() != corr.object.offsets.size())
    throw std::invalid_argument(
        "correspondence set: image point count differs from offset count");
}

void check_config(const SolverConfig& config) {
  if (!(config.epsilon_tol > 0.0))
    throw std::invalid_argument("epsilon_tol must be positive");
  if (config.max_iters < 1)
    throw std::invalid_argument("max_iters must be at least 1");
}

// G(theta) evaluated once per point from the measured image radii. The
// reference ratio g0 never changes across iterations, and the per-point
// ratios are fixed at the measured positions.
struct GRatios {
  double g0 = 1.0;
  std::vector<double> gi;
};

GRatios model_ratios(const CorrespondenceSet& corr, CameraModel model,
                     const Intrinsics& intr) {
  GRatios g;
  g.g0 = g_ratio(model, incident_angle(model, corr.image_ref.radius(), intr.f));
  g.gi.reserve(corr.image_pts.size());
  for (const CenteredImagePoint& p : corr.image_pts)
    g.gi.push_back(g_ratio(model, incident_angle(model, p.radius(), intr.f)));
  return g;
}

void eval_rhs(const CorrespondenceSet& corr, const GRatios& g,
              const Eigen::VectorXd& eps, Eigen::VectorXd& x, Eigen::VectorXd& y) {
  const int n = corr.object.size();
  x.resize(n);
  y.resize(n);
  for (int i = 0; i < n; ++i) {
    const double w = (1.0 + eps[i]) / g.gi[i];
    x[i] = w * corr.image_pts[i].x - corr.image_ref.x / g.g0;
    y[i] = w * corr.image_pts[i].y - corr.image_ref.y / g.g0;
  }
}

bool extent_within_sop_bound(const ObjectPointSet& object, double z0) {
  for (const Eigen::Vector3d& off : object.offsets)
    if (off.norm() > 0.1 * z0) return false;
  return true;
}

}  // namespace

ObjectMatrix::ObjectMatrix(const ObjectPointSet& object, double rank_tol)
    : rows_(object.size()) {
  if (rows_ < 3)
    throw SingularConfiguration("pose needs at least three object offsets");
  Eigen::MatrixXd a(rows_, 3);
  for (int i = 0; i < rows_; ++i) a.row(i) = object.offsets[i].transpose();
  svd_.compute(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd_.singularValues();
  if (!(sv(0) > 0.0) || sv(2) <= rank_tol * sv(0))
    throw SingularConfiguration("object points are coplanar or degenerate");
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> compute_rhs(
    const CorrespondenceSet& corr, CameraModel model, const Intrinsics& intr,
    const Eigen::VectorXd& eps) {
  check_correspondences(corr);
  if (eps.size() != corr.object.size())
    throw std::invalid_argument("eps length differs from point count");
  const GRatios g = model_ratios(corr, model, intr);
  Eigen::VectorXd x, y;
  eval_rhs(corr, g, eps, x, y);
  return {std::move(x), std::move(y)};
}

PoseEstimate solve(const CorrespondenceSet& corr, CameraModel model,
                   const Intrinsics& intr, const SolverConfig& config,
                   SolverState* state) {
  check_correspondences(corr);
  check_config(config);

  const ObjectMatrix a(corr.object, config.rank_tol);
  const GRatios g = model_ratios(corr, model, intr);
  const int n = corr.object.size();

  Eigen::VectorXd eps = Eigen::VectorXd::Zero(n), x, y;
  Eigen::Vector3d vi = Eigen::Vector3d::Zero(), vj = vi, vk = vi;
  Eigen::Vector3d big_i = vi, big_j = vi;
  double s1 = 0.0, s2 = 0.0, s = 0.0, z0 = 0.0, delta = 0.0;
  bool converged = false;
  int iter = 0;

  while (iter < config.max_iters) {
    ++iter;
    eval_rhs(corr, g, eps, x, y);
    big_i = a.solve(x);
    big_j = a.solve(y);
    s1 = g.g0 * big_i.norm();
    s2 = g.g0 * big_j.norm();
    s = 0.5 * (s1 + s2);
    vi = (g.g0 * big_i) / s1;
    vj = (g.g0 * big_j) / s2;
    vk = vi.cross(vj);
    z0 = g.g0 * intr.f / s;
    if (!(s > 0.0) || !std::isfinite(z0) || !vk.allFinite())
      throw Diverged("SOP scale became non-positive or non-finite");
    delta = 0.0;
    for (int i = 0; i < n; ++i) {
      const double e = corr.object.offsets[i].dot(vk) / z0;
      delta = std::max(delta, std::abs(e - eps[i]));
      eps[i] = e;
    }
    if (delta <= config.epsilon_tol) {
      converged = true;
      break;
    }
  }

  const Eigen::Vector3d ku = vk / vk.norm();
  const Eigen::Vector3d jo = ku.cross(vi);

  PoseEstimate out;
  out.rotation.row(0) = vi;
  out.rotation.row(1) = jo;
  out.rotation.row(2) = ku;
  const double fg = intr.f * g.g0;
  out.translation = {corr.image_ref.x * z0 / fg, corr.image_ref.y * z0 / fg, z0};
  out.iterations = iter;
  out.converged = converged;
  out.epsilon_final = delta;
  out.sop_extent_ok = extent_within_sop_bound(corr.object, z0);
  if (state) *state = {big_i, big_j, eps, s1, s2, s, z0};
  return out;
}

PoseEstimate posit_classic(const CorrespondenceSet& corr, double f,
                           const SolverConfig& config, SolverState* state) {
  check_correspondences(corr);
  check_config(config);
  if (!(f > 0.0)) throw DomainError("focal length must be positive");

  const ObjectMatrix a(corr.object, config.rank_tol);
  const int n = corr.object.size();

  Eigen::VectorXd eps = Eigen::VectorXd::Zero(n), x(n), y(n);
  Eigen::Vector3d vi = Eigen::Vector3d::Zero(), vj = vi, vk = vi;
  Eigen::Vector3d big_i = vi, big_j = vi;
  double s1 = 0.0, s2 = 0.0, s = 0.0, z0 = 0.0, delta = 0.0;
  bool converged = false;
  int iter = 0;

  while (iter < config.max_iters) {
    ++iter;
    for (int i = 0; i < n; ++i) {
      const double w = 1.0 + eps[i];
      x[i] = w * corr.image_pts[i].x - corr.image_ref.x;
      y[i] = w * corr.image_pts[i].y - corr.image_ref.y;
    }
    big_i = a.solve(x);
    big_j = a.solve(y);
    s1 = big_i.norm();
    s2 = big_j.norm();
    s = 0.5 * (s1 + s2);
    vi = big_i / s1;
    vj = big_j / s2;
    vk = vi.cross(vj);
    z0 = f / s;
    if (!(s > 0.0) || !std::isfinite(z0) || !vk.allFinite())
      throw Diverged("SOP scale became non-positive or non-finite");
    delta = 0.0;
    for (int i = 0; i < n; ++i) {
      const double e = corr.object.offsets[i].dot(vk) / z0;
      delta = std::max(delta, std::abs(e - eps[i]));
      eps[i] = e;
    }
    if (delta <= config.epsilon_tol) {
      converged = true;
      break;
    }
  }

  const Eigen::Vector3d ku = vk / vk.norm();
  const Eigen::Vector3d jo = ku.cross(vi);

  PoseEstimate out;
  out.rotation.row(0) = vi;
  out.rotation.row(1) = jo;
  out.rotation.row(2) = ku;
  out.translation = {corr.image_ref.x * z0 / f, corr.image_ref.y * z0 / f, z0};
  out.iterations = iter;
  out.converged = converged;
  out.epsilon_final = delta;
  out.sop_extent_ok = extent_within_sop_bound(corr.object, z0);
  if (state) *state = {big_i, big_j, eps, s1, s2, s, z0};
  return out;
}

}  // namespace eposit
