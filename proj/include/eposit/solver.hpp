#pragma once

#include <Eigen/Core>
#include <Eigen/SVD>
#include <utility>
#include <vector>

#include "eposit/camera_models.hpp"

namespace eposit {

// Object-frame offsets M0Mi from the reference point M0 (the implicit
// origin), in mm. Pose recovery needs at least three noncoplanar offsets.
struct ObjectPointSet {
  std::vector<Eigen::Vector3d> offsets;

  int size() const { return static_cast<int>(offsets.size()); }
};

struct CorrespondenceSet {
  ObjectPointSet object;
  CenteredImagePoint image_ref;               // image of M0
  std::vector<CenteredImagePoint> image_pts;  // images of Mi, same order
};

struct SolverConfig {
  double epsilon_tol = 1e-6;  // stop when max_i |eps_i^(n) - eps_i^(n-1)| <= tol
  int max_iters = 50;
  double rank_tol = 1e-9;  // relative singular-value threshold for noncoplanarity
};

struct Pose {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();
};

struct PoseEstimate {
  // Rows are the camera axes i, j', k' expressed in object coordinates.
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();  // OM0, camera frame, mm
  int iterations = 0;
  bool converged = false;
  double epsilon_final = 0.0;  // last max |delta eps|
  // Diagnostic: |M0Mi| <= 0.1*Z0 held for every offset (the regime the
  // scaled-orthographic approximation is rated for). Never an error.
  bool sop_extent_ok = true;

  Pose pose() const { return {rotation, translation}; }
};

// Scaled-orthographic solver internals after the last iteration.
struct SolverState {
  Eigen::Vector3d I = Eigen::Vector3d::Zero();  // (f/Z0) * i, object frame
  Eigen::Vector3d J = Eigen::Vector3d::Zero();
  Eigen::VectorXd eps;
  double s1 = 0.0, s2 = 0.0, s = 0.0;  // SOP scaling factors, px/mm
  double z0 = 0.0;                     // depth of M0, mm
};

// Factorization handle for the object matrix A whose rows are the M0Mi
// offsets. Exact solve for three offsets, least squares beyond.
class ObjectMatrix {
 public:
  explicit ObjectMatrix(const ObjectPointSet& object, double rank_tol = 1e-9);

  Eigen::Vector3d solve(const Eigen::VectorXd& rhs) const { return svd_.solve(rhs); }
  int rows() const { return rows_; }

 private:
  Eigen::JacobiSVD<Eigen::MatrixXd> svd_;
  int rows_ = 0;
};

// Right-hand sides xi_i / eta_i of the pose equations for the current eps:
//   xi_i = (1+eps_i)/G(theta_Mi) * x_Mi' - x_M0'/G(theta_M0)
// Incident angles come from the measured image radii.
std::pair<Eigen::VectorXd, Eigen::VectorXd> compute_rhs(
    const CorrespondenceSet& corr, CameraModel model, const Intrinsics& intr,
    const Eigen::VectorXd& eps);

// Iterative pose solve for any of the five projection models.
// Throws SingularConfiguration for coplanar points, Diverged when the SOP
// scale turns non-positive or non-finite, DomainError for image points
// outside the model's radius. Reaching max_iters is not an error: the last
// estimate is returned with converged = false.
PoseEstimate solve(const CorrespondenceSet& corr, CameraModel model,
                   const Intrinsics& intr, const SolverConfig& config = {},
                   SolverState* state = nullptr);

// Classic pose-from-orthography-and-scaling iteration, pinhole only.
// Kept as an independent route: solve() with the perspective model must
// reproduce it exactly.
PoseEstimate posit_classic(const CorrespondenceSet& corr, double f,
                           const SolverConfig& config = {},
                           SolverState* state = nullptr);

}  // namespace eposit
