#pragma once

#include <Eigen/Core>
#include <array>
#include <cmath>
#include <optional>
#include <string_view>

#include "eposit/errors.hpp"

namespace eposit {

// The five radially symmetric projection laws r_j(theta).
enum class CameraModel {
  Perspective,    // r = f tan(theta)
  Stereographic,  // r = 2f tan(theta/2)
  Equidistance,   // r = f theta
  Equisolid,      // r = 2f sin(theta/2)
  Orthogonal,     // r = f sin(theta)
};

inline constexpr std::array<CameraModel, 5> kAllCameraModels = {
    CameraModel::Perspective, CameraModel::Stereographic,
    CameraModel::Equidistance, CameraModel::Equisolid, CameraModel::Orthogonal};

inline constexpr std::array<CameraModel, 4> kFisheyeModels = {
    CameraModel::Stereographic, CameraModel::Equidistance,
    CameraModel::Equisolid, CameraModel::Orthogonal};

const char* to_string(CameraModel model);
std::optional<CameraModel> camera_model_from_string(std::string_view name);

struct Intrinsics {
  double f;   // focal length, pixels
  double u0;  // principal point, pixels
  double v0;
  double kx;  // per-axis pixel scales; equal to f unless given
  double ky;

  explicit Intrinsics(double f, double u0 = 0.0, double v0 = 0.0)
      : Intrinsics(f, u0, v0, f, f) {}
  Intrinsics(double f, double u0, double v0, double kx, double ky);
};

// Image point in pixels relative to the principal point, isotropic scale.
struct CenteredImagePoint {
  double x = 0.0;
  double y = 0.0;

  double radius() const { return std::hypot(x, y); }
};

// r_j(theta) in pixels.
double radial_distance(CameraModel model, double theta, double f);

// Closed-form inverse of radial_distance. Radii within 1e-9*f beyond the
// model's maximum are clamped to the boundary to absorb projection
// round-trip rounding.
double incident_angle(CameraModel model, double r, double f);

// Largest radius the inverse law accepts; +inf when unbounded.
double max_radius(CameraModel model, double f);

// G_j(theta) = r_j/r_1 = cos(theta)/g_j(theta): ratio between a fish-eye
// image radius and the pinhole radius at the same incident angle.
// Identically 1 for the perspective model. theta in [0, pi/2).
double g_ratio(CameraModel model, double theta);

// Radially symmetric forward projection of a camera-frame point (mm).
// The azimuth of (x, y) is preserved; the radius follows the model's law.
CenteredImagePoint project(CameraModel model, const Intrinsics& intr,
                           const Eigen::Vector3d& point_cam);

// Raw pixel -> centered coordinates: subtract the principal point and, when
// kx/ky differ from f, rescale to the isotropic frame by f/kx and f/ky.
CenteredImagePoint center_pixel(const Intrinsics& intr, double u, double v);

// Inverse of center_pixel.
Eigen::Vector2d raw_pixel(const Intrinsics& intr, const CenteredImagePoint& p);

}  // namespace eposit
