#include "eposit/camera_models.hpp"

#include <cmath>
#include <limits>

namespace eposit {

namespace {
constexpr double kHalfPi = 1.5707963267948966;
}

const char* to_string(CameraModel model) {
  switch (model) {
    case CameraModel::Perspective:
      return "perspective";
    case CameraModel::Stereographic:
      return "stereographic";
    case CameraModel::Equidistance:
      return "equidistance";
    case CameraModel::Equisolid:
      return "equisolid";
    case CameraModel::Orthogonal:
      return "orthogonal";
  }
  return "unknown";
}

std::optional<CameraModel> camera_model_from_string(std::string_view name) {
  for (CameraModel m : kAllCameraModels)
    if (name == to_string(m)) return m;
  return std::nullopt;
}

Intrinsics::Intrinsics(double f, double u0, double v0, double kx, double ky)
    : f(f), u0(u0), v0(v0), kx(kx), ky(ky) {
  if (!(f > 0.0) || !(kx > 0.0) || !(ky > 0.0))
    throw DomainError("intrinsics require f > 0, kx > 0 and ky > 0");
}

double radial_distance(CameraModel model, double theta, double f) {
  if (!(theta >= 0.0)) throw DomainError("incident angle must be nonnegative");
  switch (model) {
    case CameraModel::Perspective:
      if (theta >= kHalfPi)
        throw DomainError("perspective projection requires theta < pi/2");
      return f * std::tan(theta);
    case CameraModel::Stereographic:
      return 2.0 * f * std::tan(0.5 * theta);
    case CameraModel::Equidistance:
      return f * theta;
    case CameraModel::Equisolid:
      return 2.0 * f * std::sin(0.5 * theta);
    case CameraModel::Orthogonal:
      return f * std::sin(theta);
  }
  throw DomainError("unknown camera model");
}

double max_radius(CameraModel model, double f) {
  switch (model) {
    case CameraModel::Equisolid:
      return 2.0 * f;
    case CameraModel::Orthogonal:
      return f;
    default:
      return std::numeric_limits<double>::infinity();
  }
}

double incident_angle(CameraModel model, double r, double f) {
  if (!(r >= 0.0)) throw DomainError("radial distance must be nonnegative");
  const double rmax = max_radius(model, f);
  if (r > rmax) {
    if (r - rmax > 1e-9 * f)
      throw DomainError("radial distance exceeds the model's maximum radius");
    r = rmax;
  }
  switch (model) {
    case CameraModel::Perspective:
      return std::atan(r / f);
    case CameraModel::Stereographic:
      return 2.0 * std::atan(r / (2.0 * f));
    case CameraModel::Equidistance:
      return r / f;
    case CameraModel::Equisolid:
      return 2.0 * std::asin(r / (2.0 * f));
    case CameraModel::Orthogonal:
      return std::asin(r / f);
  }
  throw DomainError("unknown camera model");
}

double g_ratio(CameraModel model, double theta) {
  if (!(theta >= 0.0) || theta >= kHalfPi)
    throw DomainError("g_ratio requires theta in [0, pi/2)");
  switch (model) {
    case CameraModel::Perspective:
      return 1.0;  // cos(theta)/cos(theta)
    case CameraModel::Stereographic: {
      const double c = std::cos(0.5 * theta);
      return std::cos(theta) / (c * c);
    }
    case CameraModel::Equidistance:
      return theta == 0.0 ? 1.0 : std::cos(theta) * theta / std::sin(theta);
    case CameraModel::Equisolid:
      return std::cos(theta) / std::cos(0.5 * theta);
    case CameraModel::Orthogonal:
      return std::cos(theta);
  }
  throw DomainError("unknown camera model");
}

CenteredImagePoint project(CameraModel model, const Intrinsics& intr,
                           const Eigen::Vector3d& point_cam) {
  if (!(point_cam.z() > 0.0)) throw DomainError("point is behind the camera");
  const double rho = std::hypot(point_cam.x(), point_cam.y());
  if (rho == 0.0) return {0.0, 0.0};
  const double theta = std::atan2(rho, point_cam.z());
  const double r = radial_distance(model, theta, intr.f);
  return {r * point_cam.x() / rho, r * point_cam.y() / rho};
}

CenteredImagePoint center_pixel(const Intrinsics& intr, double u, double v) {
  return {(u - intr.u0) * (intr.f / intr.kx), (v - intr.v0) * (intr.f / intr.ky)};
}

Eigen::Vector2d raw_pixel(const Intrinsics& intr, const CenteredImagePoint& p) {
  return {p.x * (intr.kx / intr.f) + intr.u0, p.y * (intr.ky / intr.f) + intr.v0};
}

}  // namespace eposit
