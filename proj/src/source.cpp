#include "lasertherm/source.hpp"

#include <cmath>

namespace lts {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

bool laser_active(const LaserParams& laser, double time) {
  if (laser.schedule.empty()) return true;
  for (const auto& [on, off] : laser.schedule) {
    if (time >= on && time < off) return true;
  }
  return false;
}

double beam_width(const LaserParams& laser, double depth) {
  const double spread =
      laser.wavelength * (laser.focal_distance + depth) / (kPi * laser.waist * laser.waist);
  return laser.waist * std::sqrt(1.0 + spread * spread);
}

double intensity(const LaserParams& laser, double absorption, const Vec3& point) {
  const double w = beam_width(laser, point.z());
  const double r2 = point.x() * point.x() + point.y() * point.y();
  double transverse = 0.0;
  double peak = 0.0;
  if (laser.normalization == GaussianNormalization::LinearWidth) {
    peak = 2.0 * laser.power / (kPi * w);
    transverse = -2.0 * r2 / w;
  } else {
    peak = 2.0 * laser.power / (kPi * w * w);
    transverse = -2.0 * r2 / (w * w);
  }
  return peak * std::exp(transverse - absorption * point.z());
}

double volumetric_heating(const LaserParams& laser, double absorption, const Vec3& point) {
  return absorption * intensity(laser, absorption, point);
}

Eigen::VectorXd heating_profile(const Mesh& mesh, const LaserParams& laser,
                                double absorption) {
  Eigen::VectorXd profile = Eigen::VectorXd::Zero(mesh.node_count());
  if (laser.power == 0.0) return profile;

  const double surface_z = mesh.origin().z();
  for (int node = 0; node < mesh.node_count(); ++node) {
    const Vec3& x = mesh.node(node);
    const Vec3 beam_frame(x.x() - laser.center[0], x.y() - laser.center[1],
                          x.z() - surface_z);
    profile(node) = volumetric_heating(laser, absorption, beam_frame);
  }
  return profile;
}

Eigen::VectorXd nodal_source(const Mesh& mesh, const LaserParams& laser, double absorption,
                             double time) {
  if (!laser_active(laser, time)) {
    return Eigen::VectorXd::Zero(mesh.node_count());
  }
  return heating_profile(mesh, laser, absorption);
}

}  // namespace lts
