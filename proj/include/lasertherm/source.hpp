#pragma once

#include <array>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lasertherm/mesh.hpp"

namespace lts {

/// How the Gaussian transverse profile uses the local beam width w(z).
/// Both variants integrate to the full beam power over each cross section.
enum class GaussianNormalization {
  LinearWidth,   // I = 2P/(pi w) exp(-2 r^2 / w) exp(-mu_a z)
  SquaredWidth,  // I = 2P/(pi w^2) exp(-2 r^2 / w^2) exp(-mu_a z)
};

/// Continuous-wave Gaussian beam aimed along +z at the top surface.
struct LaserParams {
  double power = 0.0;           // W
  double waist = 0.0;           // w0 at the focus, cm
  double wavelength = 10.6e-4;  // cm, CO2 laser by default
  double focal_distance = 0.0;  // focus-to-surface distance d_f, cm
  std::array<double, 2> center = {0.0, 0.0};  // beam axis (x, y), cm

  /// Emission intervals [on, off); empty means always on.
  std::vector<std::pair<double, double>> schedule;

  GaussianNormalization normalization = GaussianNormalization::LinearWidth;
};

/// Whether the beam emits at time t under the schedule.
bool laser_active(const LaserParams& laser, double time);

/// Beam width at depth z below the surface:
/// w(z) = w0 sqrt(1 + (lambda (d_f + z) / (pi w0^2))^2).
double beam_width(const LaserParams& laser, double depth);

/// Intensity at a point given in the beam frame (origin on the surface at
/// the beam axis, z pointing into the tissue, z >= 0). W/cm^2.
double intensity(const LaserParams& laser, double absorption, const Vec3& point);

/// Absorbed power density mu_a * I at a beam-frame point. W/cm^3.
double volumetric_heating(const LaserParams& laser, double absorption, const Vec3& point);

/// Per-node absorbed power density over the mesh, ignoring the schedule.
Eigen::VectorXd heating_profile(const Mesh& mesh, const LaserParams& laser,
                                double absorption);

/// Per-node absorbed power density at time t: the heating profile when the
/// schedule says the beam is on, zero otherwise.
Eigen::VectorXd nodal_source(const Mesh& mesh, const LaserParams& laser, double absorption,
                             double time);

}  // namespace lts
