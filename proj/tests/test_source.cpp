#include <cmath>

#include "doctest.h"
#include "lasertherm/source.hpp"

using namespace lts;

namespace {

LaserParams reference_beam() {
  LaserParams laser;
  laser.power = 5.0;
  laser.waist = 0.02;
  laser.wavelength = 10.6e-4;
  laser.focal_distance = 25.0;
  return laser;
}

constexpr double kPi = 3.14159265358979323846;

}  // namespace

TEST_CASE("beam width reproduces the divergence formula") {
  const LaserParams laser = reference_beam();
  const double rayleigh_term = 10.6e-4 * 25.0 / (kPi * 0.02 * 0.02);
  const double expected = 0.02 * std::sqrt(1.0 + rayleigh_term * rayleigh_term);
  CHECK(beam_width(laser, 0.0) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(beam_width(laser, 0.0) == doctest::Approx(0.4223).epsilon(1e-3));

  LaserParams focused = laser;
  focused.focal_distance = 0.0;
  CHECK(beam_width(focused, 0.0) == 0.02);
  CHECK(beam_width(focused, 0.3) > 0.02);
}

TEST_CASE("beam width grows with depth") {
  const LaserParams laser = reference_beam();
  double previous = beam_width(laser, 0.0);
  for (double z = 0.1; z <= 0.5; z += 0.1) {
    const double w = beam_width(laser, z);
    CHECK(w > previous);
    previous = w;
  }
}

TEST_CASE("linear-width intensity matches its closed form") {
  const LaserParams laser = reference_beam();
  const double mu_a = 31.0;
  const double w = beam_width(laser, 0.1);
  const double r2 = 0.03 * 0.03 + 0.04 * 0.04;
  const double expected =
      2.0 * 5.0 / (kPi * w) * std::exp(-2.0 * r2 / w) * std::exp(-mu_a * 0.1);
  CHECK(intensity(laser, mu_a, Vec3(0.03, 0.04, 0.1)) ==
        doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("squared-width intensity matches its closed form") {
  LaserParams laser = reference_beam();
  laser.normalization = GaussianNormalization::SquaredWidth;
  const double mu_a = 31.0;
  const double w = beam_width(laser, 0.1);
  const double r2 = 0.03 * 0.03 + 0.04 * 0.04;
  const double expected =
      2.0 * 5.0 / (kPi * w * w) * std::exp(-2.0 * r2 / (w * w)) * std::exp(-mu_a * 0.1);
  CHECK(intensity(laser, mu_a, Vec3(0.03, 0.04, 0.1)) ==
        doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("both normalizations conserve beam power across a section") {
  for (GaussianNormalization norm :
       {GaussianNormalization::LinearWidth, GaussianNormalization::SquaredWidth}) {
    LaserParams laser = reference_beam();
    laser.normalization = norm;
    const double depth = 0.2;
    const double w = beam_width(laser, depth);
    const double cutoff = 8.0 * w;
    const int samples = 4000;
    const double h = cutoff / samples;
    double integral = 0.0;
    for (int i = 0; i < samples; ++i) {
      const double r = (i + 0.5) * h;
      integral += intensity(laser, 0.0, Vec3(r, 0.0, depth)) * 2.0 * kPi * r * h;
    }
    CHECK(integral == doctest::Approx(5.0).epsilon(1e-4));
  }
}

TEST_CASE("volumetric heating is absorption times intensity") {
  const LaserParams laser = reference_beam();
  const Vec3 p(0.01, -0.02, 0.05);
  CHECK(volumetric_heating(laser, 26.0, p) ==
        doctest::Approx(26.0 * intensity(laser, 26.0, p)).epsilon(1e-15));
}

TEST_CASE("intensity decays with depth by Beer absorption") {
  const LaserParams laser = reference_beam();
  const double shallow = intensity(laser, 31.0, Vec3(0, 0, 0.01));
  const double deep = intensity(laser, 31.0, Vec3(0, 0, 0.02));
  CHECK(deep < shallow);
  LaserParams collimated = reference_beam();
  collimated.focal_distance = 0.0;
  collimated.waist = 1.0;
  const double ratio = intensity(collimated, 31.0, Vec3(0, 0, 0.02)) /
                       intensity(collimated, 31.0, Vec3(0, 0, 0.01));
  CHECK(ratio == doctest::Approx(std::exp(-31.0 * 0.01)).epsilon(1e-6));
}

TEST_CASE("an empty schedule means always on") {
  const LaserParams laser = reference_beam();
  CHECK(laser_active(laser, 0.0));
  CHECK(laser_active(laser, 1e6));
}

TEST_CASE("schedule intervals are half-open") {
  LaserParams laser = reference_beam();
  laser.schedule = {{0.0, 15.0}, {20.0, 25.0}};
  CHECK(laser_active(laser, 0.0));
  CHECK(laser_active(laser, 14.999));
  CHECK_FALSE(laser_active(laser, 15.0));
  CHECK_FALSE(laser_active(laser, 17.0));
  CHECK(laser_active(laser, 20.0));
  CHECK_FALSE(laser_active(laser, 25.0));
}

TEST_CASE("heating profile is symmetric under beam-frame reflection") {
  const Mesh mesh = build_grid({8, 8, 6}, Vec3(2, 2, 0.5));
  const LaserParams laser = reference_beam();
  const Eigen::VectorXd profile = heating_profile(mesh, laser, 31.0);
  const int nx = 8, ny = 8, nz = 6;
  for (int k = 0; k <= nz; ++k) {
    for (int j = 0; j <= ny; ++j) {
      for (int i = 0; i <= nx; ++i) {
        const int node = mesh.node_index(i, j, k);
        const int mirror_x = mesh.node_index(nx - i, j, k);
        const int mirror_y = mesh.node_index(i, ny - j, k);
        CHECK(profile(node) == profile(mirror_x));
        CHECK(profile(node) == profile(mirror_y));
      }
    }
  }
}

TEST_CASE("an off-center beam shifts the profile peak") {
  const Mesh mesh = build_grid({8, 8, 4}, Vec3(2, 2, 0.4));
  LaserParams laser = reference_beam();
  laser.center = {0.25, -0.25};
  const Eigen::VectorXd profile = heating_profile(mesh, laser, 31.0);
  int argmax = 0;
  profile.maxCoeff(&argmax);
  const Vec3& peak = mesh.node(argmax);
  CHECK(peak.x() == doctest::Approx(0.25));
  CHECK(peak.y() == doctest::Approx(-0.25));
  CHECK(peak.z() == 0.0);
}

TEST_CASE("nodal source honors the schedule") {
  const Mesh mesh = build_grid({4, 4, 4}, Vec3(1, 1, 0.5));
  LaserParams laser = reference_beam();
  laser.schedule = {{0.0, 15.0}};
  const Eigen::VectorXd on = nodal_source(mesh, laser, 31.0, 5.0);
  const Eigen::VectorXd off = nodal_source(mesh, laser, 31.0, 20.0);
  CHECK(on.maxCoeff() > 0.0);
  CHECK(off.cwiseAbs().maxCoeff() == 0.0);
  const Eigen::VectorXd profile = heating_profile(mesh, laser, 31.0);
  CHECK((on - profile).cwiseAbs().maxCoeff() == 0.0);
}
