#pragma once

#include <array>
#include <optional>
#include <variant>

#include <Eigen/Dense>

#include "lasertherm/assembly.hpp"
#include "lasertherm/material.hpp"
#include "lasertherm/mesh.hpp"

namespace lts {

/// Fixed surface temperature, enforced as a nodal constraint.
struct HeatSink {
  double temperature = 0.0;  // degC
};

/// Prescribed inward normal flux, positive heating the domain.
struct ConstantFlux {
  double flux = 0.0;  // W/cm^2
};

enum class ConvectionMode {
  Constant,  // q = h (T_amb - u)
  Natural,   // q = h max(T_ref - T_amb, 0)^(1/4) (T_amb - u)
};

/// Newton cooling against ambient air.
struct Convection {
  double heat_transfer = 0.0;  // h, W/(cm^2 degC)
  double ambient = 0.0;        // degC
  ConvectionMode mode = ConvectionMode::Constant;
};

using FaceCondition = std::variant<HeatSink, ConstantFlux, Convection>;

/// One condition per exterior face set. Every face set must be assigned
/// before the spec is used; boundary_load reports uncovered sets.
struct BoundarySpec {
  std::array<std::optional<FaceCondition>, 6> faces;

  /// With a value set, natural-mode faces scale h using this node's current
  /// temperature as T_ref instead of each face node's own temperature.
  std::optional<int> natural_reference_node;

  void set(Face face, FaceCondition condition) {
    faces[static_cast<size_t>(face)] = std::move(condition);
  }
  const std::optional<FaceCondition>& get(Face face) const {
    return faces[static_cast<size_t>(face)];
  }
};

/// Convective flux at one surface point. In natural mode the reference
/// temperature controls the h scaling and defaults to the surface
/// temperature itself; a surface no warmer than ambient then gives zero
/// flux. Constant mode ignores the reference.
double convection_flux(double surface_temperature, double heat_transfer, double ambient,
                       ConvectionMode mode,
                       std::optional<double> reference_temperature = std::nullopt);

/// Global load vector from all flux-type boundary conditions, evaluated at
/// the given nodal temperatures. Heat sink faces contribute nothing here.
/// Throws lts::ConfigError when a face set is uncovered or the reference
/// node is out of range.
Eigen::VectorXd boundary_load(const Mesh& mesh, const BoundarySpec& spec,
                              const Eigen::VectorXd& temperatures);

/// The laboratory arrangement: the deep face (z_max) rests on a heat sink
/// held at sink_temperature; the other five faces cool by natural
/// convection with the material's h and ambient temperature.
BoundarySpec experiment_boundaries(const Mesh& mesh, const MaterialProperties& material,
                                   double sink_temperature);

/// Extracts the heat sink faces as Dirichlet data for assemble().
DirichletSpec dirichlet_faces(const BoundarySpec& spec);

}  // namespace lts
