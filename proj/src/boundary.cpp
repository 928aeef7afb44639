#include "lasertherm/boundary.hpp"

#include <cmath>
#include <string>

#include "lasertherm/errors.hpp"

namespace lts {

double convection_flux(double surface_temperature, double heat_transfer, double ambient,
                       ConvectionMode mode, std::optional<double> reference_temperature) {
  double h = heat_transfer;
  if (mode == ConvectionMode::Natural) {
    const double t_ref = reference_temperature.value_or(surface_temperature);
    h *= std::pow(std::max(t_ref - ambient, 0.0), 0.25);
  }
  return h * (ambient - surface_temperature);
}

Eigen::VectorXd boundary_load(const Mesh& mesh, const BoundarySpec& spec,
                              const Eigen::VectorXd& temperatures) {
  for (Face face : all_faces) {
    if (!spec.get(face).has_value()) {
      throw ConfigError("boundary spec leaves face set '" + std::string(face_name(face)) +
                        "' uncovered");
    }
  }
  if (spec.natural_reference_node &&
      (*spec.natural_reference_node < 0 || *spec.natural_reference_node >= mesh.node_count())) {
    throw ConfigError("natural convection reference node " +
                      std::to_string(*spec.natural_reference_node) + " is out of range");
  }

  std::optional<double> t_ref;
  if (spec.natural_reference_node) {
    t_ref = temperatures(*spec.natural_reference_node);
  }

  Eigen::VectorXd load = Eigen::VectorXd::Zero(mesh.node_count());
  for (Face face : all_faces) {
    const FaceCondition& condition = *spec.get(face);
    if (std::holds_alternative<HeatSink>(condition)) continue;

    for (const FaceRef& ref : mesh.face_set(face)) {
      const auto& conn = mesh.element_nodes(ref.element);
      const auto& corners = face_corners(ref.face);

      Eigen::Vector4d q_nodal;
      if (const auto* flux = std::get_if<ConstantFlux>(&condition)) {
        q_nodal.setConstant(flux->flux);
      } else {
        const auto& conv = std::get<Convection>(condition);
        for (int a = 0; a < 4; ++a) {
          const double u = temperatures(conn[static_cast<size_t>(corners[static_cast<size_t>(a)])]);
          q_nodal(a) = convection_flux(u, conv.heat_transfer, conv.ambient, conv.mode, t_ref);
        }
      }

      const ElementVector local = element_face_flux(mesh, ref.element, ref.face, q_nodal);
      for (int corner : corners) {
        load(conn[static_cast<size_t>(corner)]) += local(corner);
      }
    }
  }
  return load;
}

BoundarySpec experiment_boundaries(const Mesh& mesh, const MaterialProperties& material,
                                   double sink_temperature) {
  (void)mesh;
  BoundarySpec spec;
  const Convection cooling{material.heat_transfer, material.ambient, ConvectionMode::Natural};
  for (Face face : {Face::XMin, Face::XMax, Face::YMin, Face::YMax, Face::ZMin}) {
    spec.set(face, cooling);
  }
  spec.set(Face::ZMax, HeatSink{sink_temperature});
  return spec;
}

DirichletSpec dirichlet_faces(const BoundarySpec& spec) {
  DirichletSpec dirichlet;
  for (Face face : all_faces) {
    if (!spec.get(face).has_value()) continue;
    if (const auto* sink = std::get_if<HeatSink>(&*spec.get(face))) {
      dirichlet.faces[std::string(face_name(face))] = sink->temperature;
    }
  }
  return dirichlet;
}

}  // namespace lts
