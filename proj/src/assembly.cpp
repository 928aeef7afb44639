#include "lasertherm/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "lasertherm/errors.hpp"

namespace lts {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ConfigError(std::string(name) + " must be strictly positive, got " +
                      std::to_string(value));
  }
}

}  // namespace

ElementMatrix element_mass(const Mesh& mesh, int element, double heat_capacity,
                           const QuadratureRule& rule) {
  ElementMatrix m = ElementMatrix::Zero();
  for (size_t q = 0; q < rule.points.size(); ++q) {
    const ShapeVector n = shape_values(rule.points[q]);
    const double det = jacobian(mesh, element, rule.points[q]).det;
    m += (rule.weights[q] * heat_capacity * det) * (n * n.transpose());
  }
  // Mirror the lower triangle so symmetry holds bitwise, not just to rounding.
  return ElementMatrix(m.selfadjointView<Eigen::Lower>());
}

ElementMatrix element_stiffness(const Mesh& mesh, int element, double conductivity,
                                const QuadratureRule& rule) {
  ElementMatrix k = ElementMatrix::Zero();
  for (size_t q = 0; q < rule.points.size(); ++q) {
    const ShapeGradients g = shape_gradients(rule.points[q]);
    const Jacobian jac = jacobian(mesh, element, rule.points[q]);
    const Eigen::Matrix<double, 8, 3> b = g * jac.matrix.inverse();
    k += (rule.weights[q] * conductivity * jac.det) * (b * b.transpose());
  }
  return ElementMatrix(k.selfadjointView<Eigen::Lower>());
}

ElementVector element_source(const Mesh& mesh, int element, const ElementVector& f_nodal,
                             const QuadratureRule& rule) {
  ElementVector f = ElementVector::Zero();
  for (size_t q = 0; q < rule.points.size(); ++q) {
    const ShapeVector n = shape_values(rule.points[q]);
    const double det = jacobian(mesh, element, rule.points[q]).det;
    f += (rule.weights[q] * det * n.dot(f_nodal)) * n;
  }
  return f;
}

ElementVector element_face_flux(const Mesh& mesh, int element, Face face,
                                const Eigen::Vector4d& q_nodal) {
  if (!mesh.is_boundary_face(element, face)) {
    std::ostringstream out;
    out << "face " << face_name(face) << " of element " << element
        << " is not on the domain boundary";
    throw std::invalid_argument(out.str());
  }

  // Tangent directions of the face plane within the reference cube, in the
  // same (s, t) order used by face_corners.
  int s_axis = 0, t_axis = 0;
  switch (face) {
    case Face::XMin:
    case Face::XMax: s_axis = 1; t_axis = 2; break;
    case Face::YMin:
    case Face::YMax: s_axis = 0; t_axis = 2; break;
    case Face::ZMin:
    case Face::ZMax: s_axis = 0; t_axis = 1; break;
  }

  const auto& corners = face_corners(face);
  const double gp = 1.0 / std::sqrt(3.0);
  const std::array<double, 2> points = {-gp, gp};

  ElementVector load = ElementVector::Zero();
  for (double t : points) {
    for (double s : points) {
      const BiUnitPoint xi = face_point(face, s, t);
      const ShapeVector n = shape_values(xi);
      const Eigen::Matrix3d j = jacobian(mesh, element, xi).matrix;
      const double area_jac = j.col(s_axis).cross(j.col(t_axis)).norm();

      double q = 0.0;
      for (int a = 0; a < 4; ++a) {
        q += n(corners[static_cast<size_t>(a)]) * q_nodal(a);
      }
      for (int a = 0; a < 4; ++a) {
        const int c = corners[static_cast<size_t>(a)];
        load(c) += n(c) * q * area_jac;
      }
    }
  }
  return load;
}

Eigen::VectorXi SystemMatrices::free_index_map() const {
  Eigen::VectorXi map = Eigen::VectorXi::Constant(node_count(), -1);
  for (size_t i = 0; i < free_nodes.size(); ++i) {
    map(free_nodes[i]) = static_cast<int>(i);
  }
  return map;
}

void SystemMatrices::apply_prescribed(Eigen::VectorXd& temperatures) const {
  for (size_t i = 0; i < prescribed_nodes.size(); ++i) {
    temperatures(prescribed_nodes[i]) = prescribed_values(static_cast<Eigen::Index>(i));
  }
}

SystemMatrices assemble(const Mesh& mesh, const MaterialProperties& material,
                        const DirichletSpec& dirichlet, const QuadratureRule& rule) {
  require_positive(material.heat_capacity, "material property c_v");
  require_positive(material.conductivity, "material property kappa");

  const int n = mesh.node_count();
  SystemMatrices system;
  system.mass.resize(n, n);
  system.conductance.resize(n, n);

  using Triplet = Eigen::Triplet<double>;
  const size_t entry_estimate = static_cast<size_t>(mesh.element_count()) * 64;

  {
    std::vector<Triplet> triplets;
    triplets.reserve(entry_estimate);
    for (int e = 0; e < mesh.element_count(); ++e) {
      const ElementMatrix m = element_mass(mesh, e, material.heat_capacity, rule);
      const auto& conn = mesh.element_nodes(e);
      for (int a = 0; a < 8; ++a) {
        for (int b = 0; b < 8; ++b) {
          triplets.emplace_back(conn[static_cast<size_t>(a)], conn[static_cast<size_t>(b)],
                                m(a, b));
        }
      }
    }
    system.mass.setFromTriplets(triplets.begin(), triplets.end());
    system.mass.makeCompressed();
  }
  {
    std::vector<Triplet> triplets;
    triplets.reserve(entry_estimate);
    for (int e = 0; e < mesh.element_count(); ++e) {
      const ElementMatrix k = element_stiffness(mesh, e, material.conductivity, rule);
      const auto& conn = mesh.element_nodes(e);
      for (int a = 0; a < 8; ++a) {
        for (int b = 0; b < 8; ++b) {
          triplets.emplace_back(conn[static_cast<size_t>(a)], conn[static_cast<size_t>(b)],
                                k(a, b));
        }
      }
    }
    system.conductance.setFromTriplets(triplets.begin(), triplets.end());
    system.conductance.makeCompressed();
  }

  std::unordered_map<int, std::pair<double, std::string>> assigned;
  for (const auto& [name, value] : dirichlet.faces) {
    Face face;
    try {
      face = face_from_name(name);
    } catch (const std::invalid_argument& err) {
      throw ConfigError(err.what());
    }
    for (const FaceRef& ref : mesh.face_set(face)) {
      const auto& conn = mesh.element_nodes(ref.element);
      for (int corner : face_corners(ref.face)) {
        const int node = conn[static_cast<size_t>(corner)];
        auto [it, inserted] = assigned.try_emplace(node, value, name);
        if (!inserted && it->second.first != value) {
          std::ostringstream out;
          out << "conflicting heat sink temperatures at node " << node << ": "
              << it->second.first << " (from " << it->second.second << ") vs " << value
              << " (from " << name << ")";
          throw ConfigError(out.str());
        }
      }
    }
  }

  system.prescribed_nodes.reserve(assigned.size());
  for (const auto& [node, value] : assigned) {
    system.prescribed_nodes.push_back(node);
  }
  std::sort(system.prescribed_nodes.begin(), system.prescribed_nodes.end());
  system.prescribed_values.resize(static_cast<Eigen::Index>(system.prescribed_nodes.size()));
  for (size_t i = 0; i < system.prescribed_nodes.size(); ++i) {
    system.prescribed_values(static_cast<Eigen::Index>(i)) =
        assigned.at(system.prescribed_nodes[i]).first;
  }

  system.free_nodes.reserve(static_cast<size_t>(n) - assigned.size());
  for (int node = 0; node < n; ++node) {
    if (assigned.find(node) == assigned.end()) {
      system.free_nodes.push_back(node);
    }
  }

  return system;
}

}  // namespace lts
