#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "lasertherm/material.hpp"
#include "lasertherm/mesh.hpp"
#include "lasertherm/quadrature.hpp"

namespace lts {

using SparseMatrix = Eigen::SparseMatrix<double>;
using ElementMatrix = Eigen::Matrix<double, 8, 8>;
using ElementVector = Eigen::Matrix<double, 8, 1>;

/// Consistent element mass matrix: integral of c_v N N^T over the element.
/// Symmetric positive definite; entries sum to c_v times the element volume.
ElementMatrix element_mass(const Mesh& mesh, int element, double heat_capacity,
                           const QuadratureRule& rule);

/// Element conductance matrix: integral of kappa grad(N) . grad(N)^T over
/// the element, with gradients mapped through the inverse Jacobian.
/// Symmetric positive semidefinite; rows sum to zero.
ElementMatrix element_stiffness(const Mesh& mesh, int element, double conductivity,
                                const QuadratureRule& rule);

/// Element load from a volumetric source given by nodal values f_nodal,
/// interpolated trilinearly: integral of N (N^T f_nodal) over the element.
ElementVector element_source(const Mesh& mesh, int element, const ElementVector& f_nodal,
                             const QuadratureRule& rule);

/// Element load from a prescribed inward normal flux on one exterior face.
/// q_nodal holds flux values at the face's four nodes in face_corners order;
/// the integral uses a 2x2 surface Gauss rule with the face area Jacobian.
/// Entries at the four off-face nodes are exactly zero. Throws
/// std::invalid_argument when the face is not on the domain boundary.
ElementVector element_face_flux(const Mesh& mesh, int element, Face face,
                                const Eigen::Vector4d& q_nodal);

/// Fixed-temperature (heat sink) assignments keyed by face set name.
/// A node shared by two sets must be given the same temperature.
struct DirichletSpec {
  std::map<std::string, double> faces;
};

/// Assembled global system. The mass and conductance matrices are kept at
/// full size (one row per mesh node, Dirichlet rows included) so global
/// invariants stay visible; the free/prescribed partition carries the
/// constraint information.
struct SystemMatrices {
  SparseMatrix mass;
  SparseMatrix conductance;
  std::vector<int> free_nodes;        // ascending
  std::vector<int> prescribed_nodes;  // ascending
  Eigen::VectorXd prescribed_values;  // aligned with prescribed_nodes

  int node_count() const { return static_cast<int>(mass.rows()); }

  /// Per-node index into the free partition, -1 for prescribed nodes.
  Eigen::VectorXi free_index_map() const;

  /// Writes prescribed temperatures into a full-length nodal vector.
  void apply_prescribed(Eigen::VectorXd& temperatures) const;
};

/// Assembles mass and conductance over the whole mesh and partitions nodes
/// by the Dirichlet assignments. Throws lts::ConfigError when a face set
/// name is unknown or a shared node receives conflicting temperatures.
SystemMatrices assemble(const Mesh& mesh, const MaterialProperties& material,
                        const DirichletSpec& dirichlet,
                        const QuadratureRule& rule = gauss_rule(2));

}  // namespace lts
