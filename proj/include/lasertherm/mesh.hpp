#pragma once

#include <array>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace lts {

using Vec3 = Eigen::Vector3d;
using ShapeVector = Eigen::Matrix<double, 8, 1>;
/// Row A holds the gradient of shape function A with respect to (xi1, xi2, xi3).
using ShapeGradients = Eigen::Matrix<double, 8, 3>;

/// Point in the bi-unit reference cube; each component lies in [-1, 1].
struct BiUnitPoint {
  double xi1 = 0.0;
  double xi2 = 0.0;
  double xi3 = 0.0;
};

/// Reference-cube corner signs in x-fastest order: corner A sits at
/// (corner_signs[A][0], corner_signs[A][1], corner_signs[A][2]). The same
/// ordering defines element connectivity throughout.
inline constexpr std::array<std::array<double, 3>, 8> corner_signs = {{
    {-1.0, -1.0, -1.0},
    {+1.0, -1.0, -1.0},
    {-1.0, +1.0, -1.0},
    {+1.0, +1.0, -1.0},
    {-1.0, -1.0, +1.0},
    {+1.0, -1.0, +1.0},
    {-1.0, +1.0, +1.0},
    {+1.0, +1.0, +1.0},
}};

/// Trilinear shape functions N^A(xi) = (1/8) prod_i (1 + s^A_i xi_i).
ShapeVector shape_values(const BiUnitPoint& xi);

/// Gradients dN^A/dxi; rows sum to zero componentwise.
ShapeGradients shape_gradients(const BiUnitPoint& xi);

/// The six exterior face sets of the cuboid domain. z_min is the irradiated
/// top surface; z grows into the tissue.
enum class Face : int { XMin = 0, XMax, YMin, YMax, ZMin, ZMax };

inline constexpr std::array<Face, 6> all_faces = {Face::XMin, Face::XMax, Face::YMin,
                                                  Face::YMax, Face::ZMin, Face::ZMax};

std::string_view face_name(Face face);
/// Accepts "x_min", "x_max", "y_min", "y_max", "z_min", "z_max".
Face face_from_name(std::string_view name);

/// Local corners of a face in bilinear (s, t) order, s fastest. The face's
/// in-plane frame maps (s, t) onto the two free reference axes in x-fastest
/// order; the fixed axis is pinned at -1 or +1.
const std::array<int, 4>& face_corners(Face face);

/// Embeds face-plane coordinates into the reference cube.
BiUnitPoint face_point(Face face, double s, double t);

struct FaceRef {
  int element = -1;
  Face face = Face::XMin;
};

struct GridDims {
  int nx = 0;
  int ny = 0;
  int nz = 0;

  int node_count() const { return (nx + 1) * (ny + 1) * (nz + 1); }
  int element_count() const { return nx * ny * nz; }
};

/// Structured mesh of axis-aligned hexahedral elements over a cuboid.
/// Nodes and elements are numbered lexicographically, x fastest, then y,
/// then z. Immutable once built.
class Mesh {
 public:
  const GridDims& dims() const { return dims_; }
  const Vec3& extent() const { return extent_; }
  const Vec3& origin() const { return origin_; }
  /// Nominal element edge lengths (extent / element count per axis).
  const Vec3& spacing() const { return spacing_; }

  int node_count() const { return static_cast<int>(nodes_.size()); }
  int element_count() const { return static_cast<int>(elements_.size()); }

  const std::vector<Vec3>& nodes() const { return nodes_; }
  const Vec3& node(int n) const { return nodes_[static_cast<size_t>(n)]; }
  const std::array<int, 8>& element_nodes(int e) const {
    return elements_[static_cast<size_t>(e)];
  }

  int node_index(int i, int j, int k) const {
    return i + (dims_.nx + 1) * (j + (dims_.ny + 1) * k);
  }
  int element_index(int i, int j, int k) const {
    return i + dims_.nx * (j + dims_.ny * k);
  }

  /// Node coordinates along one axis (0 = x, 1 = y, 2 = z), ascending.
  const std::vector<double>& axis_coords(int axis) const {
    return axis_coords_[static_cast<size_t>(axis)];
  }

  /// Exterior faces belonging to one side of the cuboid.
  const std::vector<FaceRef>& face_set(Face face) const {
    return face_sets_[static_cast<size_t>(face)];
  }
  const std::vector<FaceRef>& face_set(std::string_view name) const {
    return face_set(face_from_name(name));
  }

  bool is_boundary_face(int element, Face face) const;

  friend Mesh build_grid(const GridDims& dims, const Vec3& extent, const Vec3& origin);

 private:
  Mesh() = default;

  GridDims dims_;
  Vec3 extent_ = Vec3::Zero();
  Vec3 origin_ = Vec3::Zero();
  Vec3 spacing_ = Vec3::Zero();
  std::array<std::vector<double>, 3> axis_coords_;
  std::vector<Vec3> nodes_;
  std::vector<std::array<int, 8>> elements_;
  std::array<std::vector<FaceRef>, 6> face_sets_;
};

/// Builds a structured grid of dims.nx * dims.ny * dims.nz elements filling
/// the cuboid [origin, origin + extent]. Throws std::invalid_argument when a
/// dimension is < 1 or an extent component is not strictly positive.
Mesh build_grid(const GridDims& dims, const Vec3& extent, const Vec3& origin);

/// Same, with the default experimental frame: x and y centered on zero and
/// the irradiated surface at z = 0, so origin = (-Lx/2, -Ly/2, 0).
Mesh build_grid(const GridDims& dims, const Vec3& extent);

/// Physical position of a reference point inside an element.
Vec3 map_to_physical(const Mesh& mesh, int element, const BiUnitPoint& xi);

struct Jacobian {
  Eigen::Matrix3d matrix;  // dx/dxi
  double det = 0.0;
};

/// Jacobian of the isoparametric map. Throws std::domain_error when the
/// determinant is not strictly positive (degenerate element).
Jacobian jacobian(const Mesh& mesh, int element, const BiUnitPoint& xi);

struct LocatedPoint {
  int element = -1;
  BiUnitPoint xi;
};

/// Finds the element containing a physical point and its reference
/// coordinates there. Points on interior shared faces resolve to the element
/// on the increasing-coordinate side; points coinciding with a node yield xi
/// components of exactly +-1 so nodal values are picked up without roundoff.
/// Throws std::invalid_argument for points outside the domain.
LocatedPoint locate(const Mesh& mesh, const Vec3& point);

/// Trilinear interpolation of a nodal field at a located point.
double sample_field(const Mesh& mesh, const LocatedPoint& at, const Eigen::VectorXd& field);

}  // namespace lts
