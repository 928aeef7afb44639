#include "lasertherm/mesh.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace lts {

namespace {

// Node coordinates along one axis. Generated symmetrically about the axis
// midpoint so that mirrored nodes are exact reflections of each other; the
// two ends are pinned to the exact domain bounds.
std::vector<double> axis_nodes(int n, double lo, double length) {
  std::vector<double> coords(static_cast<size_t>(n) + 1);
  const double mid = lo + 0.5 * length;
  for (int i = 0; 2 * i <= n; ++i) {
    const double offset = length * (static_cast<double>(n - 2 * i) / (2.0 * n));
    coords[static_cast<size_t>(i)] = mid - offset;
    coords[static_cast<size_t>(n - i)] = mid + offset;
  }
  coords.front() = lo;
  coords.back() = lo + length;
  return coords;
}

std::string describe_point(const Vec3& p) {
  std::ostringstream out;
  out << "(" << p.x() << ", " << p.y() << ", " << p.z() << ")";
  return out.str();
}

}  // namespace

ShapeVector shape_values(const BiUnitPoint& xi) {
  ShapeVector n;
  for (int a = 0; a < 8; ++a) {
    n(a) = 0.125 * (1.0 + corner_signs[static_cast<size_t>(a)][0] * xi.xi1) *
           (1.0 + corner_signs[static_cast<size_t>(a)][1] * xi.xi2) *
           (1.0 + corner_signs[static_cast<size_t>(a)][2] * xi.xi3);
  }
  return n;
}

ShapeGradients shape_gradients(const BiUnitPoint& xi) {
  ShapeGradients g;
  for (int a = 0; a < 8; ++a) {
    const auto& s = corner_signs[static_cast<size_t>(a)];
    const double f1 = 1.0 + s[0] * xi.xi1;
    const double f2 = 1.0 + s[1] * xi.xi2;
    const double f3 = 1.0 + s[2] * xi.xi3;
    g(a, 0) = 0.125 * s[0] * f2 * f3;
    g(a, 1) = 0.125 * f1 * s[1] * f3;
    g(a, 2) = 0.125 * f1 * f2 * s[2];
  }
  return g;
}

std::string_view face_name(Face face) {
  switch (face) {
    case Face::XMin: return "x_min";
    case Face::XMax: return "x_max";
    case Face::YMin: return "y_min";
    case Face::YMax: return "y_max";
    case Face::ZMin: return "z_min";
    case Face::ZMax: return "z_max";
  }
  throw std::invalid_argument("invalid face enumerator");
}

Face face_from_name(std::string_view name) {
  for (Face f : all_faces) {
    if (face_name(f) == name) return f;
  }
  throw std::invalid_argument("unknown face set '" + std::string(name) +
                              "' (expected x_min, x_max, y_min, y_max, z_min, z_max)");
}

const std::array<int, 4>& face_corners(Face face) {
  static const std::array<std::array<int, 4>, 6> corners = {{
      {0, 2, 4, 6},  // x_min
      {1, 3, 5, 7},  // x_max
      {0, 1, 4, 5},  // y_min
      {2, 3, 6, 7},  // y_max
      {0, 1, 2, 3},  // z_min
      {4, 5, 6, 7},  // z_max
  }};
  return corners[static_cast<size_t>(face)];
}

BiUnitPoint face_point(Face face, double s, double t) {
  switch (face) {
    case Face::XMin: return {-1.0, s, t};
    case Face::XMax: return {+1.0, s, t};
    case Face::YMin: return {s, -1.0, t};
    case Face::YMax: return {s, +1.0, t};
    case Face::ZMin: return {s, t, -1.0};
    case Face::ZMax: return {s, t, +1.0};
  }
  throw std::invalid_argument("invalid face enumerator");
}

bool Mesh::is_boundary_face(int element, Face face) const {
  const int i = element % dims_.nx;
  const int j = (element / dims_.nx) % dims_.ny;
  const int k = element / (dims_.nx * dims_.ny);
  switch (face) {
    case Face::XMin: return i == 0;
    case Face::XMax: return i == dims_.nx - 1;
    case Face::YMin: return j == 0;
    case Face::YMax: return j == dims_.ny - 1;
    case Face::ZMin: return k == 0;
    case Face::ZMax: return k == dims_.nz - 1;
  }
  return false;
}

Mesh build_grid(const GridDims& dims, const Vec3& extent, const Vec3& origin) {
  if (dims.nx < 1 || dims.ny < 1 || dims.nz < 1) {
    std::ostringstream out;
    out << "mesh dimensions must be at least 1 element per axis, got " << dims.nx << " x "
        << dims.ny << " x " << dims.nz;
    throw std::invalid_argument(out.str());
  }
  for (int axis = 0; axis < 3; ++axis) {
    if (!(extent[axis] > 0.0)) {
      std::ostringstream out;
      out << "mesh extent must be strictly positive per axis, got " << extent.transpose();
      throw std::invalid_argument(out.str());
    }
  }

  Mesh mesh;
  mesh.dims_ = dims;
  mesh.extent_ = extent;
  mesh.origin_ = origin;
  mesh.spacing_ =
      Vec3(extent.x() / dims.nx, extent.y() / dims.ny, extent.z() / dims.nz);

  const std::array<int, 3> counts = {dims.nx, dims.ny, dims.nz};
  for (int axis = 0; axis < 3; ++axis) {
    auto coords = axis_nodes(counts[static_cast<size_t>(axis)], origin[axis], extent[axis]);
    for (size_t i = 1; i < coords.size(); ++i) {
      if (!(coords[i] > coords[i - 1])) {
        throw std::invalid_argument(
            "mesh spacing degenerates below floating point resolution on axis " +
            std::to_string(axis));
      }
    }
    mesh.axis_coords_[static_cast<size_t>(axis)] = std::move(coords);
  }

  mesh.nodes_.reserve(static_cast<size_t>(dims.node_count()));
  for (int k = 0; k <= dims.nz; ++k) {
    for (int j = 0; j <= dims.ny; ++j) {
      for (int i = 0; i <= dims.nx; ++i) {
        mesh.nodes_.emplace_back(mesh.axis_coords_[0][static_cast<size_t>(i)],
                                 mesh.axis_coords_[1][static_cast<size_t>(j)],
                                 mesh.axis_coords_[2][static_cast<size_t>(k)]);
      }
    }
  }

  mesh.elements_.reserve(static_cast<size_t>(dims.element_count()));
  for (int k = 0; k < dims.nz; ++k) {
    for (int j = 0; j < dims.ny; ++j) {
      for (int i = 0; i < dims.nx; ++i) {
        std::array<int, 8> conn;
        for (int a = 0; a < 8; ++a) {
          conn[static_cast<size_t>(a)] =
              mesh.node_index(i + (a & 1), j + ((a >> 1) & 1), k + ((a >> 2) & 1));
        }
        mesh.elements_.push_back(conn);
      }
    }
  }

  for (int k = 0; k < dims.nz; ++k) {
    for (int j = 0; j < dims.ny; ++j) {
      mesh.face_sets_[static_cast<size_t>(Face::XMin)].push_back(
          {mesh.element_index(0, j, k), Face::XMin});
      mesh.face_sets_[static_cast<size_t>(Face::XMax)].push_back(
          {mesh.element_index(dims.nx - 1, j, k), Face::XMax});
    }
  }
  for (int k = 0; k < dims.nz; ++k) {
    for (int i = 0; i < dims.nx; ++i) {
      mesh.face_sets_[static_cast<size_t>(Face::YMin)].push_back(
          {mesh.element_index(i, 0, k), Face::YMin});
      mesh.face_sets_[static_cast<size_t>(Face::YMax)].push_back(
          {mesh.element_index(i, dims.ny - 1, k), Face::YMax});
    }
  }
  for (int j = 0; j < dims.ny; ++j) {
    for (int i = 0; i < dims.nx; ++i) {
      mesh.face_sets_[static_cast<size_t>(Face::ZMin)].push_back(
          {mesh.element_index(i, j, 0), Face::ZMin});
      mesh.face_sets_[static_cast<size_t>(Face::ZMax)].push_back(
          {mesh.element_index(i, j, dims.nz - 1), Face::ZMax});
    }
  }

  return mesh;
}

Mesh build_grid(const GridDims& dims, const Vec3& extent) {
  return build_grid(dims, extent, Vec3(-0.5 * extent.x(), -0.5 * extent.y(), 0.0));
}

Vec3 map_to_physical(const Mesh& mesh, int element, const BiUnitPoint& xi) {
  const ShapeVector n = shape_values(xi);
  const auto& conn = mesh.element_nodes(element);
  Vec3 x = Vec3::Zero();
  for (int a = 0; a < 8; ++a) {
    x += n(a) * mesh.node(conn[static_cast<size_t>(a)]);
  }
  return x;
}

Jacobian jacobian(const Mesh& mesh, int element, const BiUnitPoint& xi) {
  const ShapeGradients g = shape_gradients(xi);
  const auto& conn = mesh.element_nodes(element);
  Eigen::Matrix3d j = Eigen::Matrix3d::Zero();
  for (int a = 0; a < 8; ++a) {
    j += mesh.node(conn[static_cast<size_t>(a)]) * g.row(a);
  }
  Jacobian result{j, j.determinant()};
  if (!(result.det > 0.0)) {
    throw std::domain_error("degenerate element " + std::to_string(element) +
                            ": Jacobian determinant " + std::to_string(result.det));
  }
  return result;
}

LocatedPoint locate(const Mesh& mesh, const Vec3& point) {
  const std::array<int, 3> counts = {mesh.dims().nx, mesh.dims().ny, mesh.dims().nz};
  std::array<int, 3> cell;
  std::array<double, 3> local;

  for (int axis = 0; axis < 3; ++axis) {
    const auto& coords = mesh.axis_coords(axis);
    const int n = counts[static_cast<size_t>(axis)];
    const double tol = 1e-9 * mesh.extent()[axis];
    double p = point[axis];
    if (p < coords.front() - tol || p > coords.back() + tol) {
      throw std::invalid_argument("point " + describe_point(point) +
                                  " lies outside the mesh domain");
    }
    p = std::min(std::max(p, coords.front()), coords.back());

    int idx = static_cast<int>(
        std::floor((p - mesh.origin()[axis]) / mesh.spacing()[axis]));
    idx = std::min(std::max(idx, 0), n - 1);
    while (idx > 0 && p < coords[static_cast<size_t>(idx)]) --idx;
    while (idx < n - 1 && p >= coords[static_cast<size_t>(idx) + 1]) ++idx;

    const double lo = coords[static_cast<size_t>(idx)];
    const double hi = coords[static_cast<size_t>(idx) + 1];
    cell[static_cast<size_t>(axis)] = idx;
    local[static_cast<size_t>(axis)] = 2.0 * ((p - lo) / (hi - lo)) - 1.0;
  }

  LocatedPoint at;
  at.element = mesh.element_index(cell[0], cell[1], cell[2]);
  at.xi = {local[0], local[1], local[2]};
  return at;
}

double sample_field(const Mesh& mesh, const LocatedPoint& at, const Eigen::VectorXd& field) {
  const ShapeVector n = shape_values(at.xi);
  const auto& conn = mesh.element_nodes(at.element);
  double value = 0.0;
  for (int a = 0; a < 8; ++a) {
    value += n(a) * field(conn[static_cast<size_t>(a)]);
  }
  return value;
}

}  // namespace lts
