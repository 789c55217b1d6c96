// Copyright (c) 2026 fedef contributors
// SPDX-License-Identifier:    MIT

#pragma once

/// @file cells.hpp
/// Reference cells: geometry, sub-entity topology and numbering, entity
/// closures, affine maps onto sub-entities and lattice point generation.
///
/// Seven cell kinds are supported (interval, triangle, quadrilateral,
/// tetrahedron, hexahedron, prism, pyramid), plus a zero-dimensional point
/// cell that acts as the reference cell of a vertex.

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace fedef
{

/// A point in up to three dimensions. Trailing coordinates beyond the
/// topological dimension in use are zero.
using Point = std::array<double, 3>;

namespace cells
{

enum class CellKind
{
  point,
  interval,
  triangle,
  quadrilateral,
  tetrahedron,
  hexahedron,
  prism,
  pyramid
};

inline std::string to_string(CellKind kind)
{
  switch (kind)
  {
  case CellKind::point:
    return "point";
  case CellKind::interval:
    return "interval";
  case CellKind::triangle:
    return "triangle";
  case CellKind::quadrilateral:
    return "quadrilateral";
  case CellKind::tetrahedron:
    return "tetrahedron";
  case CellKind::hexahedron:
    return "hexahedron";
  case CellKind::prism:
    return "prism";
  case CellKind::pyramid:
    return "pyramid";
  }
  throw std::invalid_argument("Unknown cell kind");
}

inline CellKind cell_from_string(const std::string& name)
{
  for (CellKind k :
       {CellKind::point, CellKind::interval, CellKind::triangle,
        CellKind::quadrilateral, CellKind::tetrahedron, CellKind::hexahedron,
        CellKind::prism, CellKind::pyramid})
  {
    if (to_string(k) == name)
      return k;
  }
  throw std::invalid_argument("Unknown cell kind: " + name);
}

inline int topological_dimension(CellKind kind)
{
  switch (kind)
  {
  case CellKind::point:
    return 0;
  case CellKind::interval:
    return 1;
  case CellKind::triangle:
  case CellKind::quadrilateral:
    return 2;
  default:
    return 3;
  }
}

/// Reference to a sub-entity of a cell: (dimension, index within dimension).
struct EntityRef
{
  int dim;
  int index;
  auto operator<=>(const EntityRef&) const = default;
};

/// Vertex coordinates of the canonical reference cell.
inline std::vector<Point> reference_vertices(CellKind kind)
{
  switch (kind)
  {
  case CellKind::point:
    return {{0, 0, 0}};
  case CellKind::interval:
    return {{0, 0, 0}, {1, 0, 0}};
  case CellKind::triangle:
    return {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
  case CellKind::quadrilateral:
    return {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}};
  case CellKind::tetrahedron:
    return {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  case CellKind::hexahedron:
    return {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0},
            {0, 0, 1}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}};
  case CellKind::prism:
    return {{0, 0, 0}, {1, 0, 0}, {0, 1, 0},
            {0, 0, 1}, {1, 0, 1}, {0, 1, 1}};
  case CellKind::pyramid:
    return {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}};
  }
  throw std::invalid_argument("Unknown cell kind");
}

/// Sub-entity connectivity: for each dimension, the ordered list of entities,
/// each given as the tuple of its vertex indices.
inline std::vector<std::vector<std::vector<int>>> topology(CellKind kind)
{
  switch (kind)
  {
  case CellKind::point:
    return {{{0}}};
  case CellKind::interval:
    return {{{0}, {1}}, {{0, 1}}};
  case CellKind::triangle:
    return {{{0}, {1}, {2}}, {{1, 2}, {0, 2}, {0, 1}}, {{0, 1, 2}}};
  case CellKind::quadrilateral:
    return {{{0}, {1}, {2}, {3}},
            {{0, 1}, {0, 2}, {1, 3}, {2, 3}},
            {{0, 1, 2, 3}}};
  case CellKind::tetrahedron:
    return {{{0}, {1}, {2}, {3}},
            {{2, 3}, {1, 3}, {1, 2}, {0, 3}, {0, 2}, {0, 1}},
            {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}},
            {{0, 1, 2, 3}}};
  case CellKind::hexahedron:
    return {{{0}, {1}, {2}, {3}, {4}, {5}, {6}, {7}},
            {{0, 1}, {0, 2}, {0, 4}, {1, 3}, {1, 5}, {2, 3},
             {2, 6}, {3, 7}, {4, 5}, {4, 6}, {5, 7}, {6, 7}},
            {{0, 1, 2, 3}, {0, 1, 4, 5}, {0, 2, 4, 6},
             {1, 3, 5, 7}, {2, 3, 6, 7}, {4, 5, 6, 7}},
            {{0, 1, 2, 3, 4, 5, 6, 7}}};
  case CellKind::prism:
    return {{{0}, {1}, {2}, {3}, {4}, {5}},
            {{1, 2}, {0, 2}, {0, 1}, {0, 3}, {1, 4},
             {2, 5}, {4, 5}, {3, 5}, {3, 4}},
            {{0, 1, 2}, {0, 1, 3, 4}, {0, 2, 3, 5}, {1, 2, 4, 5}, {3, 4, 5}},
            {{0, 1, 2, 3, 4, 5}}};
  case CellKind::pyramid:
    return {{{0}, {1}, {2}, {3}, {4}},
            {{0, 1}, {0, 2}, {0, 4}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}},
            {{0, 1, 2, 3}, {0, 1, 4}, {0, 2, 4}, {1, 3, 4}, {2, 3, 4}},
            {{0, 1, 2, 3, 4}}};
  }
  throw std::invalid_argument("Unknown cell kind");
}

/// A reference cell: kind, vertex coordinates and sub-entity topology.
/// Custom vertex placements (affine images of the canonical cell) share the
/// canonical topology.
struct ReferenceCell
{
  CellKind kind;
  int tdim;
  std::vector<Point> vertices;
  std::vector<std::vector<std::vector<int>>> entities;

  int entity_count(int dim) const
  {
    if (dim < 0 or dim > tdim)
      return 0;
    return static_cast<int>(entities[dim].size());
  }

  const std::vector<int>& entity_vertices(EntityRef e) const
  {
    if (e.dim < 0 or e.dim > tdim or e.index < 0
        or e.index >= entity_count(e.dim))
      throw std::domain_error("Invalid entity reference");
    return entities[e.dim][e.index];
  }

  bool is_canonical() const
  {
    const auto ref = reference_vertices(kind);
    for (std::size_t v = 0; v < vertices.size(); ++v)
      for (int d = 0; d < 3; ++d)
        if (vertices[v][d] != ref[v][d])
          return false;
    return true;
  }
};

inline ReferenceCell reference_cell(CellKind kind)
{
  return {kind, topological_dimension(kind), reference_vertices(kind),
          topology(kind)};
}

/// Cell with custom vertex coordinates (e.g. an alternative reference cell
/// convention such as the biunit square).
inline ReferenceCell with_vertices(CellKind kind, std::vector<Point> vertices)
{
  if (vertices.size() != reference_vertices(kind).size())
    throw std::invalid_argument("Wrong number of vertices for cell kind");
  return {kind, topological_dimension(kind), std::move(vertices),
          topology(kind)};
}

/// Name of entities of a given codimension: "the cell", "facet", "ridge" or
/// "peak". Throws if codim > tdim.
inline std::string entity_name(int tdim, int codim)
{
  if (codim < 0 or tdim < 0 or tdim > 3 or codim > tdim)
    throw std::domain_error("Invalid (tdim, codim) pair");
  switch (codim)
  {
  case 0:
    return "the cell";
  case 1:
    return "facet";
  case 2:
    return "ridge";
  default:
    return "peak";
  }
}

/// Name of entities of a given dimension: vertex, edge, face or volume.
inline std::string dimension_name(int dim)
{
  switch (dim)
  {
  case 0:
    return "vertex";
  case 1:
    return "edge";
  case 2:
    return "face";
  case 3:
    return "volume";
  default:
    throw std::domain_error("Invalid entity dimension");
  }
}

/// The entity together with all lower-dimensional entities contained in it.
inline std::set<EntityRef> entity_closure(const ReferenceCell& cell,
                                          EntityRef e)
{
  const std::vector<int>& vts = cell.entity_vertices(e);
  std::set<int> vset(vts.begin(), vts.end());
  std::set<EntityRef> closure{e};
  for (int dim = 0; dim < e.dim; ++dim)
  {
    for (int i = 0; i < cell.entity_count(dim); ++i)
    {
      const auto& sub = cell.entities[dim][i];
      if (std::all_of(sub.begin(), sub.end(),
                      [&](int v) { return vset.contains(v); }))
        closure.insert({dim, i});
    }
  }
  return closure;
}

/// Reference cell kind of a sub-entity (point, interval, triangle or
/// quadrilateral for dim < tdim; the cell's own kind for dim == tdim).
inline CellKind entity_kind(const ReferenceCell& cell, EntityRef e)
{
  if (e.dim == cell.tdim)
    return cell.kind;
  const std::size_t nv = cell.entity_vertices(e).size();
  switch (e.dim)
  {
  case 0:
    return CellKind::point;
  case 1:
    return CellKind::interval;
  case 2:
    return nv == 3 ? CellKind::triangle : CellKind::quadrilateral;
  default:
    throw std::domain_error("Invalid entity dimension");
  }
}

/// An affine map t -> linear * t + shift between reference domains.
struct AffineMap
{
  Eigen::MatrixXd linear; // target_dim x source_dim
  Eigen::VectorXd shift;  // target_dim

  int source_dim() const { return static_cast<int>(linear.cols()); }
  int target_dim() const { return static_cast<int>(linear.rows()); }

  Point apply(const Point& t) const
  {
    Eigen::VectorXd s(source_dim());
    for (int i = 0; i < source_dim(); ++i)
      s[i] = t[i];
    Eigen::VectorXd x = linear * s + shift;
    Point out{0, 0, 0};
    for (int i = 0; i < target_dim(); ++i)
      out[i] = x[i];
    return out;
  }

  /// Constant metric factor sqrt(det(J^T J)) of the map.
  double metric_factor() const
  {
    if (source_dim() == 0)
      return 1.0;
    return std::sqrt((linear.transpose() * linear).determinant());
  }

  AffineMap inverse() const
  {
    if (source_dim() != target_dim())
      throw std::domain_error("Only square affine maps can be inverted");
    Eigen::MatrixXd inv = linear.inverse();
    return {inv, -inv * shift};
  }

  AffineMap compose_after(const AffineMap& inner) const
  {
    return {linear * inner.linear, linear * inner.shift + shift};
  }
};

/// Affine map sending the vertices of the canonical cell of `kind` to
/// `target`, in order. Throws if no affine map interpolates all vertices.
inline AffineMap affine_correspondence(CellKind kind,
                                       const std::vector<Point>& target,
                                       int gdim)
{
  const auto source = reference_vertices(kind);
  if (target.size() != source.size())
    throw std::invalid_argument("Vertex count mismatch");
  const int sdim = topological_dimension(kind);
  const int nv = static_cast<int>(source.size());

  // Least-squares fit of [shift | linear] over all vertices, then an
  // exactness check to reject non-affine (e.g. bilinear) correspondences.
  Eigen::MatrixXd lhs(nv, sdim + 1);
  Eigen::MatrixXd rhs(nv, gdim);
  for (int v = 0; v < nv; ++v)
  {
    lhs(v, 0) = 1.0;
    for (int d = 0; d < sdim; ++d)
      lhs(v, d + 1) = source[v][d];
    for (int d = 0; d < gdim; ++d)
      rhs(v, d) = target[v][d];
  }
  Eigen::MatrixXd sol = lhs.colPivHouseholderQr().solve(rhs);
  double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
  if ((lhs * sol - rhs).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::runtime_error(
        "Vertices are not an affine image of the canonical "
        + to_string(kind));

  AffineMap m;
  m.shift = sol.row(0).transpose();
  m.linear = sol.bottomRows(sdim).transpose();
  return m;
}

/// Affine map from the sub-entity's reference cell onto the sub-entity,
/// sending reference vertices to the entity's vertices in topology order.
/// Throws for vertices (dim 0); use the vertex coordinate directly.
inline AffineMap entity_map(const ReferenceCell& cell, EntityRef e)
{
  if (e.dim < 1)
    throw std::domain_error("entity_map requires an entity of dimension >= 1");
  const auto& vts = cell.entity_vertices(e);
  std::vector<Point> target(vts.size());
  for (std::size_t i = 0; i < vts.size(); ++i)
    target[i] = cell.vertices[vts[i]];
  return affine_correspondence(entity_kind(cell, e), target, cell.tdim);
}

/// Unit tangent frame of an entity: the normalised columns of the entity
/// map's Jacobian. Edge tangents point from the lower-numbered to the
/// higher-numbered vertex.
inline std::vector<Point> entity_tangents(const ReferenceCell& cell,
                                          EntityRef e)
{
  AffineMap m = entity_map(cell, e);
  std::vector<Point> tangents;
  for (int j = 0; j < m.source_dim(); ++j)
  {
    Eigen::VectorXd c = m.linear.col(j).normalized();
    Point t{0, 0, 0};
    for (int i = 0; i < m.target_dim(); ++i)
      t[i] = c[i];
    tangents.push_back(t);
  }
  return tangents;
}

/// Unit normal of a codimension-1 entity, oriented outward from the cell.
inline Point facet_normal(const ReferenceCell& cell, EntityRef e)
{
  if (e.dim != cell.tdim - 1)
    throw std::domain_error("Normals are defined for facets only");
  AffineMap m = entity_map(cell, e);
  Eigen::VectorXd n(cell.tdim);
  if (cell.tdim == 2)
  {
    Eigen::VectorXd t = m.linear.col(0);
    n << t[1], -t[0];
  }
  else
  {
    Eigen::Vector3d t0 = m.linear.col(0);
    Eigen::Vector3d t1 = m.linear.col(1);
    n = t0.cross(t1);
  }
  n.normalize();

  Eigen::VectorXd centroid = Eigen::VectorXd::Zero(cell.tdim);
  for (const auto& v : cell.vertices)
    for (int d = 0; d < cell.tdim; ++d)
      centroid[d] += v[d] / static_cast<double>(cell.vertices.size());
  const auto& vts = cell.entity_vertices(e);
  Eigen::VectorXd mid = Eigen::VectorXd::Zero(cell.tdim);
  for (int v : vts)
    for (int d = 0; d < cell.tdim; ++d)
      mid[d] += cell.vertices[v][d] / static_cast<double>(vts.size());
  if (n.dot(mid - centroid) < 0)
    n = -n;

  Point out{0, 0, 0};
  for (int d = 0; d < cell.tdim; ++d)
    out[d] = n[d];
  return out;
}

namespace impl
{
/// Integer-grid membership test for the canonical cell: coordinates are
/// (i, j, k)/den. Exact, so boundary points are classified with tolerance 0.
inline bool grid_point_inside(CellKind kind, int i, int j, int k, int den,
                              bool include_boundary)
{
  auto ge0 = [&](int a) { return include_boundary ? a >= 0 : a > 0; };
  auto le = [&](int a, int b) { return include_boundary ? a <= b : a < b; };
  switch (kind)
  {
  case CellKind::point:
    return true;
  case CellKind::interval:
    return ge0(i) and le(i, den);
  case CellKind::triangle:
    return ge0(i) and ge0(j) and le(i + j, den);
  case CellKind::quadrilateral:
    return ge0(i) and ge0(j) and le(i, den) and le(j, den);
  case CellKind::tetrahedron:
    return ge0(i) and ge0(j) and ge0(k) and le(i + j + k, den);
  case CellKind::hexahedron:
    return ge0(i) and ge0(j) and ge0(k) and le(i, den) and le(j, den)
           and le(k, den);
  case CellKind::prism:
    return ge0(i) and ge0(j) and ge0(k) and le(i + j, den) and le(k, den);
  case CellKind::pyramid:
    return ge0(i) and ge0(j) and ge0(k) and le(i + k, den) and le(j + k, den);
  }
  return false;
}
} // namespace impl

/// Regular lattice over the cell's bounding box with n points per direction,
/// filtered to points inside (or, with include_boundary, on) the cell.
/// Points are generated on an exact integer grid; the pyramid apex band
/// (1 - z below half the grid spacing) is removed so that rationomial
/// denominators stay bounded. Ordering: x fastest, then y, then z.
inline std::vector<Point> lattice_points(const ReferenceCell& cell, int n,
                                         bool include_boundary = true)
{
  if (cell.tdim == 0)
    return {Point{0, 0, 0}};
  if (n < 2)
    throw std::invalid_argument("lattice_points requires n >= 2");
  const int den = n - 1;

  std::vector<Point> pts;
  const int ni = n;
  const int nj = cell.tdim >= 2 ? n : 1;
  const int nk = cell.tdim >= 3 ? n : 1;
  for (int k = 0; k < nk; ++k)
    for (int j = 0; j < nj; ++j)
      for (int i = 0; i < ni; ++i)
      {
        if (!impl::grid_point_inside(cell.kind, i, j, k, den,
                                     include_boundary))
          continue;
        // Pyramid apex guard: drop points with 1 - z < (1/(n-1))/2, i.e.
        // 2 (den - k) < 1 on the integer grid.
        if (cell.kind == CellKind::pyramid and 2 * (den - k) < 1)
          continue;
        pts.push_back({static_cast<double>(i) / den,
                       cell.tdim >= 2 ? static_cast<double>(j) / den : 0.0,
                       cell.tdim >= 3 ? static_cast<double>(k) / den : 0.0});
      }

  if (!cell.is_canonical())
  {
    AffineMap m = affine_correspondence(cell.kind, cell.vertices, cell.tdim);
    for (auto& p : pts)
      p = m.apply(p);
  }
  return pts;
}

/// Measure of the canonical reference cell.
inline double reference_measure(CellKind kind)
{
  switch (kind)
  {
  case CellKind::point:
    return 1.0;
  case CellKind::interval:
  case CellKind::quadrilateral:
  case CellKind::hexahedron:
    return 1.0;
  case CellKind::triangle:
  case CellKind::prism:
    return 0.5;
  case CellKind::tetrahedron:
    return 1.0 / 6.0;
  case CellKind::pyramid:
    return 1.0 / 3.0;
  }
  throw std::invalid_argument("Unknown cell kind");
}

} // namespace cells
} // namespace fedef
