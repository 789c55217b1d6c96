// Copyright (c) 2026 fedef contributors
// SPDX-License-Identifier:    MIT

#pragma once

/// @file maps.hpp
/// Geometric maps between cells, affinity detection, the seven push-forward
/// maps with their pull-backs, and convention alignment of elements defined
/// on alternative reference cells.

#include "cells.hpp"
#include "elements.hpp"
#include "polyset.hpp"
#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

namespace fedef::maps
{

/// A geometric map from a reference cell to a physical cell, interpolated by
/// a scalar Lagrange basis placed at target points (one per geometry DOF).
struct GeometricMap
{
  cells::ReferenceCell source_cell;
  std::vector<Point> target_points;
  int gdim = 0;
  elements::CiarletElement basis;
  std::vector<polyset::PolyFunction> basis_functions;
  std::vector<std::vector<polyset::PolyFunction>> basis_derivs; // [dof][dir]

  Point apply(const Point& x) const
  {
    Point out{0, 0, 0};
    for (std::size_t i = 0; i < basis_functions.size(); ++i)
    {
      const double phi = basis_functions[i].evaluate(x)[0];
      for (int d = 0; d < gdim; ++d)
        out[d] += phi * target_points[i][d];
    }
    return out;
  }

  /// Jacobian of the map at a reference point (gdim x tdim).
  Eigen::MatrixXd jacobian(const Point& x) const
  {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(gdim, source_cell.tdim);
    for (std::size_t i = 0; i < basis_functions.size(); ++i)
      for (int d = 0; d < source_cell.tdim; ++d)
      {
        const double dphi = basis_derivs[i][d].evaluate(x)[0];
        for (int g = 0; g < gdim; ++g)
          j(g, d) += dphi * target_points[i][g];
      }
    return j;
  }
};

/// Geometric map interpolating the target points with a degree-`degree`
/// Lagrange basis. With degree 1, target points are the cell's vertices.
inline GeometricMap make_geometric_map(cells::CellKind kind,
                                       std::vector<Point> target_points,
                                       int gdim, int degree = 1)
{
  GeometricMap g;
  g.source_cell = cells::reference_cell(kind);
  g.gdim = gdim;
  g.basis = elements::make_family(elements::Family::lagrange, kind, degree);
  if (target_points.size() != g.basis.dof_count())
    throw std::invalid_argument(
        "Geometry needs one target point per geometry DOF");
  g.target_points = std::move(target_points);
  polyset::PolySet phis = g.basis.basis();
  for (std::size_t i = 0; i < phis.size(); ++i)
  {
    g.basis_functions.push_back(phis.function(i));
    std::vector<polyset::PolyFunction> derivs;
    for (int d = 0; d < g.source_cell.tdim; ++d)
      derivs.push_back(polyset::differentiate(g.basis_functions.back(), d));
    g.basis_derivs.push_back(std::move(derivs));
  }
  return g;
}

/// True if the map is affine: degree-1 geometry on a simplex, or a map whose
/// Jacobian is constant to 1e-12 across 10 sample points.
inline bool is_affine(const GeometricMap& g)
{
  using cells::CellKind;
  const CellKind kind = g.source_cell.kind;
  if (g.basis.degree_hint == 1
      and (kind == CellKind::interval or kind == CellKind::triangle
           or kind == CellKind::tetrahedron))
    return true;

  std::vector<Point> samples = cells::lattice_points(g.source_cell, 3, true);
  samples.resize(std::min<std::size_t>(samples.size(), 10));
  Eigen::MatrixXd j0 = g.jacobian(samples.front());
  const double scale = std::max(1.0, j0.cwiseAbs().maxCoeff());
  for (const Point& p : samples)
    if (((g.jacobian(p) - j0).cwiseAbs()).maxCoeff() > 1e-12 * scale)
      return false;
  return true;
}

namespace impl
{
inline std::size_t expected_value_size(MapKind kind, int d)
{
  switch (kind)
  {
  case MapKind::identity:
    return 0; // any
  case MapKind::l2_piola:
    return 1;
  case MapKind::covariant:
  case MapKind::contravariant:
    return static_cast<std::size_t>(d);
  default:
    return static_cast<std::size_t>(d * d);
  }
}

/// Apply one push-forward formula to a value block at a single point.
inline void apply_formula(MapKind kind, const Eigen::MatrixXd& j, bool forward,
                          const double* in, double* out, std::size_t vs)
{
  const int d = static_cast<int>(j.rows());
  if (kind == MapKind::identity)
  {
    std::copy(in, in + vs, out);
    return;
  }
  if (j.rows() != j.cols())
    throw std::domain_error("This push-forward needs a square Jacobian");
  const double det = j.determinant();
  if (std::abs(det) < 1e-14)
    throw std::domain_error("Singular Jacobian in push-forward");
  Eigen::MatrixXd k = j.inverse();

  switch (kind)
  {
  case MapKind::l2_piola:
    out[0] = forward ? in[0] / det : in[0] * det;
    return;
  case MapKind::covariant:
  case MapKind::contravariant:
  {
    Eigen::VectorXd v(d);
    for (int i = 0; i < d; ++i)
      v[i] = in[i];
    Eigen::VectorXd r;
    if (kind == MapKind::covariant)
      r = forward ? Eigen::VectorXd(k.transpose() * v)
                  : Eigen::VectorXd(j.transpose() * v);
    else
      r = forward ? Eigen::VectorXd(j * v / det)
                  : Eigen::VectorXd(k * v * det);
    for (int i = 0; i < d; ++i)
      out[i] = r[i];
    return;
  }
  default:
  {
    Eigen::MatrixXd m(d, d);
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        m(r, c) = in[r * d + c];
    Eigen::MatrixXd res;
    switch (kind)
    {
    case MapKind::double_contravariant:
      res = forward ? Eigen::MatrixXd(j * m * j.transpose() / (det * det))
                    : Eigen::MatrixXd(k * m * k.transpose() * det * det);
      break;
    case MapKind::double_covariant:
      res = forward ? Eigen::MatrixXd(k.transpose() * m * k)
                    : Eigen::MatrixXd(j.transpose() * m * j);
      break;
    case MapKind::covariant_contravariant:
      res = forward ? Eigen::MatrixXd(k.transpose() * m * j.transpose() / det)
                    : Eigen::MatrixXd(j.transpose() * m * k.transpose() * det);
      break;
    default:
      throw std::invalid_argument("Unknown map kind");
    }
    for (int r = 0; r < d; ++r)
      for (int c = 0; c < d; ++c)
        out[r * d + c] = res(r, c);
    return;
  }
  }
}

inline Table transform(MapKind kind, const GeometricMap& g,
                       const std::vector<Point>& points, const Table& values,
                       bool forward)
{
  if (values.shape[0] != points.size())
    throw std::invalid_argument("Point count does not match the table");
  const std::size_t vs = values.shape[2];
  const std::size_t expect
      = expected_value_size(kind, g.source_cell.tdim);
  if (expect != 0 and vs != expect)
    throw std::domain_error("Value shape incompatible with the map kind");

  Table out(values.shape[0], values.shape[1], vs);
  std::vector<double> in(vs), res(vs);
  for (std::size_t p = 0; p < points.size(); ++p)
  {
    Eigen::MatrixXd j = g.jacobian(points[p]);
    for (std::size_t f = 0; f < values.shape[1]; ++f)
    {
      for (std::size_t c = 0; c < vs; ++c)
        in[c] = values(p, f, c);
      apply_formula(kind, j, forward, in.data(), res.data(), vs);
      for (std::size_t c = 0; c < vs; ++c)
        out(p, f, c) = res[c];
    }
  }
  return out;
}
} // namespace impl

/// Push a tabulation table (point x function x component) forward through
/// the geometric map, applying the formula of the given kind pointwise at
/// the pre-image points.
inline Table push_forward(MapKind kind, const GeometricMap& g,
                          const std::vector<Point>& points,
                          const Table& values)
{
  return impl::transform(kind, g, points, values, true);
}

/// Inverse of push_forward on tables.
inline Table pull_back(MapKind kind, const GeometricMap& g,
                       const std::vector<Point>& points, const Table& values)
{
  return impl::transform(kind, g, points, values, false);
}

/// Map an element defined on one affine reference-cell convention onto the
/// cell with the given target vertices: the polynomial space is pushed
/// forward with the element's map kind, functionals keep their entity
/// associations with point data carried through the vertex correspondence,
/// and the element is re-assembled on the target cell.
inline elements::CiarletElement
align_convention(const elements::CiarletElement& el,
                 const std::vector<Point>& target_vertices)
{
  bool same = el.cell.vertices.size() == target_vertices.size();
  if (same)
    for (std::size_t v = 0; v < target_vertices.size(); ++v)
      for (int d = 0; d < 3; ++d)
        if (el.cell.vertices[v][d] != target_vertices[v][d])
          same = false;
  if (same)
    return el;

  cells::ReferenceCell target
      = cells::with_vertices(el.cell.kind, target_vertices);
  // Affine correspondence from the element's cell onto the target; throws if
  // either vertex set is not an affine image of the canonical cell.
  cells::AffineMap to_el = cells::affine_correspondence(
      el.cell.kind, el.cell.vertices, el.cell.tdim);
  cells::AffineMap to_target = cells::affine_correspondence(
      el.cell.kind, target_vertices, el.cell.tdim);
  cells::AffineMap fwd = to_target.compose_after(to_el.inverse());
  cells::AffineMap bwd = fwd.inverse();
  const Eigen::MatrixXd j = fwd.linear;
  const double det = j.determinant();
  if (std::abs(det) < 1e-14)
    throw std::runtime_error("Degenerate convention alignment");

  // Constant value transformation of the push-forward.
  const int d = el.cell.tdim;
  Eigen::MatrixXd vmap;
  switch (el.map_kind)
  {
  case MapKind::identity:
    vmap = Eigen::MatrixXd::Identity(el.value_size(), el.value_size());
    break;
  case MapKind::l2_piola:
    vmap = Eigen::MatrixXd::Identity(1, 1) / det;
    break;
  case MapKind::covariant:
    vmap = j.inverse().transpose();
    break;
  case MapKind::contravariant:
    vmap = j / det;
    break;
  default:
    throw std::runtime_error(
        "Convention alignment of matrix-valued elements is not supported");
  }

  std::vector<polyset::PolyFunction> pushed;
  for (std::size_t i = 0; i < el.space.size(); ++i)
  {
    polyset::PolyFunction f = polyset::restrict(el.space.function(i), bwd);
    f.coefficients = vmap * f.coefficients;
    pushed.push_back(std::move(f));
  }
  polyset::PolySet space = polyset::make_set(el.cell.kind, pushed);

  std::vector<elements::Functional> ls;
  for (const elements::Functional& l : el.functionals)
  {
    elements::Functional moved = l;
    if (l.kind == elements::FunctionalKind::point_eval
        or l.kind == elements::FunctionalKind::dot_point_eval)
      moved.point = fwd.apply(l.point);
    if (l.kind == elements::FunctionalKind::dot_point_eval)
    {
      Eigen::VectorXd dir(d);
      for (int i = 0; i < d; ++i)
        dir[i] = l.direction[i];
      Eigen::VectorXd nd = vmap.inverse().transpose() * dir;
      for (int i = 0; i < d; ++i)
        moved.direction[i] = nd[i];
    }
    ls.push_back(std::move(moved));
  }

  elements::CiarletElement out = elements::build_element(
      target, std::move(space), std::move(ls), el.map_kind, std::nullopt,
      el.degree_hint);
  out.family = el.family;
  out.variant = el.variant;
  return out;
}

} // namespace fedef::maps
