// Copyright (c) 2026 fedef contributors
// SPDX-License-Identifier:    MIT

#pragma once

/// @file quadrature.hpp
/// Numerical integration on reference cells and their sub-entities: tensor
/// product Gauss rules on box-like cells and collapsed-coordinate rules with
/// Jacobian-absorbed weights on the simplex-like cells.

#include "cells.hpp"
#include "polyset.hpp"
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fedef::quadrature
{

struct QuadRule
{
  std::vector<Point> points;
  std::vector<double> weights;
  int exact_degree = 0;
};

namespace impl
{
/// Legendre P_n and its first two derivatives at x (on [-1, 1]).
inline std::array<double, 3> legendre(int n, double x)
{
  double p0 = 1.0, d0 = 0.0, s0 = 0.0;
  if (n == 0)
    return {p0, d0, s0};
  double p1 = x, d1 = 1.0, s1 = 0.0;
  for (int k = 1; k < n; ++k)
  {
    const double a = (2.0 * k + 1.0) / (k + 1.0);
    const double b = static_cast<double>(k) / (k + 1.0);
    const double p2 = a * x * p1 - b * p0;
    const double d2 = a * (p1 + x * d1) - b * d0;
    const double s2 = a * (2.0 * d1 + x * s1) - b * s0;
    p0 = p1;
    d0 = d1;
    s0 = s1;
    p1 = p2;
    d1 = d2;
    s1 = s2;
  }
  return {p1, d1, s1};
}

/// Symmetrise a sorted point/weight list on [0, 1] about 1/2.
inline void symmetrise(std::vector<double>& x, std::vector<double>& w)
{
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n / 2; ++i)
  {
    const double xs = 0.5 * (x[i] + 1.0 - x[n - 1 - i]);
    x[i] = xs;
    x[n - 1 - i] = 1.0 - xs;
    const double ws = 0.5 * (w[i] + w[n - 1 - i]);
    w[i] = ws;
    w[n - 1 - i] = ws;
  }
  if (n % 2 == 1)
    x[n / 2] = 0.5;
}
} // namespace impl

/// n-point Gauss-Legendre rule on [0, 1]; exact for degree 2n - 1.
inline QuadRule gauss_legendre(int n)
{
  if (n < 1)
    throw std::invalid_argument("Gauss-Legendre needs n >= 1");
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i)
  {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it)
    {
      const auto [p, dp, _] = impl::legendre(n, t);
      const double step = p / dp;
      t -= step;
      if (std::abs(step) < 1e-15)
        break;
    }
    const auto [p, dp, _] = impl::legendre(n, t);
    (void)p;
    x[n - 1 - i] = 0.5 * (1.0 + t);
    w[n - 1 - i] = 1.0 / ((1.0 - t * t) * dp * dp);
  }
  impl::symmetrise(x, w);
  QuadRule rule;
  rule.exact_degree = 2 * n - 1;
  for (int i = 0; i < n; ++i)
  {
    rule.points.push_back({x[i], 0, 0});
    rule.weights.push_back(w[i]);
  }
  return rule;
}

namespace impl
{
inline QuadRule tensor(const QuadRule& a, const QuadRule& b, int b_axis)
{
  QuadRule out;
  out.exact_degree = std::min(a.exact_degree, b.exact_degree);
  for (std::size_t j = 0; j < b.points.size(); ++j)
    for (std::size_t i = 0; i < a.points.size(); ++i)
    {
      Point p = a.points[i];
      p[b_axis] = b.points[j][0];
      out.points.push_back(p);
      out.weights.push_back(a.weights[i] * b.weights[j]);
    }
  return out;
}
} // namespace impl

/// Rule on the canonical cell exact for at least the requested degree.
inline QuadRule cell_rule(cells::CellKind kind, int degree)
{
  using cells::CellKind;
  if (degree < 0)
    throw std::invalid_argument("Degree must be non-negative");
  auto n_for = [](int d) { return d / 2 + 1; };
  switch (kind)
  {
  case CellKind::point:
  {
    QuadRule r;
    r.points.push_back({0, 0, 0});
    r.weights.push_back(1.0);
    r.exact_degree = degree;
    return r;
  }
  case CellKind::interval:
  {
    QuadRule r = gauss_legendre(n_for(degree));
    return r;
  }
  case CellKind::quadrilateral:
  {
    QuadRule g = gauss_legendre(n_for(degree));
    return impl::tensor(g, g, 1);
  }
  case CellKind::hexahedron:
  {
    QuadRule g = gauss_legendre(n_for(degree));
    return impl::tensor(impl::tensor(g, g, 1), g, 2);
  }
  case CellKind::prism:
  {
    QuadRule tri = cell_rule(CellKind::triangle, degree);
    QuadRule g = gauss_legendre(n_for(degree));
    QuadRule out = impl::tensor(tri, g, 2);
    out.exact_degree = degree;
    return out;
  }
  case CellKind::triangle:
  {
    // Duffy collapse of the unit square: (u, v) -> (u (1-v), v), absorbing
    // the Jacobian (1 - v) into the weights.
    QuadRule gu = gauss_legendre(n_for(degree));
    QuadRule gv = gauss_legendre(n_for(degree + 1));
    QuadRule out;
    out.exact_degree = degree;
    for (std::size_t j = 0; j < gv.points.size(); ++j)
      for (std::size_t i = 0; i < gu.points.size(); ++i)
      {
        const double u = gu.points[i][0];
        const double v = gv.points[j][0];
        out.points.push_back({u * (1.0 - v), v, 0});
        out.weights.push_back(gu.weights[i] * gv.weights[j] * (1.0 - v));
      }
    return out;
  }
  case CellKind::tetrahedron:
  {
    // (u, v, w) -> (u (1-v)(1-w), v (1-w), w), Jacobian (1-v)(1-w)^2.
    QuadRule gu = gauss_legendre(n_for(degree));
    QuadRule gv = gauss_legendre(n_for(degree + 1));
    QuadRule gw = gauss_legendre(n_for(degree + 2));
    QuadRule out;
    out.exact_degree = degree;
    for (std::size_t k = 0; k < gw.points.size(); ++k)
      for (std::size_t j = 0; j < gv.points.size(); ++j)
        for (std::size_t i = 0; i < gu.points.size(); ++i)
        {
          const double u = gu.points[i][0];
          const double v = gv.points[j][0];
          const double w = gw.points[k][0];
          out.points.push_back(
              {u * (1.0 - v) * (1.0 - w), v * (1.0 - w), w});
          out.weights.push_back(gu.weights[i] * gv.weights[j] * gw.weights[k]
                                * (1.0 - v) * (1.0 - w) * (1.0 - w));
        }
    return out;
  }
  case CellKind::pyramid:
  {
    // (u, v, w) -> (u (1-w), v (1-w), w), Jacobian (1-w)^2. Polynomial
    // integrands only; rationomial moments are out of scope.
    QuadRule gu = gauss_legendre(n_for(degree));
    QuadRule gw = gauss_legendre(n_for(degree + 2));
    QuadRule out;
    out.exact_degree = degree;
    for (std::size_t k = 0; k < gw.points.size(); ++k)
      for (std::size_t j = 0; j < gu.points.size(); ++j)
        for (std::size_t i = 0; i < gu.points.size(); ++i)
        {
          const double u = gu.points[i][0];
          const double v = gu.points[j][0];
          const double w = gw.points[k][0];
          out.points.push_back({u * (1.0 - w), v * (1.0 - w), w});
          out.weights.push_back(gu.weights[i] * gu.weights[j] * gw.weights[k]
                                * (1.0 - w) * (1.0 - w));
        }
    return out;
  }
  }
  throw std::invalid_argument("Unknown cell kind");
}

/// Rule on a (possibly custom-vertex) cell: the canonical rule mapped through
/// the affine correspondence with Jacobian-scaled weights.
inline QuadRule cell_rule(const cells::ReferenceCell& cell, int degree)
{
  QuadRule rule = cell_rule(cell.kind, degree);
  if (!cell.is_canonical())
  {
    cells::AffineMap m
        = cells::affine_correspondence(cell.kind, cell.vertices, cell.tdim);
    const double scale = std::abs(m.linear.determinant());
    for (auto& p : rule.points)
      p = m.apply(p);
    for (auto& w : rule.weights)
      w *= scale;
  }
  return rule;
}

/// L2 inner product of two functions over a sub-entity E of a cell:
/// integral over E of f . g, including the entity map's (constant) metric
/// factor. For vertices this degenerates to the Euclidean dot product of the
/// values.
inline double inner_product(const polyset::PolyFunction& f,
                            const polyset::PolyFunction& g,
                            cells::EntityRef e,
                            const cells::ReferenceCell& cell)
{
  if (f.value_shape != g.value_shape)
    throw std::domain_error("Inner product requires equal value shapes");
  if (e.dim == 0)
  {
    const auto& vts = cell.entity_vertices(e);
    const Point p = cell.vertices[vts[0]];
    const auto fv = f.evaluate(p);
    const auto gv = g.evaluate(p);
    double dot = 0.0;
    for (std::size_t c = 0; c < fv.size(); ++c)
      dot += fv[c] * gv[c];
    return dot;
  }

  cells::AffineMap m = cells::entity_map(cell, e);
  cells::CellKind ekind = cells::entity_kind(cell, e);
  const int deg = std::max(f.degree(), 0) + std::max(g.degree(), 0) + 2;
  QuadRule rule = cell_rule(ekind, deg);
  const double metric = m.metric_factor();

  double total = 0.0;
  for (std::size_t q = 0; q < rule.points.size(); ++q)
  {
    const auto fv = f.evaluate(rule.points[q]);
    const auto gv = g.evaluate(rule.points[q]);
    double dot = 0.0;
    for (std::size_t c = 0; c < fv.size(); ++c)
      dot += fv[c] * gv[c];
    total += rule.weights[q] * dot;
  }
  return total * metric;
}

/// L2 inner product over a full cell (the cell entity).
inline double inner_product(const polyset::PolyFunction& f,
                            const polyset::PolyFunction& g,
                            const cells::ReferenceCell& cell)
{
  return inner_product(f, g, cells::EntityRef{cell.tdim, 0}, cell);
}

} // namespace fedef::quadrature
