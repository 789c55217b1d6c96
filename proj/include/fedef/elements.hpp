// Copyright (c) 2026 fedef contributors
// SPDX-License-Identifier:    MIT

#pragma once

/// @file elements.hpp
/// Ciarlet elements: degree-of-freedom functionals, the dual matrix, element
/// assembly via expansion coefficients over an orthonormal generating basis,
/// tabulation, and the built-in element families (Lagrange and its point
/// variants, discontinuous Lagrange, Crouzeix-Raviart, Raviart-Thomas and
/// first-kind Nedelec).

#include "cells.hpp"
#include "orthonormal.hpp"
#include "polyset.hpp"
#include "quadrature.hpp"
#include <Eigen/Dense>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fedef
{

/// Push-forward map used when placing an element on a physical cell.
enum class MapKind
{
  identity,
  l2_piola,
  covariant,
  contravariant,
  double_covariant,
  double_contravariant,
  covariant_contravariant
};

inline std::string to_string(MapKind kind)
{
  switch (kind)
  {
  case MapKind::identity:
    return "identity";
  case MapKind::l2_piola:
    return "l2_piola";
  case MapKind::covariant:
    return "covariant";
  case MapKind::contravariant:
    return "contravariant";
  case MapKind::double_covariant:
    return "double_covariant";
  case MapKind::double_contravariant:
    return "double_contravariant";
  case MapKind::covariant_contravariant:
    return "covariant_contravariant";
  }
  throw std::invalid_argument("Unknown map kind");
}

namespace elements
{

enum class FunctionalKind
{
  point_eval,
  dot_point_eval,
  integral_moment
};

enum class ComponentSelector
{
  full,
  normal,
  tangent
};

/// One degree of freedom, tagged with the sub-entity it is associated with.
struct Functional
{
  FunctionalKind kind;
  cells::EntityRef entity;
  Point point{0, 0, 0};               // point_eval, dot_point_eval
  Point direction{0, 0, 0};           // dot_point_eval
  polyset::PolyFunction weight{};     // integral_moment, on the entity's
                                      // reference cell
  ComponentSelector selector = ComponentSelector::full;
};

inline Functional point_evaluation(cells::EntityRef entity, Point p)
{
  Functional l;
  l.kind = FunctionalKind::point_eval;
  l.entity = entity;
  l.point = p;
  return l;
}

inline Functional dot_point_evaluation(cells::EntityRef entity, Point p,
                                       Point direction)
{
  Functional l;
  l.kind = FunctionalKind::dot_point_eval;
  l.entity = entity;
  l.point = p;
  l.direction = direction;
  return l;
}

inline Functional integral_moment(cells::EntityRef entity,
                                  polyset::PolyFunction weight,
                                  ComponentSelector selector)
{
  Functional l;
  l.kind = FunctionalKind::integral_moment;
  l.entity = entity;
  l.weight = std::move(weight);
  l.selector = selector;
  return l;
}

/// Apply a functional to a function defined on the cell.
inline double apply_functional(const Functional& l,
                               const polyset::PolyFunction& f,
                               const cells::ReferenceCell& cell)
{
  switch (l.kind)
  {
  case FunctionalKind::point_eval:
  {
    if (f.value_size() != 1)
      throw std::domain_error("Point evaluation requires a scalar function");
    return f.evaluate(l.point)[0];
  }
  case FunctionalKind::dot_point_eval:
  {
    if (f.value_size() != static_cast<std::size_t>(cell.tdim))
      throw std::domain_error(
          "Directional point evaluation requires a vector function");
    const auto v = f.evaluate(l.point);
    double dot = 0.0;
    for (int d = 0; d < cell.tdim; ++d)
      dot += l.direction[d] * v[d];
    return dot;
  }
  case FunctionalKind::integral_moment:
  {
    if (l.entity.dim == 0)
      throw std::domain_error("Integral moments need an entity of dim >= 1");
    cells::AffineMap m = cells::entity_map(cell, l.entity);
    polyset::PolyFunction fr = polyset::restrict(f, m);
    const cells::CellKind ekind = cells::entity_kind(cell, l.entity);
    const int deg
        = std::max(fr.degree(), 0) + std::max(l.weight.degree(), 0) + 2;
    quadrature::QuadRule rule = quadrature::cell_rule(ekind, deg);
    const double metric = m.metric_factor();

    std::vector<Point> frame;
    switch (l.selector)
    {
    case ComponentSelector::full:
      if (fr.value_size() != l.weight.value_size())
        throw std::domain_error("Moment weight shape mismatch");
      break;
    case ComponentSelector::normal:
      if (l.entity.dim != cell.tdim - 1)
        throw std::domain_error("Normal moments are defined on facets");
      if (l.weight.value_size() != 1)
        throw std::domain_error("Normal moments take a scalar weight");
      frame.push_back(cells::facet_normal(cell, l.entity));
      break;
    case ComponentSelector::tangent:
      frame = cells::entity_tangents(cell, l.entity);
      if (l.weight.value_size() != frame.size())
        throw std::domain_error("Tangential moment weight shape mismatch");
      break;
    }

    double total = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q)
    {
      const auto fv = fr.evaluate(rule.points[q]);
      const auto wv = l.weight.evaluate(rule.points[q]);
      double integrand = 0.0;
      if (l.selector == ComponentSelector::full)
      {
        for (std::size_t c = 0; c < fv.size(); ++c)
          integrand += fv[c] * wv[c];
      }
      else
      {
        if (fv.size() != static_cast<std::size_t>(cell.tdim))
          throw std::domain_error(
              "Normal/tangential moments require a vector function");
        for (std::size_t a = 0; a < frame.size(); ++a)
        {
          double comp = 0.0;
          for (int d = 0; d < cell.tdim; ++d)
            comp += fv[d] * frame[a][d];
          integrand += comp * wv[a];
        }
      }
      total += rule.weights[q] * integrand;
    }
    return total * metric;
  }
  }
  throw std::invalid_argument("Unknown functional kind");
}

/// The dual (generalised Vandermonde) matrix D with D(i, j) = l_j(p_i).
struct DualMatrix
{
  Eigen::MatrixXd entries;
  double condition_estimate = 0.0;
};

inline DualMatrix dual_matrix(const polyset::PolySet& space,
                              const std::vector<Functional>& ls,
                              const cells::ReferenceCell& cell)
{
  const std::size_t n = space.size();
  if (ls.size() != n)
    throw std::invalid_argument(
        "Functional count must equal the space dimension");
  Eigen::MatrixXd d(n, n);
  for (std::size_t i = 0; i < n; ++i)
  {
    polyset::PolyFunction p = space.function(i);
    for (std::size_t j = 0; j < n; ++j)
      d(i, j) = apply_functional(ls[j], p, cell);
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(d, Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const double smax = sigma.size() > 0 ? sigma[0] : 0.0;
  const double smin = sigma.size() > 0 ? sigma[sigma.size() - 1] : 0.0;
  if (n > 0 and smin <= 1e-10 * smax)
  {
    Eigen::VectorXd null = svd.matrixV().col(n - 1);
    std::ostringstream msg;
    msg << "Degenerate element: the functionals are linearly dependent on "
           "the space; near-null combination of functionals: [";
    for (std::size_t j = 0; j < n; ++j)
      msg << (j ? ", " : "") << null[j];
    msg << "]";
    throw std::runtime_error(msg.str());
  }
  return {std::move(d), smin > 0 ? smax / smin : 0.0};
}

/// A Ciarlet finite element: cell, polynomial space, dual-basis functionals
/// and the stored matrix of expansion coefficients over a degree-k generating
/// basis.
struct CiarletElement
{
  cells::ReferenceCell cell;
  polyset::PolySet space;
  std::vector<Functional> functionals;
  polyset::PolySet generating; // scalar basis q_j of the natural space
  Eigen::MatrixXd coeffs;      // n x (value_size * m); component-major blocks
  std::vector<std::size_t> value_shape;
  int degree_hint = -1;
  int superdegree = -1; // degree of the generating basis
  MapKind map_kind = MapKind::identity;
  double dual_condition = 0.0;
  std::string family;
  std::string variant;

  std::size_t dof_count() const { return functionals.size(); }

  std::size_t value_size() const
  {
    std::size_t s = 1;
    for (std::size_t e : value_shape)
      s *= e;
    return s;
  }

  /// DOF indices grouped per entity: [dim][entity index] -> dof list.
  std::vector<std::vector<std::vector<int>>> entity_dofs() const
  {
    std::vector<std::vector<std::vector<int>>> out(cell.tdim + 1);
    for (int dim = 0; dim <= cell.tdim; ++dim)
      out[dim].resize(cell.entity_count(dim));
    for (std::size_t i = 0; i < functionals.size(); ++i)
      out[functionals[i].entity.dim][functionals[i].entity.index].push_back(
          static_cast<int>(i));
    return out;
  }

  /// Basis functions as explicit functions over the generating term list.
  polyset::PolySet basis() const
  {
    const std::size_t n = dof_count();
    const std::size_t m = generating.size();
    const std::size_t nt = generating.terms.size();
    const std::size_t vs = value_size();
    polyset::PolySet out;
    out.cell = cell.kind;
    out.value_shape = value_shape;
    out.tdim = cell.tdim;
    out.terms = generating.terms;
    out.coefficients = Eigen::MatrixXd::Zero(n, vs * nt);
    for (std::size_t c = 0; c < vs; ++c)
      out.coefficients.middleCols(c * nt, nt)
          = coeffs.middleCols(c * m, m) * generating.coefficients;
    return out;
  }

  /// Evaluate all basis functions: table (point, dof, component).
  Table tabulate(const std::vector<Point>& points) const
  {
    const std::size_t n = dof_count();
    const std::size_t m = generating.size();
    const std::size_t vs = value_size();
    Table g = polyset::evaluate(generating, points);
    Table out(points.size(), n, vs);
    for (std::size_t p = 0; p < points.size(); ++p)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t c = 0; c < vs; ++c)
        {
          double v = 0.0;
          for (std::size_t j = 0; j < m; ++j)
            v += coeffs(i, c * m + j) * g(j, p, 0);
          out(p, i, c) = v;
        }
    return out;
  }
};

/// Build a Ciarlet element from its triple. The expansion coefficients are
/// D^-1 C, where C expresses the space over the generating basis. By default
/// the generating basis is the orthonormal basis of the natural space whose
/// degree is the space's Lagrange superdegree.
inline CiarletElement
build_element(const cells::ReferenceCell& cell, polyset::PolySet space,
              std::vector<Functional> ls, MapKind map_kind,
              std::optional<polyset::PolySet> generating = std::nullopt,
              int degree_hint = -1)
{
  const std::size_t n = space.size();
  const std::size_t vs = space.value_size();
  int superdegree = -1;
  if (!generating)
  {
    superdegree = 0;
    for (std::size_t t = 0; t < space.terms.size(); ++t)
      superdegree
          = std::max(superdegree,
                     polyset::natural_degree(space.terms[t], space.cell));
    generating = polyset::orthonormal_basis(cell, superdegree);
  }
  else
  {
    superdegree = generating->degree();
  }
  const polyset::PolySet& q = *generating;
  const std::size_t m = q.size();
  if (q.terms.size() != m)
    throw std::invalid_argument("Generating basis must be square in terms");

  // Align the space's term list with the generating term list.
  const std::size_t nt_space = space.terms.size();
  std::vector<std::size_t> col(nt_space);
  for (std::size_t t = 0; t < nt_space; ++t)
  {
    auto it = std::find(q.terms.begin(), q.terms.end(), space.terms[t]);
    if (it == q.terms.end())
      throw std::invalid_argument(
          "Space is not contained in the generating basis's span");
    col[t] = static_cast<std::size_t>(it - q.terms.begin());
  }

  // C solves P = C Q per component block.
  Eigen::PartialPivLU<Eigen::MatrixXd> qlu(q.coefficients.transpose());
  Eigen::MatrixXd c(n, vs * m);
  for (std::size_t comp = 0; comp < vs; ++comp)
  {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t t = 0; t < nt_space; ++t)
        p(i, col[t]) = space.coefficients(i, comp * nt_space + t);
    c.middleCols(comp * m, m) = qlu.solve(p.transpose()).transpose();
  }

  DualMatrix d = dual_matrix(space, ls, cell);

  CiarletElement el;
  el.cell = cell;
  el.space = std::move(space);
  el.functionals = std::move(ls);
  el.generating = q;
  el.coeffs = d.entries.partialPivLu().solve(c);
  el.value_shape = el.space.value_shape;
  el.degree_hint = degree_hint;
  el.superdegree = superdegree;
  el.map_kind = map_kind;
  el.dual_condition = d.condition_estimate;
  return el;
}

/// Gauss-Lobatto-Legendre points on [0, 1]: the endpoints together with the
/// roots of the derivative of the degree n-1 Legendre polynomial.
inline std::vector<double> gll_points(int n)
{
  if (n < 2)
    throw std::invalid_argument("GLL needs n >= 2 points");
  std::vector<double> x(n), w(n, 0.0);
  x[0] = 0.0;
  x[n - 1] = 1.0;
  for (int i = 1; i < n - 1; ++i)
  {
    // Newton on P'_{n-1} from a cosine-spaced initial guess.
    double t = std::cos(M_PI * i / (n - 1));
    for (int it = 0; it < 100; ++it)
    {
      const auto [p, dp, ddp] = quadrature::impl::legendre(n - 1, t);
      (void)p;
      const double step = dp / ddp;
      t -= step;
      if (std::abs(step) < 1e-15)
        break;
    }
    x[n - 1 - i] = 0.5 * (1.0 + t);
  }
  std::sort(x.begin(), x.end());
  quadrature::impl::symmetrise(x, w);
  return x;
}

enum class Family
{
  lagrange,
  discontinuous_lagrange,
  crouzeix_raviart,
  raviart_thomas,
  nedelec1
};

enum class Variant
{
  unset,
  equispaced,
  gll
};

inline std::string to_string(Family f)
{
  switch (f)
  {
  case Family::lagrange:
    return "lagrange";
  case Family::discontinuous_lagrange:
    return "discontinuous_lagrange";
  case Family::crouzeix_raviart:
    return "crouzeix_raviart";
  case Family::raviart_thomas:
    return "raviart_thomas";
  case Family::nedelec1:
    return "nedelec1";
  }
  throw std::invalid_argument("Unknown family");
}

inline std::string to_string(Variant v)
{
  switch (v)
  {
  case Variant::unset:
    return "default";
  case Variant::equispaced:
    return "equispaced";
  case Variant::gll:
    return "gll";
  }
  throw std::invalid_argument("Unknown variant");
}

inline Family family_from_string(const std::string& name)
{
  for (Family f : {Family::lagrange, Family::discontinuous_lagrange,
                   Family::crouzeix_raviart, Family::raviart_thomas,
                   Family::nedelec1})
    if (to_string(f) == name)
      return f;
  if (name == "nedelec_first_kind" or name == "nedelec")
    return Family::nedelec1;
  throw std::invalid_argument("Unknown element family: " + name);
}

inline Variant variant_from_string(const std::string& name)
{
  if (name == "equispaced")
    return Variant::equispaced;
  if (name == "gll")
    return Variant::gll;
  if (name.empty() or name == "default")
    return Variant::unset;
  throw std::invalid_argument("Unknown variant: " + name);
}

namespace impl
{
/// Interior lattice of an entity's reference cell for Lagrange point
/// placement. The GLL variant follows the one-dimensional GLL family
/// wherever the entity carries a tensor structure (intervals,
/// quadrilaterals, hexahedra); other entities keep the equispaced lattice.
inline std::vector<Point> interior_points(cells::CellKind kind, int k,
                                          Variant variant)
{
  using cells::CellKind;
  if (k < 2 and kind != CellKind::point)
    return {};
  if (variant == Variant::gll)
  {
    const std::vector<double> pts = gll_points(k + 1);
    std::vector<double> inner(pts.begin() + 1, pts.end() - 1);
    if (kind == CellKind::interval)
    {
      std::vector<Point> out;
      for (double t : inner)
        out.push_back({t, 0, 0});
      return out;
    }
    if (kind == CellKind::quadrilateral)
    {
      std::vector<Point> out;
      for (double v : inner)
        for (double u : inner)
          out.push_back({u, v, 0});
      return out;
    }
    if (kind == CellKind::hexahedron)
    {
      std::vector<Point> out;
      for (double w : inner)
        for (double v : inner)
          for (double u : inner)
            out.push_back({u, v, w});
      return out;
    }
  }
  return cells::lattice_points(cells::reference_cell(kind), k + 1, false);
}

/// Lagrange-style point evaluation DOFs, grouped by (entity dim, entity
/// index, local index).
inline std::vector<Functional>
lagrange_functionals(const cells::ReferenceCell& cell, int k, Variant variant)
{
  std::vector<Functional> ls;
  for (int i = 0; i < cell.entity_count(0); ++i)
    ls.push_back(point_evaluation({0, i}, cell.vertices[i]));
  for (int dim = 1; dim <= cell.tdim; ++dim)
    for (int i = 0; i < cell.entity_count(dim); ++i)
    {
      const cells::EntityRef e{dim, i};
      cells::AffineMap m = cells::entity_map(cell, e);
      for (const Point& t : interior_points(cells::entity_kind(cell, e), k,
                                            variant))
        ls.push_back(point_evaluation(e, m.apply(t)));
    }
  return ls;
}

inline std::vector<Point> cell_midpoint(const cells::ReferenceCell& cell)
{
  Point mid{0, 0, 0};
  for (const auto& v : cell.vertices)
    for (int d = 0; d < 3; ++d)
      mid[d] += v[d] / static_cast<double>(cell.vertices.size());
  return {mid};
}

/// Monomials of exact total degree k in `dim` variables.
inline std::vector<polyset::Term> homogeneous_terms(int dim, int k)
{
  std::vector<polyset::Term> out;
  for (const polyset::Term& t :
       polyset::impl::natural_terms(dim == 2 ? cells::CellKind::triangle
                                             : cells::CellKind::tetrahedron,
                                    k))
    if (t.total_degree() == k)
      out.push_back(t);
  return out;
}

} // namespace impl

/// Polynomial space of the subdegree-k Raviart-Thomas element on a simplex:
/// (P_k)^d plus x times the homogeneous polynomials of degree k.
inline polyset::PolySet rt_space(cells::CellKind kind, int k)
{
  using polyset::Term;
  using polyset::TermPoly;
  const int d = cells::topological_dimension(kind);
  if ((kind != cells::CellKind::triangle
       and kind != cells::CellKind::tetrahedron)
      or k < 0)
    throw std::runtime_error("Raviart-Thomas is supported on triangle and "
                             "tetrahedron cells with subdegree k >= 0");
  std::vector<std::vector<TermPoly>> fns;
  polyset::PolySet pk = polyset::complete_space(d, k);
  for (int c = 0; c < d; ++c)
    for (std::size_t i = 0; i < pk.size(); ++i)
    {
      std::vector<TermPoly> comps(d);
      comps[c][pk.terms[i]] = 1.0;
      fns.push_back(comps);
    }
  for (const Term& q : impl::homogeneous_terms(d, k))
  {
    std::vector<TermPoly> comps(d);
    for (int c = 0; c < d; ++c)
    {
      Term t = q;
      t.exponents[c] += 1;
      comps[c][t] = 1.0;
    }
    fns.push_back(comps);
  }
  return polyset::make_set(kind, {static_cast<std::size_t>(d)}, d, fns);
}

/// Polynomial space of the subdegree-k first-kind Nedelec element on a
/// simplex: (P_k)^d plus the degree k+1 homogeneous fields q with q . x = 0.
inline polyset::PolySet n1_space(cells::CellKind kind, int k)
{
  using polyset::Term;
  using polyset::TermPoly;
  const int d = cells::topological_dimension(kind);
  if ((kind != cells::CellKind::triangle
       and kind != cells::CellKind::tetrahedron)
      or k < 0)
    throw std::runtime_error("Nedelec (first kind) is supported on triangle "
                             "and tetrahedron cells with subdegree k >= 0");
  std::vector<std::vector<TermPoly>> fns;
  polyset::PolySet pk = polyset::complete_space(d, k);
  for (int c = 0; c < d; ++c)
    for (std::size_t i = 0; i < pk.size(); ++i)
    {
      std::vector<TermPoly> comps(d);
      comps[c][pk.terms[i]] = 1.0;
      fns.push_back(comps);
    }

  // Homogeneous tail: q (x_i e_j - x_j e_i) over homogeneous q of degree k
  // and axis pairs i < j. These span the tail but overcount in 3D, so an
  // independent subset is selected.
  std::vector<std::vector<TermPoly>> tail;
  for (const Term& q : impl::homogeneous_terms(d, k))
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
      {
        std::vector<TermPoly> comps(d);
        Term tj = q;
        tj.exponents[i] += 1;
        comps[j][tj] = 1.0;
        Term ti = q;
        ti.exponents[j] += 1;
        comps[i][ti] = -1.0;
        tail.push_back(comps);
      }
  polyset::PolySet tail_set = polyset::make_set(
      kind, {static_cast<std::size_t>(d)}, d, tail);
  for (std::size_t i : polyset::independent_rows(tail_set.coefficients))
  {
    const polyset::PolyFunction f = tail_set.function(i);
    std::vector<TermPoly> comps(d);
    for (int c = 0; c < d; ++c)
      for (std::size_t t = 0; t < f.terms.size(); ++t)
        if (f.coefficients(c, t) != 0.0)
          comps[c][f.terms[t]] = f.coefficients(c, t);
    fns.push_back(comps);
  }
  return polyset::make_set(kind, {static_cast<std::size_t>(d)}, d, fns);
}

namespace impl
{
/// Per-component vector moments against an orthonormal scalar basis.
inline void append_full_moments(std::vector<Functional>& ls,
                                cells::EntityRef entity,
                                cells::CellKind entity_kind, int weight_degree,
                                int vector_size)
{
  polyset::PolySet basis
      = polyset::orthonormal_basis(entity_kind, weight_degree);
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (int c = 0; c < vector_size; ++c)
    {
      polyset::PolyFunction w = basis.function(j);
      polyset::PolyFunction vec;
      vec.value_shape = {static_cast<std::size_t>(vector_size)};
      vec.tdim = w.tdim;
      vec.terms = w.terms;
      vec.coefficients
          = Eigen::MatrixXd::Zero(vector_size, w.terms.size());
      vec.coefficients.row(c) = w.coefficients.row(0);
      ls.push_back(integral_moment(entity, vec, ComponentSelector::full));
    }
}

inline CiarletElement make_lagrange(cells::CellKind kind, int k,
                                    Variant variant, bool discontinuous)
{
  cells::ReferenceCell cell = cells::reference_cell(kind);
  polyset::PolySet space = polyset::natural_space(kind, k);
  std::vector<Functional> ls;
  if (discontinuous)
  {
    const cells::EntityRef interior{cell.tdim, 0};
    std::vector<Point> pts
        = k == 0 ? cell_midpoint(cell) : cells::lattice_points(cell, k + 1);
    for (const Point& p : pts)
      ls.push_back(point_evaluation(interior, p));
  }
  else
  {
    ls = lagrange_functionals(cell, k, variant);
  }
  CiarletElement el = build_element(cell, std::move(space), std::move(ls),
                                    MapKind::identity, std::nullopt, k);
  el.family = discontinuous ? "discontinuous_lagrange" : "lagrange";
  el.variant = discontinuous ? "" : to_string(variant);
  return el;
}

inline CiarletElement make_crouzeix_raviart(cells::CellKind kind)
{
  cells::ReferenceCell cell = cells::reference_cell(kind);
  polyset::PolySet space = polyset::complete_space(cell.tdim, 1);
  std::vector<Functional> ls;
  for (int i = 0; i < cell.entity_count(cell.tdim - 1); ++i)
  {
    const cells::EntityRef facet{cell.tdim - 1, i};
    Point mid{0, 0, 0};
    const auto& vts = cell.entity_vertices(facet);
    for (int v : vts)
      for (int d = 0; d < 3; ++d)
        mid[d] += cell.vertices[v][d] / static_cast<double>(vts.size());
    ls.push_back(point_evaluation(facet, mid));
  }
  CiarletElement el = build_element(cell, std::move(space), std::move(ls),
                                    MapKind::identity, std::nullopt, 1);
  el.family = "crouzeix_raviart";
  return el;
}

inline CiarletElement make_raviart_thomas(cells::CellKind kind, int k)
{
  cells::ReferenceCell cell = cells::reference_cell(kind);
  polyset::PolySet space = rt_space(kind, k);
  std::vector<Functional> ls;
  for (int i = 0; i < cell.entity_count(cell.tdim - 1); ++i)
  {
    const cells::EntityRef facet{cell.tdim - 1, i};
    polyset::PolySet weights
        = polyset::orthonormal_basis(cells::entity_kind(cell, facet), k);
    for (std::size_t j = 0; j < weights.size(); ++j)
      ls.push_back(integral_moment(facet, weights.function(j),
                                   ComponentSelector::normal));
  }
  if (k >= 1)
    append_full_moments(ls, {cell.tdim, 0}, kind, k - 1, cell.tdim);
  CiarletElement el = build_element(cell, std::move(space), std::move(ls),
                                    MapKind::contravariant, std::nullopt, k);
  el.family = "raviart_thomas";
  return el;
}

inline CiarletElement make_nedelec1(cells::CellKind kind, int k)
{
  cells::ReferenceCell cell = cells::reference_cell(kind);
  polyset::PolySet space = n1_space(kind, k);
  std::vector<Functional> ls;
  for (int i = 0; i < cell.entity_count(1); ++i)
  {
    const cells::EntityRef edge{1, i};
    polyset::PolySet weights
        = polyset::orthonormal_basis(cells::CellKind::interval, k);
    for (std::size_t j = 0; j < weights.size(); ++j)
      ls.push_back(integral_moment(edge, weights.function(j),
                                   ComponentSelector::tangent));
  }
  if (cell.tdim == 3 and k >= 1)
  {
    for (int i = 0; i < cell.entity_count(2); ++i)
    {
      const cells::EntityRef face{2, i};
      polyset::PolySet weights
          = polyset::orthonormal_basis(cells::CellKind::triangle, k - 1);
      for (std::size_t j = 0; j < weights.size(); ++j)
        for (int a = 0; a < 2; ++a)
        {
          polyset::PolyFunction w = weights.function(j);
          polyset::PolyFunction vec;
          vec.value_shape = {2};
          vec.tdim = w.tdim;
          vec.terms = w.terms;
          vec.coefficients = Eigen::MatrixXd::Zero(2, w.terms.size());
          vec.coefficients.row(a) = w.coefficients.row(0);
          ls.push_back(
              integral_moment(face, vec, ComponentSelector::tangent));
        }
    }
  }
  const int interior_degree = cell.tdim == 2 ? k - 1 : k - 2;
  if (interior_degree >= 0)
    append_full_moments(ls, {cell.tdim, 0}, kind, interior_degree, cell.tdim);
  CiarletElement el = build_element(cell, std::move(space), std::move(ls),
                                    MapKind::covariant, std::nullopt, k);
  el.family = "nedelec1";
  return el;
}
} // namespace impl

/// Construct a built-in element. Supported combinations:
///  - lagrange: interval, triangle, quadrilateral, tetrahedron, hexahedron,
///    prism; degree >= 1; variants equispaced (default) and gll
///  - discontinuous_lagrange: same cells; degree >= 0
///  - crouzeix_raviart: triangle, tetrahedron; degree 1
///  - raviart_thomas, nedelec1: triangle, tetrahedron; subdegree >= 0
inline CiarletElement make_family(Family family, cells::CellKind kind, int k,
                                  Variant variant = Variant::unset)
{
  using cells::CellKind;
  static const char* supported
      = "supported: lagrange:{interval,triangle,quadrilateral,tetrahedron,"
        "hexahedron,prism}:k>=1:{equispaced,gll}; "
        "discontinuous_lagrange same cells with k>=0; "
        "crouzeix_raviart:{triangle,tetrahedron}:1; "
        "raviart_thomas/nedelec1:{triangle,tetrahedron}:k>=0";

  auto fail = [&]()
  {
    throw std::runtime_error(
        "Unsupported element " + to_string(family) + ":"
        + cells::to_string(kind) + ":" + std::to_string(k) + ":"
        + to_string(variant) + "; " + supported);
  };

  const bool lagrange_cell
      = kind == CellKind::interval or kind == CellKind::triangle
        or kind == CellKind::quadrilateral or kind == CellKind::tetrahedron
        or kind == CellKind::hexahedron or kind == CellKind::prism;
  const bool simplex
      = kind == CellKind::triangle or kind == CellKind::tetrahedron;

  switch (family)
  {
  case Family::lagrange:
  {
    if (!lagrange_cell or k < 1)
      fail();
    Variant v = variant == Variant::unset ? Variant::equispaced : variant;
    return impl::make_lagrange(kind, k, v, false);
  }
  case Family::discontinuous_lagrange:
    if (!lagrange_cell or k < 0 or variant != Variant::unset)
      fail();
    return impl::make_lagrange(kind, k, Variant::equispaced, true);
  case Family::crouzeix_raviart:
    if (!simplex or k != 1 or variant != Variant::unset)
      fail();
    return impl::make_crouzeix_raviart(kind);
  case Family::raviart_thomas:
    if (!simplex or k < 0 or variant != Variant::unset)
      fail();
    return impl::make_raviart_thomas(kind, k);
  case Family::nedelec1:
    if (!simplex or k < 0 or variant != Variant::unset)
      fail();
    return impl::make_nedelec1(kind, k);
  }
  fail();
  return {};
}

} // namespace elements
} // namespace fedef
