// Copyright (c) 2026 fedef contributors
// SPDX-License-Identifier:    MIT

#pragma once

/// @file analysis.hpp
/// Element analysis: the four degree classifiers, controlled and
/// uncontrolled trace spaces on sub-entities, functional-set equivalence and
/// discrete de Rham containment checks.

#include "cells.hpp"
#include "elements.hpp"
#include "polyset.hpp"
#include "quadrature.hpp"
#include "span.hpp"
#include <Eigen/Dense>
#include <optional>
#include <vector>

namespace fedef::analysis
{

struct DegreeReport
{
  std::optional<int> polynomial_subdegree;
  std::optional<int> polynomial_superdegree;
  std::optional<int> lagrange_subdegree;
  std::optional<int> lagrange_superdegree;
};

namespace impl
{
/// (scalar basis)^value_size, as functions on the given cell kind.
inline polyset::PolySet powered(const polyset::PolySet& scalar,
                                std::size_t value_size, cells::CellKind kind)
{
  std::vector<std::vector<polyset::TermPoly>> fns;
  for (std::size_t i = 0; i < scalar.size(); ++i)
    for (std::size_t c = 0; c < value_size; ++c)
    {
      std::vector<polyset::TermPoly> comps(value_size);
      for (std::size_t t = 0; t < scalar.terms.size(); ++t)
        if (scalar.coefficients(i, t) != 0.0)
          comps[c][scalar.terms[t]] = scalar.coefficients(i, t);
      fns.push_back(std::move(comps));
    }
  std::vector<std::size_t> shape;
  if (value_size > 1)
    shape.push_back(value_size);
  return polyset::make_set(kind, shape,
                           cells::topological_dimension(kind), fns);
}
} // namespace impl

/// Classify the polynomial and Lagrange sub/superdegrees of an element by
/// span-containment searches up to k_cap. Searches that fail at k = 0
/// (subdegrees) or everywhere up to k_cap (superdegrees) report "undefined".
inline DegreeReport degrees(const elements::CiarletElement& el, int k_cap)
{
  using polyset::PolySet;
  const std::size_t vs = el.value_size();
  const cells::CellKind kind = el.cell.kind;
  const PolySet& space = el.space;

  auto cfg_for = [&](int k)
  { return verify::make_config(std::max(k, el.superdegree)); };

  auto contains_candidate = [&](int k, bool natural)
  {
    PolySet cand = impl::powered(natural
                                     ? polyset::natural_space(kind, k)
                                     : polyset::complete_space(el.cell.tdim, k),
                                 vs, kind);
    return verify::span_contains(space, cand, cfg_for(k));
  };
  auto contained_in_candidate = [&](int k, bool natural)
  {
    PolySet cand = impl::powered(natural
                                     ? polyset::natural_space(kind, k)
                                     : polyset::complete_space(el.cell.tdim, k),
                                 vs, kind);
    return verify::span_contains(cand, space, cfg_for(k));
  };

  DegreeReport report;
  auto subdegree = [&](bool natural) -> std::optional<int>
  {
    std::optional<int> best;
    for (int k = 0; k <= k_cap; ++k)
    {
      if (!contains_candidate(k, natural))
        break;
      best = k;
    }
    return best;
  };
  auto superdegree = [&](bool natural) -> std::optional<int>
  {
    for (int k = 0; k <= k_cap; ++k)
      if (contained_in_candidate(k, natural))
        return k;
    return std::nullopt;
  };

  report.polynomial_subdegree = subdegree(false);
  report.polynomial_superdegree = superdegree(false);
  report.lagrange_subdegree = subdegree(true);
  report.lagrange_superdegree = superdegree(true);
  return report;
}

inline int default_degree_cap(const elements::CiarletElement& el)
{
  return 2 * std::max(el.superdegree, 0) + 2;
}

namespace impl
{
/// Restriction of a function to a sub-entity, as a function on the entity's
/// reference cell. A vertex restriction is the constant value tuple.
inline polyset::PolyFunction restrict_to_entity(
    const polyset::PolyFunction& f, const cells::ReferenceCell& cell,
    cells::EntityRef e)
{
  if (e.dim == 0)
  {
    const Point v = cell.vertices[cell.entity_vertices(e)[0]];
    const auto values = f.evaluate(v);
    std::vector<polyset::TermPoly> comps(values.size());
    for (std::size_t c = 0; c < values.size(); ++c)
      if (values[c] != 0.0)
        comps[c][polyset::Term{}] = values[c];
    return polyset::make_function(f.value_shape, 0, comps);
  }
  return polyset::restrict(f, cells::entity_map(cell, e));
}

/// Scaled evaluation matrix S for a set on an entity's reference cell such
/// that S_f . S_g equals the entity inner product of f and g.
inline Eigen::MatrixXd scaled_values(const polyset::PolySet& fs,
                                     const quadrature::QuadRule& rule,
                                     double metric)
{
  const std::size_t vs = fs.value_size();
  Table t = polyset::evaluate(fs, rule.points);
  Eigen::MatrixXd s(fs.size(), rule.points.size() * vs);
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t q = 0; q < rule.points.size(); ++q)
    {
      const double w = std::sqrt(rule.weights[q] * metric);
      for (std::size_t c = 0; c < vs; ++c)
        s(i, q * vs + c) = w * t(i, q, c);
    }
  return s;
}
} // namespace impl

/// The uncontrolled trace space of an element on a sub-entity: restrictions
/// to the entity of the basis functions whose DOFs are not associated with
/// the entity's closure, reduced to a maximal independent subset.
inline polyset::PolySet uncontrolled_trace(const elements::CiarletElement& el,
                                           cells::EntityRef e,
                                           double rank_rel_tol = 1e-8)
{
  const auto closure = cells::entity_closure(el.cell, e);
  polyset::PolySet basis = el.basis();
  std::vector<polyset::PolyFunction> outside;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (!closure.contains(el.functionals[i].entity))
      outside.push_back(
          impl::restrict_to_entity(basis.function(i), el.cell, e));

  const cells::CellKind ekind = cells::entity_kind(el.cell, e);
  polyset::PolySet all = polyset::make_set(ekind, outside);
  std::vector<polyset::PolyFunction> kept;
  for (std::size_t i :
       polyset::independent_rows(all.coefficients, rank_rel_tol))
    kept.push_back(all.function(i));
  return polyset::make_set(ekind, kept);
}

/// The controlled trace space: the orthogonal projections (with respect to
/// the entity inner product) of the closure-associated basis-function
/// restrictions against the uncontrolled trace space.
inline polyset::PolySet controlled_trace(const elements::CiarletElement& el,
                                         cells::EntityRef e,
                                         double rank_rel_tol = 1e-8)
{
  if (el.cell.kind == cells::CellKind::pyramid)
    throw std::runtime_error(
        "Controlled traces are not available on the pyramid");
  const auto closure = cells::entity_closure(el.cell, e);
  polyset::PolySet basis = el.basis();
  std::vector<polyset::PolyFunction> inside, outside;
  for (std::size_t i = 0; i < basis.size(); ++i)
  {
    polyset::PolyFunction r
        = impl::restrict_to_entity(basis.function(i), el.cell, e);
    if (closure.contains(el.functionals[i].entity))
      inside.push_back(std::move(r));
    else
      outside.push_back(std::move(r));
  }

  const cells::CellKind ekind = cells::entity_kind(el.cell, e);
  if (inside.empty())
    return polyset::make_set(ekind, {});

  // Shared coefficient space for all restrictions, plus a value-space
  // representation in which dot products are exact entity inner products.
  std::vector<polyset::PolyFunction> all_fns = outside;
  all_fns.insert(all_fns.end(), inside.begin(), inside.end());
  polyset::PolySet all = polyset::make_set(ekind, all_fns);

  quadrature::QuadRule rule;
  double metric = 1.0;
  if (e.dim == 0)
  {
    rule.points = {Point{0, 0, 0}};
    rule.weights = {1.0};
  }
  else
  {
    rule = quadrature::cell_rule(ekind, 2 * std::max(all.degree(), 0) + 2);
    metric = cells::entity_map(el.cell, e).metric_factor();
  }
  Eigen::MatrixXd values = impl::scaled_values(all, rule, metric);
  Eigen::MatrixXd coeffs = all.coefficients;
  const std::size_t n_out = outside.size();

  // Orthonormalise the uncontrolled rows (two passes, dropping dependent
  // functions), then project them out of the closure rows.
  std::vector<std::size_t> ortho;
  const double drop
      = rank_rel_tol * std::max(values.topRows(n_out).norm(), 1.0);
  for (std::size_t i = 0; i < n_out; ++i)
  {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t j : ortho)
      {
        const double r = values.row(i).dot(values.row(j));
        values.row(i) -= r * values.row(j);
        coeffs.row(i) -= r * coeffs.row(j);
      }
    const double norm = values.row(i).norm();
    if (norm > drop)
    {
      values.row(i) /= norm;
      coeffs.row(i) /= norm;
      ortho.push_back(i);
    }
  }
  for (std::size_t i = n_out; i < all.size(); ++i)
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t j : ortho)
      {
        const double r = values.row(i).dot(values.row(j));
        values.row(i) -= r * values.row(j);
        coeffs.row(i) -= r * coeffs.row(j);
      }

  polyset::PolySet out = all;
  out.coefficients = coeffs.bottomRows(inside.size());
  return out;
}

/// Both trace spaces of an element on a sub-entity.
struct TraceSpaces
{
  cells::EntityRef entity;
  polyset::PolySet uncontrolled;
  polyset::PolySet controlled;
};

inline TraceSpaces trace_spaces(const elements::CiarletElement& el,
                                cells::EntityRef e,
                                double rank_rel_tol = 1e-8)
{
  return {e, uncontrolled_trace(el, e, rank_rel_tol),
          controlled_trace(el, e, rank_rel_tol)};
}

/// Result of a functional-set equivalence test: when the sets span the same
/// dual subspace, `change_of_basis` holds the non-singular matrix A with
/// (l~_0, ..., l~_{a-1})^T = A (l_0, ..., l_{a-1})^T.
struct FunctionalEquivalence
{
  bool equivalent = false;
  std::optional<Eigen::MatrixXd> change_of_basis;
};

inline FunctionalEquivalence
functionals_equivalent(const std::vector<elements::Functional>& ls_a,
                       const std::vector<elements::Functional>& ls_b,
                       const polyset::PolySet& space,
                       const cells::ReferenceCell& cell,
                       const verify::SpanTestConfig& cfg = {})
{
  if (ls_a.size() != ls_b.size())
    return {};
  const std::size_t a = ls_a.size();
  const std::size_t n = space.size();
  Eigen::MatrixXd la(a, n), lb(a, n);
  for (std::size_t j = 0; j < n; ++j)
  {
    polyset::PolyFunction p = space.function(j);
    for (std::size_t i = 0; i < a; ++i)
    {
      la(i, j) = elements::apply_functional(ls_a[i], p, cell);
      lb(i, j) = elements::apply_functional(ls_b[i], p, cell);
    }
  }
  const int ra = verify::matrix_rank(la, cfg);
  const int rb = verify::matrix_rank(lb, cfg);
  Eigen::MatrixXd stacked(2 * a, n);
  stacked << la, lb;
  if (ra != rb or ra != verify::matrix_rank(stacked, cfg))
    return {};

  // lb = A la.
  Eigen::MatrixXd at = la.transpose()
                           .completeOrthogonalDecomposition()
                           .solve(lb.transpose());
  Eigen::MatrixXd am = at.transpose();
  const double scale = std::max(1.0, lb.cwiseAbs().maxCoeff());
  if ((am * la - lb).cwiseAbs().maxCoeff() > 1e-6 * scale)
    return {};
  return {true, am};
}

/// Discrete de Rham containment on the triangle at degree k: gradients of
/// the Lagrange space lie in the subdegree-(k-1) Nedelec space, whose curls
/// span exactly the complete space of degree k-1, and curl of grad vanishes.
struct DeRhamReport
{
  bool grad_in_nedelec = false;
  bool curl_spans_complete = false;
  double max_curl_of_grad = 0.0;

  bool ok() const
  {
    return grad_in_nedelec and curl_spans_complete
           and max_curl_of_grad < 1e-10;
  }
};

inline DeRhamReport derham_containment(int k)
{
  if (k < 1)
    throw std::invalid_argument("de Rham containment needs k >= 1");
  const cells::CellKind tri = cells::CellKind::triangle;
  elements::CiarletElement lag
      = elements::make_family(elements::Family::lagrange, tri, k);
  polyset::PolySet lag_basis = lag.basis();
  polyset::PolySet nedelec = elements::n1_space(tri, k - 1);

  std::vector<polyset::PolyFunction> grads;
  DeRhamReport report;
  for (std::size_t i = 0; i < lag_basis.size(); ++i)
  {
    polyset::PolyFunction g = polyset::grad(lag_basis.function(i));
    polyset::PolyFunction cg = polyset::curl2d(g);
    report.max_curl_of_grad = std::max(
        report.max_curl_of_grad, cg.coefficients.cwiseAbs().maxCoeff());
    grads.push_back(std::move(g));
  }
  polyset::PolySet grad_set = polyset::make_set(tri, grads);

  std::vector<polyset::PolyFunction> curls;
  for (std::size_t i = 0; i < nedelec.size(); ++i)
    curls.push_back(polyset::curl2d(nedelec.function(i)));
  polyset::PolySet curl_set = polyset::make_set(tri, curls);
  polyset::PolySet complete = polyset::complete_space(2, k - 1);
  complete.cell = tri;

  const verify::SpanTestConfig cfg = verify::make_config(k + 1);
  report.grad_in_nedelec = verify::span_contains(nedelec, grad_set, cfg);
  report.curl_spans_complete = verify::spans_same_space(curl_set, complete,
                                                        cfg);
  return report;
}

} // namespace fedef::analysis
