// Copyright (c) 2026 fedef contributors
// SPDX-License-Identifier:    MIT

#pragma once

/// @file orthonormal.hpp
/// L2-orthonormal bases of the natural polynomial spaces, built by modified
/// Gram-Schmidt against quadrature inner products. Tensor-product cells use
/// tensor products of lower-dimensional bases so that conditioning stays
/// under control at high degree.

#include "cells.hpp"
#include "polyset.hpp"
#include "quadrature.hpp"
#include <Eigen/Dense>
#include <stdexcept>

namespace fedef::polyset
{

namespace impl
{
/// Modified Gram-Schmidt (two passes) on the rows of a monomial set, with the
/// inner product evaluated by quadrature.
inline PolySet gram_schmidt(const PolySet& monomials,
                            const quadrature::QuadRule& rule)
{
  const std::size_t n = monomials.size();
  const std::size_t np = rule.points.size();
  Table values = evaluate(monomials, rule.points);

  // vals(i, q): function i at quadrature point q (scalar sets only).
  Eigen::MatrixXd vals(n, np);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t q = 0; q < np; ++q)
      vals(i, q) = values(i, q, 0);
  Eigen::VectorXd w(np);
  for (std::size_t q = 0; q < np; ++q)
    w[q] = rule.weights[q];

  Eigen::MatrixXd coeffs = monomials.coefficients;
  auto dot = [&](std::size_t a, std::size_t b)
  { return (vals.row(a).array() * vals.row(b).array() * w.transpose().array())
        .sum(); };

  for (std::size_t i = 0; i < n; ++i)
  {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t j = 0; j < i; ++j)
      {
        const double r = dot(i, j);
        vals.row(i) -= r * vals.row(j);
        coeffs.row(i) -= r * coeffs.row(j);
      }
    const double norm = std::sqrt(dot(i, i));
    if (!(norm > 0))
      throw std::runtime_error("Gram-Schmidt hit a numerically null function");
    vals.row(i) /= norm;
    coeffs.row(i) /= norm;
  }

  PolySet out = monomials;
  out.coefficients = std::move(coeffs);
  return out;
}

/// Tensor product of two scalar sets over disjoint variables.
inline PolySet tensor_product(cells::CellKind kind, const PolySet& a,
                              const PolySet& b)
{
  std::vector<std::vector<TermPoly>> fns;
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    TermPoly pa;
    for (std::size_t t = 0; t < a.terms.size(); ++t)
      if (a.coefficients(i, t) != 0.0)
        pa[a.terms[t]] = a.coefficients(i, t);
    for (std::size_t j = 0; j < b.size(); ++j)
    {
      TermPoly pb;
      for (std::size_t t = 0; t < b.terms.size(); ++t)
        if (b.coefficients(j, t) != 0.0)
          pb[b.terms[t]] = b.coefficients(j, t);
      fns.push_back({multiply(pa, pb)});
    }
  }
  return make_set(kind, {}, cells::topological_dimension(kind), fns);
}

/// Move a function of x to the same function of z (for tensor factors along
/// the last axis).
inline PolySet swap_x_to_z(const PolySet& set)
{
  PolySet out = set;
  for (auto& t : out.terms)
    std::swap(t.exponents[0], t.exponents[2]);
  return out;
}
} // namespace impl

/// L2-orthonormal basis spanning the natural space of degree k. The pyramid
/// is not supported: its rationomial inner products need special treatment.
inline PolySet orthonormal_basis(cells::CellKind kind, int k)
{
  using cells::CellKind;
  switch (kind)
  {
  case CellKind::pyramid:
    throw std::runtime_error(
        "Orthonormal bases are not available on the pyramid");
  case CellKind::point:
    return natural_space(kind, 0);
  case CellKind::interval:
  case CellKind::triangle:
  case CellKind::tetrahedron:
    return impl::gram_schmidt(natural_space(kind, k),
                              quadrature::cell_rule(kind, 2 * k));
  case CellKind::quadrilateral:
  {
    PolySet on1 = orthonormal_basis(CellKind::interval, k);
    PolySet on2 = on1;
    for (auto& t : on2.terms)
      std::swap(t.exponents[0], t.exponents[1]);
    return impl::tensor_product(kind, on1, on2);
  }
  case CellKind::hexahedron:
  {
    PolySet onxy = orthonormal_basis(CellKind::quadrilateral, k);
    PolySet onz = impl::swap_x_to_z(orthonormal_basis(CellKind::interval, k));
    return impl::tensor_product(kind, onxy, onz);
  }
  case CellKind::prism:
  {
    PolySet onxy = orthonormal_basis(CellKind::triangle, k);
    PolySet onz = impl::swap_x_to_z(orthonormal_basis(CellKind::interval, k));
    return impl::tensor_product(kind, onxy, onz);
  }
  }
  throw std::invalid_argument("Unknown cell kind");
}

/// Orthonormal basis on a cell with custom vertices: the canonical basis
/// composed with the inverse affine correspondence and rescaled, which keeps
/// exact orthonormality under the mapped measure.
inline PolySet orthonormal_basis(const cells::ReferenceCell& cell, int k)
{
  PolySet canon = orthonormal_basis(cell.kind, k);
  if (cell.is_canonical())
    return canon;
  cells::AffineMap m
      = cells::affine_correspondence(cell.kind, cell.vertices, cell.tdim);
  cells::AffineMap inv = m.inverse();
  const double scale = 1.0 / std::sqrt(std::abs(m.linear.determinant()));
  std::vector<PolyFunction> fns;
  for (std::size_t i = 0; i < canon.size(); ++i)
  {
    PolyFunction f = restrict(canon.function(i), inv);
    f.coefficients *= scale;
    fns.push_back(std::move(f));
  }
  PolySet out = make_set(cell.kind, fns);
  return out;
}

} // namespace fedef::polyset
