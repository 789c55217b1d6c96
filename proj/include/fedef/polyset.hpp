// Copyright (c) 2026 fedef contributors
// SPDX-License-Identifier:    MIT

#pragma once

/// @file polyset.hpp
/// Term-based polynomial and rationomial functions on reference cells: the
/// natural and complete spaces, the pyramid Lagrange space, evaluation,
/// differentiation and restriction to sub-entities.
///
/// A term is x^p0 y^p1 z^p2 / (1-z)^e; the denominator power e is nonzero
/// only on the pyramid. Coefficients are floating point, exponents exact.

#include "cells.hpp"
#include <Eigen/Dense>
#include <array>
#include <cstddef>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace fedef
{

/// Dense rank-3 value table with named extents.
struct Table
{
  std::array<std::size_t, 3> shape{0, 0, 0};
  std::vector<double> data;

  Table() = default;
  Table(std::size_t n0, std::size_t n1, std::size_t n2)
      : shape{n0, n1, n2}, data(n0 * n1 * n2, 0.0)
  {
  }

  double& operator()(std::size_t i, std::size_t j, std::size_t k)
  {
    return data[(i * shape[1] + j) * shape[2] + k];
  }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const
  {
    return data[(i * shape[1] + j) * shape[2] + k];
  }
};

namespace polyset
{

/// One monomial/rationomial term.
struct Term
{
  std::array<int, 3> exponents{0, 0, 0};
  int denom_power = 0;

  int total_degree() const
  {
    return exponents[0] + exponents[1] + exponents[2];
  }

  /// Graded lexicographic key: (total degree incl. denom power, p0, p1, p2, e).
  auto key() const
  {
    return std::make_tuple(total_degree() + denom_power, exponents[0],
                           exponents[1], exponents[2], denom_power);
  }
  bool operator<(const Term& o) const { return key() < o.key(); }
  bool operator==(const Term& o) const { return key() == o.key(); }

  double evaluate(const Point& x) const
  {
    auto ipow = [](double b, int p)
    {
      double r = 1.0;
      for (int i = 0; i < p; ++i)
        r *= b;
      return r;
    };
    double v = ipow(x[0], exponents[0]) * ipow(x[1], exponents[1])
               * ipow(x[2], exponents[2]);
    if (denom_power > 0)
    {
      const double d = 1.0 - x[2];
      if (std::abs(d) < 1e-13)
        throw std::domain_error(
            "Rationomial evaluated at the pyramid apex plane z = 1");
      v /= ipow(d, denom_power);
    }
    return v;
  }
};

/// A natural-space degree at which the term is contained (exact for every
/// cell except the pyramid, where it is a sufficient bound).
inline int natural_degree(const Term& t, cells::CellKind kind)
{
  using cells::CellKind;
  const auto& p = t.exponents;
  switch (kind)
  {
  case CellKind::point:
    return 0;
  case CellKind::interval:
  case CellKind::triangle:
  case CellKind::tetrahedron:
    return t.total_degree();
  case CellKind::quadrilateral:
    return std::max(p[0], p[1]);
  case CellKind::hexahedron:
    return std::max({p[0], p[1], p[2]});
  case CellKind::prism:
    return std::max(p[0] + p[1], p[2]);
  case CellKind::pyramid:
    return std::max({p[0], p[1], p[2] + p[0] + p[1] - t.denom_power});
  }
  throw std::invalid_argument("Unknown cell kind");
}

/// Polynomial in term form, one coefficient map per value component.
using TermPoly = std::map<Term, double>;

inline void add_scaled(TermPoly& dst, const TermPoly& src, double s)
{
  for (const auto& [t, c] : src)
  {
    dst[t] += s * c;
    if (dst[t] == 0.0)
      dst.erase(t);
  }
}

inline TermPoly multiply(const TermPoly& a, const TermPoly& b)
{
  TermPoly out;
  for (const auto& [ta, ca] : a)
    for (const auto& [tb, cb] : b)
    {
      Term t{{ta.exponents[0] + tb.exponents[0],
              ta.exponents[1] + tb.exponents[1],
              ta.exponents[2] + tb.exponents[2]},
             ta.denom_power + tb.denom_power};
      out[t] += ca * cb;
    }
  return out;
}

/// A scalar-, vector- or matrix-valued function: a coefficient matrix
/// (component x term) over a shared ordered term list.
struct PolyFunction
{
  std::vector<std::size_t> value_shape; // {} scalar, {d} vector, {d,d} matrix
  int tdim = 0;                         // number of active variables
  std::vector<Term> terms;
  Eigen::MatrixXd coefficients; // value_size x terms

  std::size_t value_size() const
  {
    std::size_t s = 1;
    for (std::size_t e : value_shape)
      s *= e;
    return s;
  }

  /// Largest total degree (excluding denominator powers) carried by a term
  /// with a nonzero coefficient; -1 for the zero function.
  int degree() const
  {
    int deg = -1;
    for (std::size_t t = 0; t < terms.size(); ++t)
      if (coefficients.col(t).cwiseAbs().maxCoeff() > 0.0)
        deg = std::max(deg, terms[t].total_degree());
    return deg;
  }

  bool is_rationomial() const
  {
    for (const auto& t : terms)
      if (t.denom_power > 0)
        return true;
    return false;
  }

  std::vector<double> evaluate(const Point& x) const
  {
    std::vector<double> out(value_size(), 0.0);
    for (std::size_t t = 0; t < terms.size(); ++t)
    {
      const double tv = terms[t].evaluate(x);
      for (std::size_t c = 0; c < out.size(); ++c)
        out[c] += coefficients(c, t) * tv;
    }
    return out;
  }
};

/// Assemble a PolyFunction from per-component term maps.
inline PolyFunction make_function(std::vector<std::size_t> value_shape,
                                  int tdim,
                                  const std::vector<TermPoly>& components)
{
  std::map<Term, std::size_t> index;
  for (const auto& comp : components)
    for (const auto& [t, c] : comp)
      index.emplace(t, 0);
  std::vector<Term> terms;
  terms.reserve(index.size());
  for (auto& [t, i] : index)
  {
    i = terms.size();
    terms.push_back(t);
  }
  if (terms.empty())
    terms.push_back(Term{}); // keep the constant term for the zero function

  PolyFunction f;
  f.value_shape = std::move(value_shape);
  f.tdim = tdim;
  f.terms = std::move(terms);
  f.coefficients
      = Eigen::MatrixXd::Zero(components.size(), f.terms.size());
  for (std::size_t c = 0; c < components.size(); ++c)
    for (const auto& [t, v] : components[c])
      f.coefficients(c, index.at(t)) = v;
  return f;
}

inline PolyFunction make_scalar(int tdim, const TermPoly& p)
{
  return make_function({}, tdim, {p});
}

/// Constant scalar function.
inline PolyFunction constant(int tdim, double value)
{
  TermPoly p;
  p[Term{}] = value;
  return make_scalar(tdim, p);
}

/// An ordered, linearly independent sequence of functions sharing one term
/// list and one value shape. Functions are stored as rows of `coefficients`,
/// with component-major blocks: row = [comp0 terms..., comp1 terms...].
struct PolySet
{
  cells::CellKind cell = cells::CellKind::point;
  std::vector<std::size_t> value_shape;
  int tdim = 0;
  std::vector<Term> terms;
  Eigen::MatrixXd coefficients; // n_functions x (value_size * n_terms)

  std::size_t size() const
  {
    return static_cast<std::size_t>(coefficients.rows());
  }

  std::size_t value_size() const
  {
    std::size_t s = 1;
    for (std::size_t e : value_shape)
      s *= e;
    return s;
  }

  PolyFunction function(std::size_t i) const
  {
    PolyFunction f;
    f.value_shape = value_shape;
    f.tdim = tdim;
    f.terms = terms;
    const std::size_t nt = terms.size();
    f.coefficients.resize(value_size(), nt);
    for (std::size_t c = 0; c < value_size(); ++c)
      f.coefficients.row(c) = coefficients.row(i).segment(c * nt, nt);
    return f;
  }

  int degree() const
  {
    int deg = -1;
    const std::size_t nt = terms.size();
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t t = 0; t < nt; ++t)
        for (std::size_t c = 0; c < value_size(); ++c)
          if (coefficients(i, c * nt + t) != 0.0)
            deg = std::max(deg, terms[t].total_degree());
    return deg;
  }
};

/// Assemble a PolySet from a list of functions given as per-component term
/// maps, canonicalising the shared term list.
inline PolySet
make_set(cells::CellKind cell, std::vector<std::size_t> value_shape, int tdim,
         const std::vector<std::vector<TermPoly>>& functions)
{
  std::map<Term, std::size_t> index;
  for (const auto& fn : functions)
    for (const auto& comp : fn)
      for (const auto& [t, c] : comp)
        index.emplace(t, 0);
  std::vector<Term> terms;
  for (auto& [t, i] : index)
  {
    i = terms.size();
    terms.push_back(t);
  }
  if (terms.empty())
    terms.push_back(Term{});

  PolySet set;
  set.cell = cell;
  set.value_shape = std::move(value_shape);
  set.tdim = tdim;
  set.terms = std::move(terms);
  const std::size_t vs = set.value_size();
  const std::size_t nt = set.terms.size();
  set.coefficients = Eigen::MatrixXd::Zero(functions.size(), vs * nt);
  for (std::size_t i = 0; i < functions.size(); ++i)
  {
    if (functions[i].size() != vs)
      throw std::invalid_argument("Component count does not match value shape");
    for (std::size_t c = 0; c < vs; ++c)
      for (const auto& [t, v] : functions[i][c])
        set.coefficients(i, c * nt + index.at(t)) = v;
  }
  return set;
}

inline PolySet make_set(cells::CellKind cell,
                        const std::vector<PolyFunction>& functions)
{
  if (functions.empty())
  {
    PolySet set;
    set.cell = cell;
    set.tdim = cells::topological_dimension(cell);
    set.terms = {Term{}};
    set.coefficients.resize(0, 1);
    return set;
  }
  std::vector<std::vector<TermPoly>> fns;
  for (const auto& f : functions)
  {
    std::vector<TermPoly> comps(f.value_size());
    for (std::size_t c = 0; c < f.value_size(); ++c)
      for (std::size_t t = 0; t < f.terms.size(); ++t)
        if (f.coefficients(c, t) != 0.0)
          comps[c][f.terms[t]] = f.coefficients(c, t);
    fns.push_back(std::move(comps));
  }
  return make_set(cell, functions.front().value_shape,
                  functions.front().tdim, fns);
}

/// Indices of a maximal linearly independent subset of the rows of a matrix:
/// the numerical rank is decided by singular values relative to the largest,
/// and rows are selected in column-pivoted QR order (returned ascending).
inline std::vector<std::size_t> independent_rows(const Eigen::MatrixXd& m,
                                                 double rel_tol = 1e-10)
{
  if (m.rows() == 0 or m.cols() == 0)
    return {};
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const double smax = svd.singularValues()[0];
  if (!(smax > 0))
    return {};
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > rel_tol * smax)
      ++rank;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m.transpose());
  std::vector<std::size_t> idx;
  for (int i = 0; i < rank; ++i)
    idx.push_back(qr.colsPermutation().indices()[i]);
  std::sort(idx.begin(), idx.end());
  return idx;
}

/// Linear recombination: functions' = M * functions (rows recombined).
inline PolySet recombine(const PolySet& set, const Eigen::MatrixXd& m)
{
  if (m.cols() != static_cast<Eigen::Index>(set.size()))
    throw std::invalid_argument("Recombination size mismatch");
  PolySet out = set;
  out.coefficients = m * set.coefficients;
  return out;
}

namespace impl
{
inline std::vector<Term> natural_terms(cells::CellKind kind, int k)
{
  using cells::CellKind;
  std::vector<Term> terms;
  auto add = [&](int a, int b, int c, int e)
  { terms.push_back(Term{{a, b, c}, e}); };
  switch (kind)
  {
  case CellKind::point:
    add(0, 0, 0, 0);
    break;
  case CellKind::interval:
    for (int a = 0; a <= k; ++a)
      add(a, 0, 0, 0);
    break;
  case CellKind::triangle:
    for (int a = 0; a <= k; ++a)
      for (int b = 0; b <= k - a; ++b)
        add(a, b, 0, 0);
    break;
  case CellKind::quadrilateral:
    for (int a = 0; a <= k; ++a)
      for (int b = 0; b <= k; ++b)
        add(a, b, 0, 0);
    break;
  case CellKind::tetrahedron:
    for (int a = 0; a <= k; ++a)
      for (int b = 0; b <= k - a; ++b)
        for (int c = 0; c <= k - a - b; ++c)
          add(a, b, c, 0);
    break;
  case CellKind::hexahedron:
    for (int a = 0; a <= k; ++a)
      for (int b = 0; b <= k; ++b)
        for (int c = 0; c <= k; ++c)
          add(a, b, c, 0);
    break;
  case CellKind::prism:
    for (int a = 0; a <= k; ++a)
      for (int b = 0; b <= k - a; ++b)
        for (int c = 0; c <= k; ++c)
          add(a, b, c, 0);
    break;
  case CellKind::pyramid:
    for (int a = 0; a <= k; ++a)
      for (int b = 0; b <= k; ++b)
        for (int c = 0; c <= k; ++c)
          add(a, b, c, a + b);
    break;
  }
  std::sort(terms.begin(), terms.end());
  return terms;
}

inline PolySet set_of_single_terms(cells::CellKind kind,
                                   std::vector<Term> terms)
{
  PolySet set;
  set.cell = kind;
  set.tdim = cells::topological_dimension(kind);
  set.terms = std::move(terms);
  set.coefficients = Eigen::MatrixXd::Identity(set.terms.size(),
                                               set.terms.size());
  return set;
}
} // namespace impl

/// The natural polynomial (pyramid: rationomial) space of degree k on a cell.
inline PolySet natural_space(cells::CellKind kind, int k)
{
  if (k < 0)
    throw std::invalid_argument("Degree must be non-negative");
  return impl::set_of_single_terms(kind, impl::natural_terms(kind, k));
}

inline PolySet natural_space(const cells::ReferenceCell& cell, int k)
{
  return natural_space(cell.kind, k);
}

/// The complete polynomial space of degree k: the simplex natural space of
/// the given topological dimension.
inline PolySet complete_space(int tdim, int k)
{
  using cells::CellKind;
  switch (tdim)
  {
  case 1:
    return natural_space(CellKind::interval, k);
  case 2:
    return natural_space(CellKind::triangle, k);
  case 3:
    return natural_space(CellKind::tetrahedron, k);
  default:
    throw std::invalid_argument("Complete space needs 1 <= tdim <= 3");
  }
}

/// The space spanned by the degree-k Lagrange element on the pyramid:
/// x^p0 y^p1 z^p2 / (1-z)^min(p0,p1) with p0+p2 <= k and p1+p2 <= k.
inline PolySet pyramid_lagrange_space(int k)
{
  if (k < 0)
    throw std::invalid_argument("Degree must be non-negative");
  std::vector<Term> terms;
  for (int a = 0; a <= k; ++a)
    for (int b = 0; b <= k; ++b)
      for (int c = 0; c <= std::min(k - a, k - b); ++c)
        terms.push_back(Term{{a, b, c}, std::min(a, b)});
  std::sort(terms.begin(), terms.end());
  return impl::set_of_single_terms(cells::CellKind::pyramid, terms);
}

/// Evaluate every function at every point: table (function, point, component).
inline Table evaluate(const PolySet& set, const std::vector<Point>& points)
{
  const std::size_t vs = set.value_size();
  const std::size_t nt = set.terms.size();
  Table out(set.size(), points.size(), vs);
  for (std::size_t p = 0; p < points.size(); ++p)
  {
    std::vector<double> tv(nt);
    for (std::size_t t = 0; t < nt; ++t)
      tv[t] = set.terms[t].evaluate(points[p]);
    for (std::size_t i = 0; i < set.size(); ++i)
      for (std::size_t c = 0; c < vs; ++c)
      {
        double v = 0.0;
        for (std::size_t t = 0; t < nt; ++t)
          v += set.coefficients(i, c * nt + t) * tv[t];
        out(i, p, c) = v;
      }
  }
  return out;
}

namespace impl
{
/// d/d(x_dir) of a single term, as a term map.
inline TermPoly differentiate_term(const Term& term, int dir)
{
  TermPoly out;
  if (dir != 2 or term.denom_power == 0)
  {
    if (term.exponents[dir] > 0)
    {
      Term t = term;
      t.exponents[dir] -= 1;
      out[t] = static_cast<double>(term.exponents[dir]);
    }
    if (dir == 2 and term.denom_power > 0)
      throw std::logic_error("unreachable");
    return out;
  }
  // z-derivative with a (1-z)^e denominator: quotient rule.
  if (term.exponents[2] > 0)
  {
    Term t = term;
    t.exponents[2] -= 1;
    out[t] += static_cast<double>(term.exponents[2]);
  }
  Term t = term;
  t.denom_power += 1;
  out[t] += static_cast<double>(term.denom_power);
  return out;
}
} // namespace impl

/// Partial derivative of each component in the given axis direction.
inline PolyFunction differentiate(const PolyFunction& f, int dir)
{
  if (dir < 0 or dir >= f.tdim)
    throw std::domain_error("Derivative direction outside the domain");
  std::vector<TermPoly> comps(f.value_size());
  for (std::size_t c = 0; c < f.value_size(); ++c)
    for (std::size_t t = 0; t < f.terms.size(); ++t)
    {
      const double coef = f.coefficients(c, t);
      if (coef == 0.0)
        continue;
      add_scaled(comps[c], impl::differentiate_term(f.terms[t], dir), coef);
    }
  return make_function(f.value_shape, f.tdim, comps);
}

/// Gradient of a scalar function, as a vector function.
inline PolyFunction grad(const PolyFunction& f)
{
  if (!f.value_shape.empty())
    throw std::domain_error("grad requires a scalar function");
  std::vector<TermPoly> comps;
  for (int d = 0; d < f.tdim; ++d)
  {
    PolyFunction df = differentiate(f, d);
    TermPoly p;
    for (std::size_t t = 0; t < df.terms.size(); ++t)
      if (df.coefficients(0, t) != 0.0)
        p[df.terms[t]] = df.coefficients(0, t);
    comps.push_back(std::move(p));
  }
  return make_function({static_cast<std::size_t>(f.tdim)}, f.tdim, comps);
}

inline PolyFunction divergence(const PolyFunction& f)
{
  if (f.value_shape.size() != 1
      or f.value_shape[0] != static_cast<std::size_t>(f.tdim))
    throw std::domain_error("div requires a tdim-vector function");
  TermPoly p;
  for (int d = 0; d < f.tdim; ++d)
  {
    PolyFunction fc = f;
    fc.value_shape = {};
    fc.coefficients = f.coefficients.row(d);
    PolyFunction df = differentiate(fc, d);
    for (std::size_t t = 0; t < df.terms.size(); ++t)
      if (df.coefficients(0, t) != 0.0)
        p[df.terms[t]] += df.coefficients(0, t);
  }
  return make_scalar(f.tdim, p);
}

/// Two-dimensional scalar curl: df1/dx - df0/dy.
inline PolyFunction curl2d(const PolyFunction& f)
{
  if (f.value_shape != std::vector<std::size_t>{2} or f.tdim != 2)
    throw std::domain_error("curl2d requires a 2-vector function on tdim 2");
  auto comp = [&](int c)
  {
    PolyFunction fc = f;
    fc.value_shape = {};
    fc.coefficients = f.coefficients.row(c);
    return fc;
  };
  TermPoly p;
  PolyFunction a = differentiate(comp(1), 0);
  PolyFunction b = differentiate(comp(0), 1);
  for (std::size_t t = 0; t < a.terms.size(); ++t)
    if (a.coefficients(0, t) != 0.0)
      p[a.terms[t]] += a.coefficients(0, t);
  for (std::size_t t = 0; t < b.terms.size(); ++t)
    if (b.coefficients(0, t) != 0.0)
      p[b.terms[t]] -= b.coefficients(0, t);
  return make_scalar(2, p);
}

/// Three-dimensional curl of a 3-vector function.
inline PolyFunction curl3d(const PolyFunction& f)
{
  if (f.value_shape != std::vector<std::size_t>{3} or f.tdim != 3)
    throw std::domain_error("curl3d requires a 3-vector function on tdim 3");
  auto d = [&](int c, int dir)
  {
    PolyFunction fc = f;
    fc.value_shape = {};
    fc.coefficients = f.coefficients.row(c);
    PolyFunction df = differentiate(fc, dir);
    TermPoly p;
    for (std::size_t t = 0; t < df.terms.size(); ++t)
      if (df.coefficients(0, t) != 0.0)
        p[df.terms[t]] = df.coefficients(0, t);
    return p;
  };
  std::vector<TermPoly> comps(3);
  add_scaled(comps[0], d(2, 1), 1.0);
  add_scaled(comps[0], d(1, 2), -1.0);
  add_scaled(comps[1], d(0, 2), 1.0);
  add_scaled(comps[1], d(2, 0), -1.0);
  add_scaled(comps[2], d(1, 0), 1.0);
  add_scaled(comps[2], d(0, 1), -1.0);
  return make_function({3}, 3, comps);
}

/// Composition f(m(t)) with an affine map m, expanded back into term form on
/// the map's source domain. Value components are unchanged. Rationomial
/// terms cannot be restricted.
inline PolyFunction restrict(const PolyFunction& f,
                             const cells::AffineMap& m)
{
  const int sdim = m.source_dim();
  if (m.target_dim() < f.tdim)
    throw std::invalid_argument("Affine map does not cover the domain");

  // Each ambient variable becomes an affine polynomial in the source
  // variables.
  std::vector<TermPoly> var(3);
  for (int d = 0; d < 3; ++d)
  {
    if (d < m.target_dim())
    {
      if (m.shift[d] != 0.0)
        var[d][Term{}] = m.shift[d];
      for (int j = 0; j < sdim; ++j)
        if (m.linear(d, j) != 0.0)
        {
          Term t;
          t.exponents[j] = 1;
          var[d][t] = m.linear(d, j);
        }
    }
  }

  std::vector<TermPoly> comps(f.value_size());
  for (std::size_t c = 0; c < f.value_size(); ++c)
    for (std::size_t ti = 0; ti < f.terms.size(); ++ti)
    {
      const double coef = f.coefficients(c, ti);
      if (coef == 0.0)
        continue;
      const Term& term = f.terms[ti];
      if (term.denom_power > 0)
        throw std::domain_error("Cannot restrict a rationomial term");
      TermPoly prod;
      prod[Term{}] = coef;
      for (int d = 0; d < 3; ++d)
        for (int p = 0; p < term.exponents[d]; ++p)
          prod = multiply(prod, var[d]);
      add_scaled(comps[c], prod, 1.0);
    }
  return make_function(f.value_shape, sdim, comps);
}

} // namespace polyset
} // namespace fedef
