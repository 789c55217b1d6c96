// Copyright (c) 2026 fedef contributors
// SPDX-License-Identifier:    MIT

#pragma once

/// @file span.hpp
/// Rank-based span comparison of function sets: functions are evaluated on a
/// deterministic lattice over the domain cell and compared through the ranks
/// of their (function x values) matrices and of the vertically stacked pair.

#include "cells.hpp"
#include "polyset.hpp"
#include <Eigen/Dense>
#include <stdexcept>

namespace fedef::verify
{

/// Configuration of the lattice-of-points span tests. The lattice must
/// resolve the polynomials involved: points_per_direction should be at least
/// 2 * (max degree) + 3.
struct SpanTestConfig
{
  int points_per_direction = 9;
  double rank_rel_tolerance = 1e-8;
};

inline SpanTestConfig make_config(int max_degree)
{
  return {2 * std::max(max_degree, 0) + 3, 1e-8};
}

inline void validate(const SpanTestConfig& cfg)
{
  if (cfg.points_per_direction < 2)
    throw std::runtime_error("Span test lattice needs >= 2 points");
  if (!(cfg.rank_rel_tolerance > 0) or cfg.rank_rel_tolerance > 1e-4)
    throw std::runtime_error("Rank tolerance must lie in (0, 1e-4]");
}

/// Number of singular values above rank_rel_tolerance times the largest.
inline int matrix_rank(const Eigen::MatrixXd& m, const SpanTestConfig& cfg)
{
  if (m.rows() == 0 or m.cols() == 0)
    return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const double smax = svd.singularValues()[0];
  if (!(smax > 0))
    return 0;
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > cfg.rank_rel_tolerance * smax)
      ++rank;
  return rank;
}

/// Evaluation matrix with one function per row and value size * n_points
/// columns, ordered (point, component).
inline Eigen::MatrixXd evaluation_matrix(const polyset::PolySet& fs,
                                         const std::vector<Point>& points)
{
  const std::size_t vs = fs.value_size();
  Table t = polyset::evaluate(fs, points);
  Eigen::MatrixXd m(fs.size(), points.size() * vs);
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t p = 0; p < points.size(); ++p)
      for (std::size_t c = 0; c < vs; ++c)
        m(i, p * vs + c) = t(i, p, c);
  return m;
}

namespace impl
{
inline std::vector<Point> span_lattice(cells::CellKind kind,
                                       const SpanTestConfig& cfg)
{
  validate(cfg);
  std::vector<Point> pts = cells::lattice_points(
      cells::reference_cell(kind), cfg.points_per_direction, true);
  if (pts.empty())
    throw std::runtime_error("Span test lattice is empty");
  return pts;
}
} // namespace impl

/// Do the two function sets span the same space on their (shared) domain
/// cell? False immediately if the value sizes differ; otherwise decided by
/// rank(M_a) == rank(M_b) == rank of the two matrices stacked vertically.
/// Two empty sets both span {0}.
inline bool spans_same_space(const polyset::PolySet& a,
                             const polyset::PolySet& b,
                             const SpanTestConfig& cfg)
{
  if (a.size() == 0 and b.size() == 0)
    return true;
  if (a.size() == 0 or b.size() == 0)
  {
    const polyset::PolySet& s = a.size() > 0 ? a : b;
    const std::vector<Point> pts = impl::span_lattice(s.cell, cfg);
    return matrix_rank(evaluation_matrix(s, pts), cfg) == 0;
  }
  if (a.value_size() != b.value_size() or a.cell != b.cell)
    return false;
  const std::vector<Point> pts = impl::span_lattice(a.cell, cfg);

  Eigen::MatrixXd ma = evaluation_matrix(a, pts);
  Eigen::MatrixXd mb = evaluation_matrix(b, pts);
  const int ra = matrix_rank(ma, cfg);
  const int rb = matrix_rank(mb, cfg);
  if (ra != rb)
    return false;
  Eigen::MatrixXd stacked(ma.rows() + mb.rows(), ma.cols());
  stacked << ma, mb;
  return ra == matrix_rank(stacked, cfg);
}

/// Span containment: does span(inner) lie inside span(outer)?
inline bool span_contains(const polyset::PolySet& outer,
                          const polyset::PolySet& inner,
                          const SpanTestConfig& cfg)
{
  if (inner.size() == 0)
    return true;
  if (outer.size() == 0)
    return false;
  if (outer.value_size() != inner.value_size() or outer.cell != inner.cell)
    return false;
  const std::vector<Point> pts = impl::span_lattice(outer.cell, cfg);
  Eigen::MatrixXd mo = evaluation_matrix(outer, pts);
  Eigen::MatrixXd mi = evaluation_matrix(inner, pts);
  Eigen::MatrixXd stacked(mo.rows() + mi.rows(), mo.cols());
  stacked << mo, mi;
  return matrix_rank(mo, cfg) == matrix_rank(stacked, cfg);
}

} // namespace fedef::verify
