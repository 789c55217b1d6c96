// Copyright (c) 2026 fedef contributors
// SPDX-License-Identifier:    MIT

#pragma once

/// @file verify.hpp
/// Variant verification: decide whether two element definitions are variants
/// of the same element by aligning reference-cell conventions, comparing
/// polynomial spaces, per-entity DOF counts and per-entity uncontrolled
/// trace spaces, all through rank-based span tests.

#include "analysis.hpp"
#include "cells.hpp"
#include "elements.hpp"
#include "maps.hpp"
#include "span.hpp"
#include <optional>
#include <string>
#include <vector>

namespace fedef::verify
{

enum class Stage
{
  none,
  space_mismatch,
  dof_count_mismatch,
  trace_mismatch,
  map_kind_mismatch
};

inline std::string to_string(Stage s)
{
  switch (s)
  {
  case Stage::none:
    return "none";
  case Stage::space_mismatch:
    return "space_mismatch";
  case Stage::dof_count_mismatch:
    return "dof_count_mismatch";
  case Stage::trace_mismatch:
    return "trace_mismatch";
  case Stage::map_kind_mismatch:
    return "map_kind_mismatch";
  }
  throw std::invalid_argument("Unknown stage");
}

struct VerificationReport
{
  bool result = false;
  Stage stage = Stage::none;
  std::optional<cells::EntityRef> stage_entity;

  struct EntityDetail
  {
    int dim = 0;
    int index = 0;
    int dofs_a = 0;
    int dofs_b = 0;
    int unc_rank_a = -1;
    int unc_rank_b = -1;
    int stacked_rank = -1;
  };
  std::vector<EntityDetail> entities;
  SpanTestConfig config;
  double dual_condition_a = 0.0;
  double dual_condition_b = 0.0;
};

inline SpanTestConfig default_config(const elements::CiarletElement& a,
                                     const elements::CiarletElement& b)
{
  return make_config(std::max(a.superdegree, b.superdegree));
}

/// Run the variant-verification pipeline on two built elements.
inline VerificationReport
verify_variants(const elements::CiarletElement& el_a,
                const elements::CiarletElement& el_b,
                std::optional<SpanTestConfig> config = std::nullopt)
{
  VerificationReport report;
  report.config = config.value_or(default_config(el_a, el_b));
  validate(report.config);
  report.dual_condition_a = el_a.dual_condition;
  report.dual_condition_b = el_b.dual_condition;

  // Stage 1: align reference-cell conventions when the cells differ.
  if (el_a.cell.kind != el_b.cell.kind)
  {
    report.stage = Stage::space_mismatch;
    return report;
  }
  const elements::CiarletElement* b = &el_b;
  elements::CiarletElement aligned;
  bool same_cell = true;
  for (std::size_t v = 0; v < el_a.cell.vertices.size() and same_cell; ++v)
    for (int d = 0; d < 3; ++d)
      if (el_a.cell.vertices[v][d] != el_b.cell.vertices[v][d])
      {
        same_cell = false;
        break;
      }
  if (!same_cell)
  {
    if (el_a.map_kind != el_b.map_kind)
    {
      report.stage = Stage::map_kind_mismatch;
      return report;
    }
    aligned = maps::align_convention(el_b, el_a.cell.vertices);
    b = &aligned;
  }

  const auto dofs_a = el_a.entity_dofs();
  const auto dofs_b = b->entity_dofs();
  for (int dim = 0; dim <= el_a.cell.tdim; ++dim)
    for (int i = 0; i < el_a.cell.entity_count(dim); ++i)
    {
      VerificationReport::EntityDetail detail;
      detail.dim = dim;
      detail.index = i;
      detail.dofs_a = static_cast<int>(dofs_a[dim][i].size());
      detail.dofs_b = static_cast<int>(dofs_b[dim][i].size());
      report.entities.push_back(detail);
    }

  // Stage 2: same polynomial space and same dimension.
  if (el_a.space.size() != b->space.size()
      or !spans_same_space(el_a.space, b->space, report.config))
  {
    report.stage = Stage::space_mismatch;
    return report;
  }

  // Stage 3: per-entity DOF counts.
  for (const auto& detail : report.entities)
    if (detail.dofs_a != detail.dofs_b)
    {
      report.stage = Stage::dof_count_mismatch;
      report.stage_entity = cells::EntityRef{detail.dim, detail.index};
      return report;
    }

  // Stage 4: per-entity uncontrolled trace spans.
  for (auto& detail : report.entities)
  {
    const cells::EntityRef e{detail.dim, detail.index};
    polyset::PolySet unc_a = analysis::uncontrolled_trace(
        el_a, e, report.config.rank_rel_tolerance);
    polyset::PolySet unc_b = analysis::uncontrolled_trace(
        *b, e, report.config.rank_rel_tolerance);
    detail.unc_rank_a = static_cast<int>(unc_a.size());
    detail.unc_rank_b = static_cast<int>(unc_b.size());

    bool same = spans_same_space(unc_a, unc_b, report.config);
    if (unc_a.size() > 0 or unc_b.size() > 0)
    {
      // Stacked rank for the diagnostics row.
      if (unc_a.size() > 0 and unc_b.size() > 0
          and unc_a.value_size() == unc_b.value_size())
      {
        const std::vector<Point> pts
            = cells::lattice_points(cells::reference_cell(unc_a.cell),
                                    report.config.points_per_direction, true);
        Eigen::MatrixXd ma = evaluation_matrix(unc_a, pts);
        Eigen::MatrixXd mb = evaluation_matrix(unc_b, pts);
        Eigen::MatrixXd stacked(ma.rows() + mb.rows(), ma.cols());
        stacked << ma, mb;
        detail.stacked_rank = matrix_rank(stacked, report.config);
      }
      else
      {
        detail.stacked_rank
            = static_cast<int>(std::max(unc_a.size(), unc_b.size()));
      }
    }
    else
      detail.stacked_rank = 0;

    if (!same and report.stage == Stage::none)
    {
      report.stage = Stage::trace_mismatch;
      report.stage_entity = e;
    }
  }
  if (report.stage != Stage::none)
    return report;

  report.result = true;
  return report;
}

} // namespace fedef::verify
