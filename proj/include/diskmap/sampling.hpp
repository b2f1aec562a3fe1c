#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "diskmap/wirtinger.hpp"

namespace diskmap {

/// Polar sampling grid: the origin plus radial_count shells at radii
/// max_radius * i / radial_count (i = 1..radial_count), each with
/// angular_count equally spaced angles.
struct GridSpec {
  std::size_t radial_count = 96;
  std::size_t angular_count = 192;
  double max_radius = 1.0 - 1e-4;
  std::size_t refine_rounds = 3;

  void validate() const;
  double radius(std::size_t shell) const;  // shell in [1, radial_count]
  double angle(std::size_t k) const;
  std::vector<DiskPoint> points() const;
};

/// Objective on a point; may throw DomainError (e.g. undefined jet) which
/// counts as a skipped point.
using PointObjective = std::function<double(const DiskPoint&)>;

struct SupResult {
  double value = 0.0;
  cplx witness{};
  std::size_t evaluated = 0;
  std::size_t failures = 0;
};

/// Grid supremum followed by `refine_rounds` local refinements around the
/// running maximiser (spacing divided by 4 each round, 9x9 local stencil).
/// Ties go to the earlier-evaluated point. Throws ConvergenceError when more
/// than 1% of the base grid fails to evaluate.
SupResult grid_sup(const GridSpec& grid, const PointObjective& objective);

/// Supremum of `objective` over each shell of the base grid (no refinement);
/// entry i-1 belongs to shell i. Failed points are skipped; an all-failed
/// shell yields NaN.
std::vector<double> shell_sups(const GridSpec& grid, const PointObjective& objective);

/// Gauss-Legendre nodes and weights on [0, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre_unit(std::size_t n);

/// Composite Simpson weights on [0, 1] for an odd node count >= 3.
std::vector<double> simpson_weights(std::size_t n);

}  // namespace diskmap
