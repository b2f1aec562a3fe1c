#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "diskmap/coefficients.hpp"
#include "diskmap/ellipticity.hpp"
#include "diskmap/planar_map.hpp"
#include "diskmap/report.hpp"
#include "diskmap/sampling.hpp"

namespace diskmap {

/// Inputs of the coefficient and derivative inequalities. Every right-hand
/// side is computed from these fields only.
struct BoundContext {
  EllipticityParams params;
  std::optional<double> R;              // boundary length / (2 pi)
  std::optional<double> perimeter_sup;  // l_f(1)
  std::optional<double> radial_sup;     // l*_f(1)
  std::optional<CoeffTable> coeffs;
  /// Where each field came from ("given", "boundary polyline", ...).
  std::map<std::string, std::string> provenance;
};

struct BoundBatch {
  std::vector<BoundReport> reports;
  std::vector<std::string> diagnostics;

  double worst_margin() const;
  const BoundReport* worst() const;
  std::size_t violated() const;
};

/// chen-1.0, CRP-1c, Mat-1, eq-2017 and chen-1.2 for n = 1..n_max with
/// lhs = |a_n| + |b_n|. Missing inputs or an invalid coefficient table give
/// indeterminate rows.
BoundBatch coefficient_bounds_report(const BoundContext& ctx, std::size_t n_max);

/// kalaj-1 (|f_z|), CP-K and CRP-2c (||D_f||) at every base grid point.
BoundBatch derivative_bounds_report(const BoundContext& ctx, const PlanarMap& map, const GridSpec& grid);

/// Right-hand sides, exposed for checks.
double cpk_rhs(const EllipticityParams& p, double R, double modulus);
double chen10_rhs(const EllipticityParams& p, double R, std::size_t n);

enum class PerimeterSource { Boundary, Ladder };

struct MeasureOptions {
  std::optional<double> K;
  std::optional<double> Kprime;
  std::optional<double> R;
  std::optional<double> perimeter_sup;
  std::optional<double> radial_sup;
  PerimeterSource perimeter_source = PerimeterSource::Boundary;
  CoeffOptions coeff;
};

/// Fills unset fields by measurement: K from qc_constant (K' = 0 then),
/// R from the boundary polyline limit, l_f(1) from the boundary limit or the
/// perimeter ladder, l*_f(1) from length_sup, coefficients by extraction.
BoundContext measure_context(const PlanarMap& map, const GridSpec& grid, const MeasureOptions& opts = {});

}  // namespace diskmap
