#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "diskmap/expr.hpp"
#include "diskmap/planar_map.hpp"
#include "diskmap/report.hpp"
#include "diskmap/sampling.hpp"

namespace diskmap {

enum class LengthKind { Perimeter, Radial, Boundary };
std::string to_string(LengthKind k);

struct LengthReport {
  LengthKind kind = LengthKind::Perimeter;
  double r = 0.0;
  double theta = 0.0;  // radial only
  double value = 0.0;
  std::size_t node_count = 0;
  /// The value moved by at most 1e-6 relative when the nodes were doubled.
  bool converged = false;
};

/// Trapezoid rule for int_0^{2pi} r |f_z - e^{-2i theta} f_zbar| dtheta at
/// `nodes` and 2*nodes points; the finer value is reported.
LengthReport perimeter(const PlanarMap& map, double r, std::size_t nodes = 1024);

/// Upper limit of radial integrals at r = 1.
inline constexpr double kRadialEdge = 1e-6;

/// Composite Simpson for int_0^r |f_z + e^{-2i theta} f_zbar| drho. For
/// r > 1 - 1e-6 the integral stops at 1 - 1e-6 and the last sliver is added
/// as 1e-6 times the integrand there. Maps without a jet at the origin are
/// integrated in u with rho = r u^2.
LengthReport radial_length(const PlanarMap& map, double r, double theta, std::size_t nodes = 2049);

/// Length of the image of the unit circle: polylines with N and 2N vertices
/// combined by Richardson extrapolation, (4 L(2N) - L(N)) / 3.
LengthReport boundary_length(const PlanarMap& map, std::size_t nodes = 4096);

struct BoundaryShape {
  double total_turning = 0.0;  // sum of signed turning angles
  double min_turn = 0.0;       // most negative turning angle
  bool convex = false;         // every turn non-negative and total ~ 2 pi
};

/// Turning-angle diagnostic of the boundary polyline (heuristic).
BoundaryShape boundary_shape(const PlanarMap& map, std::size_t nodes = 4096);

struct LengthSup {
  LengthKind kind = LengthKind::Perimeter;
  double value = 0.0;     // max over the ladder / angle grid
  double argument = 0.0;  // maximising radius or angle
  /// Perimeter: ladder values never decreased. Radial: unused (true).
  bool monotone = true;
  /// Perimeter: Richardson limit over r = 1 - 2^-k. Radial: same as value.
  double limit = 0.0;
  std::vector<LengthReport> ladder;
  std::string label = "lower estimate of the supremum over r < 1";
};

/// Perimeter kind: ladder r_k = 1 - 2^-k below max_radius, then max_radius.
/// Radial kind: radial length to r = 1 on the grid's angles plus one local
/// refinement round around the best angle.
LengthSup length_sup(const PlanarMap& map, LengthKind kind, const GridSpec& grid);

struct SubharmonicReport {
  std::vector<double> radii;
  std::vector<double> values;  // A(r) at each radius
  double hypothesis_worst = 0.0;  // min over radii of 1 - A(r)
  bool hypothesis_holds = false;
  BoundReport conclusion;  // worst A(r) <= r instance
};

/// A(r) = sup_theta int_0^r phi(rho e^{i theta}) drho at the grid radii.
/// Rejects phi that is not real on the grid.
SubharmonicReport subharmonic_radial_check(const Expr& phi, const GridSpec& grid);

}  // namespace diskmap
