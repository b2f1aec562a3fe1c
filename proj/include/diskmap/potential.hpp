#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "diskmap/expr.hpp"
#include "diskmap/planar_map.hpp"
#include "diskmap/sampling.hpp"
#include "diskmap/wirtinger.hpp"

namespace diskmap {

struct QuadratureConfig {
  std::size_t radial_nodes = 128;
  std::size_t angular_nodes = 256;
  double singular_patch_radius = 0.05;
  std::size_t patch_nodes = 64;
  std::size_t boundary_nodes = 512;

  void validate() const;
};

/// Green potential G[g](z) = (1/2pi) * integral of G(z,w) g(w) dA(w).
///
/// Quadrature in polar coordinates (rho, phi) centred at z, covering the whole
/// disk: on each of angular_nodes rays the segment [0, rho_max(phi)] is split
/// at the patch radius. The inner piece uses rho = rho_p u^2 with
/// Gauss-Legendre in u, which absorbs the rho log rho behaviour at z; the outer
/// piece is smooth and uses plain Gauss-Legendre. The area element cancels the
/// 1/rho singularity of the kernel derivatives, so order 1 uses the same
/// nodes. The inner piece is recomputed with half the nodes; a disagreement
/// above 1e-4 throws ConvergenceError.
///
/// order 0 fills only `value`; order 1 fills all three components.
WirtingerJet green_potential(const Expr& g, const DiskPoint& z, int order, const QuadratureConfig& cfg = {});

/// Poisson integral of boundary data psi (an expression evaluated at e^{it})
/// by the trapezoid rule. boundary_nodes is a floor: near the circle the node
/// count is doubled until the kernel is resolved.
WirtingerJet poisson_integral(const Expr& psi, const DiskPoint& z, int order, const QuadratureConfig& cfg = {});

/// Node count used by poisson_integral at radius |z|.
std::size_t poisson_node_count(double modulus, const QuadratureConfig& cfg);

/// f = P[psi] - G[g], the solution of Laplace(f) = g with boundary values psi.
class PoissonSolutionMap : public MapImpl {
 public:
  PoissonSolutionMap(Expr psi, Expr g, QuadratureConfig cfg);

  cplx value(cplx z) const override;
  WirtingerJet jet(cplx z) const override;
  MapRepresentation representation() const override { return MapRepresentation::PoissonSolution; }
  std::string description() const override;

  const Expr& psi() const noexcept { return psi_; }
  const Expr& g() const noexcept { return g_; }
  const QuadratureConfig& config() const noexcept { return cfg_; }
  /// False when g is the constant 0, i.e. the map is harmonic.
  bool has_source() const noexcept { return has_source_; }

 private:
  WirtingerJet evaluate(cplx z, int order) const;
  std::shared_ptr<const std::vector<cplx>> boundary_samples(std::size_t n) const;

  Expr psi_;
  Expr g_;
  QuadratureConfig cfg_;
  bool has_source_ = true;
  mutable std::mutex cache_mutex_;
  mutable std::map<std::size_t, std::shared_ptr<const std::vector<cplx>>> samples_;
};

/// Checks that psi evaluates on the circle and g on the closed disk, then
/// wraps the pair. Evaluation failures are rethrown as DomainError.
PlanarMap solve_poisson(const Expr& psi, const Expr& g, const QuadratureConfig& cfg = {});

/// The Poisson representation behind `map`, or null.
const PoissonSolutionMap* as_poisson(const PlanarMap& map);

/// Step of the five-point Laplacian used by laplacian_residual.
inline constexpr double kLaplacianStep = 1e-3;

/// |Laplace(f)(z) - g(z)| with the five-point stencil of step 1e-3.
double laplacian_residual(const PlanarMap& map, const Expr& g, const DiskPoint& z);

/// Sampled sup of |g| on the closed disk (radii 0..1 inclusive).
double sampled_sup_norm(const Expr& g, std::size_t radial = 64, std::size_t angular = 256);

/// Sampled check of sup max(|d_z G[g]|, |d_zbar G[g]|) <= sup|g| / 3.
struct GradientBoundReport {
  double sup_gradient = 0.0;  // over the grid, origin included
  cplx witness{};
  double g_sup = 0.0;
  double bound = 0.0;  // g_sup / 3
  /// Linear extrapolation to |z| = 1 of the last two shell sups.
  double extrapolated_sup = 0.0;
  std::vector<double> shell_sups;
};

GridSpec gradient_bound_default_grid();
GradientBoundReport gradient_bound_check(const Expr& g, const GridSpec& grid = gradient_bound_default_grid(),
                                         const QuadratureConfig& cfg = {});

}  // namespace diskmap
