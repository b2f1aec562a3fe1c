#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "diskmap/expr.hpp"
#include "diskmap/planar_map.hpp"
#include "diskmap/potential.hpp"
#include "diskmap/sampling.hpp"

namespace diskmap {

/// Fourier coefficients of a harmonic map f = sum a_n z^n + sum bbar_n conj(z)^n.
struct CoeffTable {
  std::vector<cplx> a;     // a_0 .. a_N
  std::vector<cplx> bbar;  // bbar[0] = 0, then the coefficients of conj(z)^1 .. conj(z)^N
  std::vector<double> radii_used;
  std::size_t nodes = 0;  // samples per circle
  /// max over the non-reference radii r and all n of
  /// |measured circle coefficient at r - a_n r^n| (same for bbar).
  double disagreement = 0.0;
  double tolerance = 1e-8;
  bool valid = false;

  std::size_t degree() const noexcept { return a.empty() ? 0 : a.size() - 1; }
  /// |a_n| + |b_n| for n >= 1.
  double coefficient_sum(std::size_t n) const;
};

struct CoeffOptions {
  std::size_t N = 32;
  std::vector<double> radii = {0.4, 0.6, 0.8};
  double tolerance = 1e-8;
};

/// Discrete Fourier projection on circles (max(8N, 64) nodes each). The
/// largest radius is the reference: a_n = c_n(r_ref) / r_ref^n. Other radii
/// only feed the disagreement check, which is what flags non-harmonic input.
CoeffTable extract_coeffs(const PointEvaluator& f, const CoeffOptions& opts = {});

/// For a Poisson solution with a source term the harmonic part f + G[g] =
/// P[psi] is extracted instead of f.
CoeffTable extract_coeffs(const PlanarMap& map, const CoeffOptions& opts = {});

/// z -> f(z) + G[g](z), the harmonic part of a map with Laplacian g.
PointEvaluator harmonic_part(const PlanarMap& map, const Expr& g, const QuadratureConfig& cfg = {});

/// A majorant omega(t), t >= 0, written in the DSL with variable `t`.
class MajorantSpec {
 public:
  /// Parses and validates: omega(0) = 0, omega real, strictly increasing and
  /// omega(t)/t non-increasing on a 1000-step ladder over (0, 2].
  static MajorantSpec parse(const std::string& text);

  double operator()(double t) const;
  bool validated() const noexcept { return validated_; }
  /// Why validation failed; empty when validated.
  const std::string& failure() const noexcept { return failure_; }
  const Expr& expr() const noexcept { return expr_; }
  /// Throws DomainError unless validated.
  void require_valid() const;

 private:
  MajorantSpec(Expr e, bool ok, std::string why) : expr_(std::move(e)), validated_(ok), failure_(std::move(why)) {}
  Expr expr_;
  bool validated_;
  std::string failure_;
};

/// min over a (nu, t) grid of omega(nu t) - nu omega(t); nonnegative for
/// majorants.
double majorant_scaling_margin(const MajorantSpec& omega, std::size_t steps = 50);

struct BlochReport {
  double value = 0.0;      // |f(0)| + sup_term
  double origin_modulus = 0.0;
  double sup_term = 0.0;   // grid sup of ||D_f|| omega(d^alpha)
  cplx witness{};
  /// Shell sups of the weighted term on the outermost shells, innermost first.
  std::vector<double> boundary_ladder;
};

BlochReport bloch_norm(const PlanarMap& map, const MajorantSpec& omega, double alpha, const GridSpec& grid);

}  // namespace diskmap
