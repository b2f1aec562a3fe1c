#include "diskmap/potential.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "diskmap/errors.hpp"
#include "diskmap/kernels.hpp"
#include "diskmap/parallel.hpp"

namespace diskmap {

void QuadratureConfig::validate() const {
  if (radial_nodes < 8 || angular_nodes < 8 || patch_nodes < 8 || boundary_nodes < 8) {
    throw DomainError("quadrature node counts must be at least 8");
  }
  if (!(singular_patch_radius > 0.0 && singular_patch_radius < 0.5)) {
    throw DomainError("singular_patch_radius must lie in (0, 0.5)");
  }
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kPatchTolerance = 1e-4;
constexpr std::size_t kMaxBoundaryNodes = std::size_t{1} << 20;

struct SourceEval {
  const Expr& g;
  bool constant;
  cplx c;

  cplx operator()(cplx w) const { return constant ? c : g.value(w); }
};

}  // namespace

WirtingerJet green_potential(const Expr& g, const DiskPoint& zp, int order, const QuadratureConfig& cfg) {
  cfg.validate();
  if (order != 0 && order != 1) throw DomainError("order must be 0 or 1");
  const cplx z = zp.value();
  const bool constant = !g.depends_on_variable();
  const cplx cval = constant ? g.value(0.0) : cplx{};
  if (constant && cval == cplx{}) return {};

  const SourceEval src{g, constant, cval};
  const double s = std::abs(z);
  const double rho_p = std::min(cfg.singular_patch_radius, 0.5 * (1.0 - s));
  const GaussRule& inner = gauss_legendre_unit(cfg.patch_nodes);
  const GaussRule& coarse = gauss_legendre_unit(std::max<std::size_t>(cfg.patch_nodes / 2, 1));
  const GaussRule& outer = gauss_legendre_unit(cfg.radial_nodes);
  const std::size_t nphi = cfg.angular_nodes;
  const cplx zc = std::conj(z);

  // Columns: value re/im, dz re/im, dzbar re/im.
  constexpr std::size_t kCols = 6;
  std::vector<std::array<double, kCols>> rays(nphi);
  std::vector<std::array<double, kCols>> rays_inner(nphi);
  std::vector<std::array<double, kCols>> rays_coarse(nphi);

  auto piece = [&](cplx e, double a, double b, bool squared, const GaussRule& rule) {
    std::array<double, kCols> acc{};
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double u = rule.nodes[k];
      const double rho = squared ? b * u * u : a + (b - a) * u;
      const double wt = rule.weights[k] * (squared ? 2.0 * b * u : b - a);
      const cplx w = z + rho * e;
      const cplx gw = src(w);
      const cplx one_minus = 1.0 - z * std::conj(w);
      const cplx v = (std::log(std::abs(one_minus)) - std::log(rho)) * rho * gw;
      acc[0] += wt * v.real();
      acc[1] += wt * v.imag();
      if (order == 1) {
        const cplx dz = 0.5 * (-std::conj(w) * rho / one_minus + std::conj(e)) * gw;
        const cplx dzb = 0.5 * (-w * rho / (1.0 - zc * w) + e) * gw;
        acc[2] += wt * dz.real();
        acc[3] += wt * dz.imag();
        acc[4] += wt * dzb.real();
        acc[5] += wt * dzb.imag();
      }
    }
    return acc;
  };

  for (std::size_t j = 0; j < nphi; ++j) {
    const double phi = kTwoPi * static_cast<double>(j) / static_cast<double>(nphi);
    const cplx e = std::polar(1.0, phi);
    const double c = (zc * e).real();
    const double q = 1.0 - s * s;
    const double root = std::sqrt(c * c + q);
    // Distance from z to the unit circle along e, without cancellation.
    const double rho_max = c > 0.0 ? q / (c + root) : root - c;
    rays_inner[j] = piece(e, 0.0, rho_p, true, inner);
    rays_coarse[j] = piece(e, 0.0, rho_p, true, coarse);
    rays[j] = piece(e, rho_p, rho_max, false, outer);
  }

  std::array<double, kCols> total{};
  std::array<double, kCols> patch{};
  std::array<double, kCols> patch_coarse{};
  std::vector<double> col(nphi);
  auto column_sum = [&](const std::vector<std::array<double, kCols>>& src_rows, std::size_t c) {
    for (std::size_t j = 0; j < nphi; ++j) col[j] = src_rows[j][c];
    return pairwise_sum(col) / static_cast<double>(nphi);
  };
  for (std::size_t c = 0; c < kCols; ++c) {
    patch[c] = column_sum(rays_inner, c);
    patch_coarse[c] = column_sum(rays_coarse, c);
    total[c] = column_sum(rays, c) + patch[c];
  }
  double disagreement = 0.0;
  for (std::size_t c = 0; c < kCols; ++c) disagreement = std::max(disagreement, std::abs(patch[c] - patch_coarse[c]));
  if (!(disagreement <= kPatchTolerance)) {
    throw ConvergenceError("Green potential patch refinement disagrees by " + format_double(disagreement));
  }

  WirtingerJet out;
  out.value = {total[0], total[1]};
  if (order == 1) {
    out.dz = {total[2], total[3]};
    out.dzbar = {total[4], total[5]};
  }
  return out;
}

std::size_t poisson_node_count(double modulus, const QuadratureConfig& cfg) {
  // The trapezoid error for the Poisson kernel decays like |z|^N; ask for
  // |z|^N below e^-40.
  const double d = 1.0 - modulus;
  std::size_t n = cfg.boundary_nodes;
  while (n < kMaxBoundaryNodes && static_cast<double>(n) * d < 40.0) n *= 2;
  return n;
}

namespace {

WirtingerJet poisson_sum(const std::vector<cplx>& samples, cplx z, int order) {
  const std::size_t n = samples.size();
  const DiskPoint zp(z);
  std::vector<double> cols[6];
  for (auto& c : cols) c.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double theta = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    const KernelEval p = poisson_eval(zp, theta, order == 1);
    const cplx v = p.value * samples[k];
    cols[0][k] = v.real();
    cols[1][k] = v.imag();
    if (order == 1) {
      const cplx dz = p.dz * samples[k];
      const cplx dzb = p.dzbar * samples[k];
      cols[2][k] = dz.real();
      cols[3][k] = dz.imag();
      cols[4][k] = dzb.real();
      cols[5][k] = dzb.imag();
    }
  }
  const double inv = 1.0 / static_cast<double>(n);
  WirtingerJet out;
  out.value = cplx{pairwise_sum(cols[0]), pairwise_sum(cols[1])} * inv;
  if (order == 1) {
    out.dz = cplx{pairwise_sum(cols[2]), pairwise_sum(cols[3])} * inv;
    out.dzbar = cplx{pairwise_sum(cols[4]), pairwise_sum(cols[5])} * inv;
  }
  return out;
}

std::vector<cplx> sample_circle(const Expr& psi, std::size_t n) {
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = psi.value(std::polar(1.0, kTwoPi * static_cast<double>(k) / static_cast<double>(n)));
  }
  return out;
}

}  // namespace

WirtingerJet poisson_integral(const Expr& psi, const DiskPoint& z, int order, const QuadratureConfig& cfg) {
  cfg.validate();
  if (order != 0 && order != 1) throw DomainError("order must be 0 or 1");
  return poisson_sum(sample_circle(psi, poisson_node_count(z.modulus(), cfg)), z.value(), order);
}

PoissonSolutionMap::PoissonSolutionMap(Expr psi, Expr g, QuadratureConfig cfg)
    : psi_(std::move(psi)), g_(std::move(g)), cfg_(cfg) {
  cfg_.validate();
  has_source_ = g_.depends_on_variable() || g_.value(0.0) != cplx{};
}

std::shared_ptr<const std::vector<cplx>> PoissonSolutionMap::boundary_samples(std::size_t n) const {
  {
    std::lock_guard lock(cache_mutex_);
    auto it = samples_.find(n);
    if (it != samples_.end()) return it->second;
  }
  auto fresh = std::make_shared<const std::vector<cplx>>(sample_circle(psi_, n));
  std::lock_guard lock(cache_mutex_);
  return samples_.emplace(n, fresh).first->second;
}

WirtingerJet PoissonSolutionMap::evaluate(cplx z, int order) const {
  const DiskPoint zp(z);
  const auto samples = boundary_samples(poisson_node_count(zp.modulus(), cfg_));
  WirtingerJet out = poisson_sum(*samples, z, order);
  if (has_source_) {
    const WirtingerJet gp = green_potential(g_, zp, order, cfg_);
    out.value -= gp.value;
    out.dz -= gp.dz;
    out.dzbar -= gp.dzbar;
  }
  return out;
}

cplx PoissonSolutionMap::value(cplx z) const {
  // The solution extends continuously by psi to the circle.
  if (std::abs(z) >= 1.0 && std::abs(std::abs(z) - 1.0) <= 1e-14) return psi_.value(z / std::abs(z));
  return evaluate(z, 0).value;
}

WirtingerJet PoissonSolutionMap::jet(cplx z) const { return evaluate(z, 1); }

std::string PoissonSolutionMap::description() const {
  return "P[" + psi_.source() + "] - G[" + g_.source() + "]";
}

PlanarMap solve_poisson(const Expr& psi, const Expr& g, const QuadratureConfig& cfg) {
  cfg.validate();
  try {
    (void)sample_circle(psi, cfg.boundary_nodes);
    (void)sampled_sup_norm(g, 16, 64);
  } catch (const EvalError& e) {
    throw DomainError(std::string("Poisson data not evaluable: ") + e.what());
  }
  return PlanarMap::from_impl(std::make_shared<PoissonSolutionMap>(psi, g, cfg));
}

const PoissonSolutionMap* as_poisson(const PlanarMap& map) {
  return dynamic_cast<const PoissonSolutionMap*>(&map.impl());
}

double laplacian_residual(const PlanarMap& map, const Expr& g, const DiskPoint& zp) {
  const double h = kLaplacianStep;
  const cplx z = zp.value();
  if (disk_distance(zp) < 2.0 * h) throw DomainError("Laplacian stencil leaves the disk");
  const cplx lap = (map.value(z + h) + map.value(z - h) + map.value(z + cplx{0.0, h}) +
                    map.value(z - cplx{0.0, h}) - 4.0 * map.value(z)) /
                   (h * h);
  return std::abs(lap - g.value(z));
}

double sampled_sup_norm(const Expr& g, std::size_t radial, std::size_t angular) {
  double sup = std::abs(g.value(0.0));
  for (std::size_t i = 1; i <= radial; ++i) {
    const double r = static_cast<double>(i) / static_cast<double>(radial);
    for (std::size_t k = 0; k < angular; ++k) {
      sup = std::max(sup, std::abs(g.value(std::polar(r, kTwoPi * static_cast<double>(k) / static_cast<double>(angular)))));
    }
  }
  return sup;
}

GridSpec gradient_bound_default_grid() {
  GridSpec grid;
  grid.radial_count = 40;
  grid.angular_count = 64;
  grid.max_radius = 1.0 - 1e-3;
  grid.refine_rounds = 0;
  return grid;
}

GradientBoundReport gradient_bound_check(const Expr& g, const GridSpec& grid, const QuadratureConfig& cfg) {
  grid.validate();
  cfg.validate();
  const auto pts = grid.points();
  std::vector<double> values(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    const WirtingerJet j = green_potential(g, pts[i], 1, cfg);
    values[i] = std::max(std::abs(j.dz), std::abs(j.dzbar));
  });

  GradientBoundReport rep;
  rep.g_sup = sampled_sup_norm(g);
  rep.bound = rep.g_sup / 3.0;
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  rep.sup_gradient = values[best];
  rep.witness = pts[best].value();
  rep.shell_sups.assign(grid.radial_count, 0.0);
  for (std::size_t s = 0; s < grid.radial_count; ++s) {
    for (std::size_t k = 0; k < grid.angular_count; ++k) {
      rep.shell_sups[s] = std::max(rep.shell_sups[s], values[1 + s * grid.angular_count + k]);
    }
  }
  if (grid.radial_count >= 2) {
    const double r1 = grid.radius(grid.radial_count - 1);
    const double r2 = grid.radius(grid.radial_count);
    const double s1 = rep.shell_sups[grid.radial_count - 2];
    const double s2 = rep.shell_sups[grid.radial_count - 1];
    rep.extrapolated_sup = s2 + (s2 - s1) * (1.0 - r2) / (r2 - r1);
  } else {
    rep.extrapolated_sup = rep.sup_gradient;
  }
  return rep;
}

}  // namespace diskmap
