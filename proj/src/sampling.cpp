#include "diskmap/sampling.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>

#include "diskmap/errors.hpp"
#include "diskmap/parallel.hpp"

namespace diskmap {

void GridSpec::validate() const {
  if (radial_count < 1 || angular_count < 1) throw DomainError("grid counts must be positive");
  if (!(max_radius > 0.0 && max_radius <= 1.0 - 1e-6)) {
    throw DomainError("grid max_radius must lie in (0, 1 - 1e-6]");
  }
}

double GridSpec::radius(std::size_t shell) const {
  return max_radius * static_cast<double>(shell) / static_cast<double>(radial_count);
}

double GridSpec::angle(std::size_t k) const {
  return 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(angular_count);
}

std::vector<DiskPoint> GridSpec::points() const {
  validate();
  std::vector<DiskPoint> pts;
  pts.reserve(1 + radial_count * angular_count);
  pts.emplace_back(cplx{});
  for (std::size_t i = 1; i <= radial_count; ++i) {
    for (std::size_t k = 0; k < angular_count; ++k) pts.emplace_back(std::polar(radius(i), angle(k)));
  }
  return pts;
}

namespace {

struct Candidate {
  double value;
  double r;
  double theta;
};

// Evaluates the objective at all points; failures are NaN.
std::vector<double> evaluate_all(const std::vector<cplx>& pts, const PointObjective& objective) {
  std::vector<double> out(pts.size(), std::numeric_limits<double>::quiet_NaN());
  parallel_for(pts.size(), [&](std::size_t i) {
    try {
      out[i] = objective(DiskPoint(pts[i]));
    } catch (const DomainError&) {
    }
  });
  return out;
}

}  // namespace

SupResult grid_sup(const GridSpec& grid, const PointObjective& objective) {
  grid.validate();
  std::vector<cplx> pts;
  std::vector<std::pair<double, double>> polar;
  pts.emplace_back();
  polar.emplace_back(0.0, 0.0);
  for (std::size_t i = 1; i <= grid.radial_count; ++i) {
    for (std::size_t k = 0; k < grid.angular_count; ++k) {
      pts.push_back(std::polar(grid.radius(i), grid.angle(k)));
      polar.emplace_back(grid.radius(i), grid.angle(k));
    }
  }
  const auto values = evaluate_all(pts, objective);

  SupResult res;
  std::optional<Candidate> best;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::isnan(values[i])) {
      ++res.failures;
      continue;
    }
    ++res.evaluated;
    if (!best || values[i] > best->value) best = Candidate{values[i], polar[i].first, polar[i].second};
  }
  if (!best || static_cast<double>(res.failures) > 0.01 * static_cast<double>(values.size())) {
    throw ConvergenceError("objective failed at " + std::to_string(res.failures) + " of " +
                           std::to_string(values.size()) + " grid points");
  }

  double dr = grid.max_radius / static_cast<double>(grid.radial_count);
  double dt = 2.0 * std::numbers::pi / static_cast<double>(grid.angular_count);
  for (std::size_t round = 0; round < grid.refine_rounds; ++round) {
    const double r0 = best->r;
    const double t0 = best->theta;
    const bool at_origin = r0 == 0.0;
    std::vector<cplx> local;
    std::vector<std::pair<double, double>> local_polar;
    for (int a = -4; a <= 4; ++a) {
      const double r = r0 + a * dr / 4.0;
      if (r < 0.0 || r > grid.max_radius) continue;
      if (at_origin) {
        // Angle is meaningless at the origin; sweep the whole circle.
        for (std::size_t k = 0; k < grid.angular_count; ++k) {
          local.push_back(std::polar(r, grid.angle(k)));
          local_polar.emplace_back(r, grid.angle(k));
        }
        continue;
      }
      for (int b = -4; b <= 4; ++b) {
        const double t = t0 + b * dt / 4.0;
        local.push_back(std::polar(r, t));
        local_polar.emplace_back(r, t);
      }
    }
    const auto lv = evaluate_all(local, objective);
    for (std::size_t i = 0; i < lv.size(); ++i) {
      if (std::isnan(lv[i])) continue;
      ++res.evaluated;
      if (lv[i] > best->value) best = Candidate{lv[i], local_polar[i].first, local_polar[i].second};
    }
    dr /= 4.0;
    if (!at_origin) dt /= 4.0;
  }
  res.value = best->value;
  res.witness = std::polar(best->r, best->theta);
  return res;
}

std::vector<double> shell_sups(const GridSpec& grid, const PointObjective& objective) {
  grid.validate();
  std::vector<cplx> pts;
  for (std::size_t i = 1; i <= grid.radial_count; ++i) {
    for (std::size_t k = 0; k < grid.angular_count; ++k) pts.push_back(std::polar(grid.radius(i), grid.angle(k)));
  }
  const auto values = evaluate_all(pts, objective);
  std::vector<double> out(grid.radial_count, std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 0; i < grid.radial_count; ++i) {
    for (std::size_t k = 0; k < grid.angular_count; ++k) {
      const double v = values[i * grid.angular_count + k];
      if (std::isnan(v)) continue;
      if (std::isnan(out[i]) || v > out[i]) out[i] = v;
    }
  }
  return out;
}

const GaussRule& gauss_legendre_unit(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<GaussRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (slot) return *slot;
  if (n == 0) throw DomainError("Gauss rule needs at least one node");
  auto rule = std::make_unique<GaussRule>();
  rule->nodes.resize(n);
  rule->weights.resize(n);
  // Newton iteration on P_n from the Chebyshev-like initial guesses.
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute derivative at the converged root for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Map [-1, 1] to [0, 1].
    rule->nodes[i] = 0.5 * (1.0 - x);
    rule->nodes[n - 1 - i] = 0.5 * (1.0 + x);
    rule->weights[i] = 0.5 * w;
    rule->weights[n - 1 - i] = 0.5 * w;
  }
  slot = std::move(rule);
  return *slot;
}

std::vector<double> simpson_weights(std::size_t n) {
  if (n < 3 || n % 2 == 0) throw DomainError("Simpson rule needs an odd node count >= 3");
  const double h = 1.0 / static_cast<double>(n - 1);
  std::vector<double> w(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double c = (k == 0 || k == n - 1) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    w[k] = c * h / 3.0;
  }
  return w;
}

}  // namespace diskmap
