#include "diskmap/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "diskmap/errors.hpp"
#include "diskmap/parallel.hpp"

namespace diskmap {

double CoeffTable::coefficient_sum(std::size_t n) const {
  double s = 0.0;
  if (n < a.size()) s += std::abs(a[n]);
  if (n < bbar.size() && n > 0) s += std::abs(bbar[n]);
  return s;
}

namespace {

// Circle coefficients c_k, k in [-N, N], of f(r e^{it}); index k + N.
std::vector<cplx> circle_coefficients(const PointEvaluator& f, double r, std::size_t N, std::size_t M) {
  std::vector<cplx> samples(M);
  parallel_for(M, [&](std::size_t j) {
    samples[j] = f(std::polar(r, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(M)));
  });
  std::vector<cplx> roots(M);
  for (std::size_t j = 0; j < M; ++j) {
    roots[j] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(M));
  }
  std::vector<cplx> c(2 * N + 1);
  const long Ml = static_cast<long>(M);
  for (long k = -static_cast<long>(N); k <= static_cast<long>(N); ++k) {
    cplx acc{};
    for (std::size_t j = 0; j < M; ++j) {
      const long idx = ((k * static_cast<long>(j)) % Ml + Ml) % Ml;
      acc += samples[j] * roots[static_cast<std::size_t>(idx)];
    }
    c[static_cast<std::size_t>(k + static_cast<long>(N))] = acc / static_cast<double>(M);
  }
  return c;
}

}  // namespace

CoeffTable extract_coeffs(const PointEvaluator& f, const CoeffOptions& opts) {
  if (opts.N < 1) throw DomainError("coefficient count must be positive");
  if (opts.radii.empty()) throw DomainError("at least one radius is required");
  for (double r : opts.radii) {
    if (!(r > 0.0 && r < 1.0)) throw DomainError("extraction radii must lie in (0, 1)");
  }
  const std::size_t N = opts.N;
  const std::size_t M = std::max<std::size_t>(8 * N, 64);
  const std::size_t ref = static_cast<std::size_t>(
      std::max_element(opts.radii.begin(), opts.radii.end()) - opts.radii.begin());

  CoeffTable t;
  t.radii_used = opts.radii;
  t.nodes = M;
  t.tolerance = opts.tolerance;
  t.a.assign(N + 1, cplx{});
  t.bbar.assign(N + 1, cplx{});

  const double rr = opts.radii[ref];
  const auto cref = circle_coefficients(f, rr, N, M);
  for (std::size_t n = 0; n <= N; ++n) {
    const double scale = std::pow(rr, static_cast<double>(n));
    t.a[n] = cref[N + n] / scale;
    if (n > 0) t.bbar[n] = cref[N - n] / scale;
  }
  for (std::size_t i = 0; i < opts.radii.size(); ++i) {
    if (i == ref) continue;
    const double r = opts.radii[i];
    const auto c = circle_coefficients(f, r, N, M);
    for (std::size_t n = 0; n <= N; ++n) {
      const double rn = std::pow(r, static_cast<double>(n));
      t.disagreement = std::max(t.disagreement, std::abs(c[N + n] - t.a[n] * rn));
      if (n > 0) t.disagreement = std::max(t.disagreement, std::abs(c[N - n] - t.bbar[n] * rn));
    }
  }
  t.valid = t.disagreement <= opts.tolerance;
  return t;
}

CoeffTable extract_coeffs(const PlanarMap& map, const CoeffOptions& opts) {
  if (const auto* p = as_poisson(map); p != nullptr && p->has_source()) {
    const Expr psi = p->psi();
    const QuadratureConfig cfg = p->config();
    return extract_coeffs([psi, cfg](cplx z) { return poisson_integral(psi, DiskPoint(z), 0, cfg).value; }, opts);
  }
  return extract_coeffs([map](cplx z) { return map.value(z); }, opts);
}

PointEvaluator harmonic_part(const PlanarMap& map, const Expr& g, const QuadratureConfig& cfg) {
  return [map, g, cfg](cplx z) { return map.value(z) + green_potential(g, DiskPoint(z), 0, cfg).value; };
}

MajorantSpec MajorantSpec::parse(const std::string& text) {
  ParseOptions po;
  po.variable = "t";
  Expr e = Expr::parse(text, po);
  auto fail = [&](const std::string& why) { return MajorantSpec(e, false, why); };
  try {
    const cplx w0 = e.value(0.0);
    if (std::abs(w0) > 1e-12) return fail("omega(0) != 0");
    constexpr int kSteps = 1000;
    double prev = 0.0;
    double prev_ratio = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= kSteps; ++k) {
      const double t = 2.0 * k / kSteps;
      const cplx w = e.value(t);
      if (w.imag() != 0.0 || !std::isfinite(w.real())) return fail("omega is not real at t = " + format_double(t));
      if (!(w.real() > prev)) return fail("omega is not increasing at t = " + format_double(t));
      const double ratio = w.real() / t;
      if (ratio > prev_ratio * (1.0 + 1e-12)) {
        return fail("omega(t)/t increases at t = " + format_double(t));
      }
      prev = w.real();
      prev_ratio = ratio;
    }
  } catch (const EvalError& ex) {
    return fail(ex.what());
  }
  return MajorantSpec(e, true, "");
}

double MajorantSpec::operator()(double t) const { return expr_.value(t).real(); }

void MajorantSpec::require_valid() const {
  if (!validated_) throw DomainError("majorant '" + expr_.source() + "' is invalid: " + failure_);
}

double majorant_scaling_margin(const MajorantSpec& omega, std::size_t steps) {
  omega.require_valid();
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= steps; ++i) {
    const double nu = static_cast<double>(i) / static_cast<double>(steps);
    for (std::size_t j = 1; j <= steps; ++j) {
      const double t = 2.0 * static_cast<double>(j) / static_cast<double>(steps);
      const double lhs = omega(nu * t);
      const double rhs = nu * omega(t);
      double m = lhs - rhs;
      if (std::abs(m) <= 1e-12 * std::max(std::abs(lhs), std::abs(rhs))) m = 0.0;
      worst = std::min(worst, m);
    }
  }
  return worst;
}

BlochReport bloch_norm(const PlanarMap& map, const MajorantSpec& omega, double alpha, const GridSpec& grid) {
  omega.require_valid();
  if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
  const PointObjective term = [&](const DiskPoint& z) {
    return jet_metrics(map.jet(z.value())).op_norm * omega(std::pow(disk_distance(z), alpha));
  };
  BlochReport rep;
  rep.origin_modulus = std::abs(map.value(0.0));
  const SupResult s = grid_sup(grid, term);
  rep.sup_term = s.value;
  rep.witness = s.witness;
  const auto shells = shell_sups(grid, term);
  const std::size_t keep = std::min<std::size_t>(5, shells.size());
  rep.boundary_ladder.assign(shells.end() - static_cast<std::ptrdiff_t>(keep), shells.end());
  rep.value = rep.origin_modulus + rep.sup_term;
  return rep;
}

}  // namespace diskmap
