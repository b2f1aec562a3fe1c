#include "diskmap/lengths.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "diskmap/errors.hpp"
#include "diskmap/parallel.hpp"

namespace diskmap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool close_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)); }

}  // namespace

std::string to_string(LengthKind k) {
  switch (k) {
    case LengthKind::Perimeter:
      return "perimeter";
    case LengthKind::Radial:
      return "radial";
    case LengthKind::Boundary:
      return "boundary";
  }
  return "unknown";
}

LengthReport perimeter(const PlanarMap& map, double r, std::size_t nodes) {
  if (!(r > 0.0 && r < 1.0)) throw DomainError("perimeter radius must lie in (0, 1)");
  if (nodes < 8) throw DomainError("perimeter needs at least 8 nodes");
  const std::size_t fine = 2 * nodes;
  std::vector<double> vals(fine);
  parallel_for(fine, [&](std::size_t k) {
    const double t = kTwoPi * static_cast<double>(k) / static_cast<double>(fine);
    const auto j = map.jet(std::polar(r, t));
    vals[k] = r * std::abs(j.dz - std::polar(1.0, -2.0 * t) * j.dzbar);
  });
  std::vector<double> coarse(nodes);
  for (std::size_t k = 0; k < nodes; ++k) coarse[k] = vals[2 * k];
  const double lf = pairwise_sum(vals) * kTwoPi / static_cast<double>(fine);
  const double lc = pairwise_sum(coarse) * kTwoPi / static_cast<double>(nodes);
  return {LengthKind::Perimeter, r, 0.0, lf, fine, close_rel(lf, lc, 1e-6) || std::abs(lf - lc) <= 1e-15};
}

LengthReport radial_length(const PlanarMap& map, double r, double theta, std::size_t nodes) {
  if (!(r > 0.0 && r <= 1.0)) throw DomainError("radial length radius must lie in (0, 1]");
  if (nodes < 3) nodes = 3;
  if (nodes % 2 == 0) ++nodes;
  const double b = std::min(r, 1.0 - kRadialEdge);
  const std::size_t fine = 2 * (nodes - 1) + 1;
  const cplx e = std::polar(1.0, theta);
  const cplx e2 = std::polar(1.0, -2.0 * theta);
  auto integrand = [&](double rho) {
    const auto j = map.jet(rho * e);
    return std::abs(j.dz + e2 * j.dzbar);
  };
  // With no jet at the origin, rho = b u^2 moves a mild singularity to a zero.
  bool substitute = false;
  try {
    integrand(0.0);
  } catch (const JetUndefined&) {
    substitute = true;
  }
  std::vector<double> vals(fine);
  parallel_for(fine, [&](std::size_t k) {
    const double u = static_cast<double>(k) / static_cast<double>(fine - 1);
    if (!substitute) {
      vals[k] = integrand(b * u);
    } else {
      vals[k] = k == 0 ? 0.0 : 2.0 * u * integrand(b * u * u);
    }
  });
  auto simpson = [&](std::size_t stride) {
    const std::size_t n = (fine - 1) / stride + 1;
    const auto w = simpson_weights(n);
    std::vector<double> terms(n);
    for (std::size_t k = 0; k < n; ++k) terms[k] = w[k] * vals[k * stride];
    return b * pairwise_sum(terms);
  };
  double lf = simpson(1);
  double lc = simpson(2);
  if (r > b) {
    const double edge = integrand(b);
    lf += (r - b) * edge;
    lc += (r - b) * edge;
  }
  return {LengthKind::Radial, r, theta, lf, fine, close_rel(lf, lc, 1e-6) || std::abs(lf - lc) <= 1e-15};
}

namespace {

std::vector<cplx> boundary_polyline(const PlanarMap& map, std::size_t n) {
  std::vector<cplx> pts(n);
  parallel_for(n, [&](std::size_t k) {
    pts[k] = map.value(std::polar(1.0, kTwoPi * static_cast<double>(k) / static_cast<double>(n)));
  });
  return pts;
}

double polyline_length(const std::vector<cplx>& pts, std::size_t stride) {
  const std::size_t n = pts.size() / stride;
  std::vector<double> seg(n);
  for (std::size_t k = 0; k < n; ++k) seg[k] = std::abs(pts[((k + 1) % n) * stride] - pts[k * stride]);
  return pairwise_sum(seg);
}

}  // namespace

LengthReport boundary_length(const PlanarMap& map, std::size_t nodes) {
  if (nodes < 8) throw DomainError("boundary length needs at least 8 nodes");
  const auto pts = boundary_polyline(map, 2 * nodes);
  const double l2 = polyline_length(pts, 1);
  const double l1 = polyline_length(pts, 2);
  const double rich = (4.0 * l2 - l1) / 3.0;
  return {LengthKind::Boundary, 1.0, 0.0, rich, 2 * nodes, close_rel(rich, l2, 1e-6)};
}

BoundaryShape boundary_shape(const PlanarMap& map, std::size_t nodes) {
  const auto pts = boundary_polyline(map, nodes);
  BoundaryShape s;
  s.min_turn = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < nodes; ++k) {
    const cplx a = pts[(k + 1) % nodes] - pts[k];
    const cplx b = pts[(k + 2) % nodes] - pts[(k + 1) % nodes];
    const double turn = std::arg(b / a);
    s.total_turning += turn;
    s.min_turn = std::min(s.min_turn, turn);
  }
  s.convex = s.min_turn >= -1e-9 && std::abs(s.total_turning - kTwoPi) <= 1e-6;
  return s;
}

LengthSup length_sup(const PlanarMap& map, LengthKind kind, const GridSpec& grid) {
  grid.validate();
  LengthSup out;
  out.kind = kind;
  if (kind == LengthKind::Perimeter) {
    std::vector<double> radii;
    for (int k = 1; k < 60; ++k) {
      const double r = 1.0 - std::ldexp(1.0, -k);
      if (r >= grid.max_radius) break;
      radii.push_back(r);
    }
    const std::size_t dyadic = radii.size();
    radii.push_back(grid.max_radius);
    for (double r : radii) out.ladder.push_back(perimeter(map, r));
    out.value = out.ladder.front().value;
    out.argument = out.ladder.front().r;
    for (std::size_t i = 1; i < out.ladder.size(); ++i) {
      if (out.ladder[i].value < out.ladder[i - 1].value) out.monotone = false;
      if (out.ladder[i].value > out.value) {
        out.value = out.ladder[i].value;
        out.argument = out.ladder[i].r;
      }
    }
    // l(r) ~ l(1) - c (1 - r) on the dyadic part.
    out.limit = dyadic >= 2 ? 2.0 * out.ladder[dyadic - 1].value - out.ladder[dyadic - 2].value : out.value;
    return out;
  }
  if (kind != LengthKind::Radial) throw DomainError("length_sup supports perimeter and radial kinds");
  out.label = "sup over sampled angles of the radial length to r = 1";
  const std::size_t na = grid.angular_count;
  std::vector<LengthReport> reps;
  for (std::size_t k = 0; k < na; ++k) reps.push_back(radial_length(map, 1.0, grid.angle(k)));
  std::size_t best = 0;
  for (std::size_t k = 1; k < na; ++k) {
    if (reps[k].value > reps[best].value) best = k;
  }
  const double dt = kTwoPi / static_cast<double>(na);
  LengthReport top = reps[best];
  for (int b = -4; b <= 4; ++b) {
    if (b == 0) continue;
    const auto rep = radial_length(map, 1.0, reps[best].theta + b * dt / 4.0);
    if (rep.value > top.value) top = rep;
  }
  out.ladder = std::move(reps);
  out.value = top.value;
  out.argument = top.theta;
  out.limit = top.value;
  return out;
}

SubharmonicReport subharmonic_radial_check(const Expr& phi, const GridSpec& grid) {
  grid.validate();
  const std::size_t nr = grid.radial_count;
  const std::size_t na = grid.angular_count;
  const GaussRule& rule = gauss_legendre_unit(8);
  // cumulative[k * nr + i] = int_0^{r_{i+1}} along angle k.
  std::vector<double> cumulative(na * nr);
  parallel_for(na, [&](std::size_t k) {
    const cplx e = std::polar(1.0, grid.angle(k));
    double acc = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < nr; ++i) {
      const double r = grid.radius(i + 1);
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const cplx v = phi.value((prev + (r - prev) * rule.nodes[q]) * e);
        if (std::abs(v.imag()) > 1e-12 * std::max(1.0, std::abs(v))) {
          throw DomainError("phi must be real-valued");
        }
        acc += rule.weights[q] * (r - prev) * v.real();
      }
      cumulative[k * nr + i] = acc;
      prev = r;
    }
  });
  SubharmonicReport rep;
  rep.hypothesis_worst = std::numeric_limits<double>::infinity();
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < nr; ++i) {
    double a = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < na; ++k) a = std::max(a, cumulative[k * nr + i]);
    const double r = grid.radius(i + 1);
    rep.radii.push_back(r);
    rep.values.push_back(a);
    rep.hypothesis_worst = std::min(rep.hypothesis_worst, 1.0 - a);
    auto b = make_bound("radial-integral", a, r);
    b.r = r;
    if (b.margin < worst) {
      worst = b.margin;
      rep.conclusion = b;
    }
  }
  rep.hypothesis_holds = rep.hypothesis_worst >= 0.0;
  if (!rep.hypothesis_holds) {
    rep.conclusion.status = BoundStatus::Indeterminate;
    rep.conclusion.note = "hypothesis A(r) <= 1 fails on the ladder";
  }
  return rep;
}

}  // namespace diskmap
