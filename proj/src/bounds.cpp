#include "diskmap/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "diskmap/errors.hpp"
#include "diskmap/lengths.hpp"
#include "diskmap/parallel.hpp"

namespace diskmap {

double BoundBatch::worst_margin() const {
  const BoundReport* w = worst();
  return w ? w->margin : 0.0;
}

const BoundReport* BoundBatch::worst() const {
  const BoundReport* w = nullptr;
  for (const auto& r : reports) {
    if (r.status == BoundStatus::Indeterminate) continue;
    if (!w || r.margin < w->margin) w = &r;
  }
  return w;
}

std::size_t BoundBatch::violated() const {
  std::size_t n = 0;
  for (const auto& r : reports) n += r.status == BoundStatus::Violated;
  return n;
}

double chen10_rhs(const EllipticityParams& p, double R, std::size_t n) {
  return (std::sqrt(p.Kprime) + p.K * R) / static_cast<double>(n);
}

double cpk_rhs(const EllipticityParams& p, double R, double modulus) {
  const double K = p.K;
  const double Kp = p.Kprime;
  const double bracket = R + (-R + std::sqrt(Kp + K * Kp + K * K * R * R)) / (1.0 + K);
  return bracket / (1.0 - modulus * modulus);
}

BoundBatch coefficient_bounds_report(const BoundContext& ctx, std::size_t n_max) {
  ctx.params.validate();
  BoundBatch out;
  const double K = ctx.params.K;
  const double sqrtKp = std::sqrt(ctx.params.Kprime);
  const double pi = std::numbers::pi;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const bool have = ctx.coeffs && n <= ctx.coeffs->degree();
    const bool valid = have && ctx.coeffs->valid;
    const double lhs = valid ? ctx.coeffs->coefficient_sum(n) : 0.0;
    auto emit = [&](const char* id, const std::optional<double>& field, const char* field_name, auto rhs_of) {
      BoundReport b;
      if (!have) {
        b = indeterminate_bound(id, "coefficient table missing or shorter than n");
      } else if (!valid) {
        b = indeterminate_bound(id, "coefficient table invalid (map is not harmonic)");
      } else if (!field) {
        b = indeterminate_bound(id, std::string("context field ") + field_name + " missing");
      } else {
        b = make_bound(id, lhs, rhs_of(*field));
      }
      b.n = n;
      out.reports.push_back(b);
    };
    emit("chen-1.0", ctx.R, "R", [&](double R) { return (sqrtKp + K * R) / static_cast<double>(n); });
    emit("CRP-1c", ctx.perimeter_sup, "perimeter_sup",
         [&](double l) { return K * l / (2.0 * static_cast<double>(n) * pi); });
    emit("Mat-1", ctx.perimeter_sup, "perimeter_sup", [&](double l) { return l / (static_cast<double>(n) * pi); });
    emit("eq-2017", ctx.radial_sup, "radial_sup", [&](double l) { return K * l; });
    emit("chen-1.2", ctx.radial_sup, "radial_sup", [&](double l) { return sqrtKp + K * l; });
  }

  if (ctx.R) {
    double prev = std::numeric_limits<double>::infinity();
    bool decreasing = true;
    for (std::size_t n = 1; n <= n_max; ++n) {
      const double r = chen10_rhs(ctx.params, *ctx.R, n);
      if (!(r < prev) && !(r == 0.0)) decreasing = false;
      prev = r;
    }
    out.diagnostics.push_back(std::string("chen-1.0 rhs decreasing in n: ") + (decreasing ? "yes" : "NO"));
  }
  if (ctx.R && ctx.perimeter_sup && ctx.params.Kprime == 0.0 && K <= 2.0) {
    // With l_f(1) = 2 pi R the chen-1.0 rhs K R / n is at most 2 R / n.
    const bool sharper = K * *ctx.R <= *ctx.perimeter_sup / pi * (1.0 + 1e-12);
    out.diagnostics.push_back(std::string("chen-1.0 rhs <= Mat-1 rhs (K' = 0, K <= 2): ") + (sharper ? "yes" : "NO"));
  }
  return out;
}

BoundBatch derivative_bounds_report(const BoundContext& ctx, const PlanarMap& map, const GridSpec& grid) {
  ctx.params.validate();
  const auto pts = grid.points();
  std::vector<std::optional<WirtingerJet>> jets(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    try {
      jets[i] = map.jet(pts[i].value());
    } catch (const DomainError&) {
    }
  });

  BoundBatch out;
  const double K = ctx.params.K;
  const double pi = std::numbers::pi;
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!jets[i]) {
      ++skipped;
      continue;
    }
    const cplx z = pts[i].value();
    const double s = std::abs(z);
    const auto m = jet_metrics(*jets[i]);
    auto push = [&](BoundReport b) {
      b.z = z;
      out.reports.push_back(std::move(b));
    };
    if (ctx.R) {
      push(make_bound("kalaj-1", std::abs(jets[i]->dz), *ctx.R / (1.0 - s * s)));
      push(make_bound("CP-K", m.op_norm, cpk_rhs(ctx.params, *ctx.R, s)));
    }
    if (ctx.perimeter_sup) {
      push(make_bound("CRP-2c", m.op_norm, *ctx.perimeter_sup * std::sqrt(K) / (2.0 * pi * (1.0 - s))));
    }
  }
  if (!ctx.R) {
    out.reports.push_back(indeterminate_bound("kalaj-1", "context field R missing"));
    out.reports.push_back(indeterminate_bound("CP-K", "context field R missing"));
  }
  if (!ctx.perimeter_sup) out.reports.push_back(indeterminate_bound("CRP-2c", "context field perimeter_sup missing"));
  if (skipped) out.diagnostics.push_back(std::to_string(skipped) + " grid points skipped (jet undefined)");

  if (ctx.R) {
    bool increasing = true;
    double prev = -1.0;
    for (std::size_t i = 0; i <= grid.radial_count; ++i) {
      const double r = i == 0 ? 0.0 : grid.radius(i);
      const double v = cpk_rhs(ctx.params, *ctx.R, r);
      if (!(v > prev)) increasing = false;
      prev = v;
    }
    out.diagnostics.push_back(std::string("CP-K rhs increasing in |z|: ") + (increasing ? "yes" : "NO"));
  }
  return out;
}

BoundContext measure_context(const PlanarMap& map, const GridSpec& grid, const MeasureOptions& opts) {
  BoundContext ctx;
  if (opts.K) {
    ctx.params.K = *opts.K;
    ctx.provenance["K"] = "given";
  } else {
    const auto qc = qc_constant(map, grid);
    if (qc.status != QcStatus::Bounded) {
      throw DomainError("cannot measure K: map is " + to_string(qc.status) + "; pass K explicitly");
    }
    ctx.params.K = std::max(1.0, qc.K);
    ctx.provenance["K"] = "grid sup of the dilatation";
  }
  ctx.params.Kprime = opts.Kprime.value_or(0.0);
  ctx.provenance["Kprime"] = opts.Kprime ? "given" : "default 0";
  ctx.params.validate();

  std::optional<double> boundary;
  auto boundary_limit = [&] {
    if (!boundary) boundary = boundary_length(map).value;
    return *boundary;
  };
  if (opts.R) {
    ctx.R = *opts.R;
    ctx.provenance["R"] = "given";
  } else {
    ctx.R = boundary_limit() / (2.0 * std::numbers::pi);
    ctx.provenance["R"] = "boundary polyline limit / (2 pi)";
  }
  if (opts.perimeter_sup) {
    ctx.perimeter_sup = *opts.perimeter_sup;
    ctx.provenance["perimeter_sup"] = "given";
  } else if (opts.perimeter_source == PerimeterSource::Boundary) {
    ctx.perimeter_sup = boundary_limit();
    ctx.provenance["perimeter_sup"] = "boundary polyline limit";
  } else {
    ctx.perimeter_sup = length_sup(map, LengthKind::Perimeter, grid).value;
    ctx.provenance["perimeter_sup"] = "perimeter ladder sup (lower estimate)";
  }
  if (opts.radial_sup) {
    ctx.radial_sup = *opts.radial_sup;
    ctx.provenance["radial_sup"] = "given";
  } else {
    ctx.radial_sup = length_sup(map, LengthKind::Radial, grid).value;
    ctx.provenance["radial_sup"] = "sup over sampled angles of the radial length";
  }
  ctx.coeffs = extract_coeffs(map, opts.coeff);
  ctx.provenance["coeffs"] = "extraction on radii";
  return ctx;
}

}  // namespace diskmap
