#include "diskmap/wirtinger.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "diskmap/errors.hpp"

namespace diskmap {

DiskPoint::DiskPoint(cplx z) : z_(z) {
  if (!(std::abs(z) < 1.0)) {
    throw DomainError("point (" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) +
                      ") is not in the open unit disk");
  }
}

bool WirtingerJet::finite() const noexcept {
  auto ok = [](cplx c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); };
  return ok(value) && ok(dz) && ok(dzbar);
}

DerivedMetrics jet_metrics(const WirtingerJet& jet) {
  const double a = std::abs(jet.dz);
  const double b = std::abs(jet.dzbar);
  DerivedMetrics m;
  m.op_norm = a + b;
  m.lower_norm = std::abs(a - b);
  // (a-b)(a+b) keeps op_norm * lower_norm == |jacobian| to rounding.
  m.jacobian = (a - b) * (a + b);
  if (a > 0.0) m.dilatation = b / a;
  return m;
}

double disk_distance(const DiskPoint& z) { return 1.0 - z.modulus(); }

double default_fd_step(cplx z) { return 1e-5 * std::max(1.0, std::abs(z)); }

WirtingerJet finite_difference_jet(const PointEvaluator& f, const DiskPoint& z, double h) {
  if (!(h > 0.0)) throw DomainError("finite-difference step must be positive");
  const cplx c = z.value();
  const cplx hx{h, 0.0};
  const cplx hy{0.0, h};
  for (cplx p : {c + hx, c - hx, c + hy, c - hy}) {
    if (!(std::abs(p) < 1.0)) throw DomainError("finite-difference stencil leaves the disk");
  }
  const cplx fx = (f(c + hx) - f(c - hx)) / (2.0 * h);
  const cplx fy = (f(c + hy) - f(c - hy)) / (2.0 * h);
  const cplx i{0.0, 1.0};
  return {f(c), 0.5 * (fx - i * fy), 0.5 * (fx + i * fy)};
}

WirtingerJet finite_difference_jet(const PointEvaluator& f, const DiskPoint& z) {
  return finite_difference_jet(f, z, default_fd_step(z.value()));
}

}  // namespace diskmap
