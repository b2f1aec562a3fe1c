#include "diskmap/kernels.hpp"

#include <cmath>

#include "diskmap/errors.hpp"

namespace diskmap {

KernelEval green_eval(const DiskPoint& zp, const DiskPoint& wp, bool with_derivatives) {
  const cplx z = zp.value();
  const cplx w = wp.value();
  const cplx diff = z - w;
  if (std::abs(diff) < kCoincidenceRadius) throw DomainError("Green function evaluated at coincident points");
  const cplx u = 1.0 - z * std::conj(w);
  KernelEval k;
  k.value = std::log(std::abs(u)) - std::log(std::abs(diff));
  if (with_derivatives) {
    // log|u| = (log u + log conj(u)) / 2 with u analytic in z.
    k.dz = 0.5 * (-std::conj(w) / u - 1.0 / diff);
    k.dzbar = std::conj(k.dz);
  }
  return k;
}

KernelEval poisson_eval(const DiskPoint& zp, double theta, bool with_derivatives) {
  const cplx z = zp.value();
  const cplx e = std::polar(1.0, -theta);
  const cplx a = 1.0 - z * e;  // conj(a) = 1 - conj(z) e^{i theta}
  const double ab = std::norm(a);
  const double num = 1.0 - std::norm(z);
  KernelEval k;
  k.value = num / ab;
  if (with_derivatives) {
    // P = num / (a conj(a)); d/dz num = -conj(z), d/dz a = -e.
    k.dz = -std::conj(z) / ab + num * e / (a * ab);
    k.dzbar = std::conj(k.dz);
  }
  return k;
}

}  // namespace diskmap
