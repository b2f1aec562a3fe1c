#pragma once

#include "diskmap/wirtinger.hpp"

namespace diskmap {

/// Kernel value with its Wirtinger derivatives in the first argument. The
/// kernels are real, so dzbar == conj(dz).
struct KernelEval {
  double value = 0.0;
  cplx dz{};
  cplx dzbar{};
};

/// Separations below this are treated as coincident points.
inline constexpr double kCoincidenceRadius = 1e-12;

/// Green function of the disk, log|1 - z conj(w)| - log|z - w|.
KernelEval green_eval(const DiskPoint& z, const DiskPoint& w, bool with_derivatives);

/// Poisson kernel (1 - |z|^2) / |1 - z e^{-i theta}|^2.
KernelEval poisson_eval(const DiskPoint& z, double theta, bool with_derivatives);

}  // namespace diskmap
