#pragma once

#include <complex>
#include <functional>
#include <optional>

namespace diskmap {

using cplx = std::complex<double>;

/// A point of the open unit disk. Construction rejects |z| >= 1.
class DiskPoint {
 public:
  explicit DiskPoint(cplx z);
  DiskPoint(double x, double y) : DiskPoint(cplx{x, y}) {}

  cplx value() const noexcept { return z_; }
  double modulus() const noexcept { return std::abs(z_); }

  friend bool operator==(const DiskPoint&, const DiskPoint&) = default;

 private:
  cplx z_;
};

/// Value and both Wirtinger derivatives of a map at one point.
struct WirtingerJet {
  cplx value{};
  cplx dz{};
  cplx dzbar{};

  bool finite() const noexcept;
};

struct DerivedMetrics {
  double op_norm = 0.0;     // |f_z| + |f_zbar|
  double lower_norm = 0.0;  // | |f_z| - |f_zbar| |
  double jacobian = 0.0;    // |f_z|^2 - |f_zbar|^2
  // |f_zbar| / |f_z|; empty when f_z = 0.
  std::optional<double> dilatation;
};

DerivedMetrics jet_metrics(const WirtingerJet& jet);

/// Boundary distance 1 - |z|.
double disk_distance(const DiskPoint& z);

using PointEvaluator = std::function<cplx(cplx)>;

/// Default central-difference step: 1e-5 scaled by max(1, |z|).
double default_fd_step(cplx z);

/// Second-order central-difference jet. The four axis neighbours at distance
/// h must lie in the open disk.
WirtingerJet finite_difference_jet(const PointEvaluator& f, const DiskPoint& z, double h);
WirtingerJet finite_difference_jet(const PointEvaluator& f, const DiskPoint& z);

}  // namespace diskmap
