#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "diskmap/coefficients.hpp"
#include "diskmap/planar_map.hpp"
#include "diskmap/potential.hpp"
#include "diskmap/sampling.hpp"

namespace diskmap {

/// ||D_f||^2 <= K J_f + K'.
struct EllipticityParams {
  double K = 1.0;
  double Kprime = 0.0;
  void validate() const;
};

/// |f_zbar| <= k1 |f_z| + k2.
struct CauchyPair {
  double k1 = 0.0;
  double k2 = 0.0;
  void validate() const;
};

/// (K, K') -> ((K-1)/(K+1), sqrt(K')/(1+K)).
CauchyPair lemma24_convert(const EllipticityParams& p);
/// (k1, k2) -> (2(1+k1)/(1-k1), 4 k2^2/(1-k1)^2). Not the inverse of the
/// forward conversion.
EllipticityParams lemma24_convert(const CauchyPair& c);

/// ||D_f||^2 - K J_f.
double pointwise_defect(const WirtingerJet& jet, double K);

struct KprimeEstimate {
  double estimate = 0.0;  // max(0, sup defect) over the refined grid
  cplx witness{};
  std::size_t failures = 0;
};

/// Grid sup of max(0, defect) with local refinement. A lower bound for the
/// true sup over the disk.
KprimeEstimate min_kprime(const PlanarMap& map, double K, const GridSpec& grid);

struct FrontierSample {
  double K = 1.0;
  double kprime = 0.0;
  cplx witness{};
};

struct FrontierReport {
  std::vector<FrontierSample> samples;  // sorted by K
  /// Sup of |f_zbar|/|f_z|; empty when flagged unbounded.
  std::optional<double> sup_dilatation;
  cplx dilatation_witness{};
  std::string label = "certified lower bound, heuristic sup";
};

/// min_kprime at each K. Every sample is then raised to the largest defect
/// found at any sample's witness, so the estimates share one point set.
FrontierReport ellipticity_frontier(const PlanarMap& map, std::vector<double> Ks, const GridSpec& grid);

enum class QcStatus { Bounded, Unbounded, NotSensePreserving };
std::string to_string(QcStatus s);

struct QcReport {
  QcStatus status = QcStatus::Bounded;
  /// sup ||D_f|| / l(D_f) = (1+k)/(1-k) over the refined grid (Bounded only).
  double K = 1.0;
  double sup_dilatation = 0.0;
  cplx witness{};
  /// Dilatation sup on the last three shells, innermost first.
  std::vector<double> last_shells;
  std::string label = "heuristic: unbounded when the outer three shells exceed 1 - 1e-3 and increase";
};

/// Points where the whole derivative vanishes are skipped (dilatation has no
/// meaning there); J_f <= 0 anywhere else flags the map as not
/// sense-preserving.
QcReport qc_constant(const PlanarMap& map, const GridSpec& grid);

/// Damped Newton iteration with the inverse-derivative formulas
/// (f^{-1})_w = conj(f_z)/J, (f^{-1})_wbar = -f_zbar/J.
DiskPoint invert_map(const PlanarMap& map, cplx w, const DiskPoint& guess, double tol = 1e-12);

using PointPair = std::pair<DiskPoint, DiskPoint>;

/// Deterministic test pairs: half uniform in the disk of radius max_radius,
/// half close pairs (separation 1e-3 .. 1e-1) that probe local stretching.
std::vector<PointPair> sample_pairs(std::size_t count, unsigned seed, double max_radius = 0.95);

struct HypothesisReport {
  std::string condition_id;
  bool holds_on_sample = true;
  double worst_margin = 0.0;
  std::optional<PointPair> witness;
  std::map<std::string, double> derived_constants;
  std::size_t indeterminate = 0;  // pairs skipped (e.g. inversion failure)
  std::vector<std::string> notes;
};

/// Two-sided difference-quotient condition and the segment integral
/// int_0^1 dt / omega(d(Phi(t))^{1-alpha}) <= C2 with Phi the preimage of
/// the image chord, computed by invert_map and composite Simpson.
HypothesisReport check_theorem11(const PlanarMap& map, const MajorantSpec& omega, double alpha, double C1, double C2,
                                 const std::vector<PointPair>& pairs, std::size_t line_nodes = 65);

/// |f(z1) - f(z2)| <= C3 |h1(z1) - h1(z2)|. h1 comes from the analytic pair,
/// or from coefficient extraction of f + G[g] (g absent means harmonic).
HypothesisReport check_prop14(const PlanarMap& map, double C3, const std::vector<PointPair>& pairs,
                              const std::optional<Expr>& g = std::nullopt, const QuadratureConfig& cfg = {});

/// Condition (a) on pairs with constant C4 and condition (b) on the grid with
/// constant C5; derived constant b_to_a = C5 * beta_constant(alpha).
HypothesisReport lemma22_check(const PlanarMap& map, const MajorantSpec& omega, double alpha, double C4, double C5,
                               const std::vector<PointPair>& pairs, const GridSpec& grid);

/// Gamma((1+alpha)/2)^2 / Gamma(1+alpha), alpha in [0, 1].
double beta_constant(double alpha);

/// Pointwise checks tying the two constant pairs together on the base grid.
struct Lemma24Consistency {
  EllipticityParams params;         // (K, min_kprime estimate)
  CauchyPair forward;               // forward image of params
  double forward_worst = 0.0;       // min of k1|f_z| + k2 - |f_zbar|
  EllipticityParams backward;       // backward image of forward
  double backward_worst = 0.0;      // min of K'_b - defect(K_b)
  std::size_t points = 0;
  bool holds() const { return forward_worst >= 0.0 && backward_worst >= 0.0; }
};

Lemma24Consistency check_lemma24_consistency(const PlanarMap& map, double K, const GridSpec& grid);

/// Relative roundoff below which a margin is reported as exactly 0.
inline constexpr double kMarginRoundoff = 1e-12;
double snap_margin(double rhs, double lhs);

}  // namespace diskmap
