#include "diskmap/ellipticity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "diskmap/errors.hpp"
#include "diskmap/parallel.hpp"

namespace diskmap {

void EllipticityParams::validate() const {
  if (!(K >= 1.0) || !std::isfinite(K)) throw DomainError("K must be >= 1");
  if (!(Kprime >= 0.0) || !std::isfinite(Kprime)) throw DomainError("K' must be >= 0");
}

void CauchyPair::validate() const {
  if (!(k1 >= 0.0 && k1 < 1.0)) throw DomainError("k1 must lie in [0, 1)");
  if (!(k2 >= 0.0) || !std::isfinite(k2)) throw DomainError("k2 must be >= 0");
}

CauchyPair lemma24_convert(const EllipticityParams& p) {
  p.validate();
  return {(p.K - 1.0) / (p.K + 1.0), std::sqrt(p.Kprime) / (1.0 + p.K)};
}

EllipticityParams lemma24_convert(const CauchyPair& c) {
  c.validate();
  const double q = 1.0 - c.k1;
  return {2.0 * (1.0 + c.k1) / q, 4.0 * c.k2 * c.k2 / (q * q)};
}

double pointwise_defect(const WirtingerJet& jet, double K) {
  const auto m = jet_metrics(jet);
  return m.op_norm * m.op_norm - K * m.jacobian;
}

double snap_margin(double rhs, double lhs) {
  const double m = rhs - lhs;
  if (std::abs(m) <= kMarginRoundoff * std::max(std::abs(rhs), std::abs(lhs))) return 0.0;
  return m;
}

KprimeEstimate min_kprime(const PlanarMap& map, double K, const GridSpec& grid) {
  if (!(K >= 1.0)) throw DomainError("K must be >= 1");
  const auto s = grid_sup(grid, [&](const DiskPoint& z) { return std::max(0.0, pointwise_defect(map.jet(z.value()), K)); });
  return {s.value, s.witness, s.failures};
}

FrontierReport ellipticity_frontier(const PlanarMap& map, std::vector<double> Ks, const GridSpec& grid) {
  std::sort(Ks.begin(), Ks.end());
  FrontierReport rep;
  for (double K : Ks) {
    const auto e = min_kprime(map, K, grid);
    rep.samples.push_back({K, e.estimate, e.witness});
  }
  // Cross-evaluate at every witness: still a sup over sampled points.
  for (auto& s : rep.samples) {
    for (const auto& other : rep.samples) {
      try {
        const double d = std::max(0.0, pointwise_defect(map.jet(other.witness), s.K));
        if (d > s.kprime) {
          s.kprime = d;
          s.witness = other.witness;
        }
      } catch (const DomainError&) {
      }
    }
  }
  const auto qc = qc_constant(map, grid);
  if (qc.status != QcStatus::Unbounded) rep.sup_dilatation = qc.sup_dilatation;
  rep.dilatation_witness = qc.witness;
  return rep;
}

std::string to_string(QcStatus s) {
  switch (s) {
    case QcStatus::Bounded:
      return "bounded";
    case QcStatus::Unbounded:
      return "unbounded";
    case QcStatus::NotSensePreserving:
      return "not_sense_preserving";
  }
  return "unknown";
}

QcReport qc_constant(const PlanarMap& map, const GridSpec& grid) {
  grid.validate();
  QcReport rep;
  const auto pts = grid.points();
  // 0 = skipped, 1 = fine, 2 = J <= 0.
  std::vector<int> state(pts.size(), 0);
  parallel_for(pts.size(), [&](std::size_t i) {
    try {
      const auto j = map.jet(pts[i].value());
      if (j.dz == cplx{} && j.dzbar == cplx{}) return;
      state[i] = jet_metrics(j).jacobian > 0.0 ? 1 : 2;
    } catch (const DomainError&) {
    }
  });
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (state[i] == 2) {
      rep.status = QcStatus::NotSensePreserving;
      rep.witness = pts[i].value();
      rep.K = std::numeric_limits<double>::infinity();
      return rep;
    }
  }

  const PointObjective dil = [&](const DiskPoint& z) {
    const auto j = map.jet(z.value());
    // Critical points of the whole derivative do not compete for the sup.
    if (j.dz == cplx{} && j.dzbar == cplx{}) return 0.0;
    if (j.dz == cplx{}) throw DomainError("dilatation undefined");
    return std::abs(j.dzbar) / std::abs(j.dz);
  };
  const auto s = grid_sup(grid, dil);
  rep.sup_dilatation = s.value;
  rep.witness = s.witness;
  const auto shells = shell_sups(grid, dil);
  const std::size_t n = shells.size();
  rep.last_shells.assign(shells.end() - static_cast<std::ptrdiff_t>(std::min<std::size_t>(3, n)), shells.end());
  const bool rising = n >= 3 && shells[n - 3] < shells[n - 2] && shells[n - 2] < shells[n - 1];
  if (rising && shells[n - 1] > 1.0 - 1e-3) {
    rep.status = QcStatus::Unbounded;
    rep.K = std::numeric_limits<double>::infinity();
    return rep;
  }
  rep.K = (1.0 + s.value) / (1.0 - s.value);
  return rep;
}

DiskPoint invert_map(const PlanarMap& map, cplx w, const DiskPoint& guess, double tol) {
  cplx z = guess.value();
  cplx r = map.value(z) - w;
  for (int it = 0; it < 100; ++it) {
    if (std::abs(r) <= tol) return DiskPoint(z);
    const auto j = map.jet(z);
    const double J = jet_metrics(j).jacobian;
    if (!(J > 1e-12)) throw ConvergenceError("Jacobian " + format_double(J) + " too small during inversion");
    const cplx step = (std::conj(j.dz) * r - j.dzbar * std::conj(r)) / J;
    double lambda = 1.0;
    bool accepted = false;
    for (int h = 0; h <= 20; ++h, lambda *= 0.5) {
      const cplx zn = z - lambda * step;
      if (std::abs(zn) >= 1.0) continue;
      const cplx rn = map.value(zn) - w;
      if (std::abs(rn) < std::abs(r)) {
        z = zn;
        r = rn;
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (std::abs(r) <= tol) return DiskPoint(z);
      throw ConvergenceError("inversion stalled at residual " + format_double(std::abs(r)));
    }
  }
  if (std::abs(r) <= tol) return DiskPoint(z);
  throw ConvergenceError("inversion did not converge in 100 iterations");
}

std::vector<PointPair> sample_pairs(std::size_t count, unsigned seed, double max_radius) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  auto point = [&] { return std::polar(max_radius * std::sqrt(unit(rng)), angle(rng)); };
  std::vector<PointPair> out;
  out.reserve(count);
  while (out.size() < count) {
    const cplx a = point();
    cplx b;
    if (out.size() % 2 == 0) {
      b = point();
    } else {
      const double sep = std::pow(10.0, -3.0 + 2.0 * unit(rng));
      b = a + std::polar(sep, angle(rng));
    }
    if (std::abs(b) > max_radius || std::abs(a - b) < 1e-9) continue;
    out.emplace_back(DiskPoint(a), DiskPoint(b));
  }
  return out;
}

namespace {

struct MarginTracker {
  HypothesisReport& rep;
  void add(double margin, const PointPair& p) {
    if (!rep.witness || margin < rep.worst_margin) {
      rep.worst_margin = margin;
      rep.witness = p;
    }
  }
  void finish() {
    if (!rep.witness) rep.worst_margin = 0.0;
    rep.holds_on_sample = rep.worst_margin >= 0.0;
  }
};

void require_univalent_sample(const PlanarMap& map, const std::vector<PointPair>& pairs) {
  std::vector<cplx> pts;
  for (const auto& [a, b] : pairs) {
    pts.push_back(a.value());
    pts.push_back(b.value());
  }
  std::sort(pts.begin(), pts.end(), [](cplx x, cplx y) { return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag(); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<cplx> img(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) img[i] = map.value(pts[i]);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (std::abs(img[i] - img[j]) <= 1e-10) throw DomainError("map is not univalent on the sample pairs");
    }
  }
}

// Difference-quotient bounds shared by the segment and two-condition checks.
void quotient_bounds(const PlanarMap& map, const MajorantSpec& omega, double alpha, double C,
                     const std::vector<PointPair>& pairs, MarginTracker& t, double& min_ratio, double& max_ratio) {
  min_ratio = std::numeric_limits<double>::infinity();
  max_ratio = 0.0;
  for (const auto& p : pairs) {
    const cplx z1 = p.first.value();
    const cplx z2 = p.second.value();
    const double ratio = std::abs(map.value(z1) - map.value(z2)) / std::abs(z1 - z2);
    min_ratio = std::min(min_ratio, ratio);
    max_ratio = std::max(max_ratio, ratio);
    const double e = (1.0 - alpha) / 2.0;
    const double lower = omega(std::pow((1.0 + std::abs(z1)) * (1.0 + std::abs(z2)), e)) / C;
    const double upper = C / omega(std::pow(disk_distance(p.first) * disk_distance(p.second), e));
    t.add(snap_margin(ratio, lower), p);
    t.add(snap_margin(upper, ratio), p);
  }
}

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
}

}  // namespace

HypothesisReport check_theorem11(const PlanarMap& map, const MajorantSpec& omega, double alpha, double C1, double C2,
                                 const std::vector<PointPair>& pairs, std::size_t line_nodes) {
  omega.require_valid();
  check_alpha(alpha);
  if (!(C1 > 0.0 && C2 > 0.0)) throw DomainError("C1 and C2 must be positive");
  require_univalent_sample(map, pairs);
  if (line_nodes < 3) line_nodes = 3;
  if (line_nodes % 2 == 0) ++line_nodes;
  const auto weights = simpson_weights(line_nodes);

  HypothesisReport rep;
  rep.condition_id = "quotient-segment";
  rep.notes.push_back("convexity of f(D) is assumed, not verified");
  MarginTracker t{rep};
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  quotient_bounds(map, omega, alpha, C1, pairs, t, min_ratio, max_ratio);

  double max_integral = 0.0;
  for (const auto& p : pairs) {
    const cplx w1 = map.value(p.first.value());
    const cplx w2 = map.value(p.second.value());
    try {
      double integral = 0.0;
      DiskPoint phi = p.first;
      for (std::size_t k = 0; k < line_nodes; ++k) {
        const double tt = static_cast<double>(k) / static_cast<double>(line_nodes - 1);
        if (k == 0) {
          phi = p.first;
        } else if (k + 1 == line_nodes) {
          phi = p.second;
        } else {
          phi = invert_map(map, w1 + tt * (w2 - w1), phi, 1e-12);
        }
        integral += weights[k] / omega(std::pow(disk_distance(phi), 1.0 - alpha));
      }
      max_integral = std::max(max_integral, integral);
      t.add(snap_margin(C2, integral), p);
    } catch (const ConvergenceError&) {
      ++rep.indeterminate;
    }
  }
  t.finish();
  rep.derived_constants["min_ratio"] = min_ratio;
  rep.derived_constants["max_ratio"] = max_ratio;
  rep.derived_constants["max_integral"] = max_integral;
  if (rep.indeterminate > 0) rep.notes.push_back("pairs with failed inversion are indeterminate");
  return rep;
}

HypothesisReport check_prop14(const PlanarMap& map, double C3, const std::vector<PointPair>& pairs,
                              const std::optional<Expr>& g_in, const QuadratureConfig& cfg) {
  if (!(C3 >= 1.0 && C3 < 2.0)) throw DomainError("C3 must lie in [1, 2)");
  std::optional<Expr> g = g_in;
  std::function<cplx(cplx)> h1;
  HypothesisReport rep;
  rep.condition_id = "analytic-part";
  if (const auto* pair = map.analytic_pair()) {
    const AnalyticPair copy = *pair;
    h1 = [copy](cplx z) { return copy.h1(z); };
    rep.notes.push_back("h1 from the analytic pair");
  } else {
    CoeffTable table;
    if (const auto* ps = as_poisson(map)) {
      if (ps->has_source()) g = ps->g();
      table = extract_coeffs(map);
    } else if (g) {
      table = extract_coeffs(harmonic_part(map, *g, cfg));
    } else {
      table = extract_coeffs(map);
    }
    if (!table.valid) {
      throw ConvergenceError("h1 extraction failed: cross-radius disagreement " + format_double(table.disagreement));
    }
    AnalyticPair h;
    h.a = table.a;
    h1 = [h](cplx z) { return h.h1(z); };
    rep.notes.push_back("h1 from coefficient extraction");
    rep.derived_constants["extraction_disagreement"] = table.disagreement;
  }

  MarginTracker t{rep};
  for (const auto& p : pairs) {
    const cplx z1 = p.first.value();
    const cplx z2 = p.second.value();
    const double lhs = std::abs(map.value(z1) - map.value(z2));
    const double rhs = C3 * std::abs(h1(z1) - h1(z2));
    t.add(snap_margin(rhs, lhs), p);
  }
  t.finish();
  if (rep.holds_on_sample) {
    const double gsup = g ? sampled_sup_norm(*g) : 0.0;
    const CauchyPair c{C3 - 1.0, C3 / 3.0 * gsup};
    const auto e = lemma24_convert(c);
    rep.derived_constants["g_sup"] = gsup;
    rep.derived_constants["k1"] = c.k1;
    rep.derived_constants["k2"] = c.k2;
    rep.derived_constants["K"] = e.K;
    rep.derived_constants["Kprime"] = e.Kprime;
  }
  return rep;
}

HypothesisReport lemma22_check(const PlanarMap& map, const MajorantSpec& omega, double alpha, double C4, double C5,
                               const std::vector<PointPair>& pairs, const GridSpec& grid) {
  omega.require_valid();
  check_alpha(alpha);
  if (!(C4 > 0.0 && C5 > 0.0)) throw DomainError("C4 and C5 must be positive");
  HypothesisReport rep;
  rep.condition_id = "quotient-pointwise";
  rep.notes.push_back("convexity of f(D) is assumed, not verified");

  HypothesisReport a_part;
  MarginTracker ta{a_part};
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  quotient_bounds(map, omega, alpha, C4, pairs, ta, min_ratio, max_ratio);
  ta.finish();

  double b_worst = std::numeric_limits<double>::infinity();
  cplx b_witness{};
  for (const auto& z : grid.points()) {
    WirtingerJet j;
    try {
      j = map.jet(z.value());
    } catch (const DomainError&) {
      continue;
    }
    const auto m = jet_metrics(j);
    const double lower = omega(std::pow(1.0 + z.modulus(), 1.0 - alpha)) / C5;
    const double upper = C5 / omega(std::pow(disk_distance(z), 1.0 - alpha));
    for (double margin : {snap_margin(m.lower_norm, lower), snap_margin(upper, m.op_norm)}) {
      if (margin < b_worst) {
        b_worst = margin;
        b_witness = z.value();
      }
    }
  }
  if (!std::isfinite(b_worst)) b_worst = 0.0;

  rep.worst_margin = std::min(a_part.worst_margin, b_worst);
  rep.holds_on_sample = rep.worst_margin >= 0.0;
  rep.witness = a_part.worst_margin <= b_worst ? a_part.witness
                                                : std::optional<PointPair>(PointPair{DiskPoint(b_witness), DiskPoint(b_witness)});
  rep.derived_constants["a_worst_margin"] = a_part.worst_margin;
  rep.derived_constants["b_worst_margin"] = b_worst;
  rep.derived_constants["a_holds"] = a_part.holds_on_sample ? 1.0 : 0.0;
  rep.derived_constants["b_holds"] = b_worst >= 0.0 ? 1.0 : 0.0;
  rep.derived_constants["beta"] = beta_constant(alpha);
  rep.derived_constants["b_to_a_constant"] = C5 * beta_constant(alpha);
  return rep;
}

double beta_constant(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
  const double g = std::tgamma((1.0 + alpha) / 2.0);
  return g * g / std::tgamma(1.0 + alpha);
}

Lemma24Consistency check_lemma24_consistency(const PlanarMap& map, double K, const GridSpec& grid) {
  Lemma24Consistency out;
  out.params = {K, min_kprime(map, K, grid).estimate};
  out.forward = lemma24_convert(out.params);
  out.backward = lemma24_convert(out.forward);
  out.forward_worst = std::numeric_limits<double>::infinity();
  out.backward_worst = std::numeric_limits<double>::infinity();
  for (const auto& z : grid.points()) {
    WirtingerJet j;
    try {
      j = map.jet(z.value());
    } catch (const DomainError&) {
      continue;
    }
    ++out.points;
    const double a = std::abs(j.dz);
    const double b = std::abs(j.dzbar);
    out.forward_worst = std::min(out.forward_worst, snap_margin(out.forward.k1 * a + out.forward.k2, b));
    const double m = jet_metrics(j).op_norm;
    out.backward_worst =
        std::min(out.backward_worst, snap_margin(out.backward.Kprime + out.backward.K * jet_metrics(j).jacobian, m * m));
  }
  return out;
}

}  // namespace diskmap
