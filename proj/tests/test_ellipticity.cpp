#include <cmath>
#include <random>

#include "doctest.h"
#include "diskmap/catalog.hpp"
#include "diskmap/ellipticity.hpp"
#include "diskmap/errors.hpp"

using namespace diskmap;

namespace {

GridSpec small_grid() {
  GridSpec g;
  g.radial_count = 32;
  g.angular_count = 64;
  g.refine_rounds = 2;
  return g;
}

}  // namespace

TEST_CASE("pointwise defect") {
  CHECK(pointwise_defect(PlanarMap::from_text("z").jet(0.4), 1.0) == 0.0);
  const auto jet = builtin_map("example15").map.jet(std::pow(2.0, -1.0 / 3.0));
  const auto m = jet_metrics(jet);
  const double defect = pointwise_defect(jet, 1.0);
  CHECK(defect == doctest::Approx(2.0 * std::abs(jet.dzbar) * m.op_norm).epsilon(1e-12));
  CHECK(defect == doctest::Approx(10.714957).epsilon(1e-6));
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n01;
  for (int i = 0; i < 200; ++i) {
    WirtingerJet j{{n01(rng), n01(rng)}, {n01(rng), n01(rng)}, {n01(rng), n01(rng)}};
    if (std::abs(j.dzbar) > std::abs(j.dz)) std::swap(j.dz, j.dzbar);
    CHECK(pointwise_defect(j, 1.0 + std::abs(n01(rng))) <= jet_metrics(j).op_norm * jet_metrics(j).op_norm);
  }
}

TEST_CASE("min_kprime") {
  CHECK(min_kprime(PlanarMap::from_text("z"), 1.0, small_grid()).estimate == 0.0);
  CHECK(min_kprime(PlanarMap::from_text("2*z"), 1.0, small_grid()).estimate == 0.0);
  const auto e = min_kprime(builtin_map("example15").map, 1.0, GridSpec{});
  // Exact sup 10.8526220656153 at r^6 = (15 - sqrt(105))/20... from a 1-D oracle.
  CHECK(e.estimate > 10.5);
  CHECK(e.estimate < 11.2);
  CHECK(e.estimate <= 729.0 / std::pow(2.0, 16.0 / 3.0));
  CHECK(e.estimate == doctest::Approx(10.8526220656153).epsilon(1e-7));
  CHECK(e.failures == 0);
  CHECK_THROWS_AS(min_kprime(PlanarMap::from_text("z"), 0.5, small_grid()), DomainError);
}

TEST_CASE("refinement only raises the estimate") {
  const auto map = builtin_map("example15").map;
  double prev = -1.0;
  for (std::size_t rounds = 0; rounds <= 3; ++rounds) {
    GridSpec g = small_grid();
    g.refine_rounds = rounds;
    const double v = min_kprime(map, 1.2, g).estimate;
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("frontier is monotone and witnesses attain the estimates") {
  for (const char* name : {"example15", "polyharmonic", "moebius"}) {
    const auto d = name == std::string("polyharmonic") ? builtin_map(name, {{"a", "0,1"}, {"b", "0,0.3"}})
                                                       : builtin_map(name);
    const auto rep = ellipticity_frontier(d.map, {3.0, 1.0, 1.5, 2.0}, small_grid());
    REQUIRE(rep.samples.size() == 4);
    CHECK(rep.samples.front().K == 1.0);
    for (std::size_t i = 1; i < rep.samples.size(); ++i) {
      CHECK(rep.samples[i].K > rep.samples[i - 1].K);
      CHECK(rep.samples[i].kprime <= rep.samples[i - 1].kprime);
    }
    for (const auto& s : rep.samples) {
      if (s.kprime > 0.0) CHECK(pointwise_defect(d.map.jet(s.witness), s.K) == doctest::Approx(s.kprime).epsilon(1e-12));
    }
  }
}

TEST_CASE("quasiconformality constant") {
  const auto id = qc_constant(PlanarMap::from_text("z"), small_grid());
  CHECK(id.status == QcStatus::Bounded);
  CHECK(id.K == 1.0);
  GridSpec deep;
  deep.max_radius = 1 - 1e-6;
  CHECK(qc_constant(builtin_map("example15").map, deep).status == QcStatus::Unbounded);
  const auto e13 = qc_constant(builtin_map("example13").map, GridSpec{});
  CHECK(e13.status == QcStatus::Bounded);
  CHECK(std::abs(e13.K - 2.0) <= 1e-2);
  const auto rev = qc_constant(PlanarMap::from_text("conj(z)"), small_grid());
  CHECK(rev.status == QcStatus::NotSensePreserving);
  const auto poly = qc_constant(PlanarMap::from_text("z + 0.3*conj(z)^2"), GridSpec{});
  CHECK(poly.status == QcStatus::Bounded);
  CHECK(poly.K == doctest::Approx(1.6 / 0.4).epsilon(1e-3));
  CHECK(poly.K <= 4.0);
}

TEST_CASE("ellipticity constant conversions") {
  const auto c = lemma24_convert(EllipticityParams{3.0, 4.0});
  CHECK(c.k1 == doctest::Approx(0.5));
  CHECK(c.k2 == doctest::Approx(0.5));
  const auto p = lemma24_convert(CauchyPair{0.5, 0.5});
  CHECK(p.K == doctest::Approx(6.0));
  CHECK(p.Kprime == doctest::Approx(4.0));
  const auto zero = lemma24_convert(EllipticityParams{1.0, 0.0});
  CHECK(zero.k1 == 0.0);
  CHECK(zero.k2 == 0.0);
  const auto back = lemma24_convert(zero);
  CHECK(back.K == 2.0);
  CHECK(back.Kprime == 0.0);
  CHECK_THROWS_AS(lemma24_convert(EllipticityParams{0.9, 0.0}), DomainError);
  CHECK_THROWS_AS(lemma24_convert(EllipticityParams{1.0, -1.0}), DomainError);
  CHECK_THROWS_AS(lemma24_convert(CauchyPair{1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(lemma24_convert(CauchyPair{0.2, -0.1}), DomainError);
}

TEST_CASE("conversion consistency on catalog maps") {
  for (const char* name : {"identity", "moebius", "example15", "kalaj"}) {
    const auto r = check_lemma24_consistency(builtin_map(name).map, 1.5, small_grid());
    CHECK_MESSAGE(r.holds(), name << " " << r.forward_worst << " " << r.backward_worst);
    CHECK(r.points > 0);
  }
}

TEST_CASE("map inversion") {
  CHECK(std::abs(invert_map(PlanarMap::from_text("z"), {0.3, 0.1}, DiskPoint(0.0)).value() - cplx{0.3, 0.1}) < 1e-12);
  CHECK(std::abs(invert_map(PlanarMap::from_text("2*z"), 1.0, DiskPoint(0.0)).value() - 0.5) < 1e-12);
  const auto mob = builtin_map("moebius").map;
  CHECK(std::abs(invert_map(mob, 0.0, DiskPoint(0.0)).value() - 0.5) < 1e-12);
  for (const char* name : {"moebius", "example15", "kalaj", "example13"}) {
    const auto f = builtin_map(name).map;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
      const cplx z = std::polar(0.9 * std::sqrt(u(rng)) + 0.01, 6.283185307179586 * u(rng));
      // Jets vanish or blow up at the origin for the two examples; start nearby.
      const bool near = std::string(name).starts_with("example");
      const cplx guess = near ? 0.95 * z + cplx{0.0, 0.01} : cplx{};
      const cplx back = invert_map(f, f.value(z), DiskPoint(guess)).value();
      CHECK_MESSAGE(std::abs(back - z) < 1e-9, name << " " << z);
    }
  }
  CHECK_THROWS_AS(invert_map(PlanarMap::from_text("conj(z)"), 0.2, DiskPoint(0.1)), ConvergenceError);
}

TEST_CASE("sample pairs are deterministic and distinct") {
  const auto a = sample_pairs(100, 7);
  const auto b = sample_pairs(100, 7);
  REQUIRE(a.size() == 100);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].first.value() == b[i].first.value());
    CHECK(a[i].first.value() != a[i].second.value());
    CHECK(std::abs(a[i].first.value()) <= 0.95);
    CHECK(std::abs(a[i].second.value()) <= 0.95);
  }
}

TEST_CASE("difference-quotient and segment hypotheses") {
  const auto w = MajorantSpec::parse("t");
  const auto pairs = sample_pairs(40, 1);
  const auto id = check_theorem11(PlanarMap::from_text("z"), w, 1.0, 1.0, 1.0, pairs);
  CHECK(id.holds_on_sample);
  CHECK(std::abs(id.worst_margin) <= 1e-12);

  const std::vector<PointPair> chord{{DiskPoint(0.98), DiskPoint(cplx{0.0, 0.98})}};
  const auto fail = check_theorem11(PlanarMap::from_text("z"), w, 0.0, 1.0, 1.0, chord);
  CHECK_FALSE(fail.holds_on_sample);
  CHECK(fail.worst_margin < 0.0);
  REQUIRE(fail.witness);
  CHECK(fail.derived_constants.at("max_integral") > 1.0);

  const auto two = check_theorem11(PlanarMap::from_text("2*z"), w, 1.0, 2.0, 1.0, pairs);
  CHECK(two.holds_on_sample);
  CHECK(two.worst_margin >= 0.0);
}

TEST_CASE("analytic-part comparison") {
  const auto pairs = sample_pairs(1000, 2);
  const auto id = check_prop14(PlanarMap::from_text("z"), 1.0, pairs);
  CHECK(id.holds_on_sample);
  CHECK(id.derived_constants.at("k1") == 0.0);
  CHECK(id.derived_constants.at("k2") == 0.0);

  const auto tight = check_prop14(PlanarMap::from_text("z + 0.6*conj(z)"), 1.6, pairs);
  CHECK(tight.holds_on_sample);
  CHECK(tight.worst_margin >= 0.0);
  CHECK(tight.derived_constants.at("k1") == doctest::Approx(0.6));

  const auto e15 = builtin_map("example15");
  const auto bad = check_prop14(e15.map, 1.9, sample_pairs(200, 3), e15.source);
  CHECK_FALSE(bad.holds_on_sample);
  CHECK(bad.worst_margin < 0.0);
  REQUIRE(bad.witness);
  const cplx z1 = bad.witness->first.value();
  const cplx z2 = bad.witness->second.value();
  // h1 = 2z for this map.
  CHECK(std::abs(e15.map.value(z1) - e15.map.value(z2)) > 1.9 * std::abs(2.0 * (z1 - z2)));
  CHECK(bad.derived_constants.count("k1") == 0);

  CHECK_THROWS_AS(check_prop14(PlanarMap::from_text("z"), 2.0, pairs), DomainError);
}

TEST_CASE("two-condition check and the beta constant") {
  const auto w = MajorantSpec::parse("t");
  const auto r = lemma22_check(PlanarMap::from_text("z"), w, 1.0, 1.0, 1.0, sample_pairs(40, 5), small_grid());
  CHECK(r.holds_on_sample);
  CHECK(std::abs(r.worst_margin) <= 1e-12);
  CHECK(r.derived_constants.at("b_to_a_constant") == doctest::Approx(1.0));
  const auto r0 = lemma22_check(PlanarMap::from_text("z"), w, 0.0, 1.0, 1.0, sample_pairs(10, 5), small_grid());
  CHECK(r0.derived_constants.at("b_to_a_constant") == doctest::Approx(3.141592653589793).epsilon(1e-14));

  CHECK(std::abs(beta_constant(1.0) - 1.0) <= 1e-14);
  CHECK(std::abs(beta_constant(0.0) - 3.141592653589793) <= 1e-13);
  CHECK_THROWS_AS(beta_constant(-0.1), DomainError);
  CHECK_THROWS_AS(beta_constant(1.1), DomainError);
}
