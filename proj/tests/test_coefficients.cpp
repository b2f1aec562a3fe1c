#include <cmath>
#include <random>

#include "doctest.h"
#include "diskmap/catalog.hpp"
#include "diskmap/coefficients.hpp"
#include "diskmap/errors.hpp"
#include "diskmap/potential.hpp"

using namespace diskmap;

TEST_CASE("exact coefficients of a harmonic polynomial") {
  const auto t = extract_coeffs(PlanarMap::from_text("z + 0.3*conj(z)^2"));
  CHECK(t.valid);
  CHECK(t.nodes >= 8 * 32);
  for (std::size_t n = 0; n <= 32; ++n) {
    CHECK(std::abs(t.a[n] - (n == 1 ? 1.0 : 0.0)) <= 1e-12);
    CHECK(std::abs(t.bbar[n] - (n == 2 ? 0.3 : 0.0)) <= 1e-12);
  }
}

TEST_CASE("moebius coefficients") {
  const auto t = extract_coeffs(builtin_map("moebius", {{"a", "0.5"}}).map);
  CHECK(t.valid);
  CHECK(std::abs(t.a[0] + 0.5) <= 1e-12);
  CHECK(std::abs(t.a[1] - 0.75) <= 1e-12);
  CHECK(std::abs(t.a[2] - 0.375) <= 1e-12);
  for (std::size_t n = 1; n <= 20; ++n) CHECK(std::abs(t.a[n] - 3.0 / std::pow(2.0, n + 1)) <= 1e-12);
}

TEST_CASE("poisson solution coefficients") {
  const auto f = solve_poisson(parse_expr("z"), parse_expr("0"));
  const auto t = extract_coeffs(f);
  CHECK(t.valid);
  for (std::size_t n = 0; n <= 32; ++n) {
    CHECK(std::abs(t.a[n] - (n == 1 ? 1.0 : 0.0)) <= 1e-8);
    CHECK(std::abs(t.bbar[n]) <= 1e-8);
  }
}

TEST_CASE("harmonic part of a map with a source term") {
  const auto d = builtin_map("example15");
  CoeffOptions o;
  o.N = 8;
  const auto t = extract_coeffs(harmonic_part(d.map, *d.source), o);
  CHECK(t.valid);
  CHECK(std::abs(t.a[1] - 2.0) <= 1e-9);
  for (std::size_t n = 0; n <= 8; ++n) {
    if (n != 1) CHECK(std::abs(t.a[n]) <= 1e-9);
    CHECK(std::abs(t.bbar[n]) <= 1e-9);
  }
  // Extracting from f itself must be flagged.
  CHECK_FALSE(extract_coeffs(d.map).valid);
}

TEST_CASE("random harmonic polynomials are recovered exactly") {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> n01;
  for (int trial = 0; trial < 20; ++trial) {
    AnalyticPair p;
    const std::size_t deg = 1 + static_cast<std::size_t>(trial % 8);
    p.a.resize(deg + 1);
    p.bbar.resize(deg + 1);
    for (auto& c : p.a) c = {n01(rng), n01(rng)};
    for (std::size_t k = 1; k <= deg; ++k) p.bbar[k] = {n01(rng), n01(rng)};
    const auto t = extract_coeffs(PlanarMap::from_pair(p));
    CHECK(t.valid);
    for (std::size_t k = 0; k <= 32; ++k) {
      const cplx ea = k <= deg ? p.a[k] : 0.0;
      const cplx eb = k <= deg && k > 0 ? p.bbar[k] : 0.0;
      CHECK(std::abs(t.a[k] - ea) <= 1e-10);
      CHECK(std::abs(t.bbar[k] - eb) <= 1e-10);
    }
  }
}

TEST_CASE("radius invariance and parseval") {
  for (const char* name : {"moebius", "kalaj", "identity"}) {
    const auto map = builtin_map(name).map;
    const auto t = extract_coeffs(map);
    CHECK(t.disagreement <= 1e-8);
    CoeffOptions other;
    other.radii = {0.5};
    const auto u = extract_coeffs(map, other);
    for (std::size_t n = 0; n <= 16; ++n) CHECK(std::abs(t.a[n] - u.a[n]) <= 1e-8);
  }
  const auto map = builtin_map("polyharmonic", {{"a", "0.2,1,0.1*i"}, {"b", "0,0.3,-0.05"}}).map;
  const auto t = extract_coeffs(map);
  const double r = 0.5;
  double series = 0.0;
  for (std::size_t n = 0; n <= 32; ++n) {
    series += std::norm(t.a[n]) * std::pow(r, 2.0 * n);
    if (n > 0) series += std::norm(t.bbar[n]) * std::pow(r, 2.0 * n);
  }
  double mean = 0.0;
  const int M = 4096;
  for (int k = 0; k < M; ++k) mean += std::norm(map.value(std::polar(r, 6.283185307179586 * k / M)));
  mean /= M;
  CHECK(std::abs(series - mean) <= 1e-6);
}

TEST_CASE("non-harmonic input is flagged") {
  const auto t = extract_coeffs(PlanarMap::from_text("abs(z)^2"));
  CHECK_FALSE(t.valid);
  CHECK(t.disagreement > 1e-3);
}

TEST_CASE("extraction argument checks") {
  CoeffOptions o;
  o.radii = {1.0};
  CHECK_THROWS_AS(extract_coeffs(PlanarMap::from_text("z"), o), DomainError);
  o.radii = {};
  CHECK_THROWS_AS(extract_coeffs(PlanarMap::from_text("z"), o), DomainError);
}

TEST_CASE("majorant validation") {
  CHECK(MajorantSpec::parse("t").validated());
  CHECK_FALSE(MajorantSpec::parse("pow(t + 1e-20, 0.5)").validated());
  CHECK(MajorantSpec::parse("log(1 + t)").validated());
  CHECK(MajorantSpec::parse("t/(1 + t)").validated());
  CHECK_FALSE(MajorantSpec::parse("t^2").validated());
  CHECK_FALSE(MajorantSpec::parse("t + 1").validated());
  CHECK_FALSE(MajorantSpec::parse("-t").validated());
  CHECK_FALSE(MajorantSpec::parse("i*t").validated());
  CHECK_THROWS_AS(MajorantSpec::parse("t^2").require_valid(), DomainError);
  CHECK_THROWS_AS(MajorantSpec::parse("z"), ParseError);
}

TEST_CASE("majorants satisfy the scaling inequality") {
  for (const char* text : {"t", "log(1 + t)", "t/(1 + t)", "1 - exp(-t)", "pow(t + 1, 0.5) - 1"}) {
    const auto w = MajorantSpec::parse(text);
    REQUIRE_MESSAGE(w.validated(), text << ": " << w.failure());
    CHECK(majorant_scaling_margin(w) >= 0.0);
  }
}

TEST_CASE("bloch norms") {
  const auto w = MajorantSpec::parse("t");
  GridSpec g;
  g.radial_count = 48;
  g.angular_count = 96;
  const auto id = bloch_norm(PlanarMap::from_text("z"), w, 1.0, g);
  CHECK(id.value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(id.witness == cplx{});
  const auto c = bloch_norm(PlanarMap::from_text("0.3 - 0.4*i"), w, 1.0, g);
  CHECK(c.value == doctest::Approx(0.5).epsilon(1e-15));
  // |f(0)| = 0.5 and the weighted derivative (3/4)(1-|z|)/|1 - z/2|^2 peaks at z = 0.
  const auto m = bloch_norm(builtin_map("moebius").map, w, 1.0, g);
  CHECK(m.value == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(m.value <= 2.0);
  CHECK_THROWS_AS(bloch_norm(PlanarMap::from_text("z"), MajorantSpec::parse("t^2"), 1.0, g), DomainError);
}
