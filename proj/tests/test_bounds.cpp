#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "diskmap/bounds.hpp"
#include "diskmap/catalog.hpp"
#include "diskmap/lengths.hpp"

using namespace diskmap;

namespace {

const BoundReport* find(const BoundBatch& b, const std::string& id, std::size_t n) {
  for (const auto& r : b.reports) {
    if (r.inequality_id == id && r.n && *r.n == n) return &r;
  }
  return nullptr;
}

GridSpec coarse() {
  GridSpec g;
  g.radial_count = 24;
  g.angular_count = 48;
  g.refine_rounds = 1;
  return g;
}

}  // namespace

TEST_CASE("report status and snapping") {
  CHECK(make_bound("x", 1.0, 1.0).margin == 0.0);
  CHECK(make_bound("x", 1.0 + 1e-14, 1.0).margin == 0.0);
  CHECK(make_bound("x", 1.0 + 1e-10, 1.0).status == BoundStatus::Holds);
  CHECK(make_bound("x", 1.0 + 1e-8, 1.0).status == BoundStatus::Violated);
  const auto ind = indeterminate_bound("x", "missing");
  CHECK(ind.status == BoundStatus::Indeterminate);
  CHECK(ind.note == "missing");
}

TEST_CASE("chen-1.0 is an equality for the identity") {
  BoundContext ctx;
  ctx.R = 1.0;
  ctx.coeffs = extract_coeffs(PlanarMap::from_text("z"));
  const auto b = coefficient_bounds_report(ctx, 8);
  const auto* r = find(b, "chen-1.0", 1);
  REQUIRE(r);
  CHECK(r->lhs == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r->rhs == 1.0);
  CHECK(r->margin == 0.0);
  CHECK(r->status == BoundStatus::Holds);
  CHECK(b.violated() == 0);
  // Missing fields are indeterminate, not violated.
  REQUIRE(find(b, "CRP-1c", 1));
  CHECK(find(b, "CRP-1c", 1)->status == BoundStatus::Indeterminate);
  CHECK(find(b, "chen-1.2", 3)->status == BoundStatus::Indeterminate);
  CHECK(b.diagnostics.front().ends_with("yes"));
}

TEST_CASE("chen-1.2 is an equality for c z") {
  for (double c : {0.5, 2.0, 3.5}) {
    BoundContext ctx;
    ctx.radial_sup = c;
    ctx.coeffs = extract_coeffs(builtin_map("scale", {{"c", format_double(c)}}).map);
    const auto b = coefficient_bounds_report(ctx, 4);
    const auto* r = find(b, "chen-1.2", 1);
    REQUIRE(r);
    CHECK(r->margin == 0.0);
    CHECK(find(b, "eq-2017", 1)->margin == 0.0);
    CHECK(b.violated() == 0);
  }
}

TEST_CASE("perimeter bounds for a harmonic polynomial") {
  const auto f = PlanarMap::from_text("z + 0.3*conj(z)^2");
  GridSpec g = coarse();
  MeasureOptions o;
  o.perimeter_source = PerimeterSource::Ladder;
  const auto ctx = measure_context(f, g, o);
  REQUIRE(ctx.perimeter_sup);
  CHECK(ctx.provenance.at("perimeter_sup").find("ladder") != std::string::npos);
  // Cross-check the ladder top against a dense polyline at the same radius.
  const double r = g.max_radius;
  double poly = 0.0;
  const int n = 1 << 18;
  for (int k = 0; k < n; ++k) {
    poly += std::abs(f.value(std::polar(r, 2 * std::numbers::pi * (k + 1) / n)) -
                     f.value(std::polar(r, 2 * std::numbers::pi * k / n)));
  }
  CHECK(std::abs(*ctx.perimeter_sup - poly) <= 1e-4);
  const auto b = coefficient_bounds_report(ctx, 8);
  for (std::size_t k = 1; k <= 8; ++k) {
    CHECK(find(b, "CRP-1c", k)->margin > 0.0);
    CHECK(find(b, "Mat-1", k)->margin > 0.0);
  }
}

TEST_CASE("kalaj-1 equality for the moebius map") {
  BoundContext ctx;
  ctx.R = 1.0;
  GridSpec g;
  g.radial_count = 3;
  g.angular_count = 8;
  g.max_radius = 0.75;  // shell 2 is |z| = 0.5
  const auto b = derivative_bounds_report(ctx, builtin_map("moebius").map, g);
  const BoundReport* at = nullptr;
  for (const auto& r : b.reports) {
    if (r.inequality_id == "kalaj-1" && r.z && *r.z == cplx{0.5}) at = &r;
  }
  REQUIRE(at);
  CHECK(at->lhs == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(at->rhs == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(at->margin == 0.0);
  CHECK(b.violated() == 0);
}

TEST_CASE("identity kalaj-1 margins") {
  BoundContext ctx;
  ctx.R = 1.0;
  const auto b = derivative_bounds_report(ctx, PlanarMap::from_text("z"), coarse());
  for (const auto& r : b.reports) {
    if (r.inequality_id != "kalaj-1") continue;
    const double s = std::abs(*r.z);
    CHECK(r.margin == doctest::Approx(1.0 / (1.0 - s * s) - 1.0).epsilon(1e-12));
  }
  CHECK(find(b, "CRP-2c", 0) == nullptr);
}

TEST_CASE("CP-K reduces to R/(1-|z|^2) at K = 1, K' = 0") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double R = 0.1 + 5 * u(rng);
    const double s = 0.999 * u(rng);
    CHECK(cpk_rhs({1.0, 0.0}, R, s) == doctest::Approx(R / (1 - s * s)).epsilon(1e-14));
  }
  // K' > 0 raises the rhs.
  CHECK(cpk_rhs({1.0, 1.0}, 1.0, 0.0) > 1.0);
  CHECK(chen10_rhs({2.0, 4.0}, 1.0, 2) == doctest::Approx(2.0));
}

TEST_CASE("harmonic catalog maps satisfy every bound") {
  const GridSpec g = coarse();
  for (const char* name : {"identity", "scale", "moebius", "polyharmonic", "kalaj"}) {
    const auto d = name == std::string("polyharmonic") ? builtin_map(name, {{"a", "0,1"}, {"b", "0,0.3"}})
                                                       : builtin_map(name);
    const auto ctx = measure_context(d.map, g);
    const auto c = coefficient_bounds_report(ctx, 12);
    const auto dv = derivative_bounds_report(ctx, d.map, g);
    CHECK_MESSAGE(c.violated() == 0, name << " worst " << c.worst()->inequality_id);
    CHECK_MESSAGE(dv.violated() == 0, name << " worst " << dv.worst()->inequality_id);
    for (const auto& diag : dv.diagnostics) CHECK_FALSE(diag.ends_with("NO"));
  }
}

TEST_CASE("measure_context provenance and errors") {
  MeasureOptions o;
  o.K = 1.5;
  o.R = 2.0;
  const auto ctx = measure_context(PlanarMap::from_text("z"), coarse(), o);
  CHECK(ctx.params.K == 1.5);
  CHECK(*ctx.R == 2.0);
  CHECK(ctx.provenance.at("R") == "given");
  CHECK(ctx.provenance.at("Kprime") == "default 0");
  CHECK(std::abs(*ctx.perimeter_sup - 2 * std::numbers::pi) <= 1e-10);
  CHECK_THROWS_AS(measure_context(PlanarMap::from_text("conj(z)"), coarse()), DomainError);
}

TEST_CASE("non-harmonic coefficient tables give indeterminate rows") {
  BoundContext ctx;
  ctx.R = 1.0;
  ctx.radial_sup = 2.0;
  ctx.coeffs = extract_coeffs(builtin_map("example15").map);
  REQUIRE_FALSE(ctx.coeffs->valid);
  const auto b = coefficient_bounds_report(ctx, 3);
  for (const auto& r : b.reports) CHECK(r.status == BoundStatus::Indeterminate);
}
