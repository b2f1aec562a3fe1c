#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "diskmap/errors.hpp"
#include "diskmap/potential.hpp"

using namespace diskmap;

namespace {

const Expr kZero = parse_expr("0");
const Expr kOne = parse_expr("1");

}  // namespace

TEST_CASE("config validation") {
  QuadratureConfig c;
  CHECK_NOTHROW(c.validate());
  c.patch_nodes = 7;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = {};
  c.singular_patch_radius = 0.5;
  CHECK_THROWS_AS(c.validate(), DomainError);
}

TEST_CASE("green potential closed forms") {
  // G[1] = (1-|z|^2)/4, d_z G[1] = -conj(z)/4, G[z] = z(1-|z|^2)/8.
  CHECK(std::abs(green_potential(kOne, DiskPoint(0, 0), 0).value - 0.25) <= 1e-6);
  const auto j = green_potential(kOne, DiskPoint(0.4, 0), 1);
  CHECK(std::abs(j.dz + 0.1) <= 1e-6);
  CHECK(std::abs(j.dzbar + 0.1) <= 1e-6);
  const auto zero = green_potential(kZero, DiskPoint(0.4, 0.2), 1);
  CHECK(zero.value == cplx{});
  CHECK(zero.dz == cplx{});

  const auto zexpr = parse_expr("z");
  for (double r : {0.0, 0.3, 0.7, 0.95, 0.999}) {
    const cplx z = std::polar(r, 0.9);
    const auto gz = green_potential(zexpr, DiskPoint(z), 1);
    CHECK(std::abs(gz.value - z * (1 - r * r) / 8.0) <= 1e-9);
    CHECK(std::abs(gz.dz - (1 - 2 * r * r) / 8.0) <= 1e-9);
    CHECK(std::abs(gz.dzbar + z * z / 8.0) <= 1e-9);
  }
}

TEST_CASE("green potential converges under node doubling") {
  QuadratureConfig fine;
  fine.radial_nodes *= 2;
  fine.angular_nodes *= 2;
  for (const char* text : {"1", "z", "re(z)", "abs(z)^2", "exp(conj(z))"}) {
    const auto g = parse_expr(text);
    for (double r : {0.1, 0.5, 0.9, 0.99}) {
      const DiskPoint z(std::polar(r, 2.0));
      const auto a = green_potential(g, z, 1);
      const auto b = green_potential(g, z, 1, fine);
      CHECK(std::abs(a.value - b.value) <= 1e-5);
      CHECK(std::abs(a.dz - b.dz) <= 1e-5);
    }
  }
}

TEST_CASE("patch disagreement is reported") {
  QuadratureConfig c;
  c.patch_nodes = 8;
  c.singular_patch_radius = 0.49;
  // A source with a sharp peak inside the patch defeats the 8/4-node pair.
  const auto spike = parse_expr("1/(1e-4 + abs(z - 0.3)^2)");
  CHECK_THROWS_AS(green_potential(spike, DiskPoint(0.3, 0.0), 0, c), ConvergenceError);
}

TEST_CASE("poisson integral of simple data") {
  const auto z_on_circle = parse_expr("z");
  const auto conj_on_circle = parse_expr("conj(z)");
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  for (int i = 0; i < 20; ++i) {
    const DiskPoint p(u(rng), u(rng));
    CHECK(std::abs(poisson_integral(kOne, p, 0).value - 1.0) <= 1e-13);
    const auto a = poisson_integral(z_on_circle, p, 1);
    CHECK(std::abs(a.value - p.value()) <= 1e-13);
    CHECK(std::abs(a.dz - 1.0) <= 1e-12);
    CHECK(std::abs(a.dzbar) <= 1e-12);
    CHECK(std::abs(poisson_integral(conj_on_circle, p, 0).value - std::conj(p.value())) <= 1e-13);
  }
  CHECK(poisson_node_count(0.5, {}) == 512);
  CHECK(poisson_node_count(0.999, {}) >= 40000);
}

TEST_CASE("poisson solution closed forms") {
  const auto f = solve_poisson(kZero, kOne);
  for (double r : {0.0, 0.3, 0.6, 0.9}) {
    for (double t : {0.0, 1.3, 4.0}) {
      const cplx z = std::polar(r, t);
      CHECK(std::abs(f.value(z) - (r * r - 1) / 4) <= 1e-5);
    }
  }
  CHECK(laplacian_residual(f, kOne, DiskPoint(0.2, 0)) <= 1e-4);

  const auto id = solve_poisson(parse_expr("z"), kZero);
  CHECK(std::abs(id.value(cplx{0.3, -0.5}) - cplx{0.3, -0.5}) <= 1e-10);
  CHECK(solve_poisson(kZero, kZero).value(cplx{0.2, 0.2}) == cplx{});
  REQUIRE(as_poisson(f) != nullptr);
  CHECK(as_poisson(f)->has_source());
  CHECK_FALSE(as_poisson(id)->has_source());
}

TEST_CASE("laplacian residuals of closed-form maps") {
  const auto harmonic = PlanarMap::from_text("z^3 + conj(z)^2");
  CHECK(laplacian_residual(harmonic, kZero, DiskPoint(0.5, 0)) <= 1e-6);
  const auto f15 = PlanarMap::from_text("3*z*abs(z)^2 - z*abs(z)^8");
  const auto g15 = parse_expr("4*(6*z - 20*z^4*conj(z)^3)");
  CHECK(laplacian_residual(f15, g15, DiskPoint(0.3, 0)) <= 1e-4);
  CHECK_THROWS_AS(laplacian_residual(harmonic, kZero, DiskPoint(0.9985, 0)), DomainError);
}

TEST_CASE("boundary attainment") {
  struct Case {
    const char* psi;
    const char* g;
  };
  for (const Case c : {Case{"z", "1"}, Case{"conj(z)^2 + 1", "z"}, Case{"re(z)", "abs(z)^2"}}) {
    const auto psi = parse_expr(c.psi);
    const auto f = solve_poisson(psi, parse_expr(c.g));
    for (double t : {0.0, 2.0, 4.5}) {
      const cplx z = std::polar(1.0 - 1e-3, t);
      CHECK(std::abs(f.value(z) - psi.value(z / std::abs(z))) <= 5e-3);
    }
  }
}

TEST_CASE("solve_poisson rejects data that does not evaluate") {
  CHECK_THROWS_AS(solve_poisson(kZero, parse_expr("1/z")), DomainError);
  CHECK_THROWS_AS(solve_poisson(parse_expr("1/(z-1)"), kZero), DomainError);
}

TEST_CASE("sampled sup norm") {
  CHECK(sampled_sup_norm(kOne) == 1.0);
  CHECK(sampled_sup_norm(parse_expr("abs(z)^2")) == doctest::Approx(1.0));
  CHECK(sampled_sup_norm(parse_expr("re(z)")) == doctest::Approx(1.0));
}
