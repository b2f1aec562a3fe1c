#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "diskmap/errors.hpp"
#include "diskmap/expr.hpp"

using namespace diskmap;

namespace {

const std::vector<std::string> kCorpus = {
    "z",
    "conj(z)",
    "z*conj(z)",
    "3*z*abs(z)^2 - z*abs(z)^8",
    "3*z^2*conj(z) - z^5*conj(z)^4",
    "z + 0.3*conj(z)^2",
    "z + 0.5*conj(z)^2",
    "(z - 0.5)/(1 - 0.5*z)",
    "exp(z)",
    "exp(conj(z))*z",
    "log(2 + z)",
    "log(3 - conj(z))*z",
    "re(z)",
    "im(z)",
    "re(z)^2 - im(z)^2",
    "abs(z)^2",
    "abs(z + 2)",
    "abs(z)^3*z",
    "pow(2 + z, 0.5)",
    "pow(2 + conj(z), -1.5)",
    "pow(3 + abs(z)^2, 0.25)*z",
    "z*pow(log(e/abs(2+z)^2 + 4), 0.25)",
    "i*z",
    "i*conj(z) + z",
    "pi*z",
    "e^2*z",
    "z^2 + conj(z)^3",
    "z^8 - conj(z)^7",
    "1/(2 - z)",
    "1/(2 - conj(z))^2",
    "(1 + z)^-2",
    "z*(1 + conj(z))^3",
    "-z",
    "--z",
    "-z^2",
    "2*-z",
    "(z + conj(z))/2",
    "(z - conj(z))/(2*i)",
    "z^3/3 + conj(z)^2/2",
    "exp(i*pi*z)",
    "exp(re(z))*im(z)",
    "log(abs(z + 3))",
    "abs(exp(z))",
    "re(z*conj(z))",
    "conj(conj(z))",
    "conj(z^2 + i)",
    "0.25*z - 1e-3*conj(z)",
    "1.5e2*z/100",
    "(z + 1)*(z - 1)*(conj(z) + 2)",
    "z^2*conj(z)^2 - 2*z*conj(z)",
};

// Points where every corpus expression is smooth.
std::vector<cplx> sample_points(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> r(0.05, 0.75);
  std::uniform_real_distribution<double> t(0.0, 6.283185307179586);
  std::vector<cplx> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::polar(r(rng), t(rng)));
  return out;
}

}  // namespace

TEST_CASE("corpus has fifty expressions") { CHECK(kCorpus.size() == 50); }

TEST_CASE("basic jets") {
  const auto p = parse_expr("z*conj(z)");
  const auto j = p.jet(0.5);
  CHECK(std::abs(j.value - 0.25) < 1e-15);
  CHECK(std::abs(j.dz - 0.5) < 1e-15);
  CHECK(std::abs(j.dzbar - 0.5) < 1e-15);

  const cplx z{0.3, -0.7};
  const auto c = parse_expr("conj(z)").jet(z);
  CHECK(c.value == std::conj(z));
  CHECK(c.dz == cplx{});
  CHECK(c.dzbar == cplx{1.0});
}

TEST_CASE("jet of 3z|z|^2 - z|z|^8 at 0.6") {
  const auto e = parse_expr("3*z*abs(z)^2 − z*abs(z)^8");
  const auto j = e.jet(0.6);
  const double r6 = std::pow(0.6, 6);
  CHECK(std::abs(j.dz - 0.36 * (6 - 5 * r6)) < 1e-14);
  CHECK(std::abs(j.dzbar - 0.36 * (3 - 4 * r6)) < 1e-14);
}

TEST_CASE("parse errors carry positions") {
  auto position_of = [](const char* text) -> long {
    try {
      parse_expr(text);
    } catch (const ParseError& e) {
      return static_cast<long>(e.position());
    }
    return -1;
  };
  CHECK(position_of("z*(1+") == 5);
  CHECK(position_of("foo(z)") == 0);
  CHECK(position_of("z^1.5") == 2);
  CHECK(position_of("z^65") == 2);
  CHECK(position_of("z +") == 3);
  CHECK(position_of("pow(z, z)") == 7);
  CHECK(position_of("") == 0);
  CHECK(position_of("(z))") == 3);
  for (const char* bad : {"z*(1+", "))", "abs()", "z z", "1..2", "conj(z,z)", "\xff"}) {
    try {
      parse_expr(bad);
      FAIL("expected ParseError for " << bad);
    } catch (const ParseError& e) {
      CHECK(e.position() <= std::string(bad).size());
    }
  }
}

TEST_CASE("positions count characters, not bytes") {
  try {
    parse_expr("z − ?");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("exponent and depth limits") {
  CHECK_NOTHROW(parse_expr("z^64"));
  CHECK_NOTHROW(parse_expr("z^-64"));
  CHECK_THROWS_AS(parse_expr("z^-65"), ParseError);
  std::string deep(300, '(');
  deep += "z";
  deep += std::string(300, ')');
  CHECK_THROWS_AS(parse_expr(deep), ParseError);
}

TEST_CASE("evaluation errors name the node") {
  try {
    parse_expr("1 + log(z)").jet(0.0);
    FAIL("expected EvalError");
  } catch (const EvalError& e) {
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(parse_expr("1/z").value(0.0), EvalError);
  CHECK_THROWS_AS(parse_expr("abs(z)").jet(0.0), EvalError);
  CHECK_THROWS_AS(parse_expr("pow(z, 0.5)").value(0.0), EvalError);
  // |z|^2 is smooth at 0 and its jet is defined.
  const auto j = parse_expr("abs(z)^2").jet(0.0);
  CHECK(j.value == cplx{});
  CHECK(j.dz == cplx{});
}

TEST_CASE("precedence") {
  CHECK(parse_expr("-z^2").value(2.0) == cplx{-4.0});
  CHECK_THROWS_AS(parse_expr("2^3^1"), ParseError);
  CHECK(parse_expr("1 - 2 - 3").value(0.0) == cplx{-4.0});
  CHECK(parse_expr("8/2/2").value(0.0) == cplx{2.0});
  CHECK(parse_expr("2*3 + 4").value(0.0) == cplx{10.0});
  CHECK(std::abs(parse_expr("e").value(0.0) - std::exp(1.0)) < 1e-15);
  CHECK(std::abs(parse_expr("pi").value(0.0) - 3.141592653589793) < 1e-15);
  CHECK(parse_expr("i*i").value(0.0) == cplx{-1.0});
  CHECK(eval_constant("2*pi/2") == cplx{3.141592653589793});
  CHECK_THROWS_AS(eval_constant("z"), DomainError);
}

TEST_CASE("pretty print round trip") {
  for (const auto& text : kCorpus) {
    const auto e = parse_expr(text);
    const auto printed = e.to_string();
    const auto again = parse_expr(printed);
    CHECK_MESSAGE(e == again, text << " -> " << printed);
    CHECK(again.to_string() == printed);
  }
}

TEST_CASE("automatic and finite-difference jets agree") {
  const auto pts = sample_points(100, 3);
  for (const auto& text : kCorpus) {
    const auto e = parse_expr(text);
    const auto f = [&](cplx z) { return e.value(z); };
    for (cplx z : pts) {
      const auto ad = e.jet(z);
      const auto fd = finite_difference_jet(f, DiskPoint(z));
      CHECK_MESSAGE(std::abs(ad.value - e.value(z)) <= 1e-14 * std::max(1.0, std::abs(ad.value)), text);
      CHECK_MESSAGE(std::abs(ad.dz - fd.dz) <= 1e-6, text << " at " << z);
      CHECK_MESSAGE(std::abs(ad.dzbar - fd.dzbar) <= 1e-6, text << " at " << z);
    }
  }
}

TEST_CASE("conjugation is an involution on jets") {
  const auto pts = sample_points(50, 5);
  for (const auto& text : kCorpus) {
    const auto u = parse_expr(text);
    const auto cc = parse_expr("conj(conj(" + text + "))");
    for (cplx z : pts) {
      const auto a = u.jet(z);
      const auto b = cc.jet(z);
      CHECK(a.value == b.value);
      CHECK(a.dz == b.dz);
      CHECK(a.dzbar == b.dzbar);
    }
  }
}

TEST_CASE("analytic plus anti-analytic expressions are harmonic") {
  const char* harmonic[] = {"z^3 + conj(z^2)", "exp(z) + conj(log(2+z))", "z + 0.3*conj(z)^2",
                            "(z - 0.5)/(1 - 0.5*z) + conj(z^5)"};
  const double h = 1e-4;
  for (const char* text : harmonic) {
    const auto e = parse_expr(text);
    for (cplx z : sample_points(20, 9)) {
      // 4 d_z d_zbar f by differencing the AD dz component along x and y.
      const cplx lap = 2.0 * ((e.jet(z + h).dzbar - e.jet(z - h).dzbar) / (2 * h) -
                              cplx{0, 1} * (e.jet(z + cplx{0, h}).dzbar - e.jet(z - cplx{0, h}).dzbar) / (2 * h));
      CHECK(std::abs(lap) <= 1e-6);
    }
  }
}

TEST_CASE("custom variable name") {
  ParseOptions opts;
  opts.variable = "t";
  const auto e = parse_expr("t/(1+t)", opts);
  CHECK(std::abs(e.value(1.0) - 0.5) < 1e-15);
  CHECK_THROWS_AS(parse_expr("z", opts), ParseError);
}

TEST_CASE("format_double round trips") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 123456789.125, -2.5}) {
    CHECK(std::stod(format_double(x)) == x);
  }
}
