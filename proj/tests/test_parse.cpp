#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "carsym/parse.hpp"

#include <random>

#include "doctest.h"
#include "test_support.hpp"

using namespace carsym;

TEST_CASE("basic expressions") {
  CHECK(parse_expression("ad(0)*a(0)").str() == "ad(0)*a(0)");
  CHECK(parse_expression("a(1/2) + 2*ad(-3/4)").str() == "2*ad(-3/4) + a(1/2)");
  CHECK(parse_expression("a(0)*ad(0)").str() == "1 - ad(0)*a(0)");
  CHECK(parse_expression("0").is_zero());
  CHECK(parse_expression("1").str() == "1");
  CHECK(parse_expression("-ad(0)").str() == "-ad(0)");
}

TEST_CASE("scalars") {
  CHECK(parse_expression("2.5*a(0)").str() == "2.5*a(0)");
  CHECK(parse_expression("1i*a(0)").str() == "1i*a(0)");
  CHECK(parse_expression("(1,2)*a(0)").str() == "(1,2)*a(0)");
  CHECK(parse_expression("(1,-2)*a(0)").str() == "(1,-2)*a(0)");
  CHECK(parse_expression("2e-3*a(0)").terms().begin()->second == Complex(0.002, 0.0));
}

TEST_CASE("parenthesized expressions") {
  CHECK(parse_expression("(a(0)+ad(0))*(a(0)+ad(0))").str() == "1");
  CHECK(parse_expression("2*(ad(0)+ad(1))").str() == "2*ad(0) + 2*ad(1)");
}

TEST_CASE("errors carry 1-based columns") {
  CHECK_THROWS_WITH_AS(parse_expression("a(1/3)"), doctest::Contains("not a power of two"), ParseError);
  try {
    parse_expression("a(1/3)");
  } catch (const ParseError& e) {
    CHECK(e.column == 5);
  }
  CHECK_THROWS_AS(parse_expression("b(0)"), ParseError);
  CHECK_THROWS_AS(parse_expression("a(0"), ParseError);
  CHECK_THROWS_AS(parse_expression("a(0) +"), ParseError);
  CHECK_THROWS_AS(parse_expression("a(0) a(1)"), ParseError);
  CHECK_THROWS_AS(parse_expression(""), ParseError);
  try {
    parse_expression("a(0) @ a(1)");
  } catch (const ParseError& e) {
    CHECK(e.column == 6);
  }
}

TEST_CASE("round trip parse(render(p)) == p") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    CarPolynomial p = testing::random_poly(rng, -3, 3, 4, 5);
    CHECK(parse_expression(p.str()) == p);
  }
  // dyadic indices round trip too
  CarPolynomial q = CarPolynomial::creator(Dyadic(-3, 2)) * CarPolynomial::annihilator(Dyadic(1, 3));
  CHECK(parse_expression(q.str()) == q);
}
