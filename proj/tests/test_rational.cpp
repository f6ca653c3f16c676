#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <stdexcept>

#include "mixopt/ext_real.hpp"
#include "mixopt/linalg.hpp"
#include "mixopt/rational.hpp"
#include "test_util.hpp"

using namespace mixopt;

TEST_CASE("parse_rational accepts integers and fractions") {
  CHECK(parse_rational("3") == Rat(3));
  CHECK(parse_rational("-7/2") == Rat(-7) / 2);
  CHECK(parse_rational("4/6") == Rat(2) / 3);  // canonicalized
  CHECK(parse_rational("0") == Rat(0));
  CHECK(parse_rational("-0") == Rat(0));
}

TEST_CASE("parse_rational rejects malformed input") {
  for (const char* bad :
       {"", "abc", "1.5", "+3", "1/-2", "1/0", "-inf", "inf", "1/", "/2",
        "1/2/3", "2 ", " 2"}) {
    CHECK_THROWS_MATCHES(parse_rational(bad), std::invalid_argument,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("invalid rational")));
  }
}

TEST_CASE("format_rational round-trips through parse_rational") {
  std::mt19937_64 eng(11);
  for (int i = 0; i < 200; ++i) {
    Rat r = Rat(static_cast<long>(eng() % 2001) - 1000) /
            (1 + static_cast<long>(eng() % 40));
    CHECK(parse_rational(format_rational(r)) == r);
  }
  CHECK(format_rational(Rat(-3) / 4) == "-3/4");
  CHECK(format_rational(Rat(5)) == "5");
}

TEST_CASE("extended reals absorb infinity in addition") {
  ExtReal a(Rat(2)), infv = ExtReal::infinity();
  CHECK((a + infv).is_infinite());
  CHECK((infv + a).is_infinite());
  CHECK((infv + infv).is_infinite());
  CHECK((a + ExtReal(Rat(1) / 2)).value() == Rat(5) / 2);
}

TEST_CASE("extended reals scale with 0 * inf = 0") {
  ExtReal infv = ExtReal::infinity();
  CHECK(infv.scaled(Rat(0)) == ExtReal(Rat(0)));
  CHECK(infv.scaled(Rat(2)).is_infinite());
  CHECK(ExtReal(Rat(3)).scaled(Rat(2)) == ExtReal(Rat(6)));
  CHECK_THROWS_AS(infv.scaled(Rat(-1)), std::domain_error);
}

TEST_CASE("infinity compares greater than every rational") {
  ExtReal infv = ExtReal::infinity();
  CHECK(ExtReal(Rat(1000000)) < infv);
  CHECK(infv > ExtReal(Rat(-5)));
  CHECK(infv == ExtReal::infinity());
  CHECK_FALSE(infv < ExtReal::infinity());
  CHECK(infv <= ExtReal::infinity());
  CHECK(infv.str() == "inf");
  CHECK_THROWS_AS(infv.value(), std::domain_error);
}

TEST_CASE("rank and row reduction are exact") {
  CHECK(rank({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}) == 2);
  CHECK(rank({{Rat(1), Rat(2)}, {Rat(2), Rat(4)}}) == 1);
  CHECK(rank({{Rat(0), Rat(0)}}) == 0);
  CHECK(rank({{Rat(1) / 3, Rat(1) / 6}, {Rat(2), Rat(1)}}) == 1);
}

TEST_CASE("solve_linear_system returns the exact solution") {
  RatVec x = solve_linear_system({{Rat(2), Rat(1)}, {Rat(1), Rat(3)}},
                                 {Rat(5), Rat(10)});
  CHECK(x == RatVec{Rat(1), Rat(3)});
  CHECK_THROWS_AS(
      solve_linear_system({{Rat(1), Rat(2)}, {Rat(2), Rat(4)}}, {Rat(1), Rat(2)}),
      std::invalid_argument);
}

TEST_CASE("affine_dependence finds exact dependencies") {
  // Three collinear points carry the dependence (1, -2, 1).
  std::vector<RatVec> collinear = {{Rat(0), Rat(0)}, {Rat(1), Rat(1)},
                                   {Rat(2), Rat(2)}};
  auto mu = affine_dependence(collinear);
  REQUIRE(mu.has_value());
  Rat sum(0);
  RatVec combo(2, Rat(0));
  for (std::size_t i = 0; i < mu->size(); ++i) {
    sum += (*mu)[i];
    combo = combo + ((*mu)[i] * collinear[i]);
  }
  CHECK(sum == 0);
  CHECK(combo == RatVec{Rat(0), Rat(0)});

  std::vector<RatVec> independent = {{Rat(0), Rat(0)}, {Rat(1), Rat(0)},
                                     {Rat(0), Rat(1)}};
  CHECK_FALSE(affine_dependence(independent).has_value());
}

TEST_CASE("affine_dependence on random oversized sets") {
  std::mt19937_64 eng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t dim = 1 + testutil::draw(eng, 3);
    auto pts = testutil::random_points(eng, dim + 2, dim);
    auto mu = affine_dependence(pts);
    REQUIRE(mu.has_value());  // more than dim+1 points are always dependent
    Rat sum(0);
    RatVec combo(dim, Rat(0));
    bool nonzero = false;
    for (std::size_t i = 0; i < mu->size(); ++i) {
      sum += (*mu)[i];
      combo = combo + ((*mu)[i] * pts[i]);
      nonzero = nonzero || (*mu)[i] != 0;
    }
    CHECK(sum == 0);
    CHECK(combo == RatVec(dim, Rat(0)));
    CHECK(nonzero);
  }
}
