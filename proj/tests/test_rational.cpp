#include "illume/rational.hpp"

#include "doctest.h"

#include <stdexcept>
#include <string>

using namespace illume;

TEST_CASE("parse_rat reads integers and fractions") {
  CHECK(parse_rat("0") == Rat(0));
  CHECK(parse_rat("7") == Rat(7));
  CHECK(parse_rat("-3") == Rat(-3));
  CHECK(parse_rat("1/2") == Rat(1, 2));
  CHECK(parse_rat("-5/8") == Rat(-5, 8));
  CHECK(parse_rat("4/6") == Rat(2, 3));
  CHECK(parse_rat("-0") == Rat(0));
}

TEST_CASE("parse_rat rejects malformed input") {
  CHECK_THROWS_AS(parse_rat(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("a"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("1/2/3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("/3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rat("3/"), std::invalid_argument);
}

TEST_CASE("format_rat round-trips and reduces") {
  CHECK(format_rat(Rat(5)) == "5");
  CHECK(format_rat(Rat(-2)) == "-2");
  CHECK(format_rat(Rat(1, 2)) == "1/2");
  CHECK(format_rat(Rat(-3, 4)) == "-3/4");
  CHECK(format_rat(parse_rat("4/6")) == "2/3");
  for (const char* s : {"0", "17", "-9", "22/7", "-105/4"}) {
    CHECK(format_rat(parse_rat(s)) == s);
  }
}

TEST_CASE("sign_of and abs_rat") {
  CHECK(sign_of(Rat(3, 7)) == 1);
  CHECK(sign_of(Rat(-1, 9)) == -1);
  CHECK(sign_of(Rat(0)) == 0);
  CHECK(abs_rat(Rat(-5, 3)) == Rat(5, 3));
  CHECK(abs_rat(Rat(5, 3)) == Rat(5, 3));
}

TEST_CASE("binomial spot values and Pascal identity") {
  CHECK(binomial(5, 2) == Int(10));
  CHECK(binomial(12, 5) == Int(792));
  CHECK(binomial(0, 0) == Int(1));
  CHECK(binomial(6, 0) == Int(1));
  CHECK(binomial(6, 6) == Int(1));
  CHECK(binomial(6, 7) == Int(0));
  // large-argument sanity check against the recurrence
  CHECK(binomial(128, 64) == binomial(127, 63) + binomial(127, 64));
  CHECK(binomial(64, 32) == Int("1832624140942590534"));
}

TEST_CASE("pow_int and pow_rat") {
  CHECK(pow_int(Int(2), 10) == Int(1024));
  CHECK(pow_int(Int(3), 0) == Int(1));
  CHECK(pow_int(Int(-2), 3) == Int(-8));
  CHECK(pow_rat(Rat(2, 3), 3) == Rat(8, 27));
  CHECK(pow_rat(Rat(5), 0) == Rat(1));
}

TEST_CASE("parse_rat_vec and format_rat_vec round trip") {
  RatVec v = parse_rat_vec("1 -1/2  0\t3/4");
  REQUIRE(v.size() == 4);
  CHECK(v[0] == Rat(1));
  CHECK(v[1] == Rat(-1, 2));
  CHECK(v[2] == Rat(0));
  CHECK(v[3] == Rat(3, 4));
  CHECK(format_rat_vec(v) == "1 -1/2 0 3/4");
  CHECK(format_rat_vec(v, ',') == "1,-1/2,0,3/4");
  CHECK(parse_rat_vec("").empty());
  CHECK(parse_rat_vec(format_rat_vec(v)) == v);
}

TEST_CASE("dot product is exact") {
  RatVec a{Rat(1, 2), Rat(-2), Rat(3)};
  RatVec b{Rat(4), Rat(1, 4), Rat(1, 3)};
  CHECK(dot(a, b) == Rat(1, 2) * 4 + Rat(-2) * Rat(1, 4) + Rat(3) * Rat(1, 3));
  CHECK(dot(a, b) == Rat(5, 2));
}

TEST_CASE("abs_sorted_desc, linf_norm, is_zero_vec") {
  RatVec x{Rat(0), Rat(-2), Rat(1)};
  RatVec s = abs_sorted_desc(x);
  REQUIRE(s.size() == 3);
  CHECK(s[0] == Rat(2));
  CHECK(s[1] == Rat(1));
  CHECK(s[2] == Rat(0));
  CHECK(linf_norm(x) == Rat(2));
  CHECK(linf_norm(RatVec{Rat(0), Rat(0)}) == Rat(0));
  CHECK(is_zero_vec(RatVec{Rat(0), Rat(0)}));
  CHECK_FALSE(is_zero_vec(x));
}

TEST_CASE("lex_less orders vectors entrywise") {
  RatVec a{Rat(-1), Rat(1)};
  RatVec b{Rat(-1), Rat(2)};
  RatVec c{Rat(0), Rat(-5)};
  CHECK(lex_less(a, b));
  CHECK(lex_less(a, c));
  CHECK(lex_less(b, c));
  CHECK_FALSE(lex_less(b, a));
  CHECK_FALSE(lex_less(a, a));
}

TEST_CASE("to_double and to_dvec") {
  CHECK(to_double(Rat(1, 2)) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(to_double(Rat(-7, 4)) == doctest::Approx(-1.75).epsilon(1e-15));
  DVec d = to_dvec(RatVec{Rat(1), Rat(-1, 2)});
  REQUIRE(d.size() == 2);
  CHECK(d[0] == 1.0);
  CHECK(d[1] == -0.5);
}
