#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "scb/arith.hpp"

#include <random>

using namespace scb;

TEST_CASE("decimal input is converted exactly") {
  CHECK(parse_rational("0.48625") == rational_of(48625, 100000));
  CHECK(parse_rational("48625/100000") == rational_of(389, 800));
  CHECK(parse_rational("1e-9") == rational_of(1, 1000000000));
  CHECK(parse_rational("-2.5E3") == Rational(-2500));
  CHECK(parse_rational("  7 ") == Rational(7));
  CHECK(parse_rational("1000000") == Rational(1000000));
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("rendering") {
  CHECK(to_string(rational_of(6, 4)) == "3/2");
  CHECK(to_string(Rational(5)) == "5");
  CHECK(to_decimal(rational_of(1, 3), 5) == "0.33333");
  CHECK(to_decimal(rational_of(1, 3), 5, Rounding::Up) == "0.33334");
  CHECK(to_decimal(rational_of(2, 3), 5, Rounding::Down) == "0.66666");
  CHECK(to_decimal(rational_of(-1, 3), 3, Rounding::Down) == "-0.334");
  CHECK(to_decimal(rational_of(999999, 1000000), 3, Rounding::Down) == "0.999");
  const std::vector<Rational> qs{rational_of(1, 6), rational_of(3, 4), Rational(2)};
  CHECK(lcm_of_denominators(qs) == 12);
}

TEST_CASE("simplest rational in an interval") {
  CHECK(simplest_between(rational_of(4, 10), rational_of(6, 10)) == rational_of(1, 2));
  CHECK(simplest_between(Rational(3), Rational(3)) == 3);
  CHECK(simplest_between(Rational(0), rational_of(1, 7)) == 0);
  CHECK(simplest_between(rational_of(4444, 10000), rational_of(4445, 10000)) == rational_of(4, 9));
  const Rational eps(1, 1000000000000);
  CHECK(simplest_between(rational_of(84, 529) - eps, rational_of(84, 529) + eps) == rational_of(84, 529));
}

TEST_CASE("interval operations contain the exact result") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000000);
  for (int i = 0; i < 500; ++i) {
    const Rational a = rational_of(num(rng), den(rng)), b = rational_of(num(rng), den(rng));
    const mpfr_prec_t bits = 24 + static_cast<mpfr_prec_t>(i % 5) * 20;
    const Interval A(a, bits), B(b, bits);
    CHECK(A.contains(a));
    CHECK((A + B).contains(a + b));
    CHECK((A - B).contains(a - b));
    CHECK((A * B).contains(a * b));
    if (b != 0) CHECK((A / B).contains(a / b));
    CHECK(A.sqr().contains(a * a));
    const Integer z(den(rng));
    CHECK((A / z).contains(a / z));
    CHECK(A.pow(3).contains(a * a * a));
  }
}

TEST_CASE("certified signs") {
  CHECK(certified_sign(Interval(rational_of(1, 3), 64)) == Sign::Positive);
  CHECK(certified_sign(Interval(rational_of(-1, 3), 64)) == Sign::Negative);
  CHECK(certified_sign(Interval::hull(Rational(-1), Rational(1), 64)) == Sign::Unknown);
  CHECK(certified_sign(Interval(64)) == Sign::Unknown);
}

TEST_CASE("sqrt and division by zero") {
  const Interval two(2L, 128);
  const Interval r = two.sqrt();
  CHECK(r.sqr().contains(Rational(2)));
  CHECK(r.width_upper() < rational_of(1, 1000000000));
  CHECK_THROWS_AS(two / Interval::hull(Rational(-1), Rational(1), 64), std::domain_error);
}

TEST_CASE("complex boxes") {
  const ComplexBox i(Interval(64), Interval(1L, 64));
  const ComplexBox m1 = i * i;
  CHECK(m1.re.contains(Rational(-1)));
  CHECK(m1.im.contains(Rational(0)));
  CHECK(i.pow(4).re.contains(Rational(1)));
  CHECK(i.abs_sq().contains(Rational(1)));
  const ComplexBox q = ComplexBox(Interval(3L, 64), Interval(4L, 64)) / ComplexBox(Interval(1L, 64), Interval(2L, 64));
  CHECK(q.re.contains(rational_of(11, 5)));
  CHECK(q.im.contains(rational_of(-2, 5)));
}

TEST_CASE("expressions evaluate exactly and in intervals") {
  const Expr e = Expr::div(Expr::add(Expr::leaf(1), Expr::leaf(rational_of(1, 2))), Expr::leaf(3));
  CHECK(e.eval_exact() == rational_of(1, 2));
  const Expr s = Expr::sqrt(Expr::leaf(2));
  CHECK(s.has_sqrt());
  CHECK_THROWS_AS(s.eval_exact(), std::logic_error);
  const Interval v = interval_eval(Expr::mul(s, s), 40);
  CHECK(v.contains(Rational(2)));
  CHECK_THROWS_AS(interval_eval(Expr::div(Expr::leaf(1), Expr::leaf(0)), 20), std::domain_error);
}

TEST_CASE("digit and bit conversions") {
  CHECK(bits_for_digits(1) == 4);
  CHECK(bits_for_digits(16000) >= 53151);
  CHECK(digits_for_bits(bits_for_digits(100)) >= 100);
}
