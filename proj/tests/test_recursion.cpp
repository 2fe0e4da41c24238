#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "scb/recursion.hpp"

#include <functional>
#include <random>

using namespace scb;

namespace {

Rational q(long n, long d = 1) { return rational_of(n, d); }

Rational pw(const Rational& x, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

// Horner evaluation of integer coefficients listed from the highest power.
Rational horner(std::initializer_list<long> c, const Rational& x) {
  Rational r = 0;
  for (long v : c) r = r * x + v;
  return r;
}

using Formula = std::function<Rational(const Rational&)>;

struct Display {
  const char* method;
  long n;
  Formula f;
};

// Starting values of mu_n(gamma) as printed in closed form.
std::vector<Display> displays() {
  return {
      {"bdf1", 0, [](const Rational& g) -> Rational { return 1 / (g + 1); }},
      {"bdf2", 0, [](const Rational& g) -> Rational { return 2 / (2 * g + 3); }},
      {"bdf2", 1, [](const Rational& g) -> Rational { return 8 / pw(2 * g + 3, 2); }},
      {"bdf3", 0, [](const Rational& g) -> Rational { return 6 / (6 * g + 11); }},
      {"bdf3", 1, [](const Rational& g) -> Rational { return 108 / pw(6 * g + 11, 2); }},
      {"bdf3", 2, [](const Rational& g) -> Rational { return 54 * (-6 * g + 25) / pw(6 * g + 11, 3); }},
      {"bdf3", 6,
       [](const Rational& g) -> Rational {
         return 6 * horner({5184, -539352, 4277340, -7093698, 3248425}, g) / pw(6 * g + 11, 7);
       }},
      {"bdf4", 0, [](const Rational& g) -> Rational { return 12 / (12 * g + 25); }},
      {"bdf4", 1, [](const Rational& g) -> Rational { return 576 / pw(12 * g + 25, 2); }},
      {"bdf4", 2, [](const Rational& g) -> Rational { return 1296 * (-4 * g + 13) / pw(12 * g + 25, 3); }},
      {"bdf4", 3, [](const Rational& g) -> Rational { return 192 * horner({144, -1992, 2137}, g) / pw(12 * g + 25, 4); }},
      {"bdf5", 0, [](const Rational& g) -> Rational { return 60 / (60 * g + 137); }},
      {"bdf5", 1, [](const Rational& g) -> Rational { return 18000 / pw(60 * g + 137, 2); }},
      {"bdf5", 2, [](const Rational& g) -> Rational { return 18000 * (-60 * g + 163) / pw(60 * g + 137, 3); }},
      {"bdf5", 3, [](const Rational& g) -> Rational { return 12000 * horner({3600, -37560, 30469}, g) / pw(60 * g + 137, 4); }},
      {"bdf5", 4,
       [](const Rational& g) -> Rational {
         return 4500 * horner({-216000, 8600400, -22146420, 10021847}, g) / pw(60 * g + 137, 5);
       }},
      {"bdf6", 0, [](const Rational& g) -> Rational { return 20 / (20 * g + 49); }},
      {"bdf6", 1, [](const Rational& g) -> Rational { return 2400 / pw(20 * g + 49, 2); }},
      {"bdf6", 2, [](const Rational& g) -> Rational { return 3000 * (-20 * g + 47) / pw(20 * g + 49, 3); }},
      {"bdf6", 3, [](const Rational& g) -> Rational { return 8000 * horner({400, -3440, 2131}, g) / (3 * pw(20 * g + 49, 4)); }},
      {"bdf6", 4,
       [](const Rational& g) -> Rational {
         return 500 * horner({-24000, 695600, -1343380, 474833}, g) / pw(20 * g + 49, 5);
       }},
      {"bdf6", 5,
       [](const Rational& g) -> Rational {
         return 160 * horner({480000, -53296000, 283987200, -212499240, 84071653}, g) / pw(20 * g + 49, 6);
       }},
      {"ab1", 1, [](const Rational&) -> Rational { return Rational(1); }},
      {"ab2", 1, [](const Rational&) -> Rational { return q(3, 2); }},
      {"ab2", 2, [](const Rational& g) -> Rational { return -9 * g / 4 + 1; }},
      {"ab3", 1, [](const Rational&) -> Rational { return q(23, 12); }},
      {"ab3", 2, [](const Rational& g) -> Rational { return -529 * g / 144 + q(7, 12); }},
      {"ab3", 3, [](const Rational& g) -> Rational { return 12167 * g * g / 1728 - 161 * g / 72 + 1; }},
      {"ab4", 1, [](const Rational&) -> Rational { return q(55, 24); }},
      {"ab4", 2, [](const Rational& g) -> Rational { return -3025 * g / 576 - q(1, 6); }},
  };
}

}  // namespace

TEST_CASE("printed starting values are reproduced for random gamma") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> num(1, 3000), den(1, 997);
  for (const auto& d : displays()) {
    CAPTURE(d.method);
    CAPTURE(d.n);
    const Method m = catalog(d.method);
    for (int i = 0; i < 50; ++i) {
      const Rational g = rational_of(num(rng), den(rng));
      CHECK(eval_mu(m, g, d.n) == d.f(g));
    }
  }
  // Explicit methods start from mu_0 = 0.
  for (const char* name : {"ab1", "ab2", "ab3", "ab4", "ebdf3"}) CHECK(eval_mu(catalog(name), q(1, 3), 0) == 0);
}

TEST_CASE("known closed forms") {
  const Method bdf1 = catalog("bdf1"), bdf2 = catalog("bdf2"), ab2 = catalog("ab2");
  const Rational g = q(5, 7);
  const auto p1 = mu_prefix(bdf1, g, 60);
  for (int n = 0; n <= 60; ++n) CHECK(p1[static_cast<size_t>(n)] == 1 / pw(g + 1, n + 1));
  const auto p2 = mu_prefix(bdf2, q(1, 2), 60);
  for (int n = 0; n <= 60; ++n) CHECK(p2[static_cast<size_t>(n)] == Rational(n + 1) / pw(Rational(2), n + 1));
  const auto p3 = mu_prefix(ab2, q(4, 9), 60);
  for (int n = 1; n <= 60; ++n) {
    const Rational expect = pw(q(1, 3), n - 1) * (pw(Rational(2), n) - 4 * (n % 2 ? -1 : 1)) / 4;
    CHECK(p3[static_cast<size_t>(n)] == expect);
  }
}

TEST_CASE("tau is mu at gamma = 0") {
  for (const auto& name : catalog_names()) {
    const Method m = catalog(name);
    const auto t = tau_prefix(m, 200);
    const auto mu = mu_prefix(m, 0, 200);
    CHECK(t == mu);
    CHECK(eval_tau(m, 37) == t[37]);
  }
}

TEST_CASE("integer-scaled stream agrees with the rational recursion") {
  std::mt19937 rng(9);
  std::uniform_int_distribution<long> num(1, 400), den(1, 300);
  for (const auto& name : catalog_names()) {
    const Method m = catalog(name);
    for (int i = 0; i < 4; ++i) {
      const Rational g = rational_of(num(rng), den(rng));
      const auto exact = mu_prefix(m, g, 120);
      ExactMuStream s(m, g);
      for (long n = 0; n <= 120; ++n) {
        CHECK(s.index() == n);
        s.next();
        CHECK(s.value() == exact[static_cast<size_t>(n)]);
        CHECK(s.sign() == sgn(exact[static_cast<size_t>(n)]));
      }
    }
  }
}

TEST_CASE("stream signs stay correct when the scale is negative") {
  // 1 + gamma b0 < 0 for bdf2 at gamma = 3: the scaled terms alternate relative to mu_n.
  const Method m = catalog("bdf2");
  const Rational g = -3;
  const auto exact = mu_prefix(m, g, 30);
  ExactMuStream s(m, g);
  for (long n = 0; n <= 30; ++n) {
    s.next();
    CHECK(s.value() == exact[static_cast<size_t>(n)]);
  }
}

TEST_CASE("exact sign scan") {
  const ExactScan ab4 = exact_sign_scan(catalog("ab4"), q(1, 10), 1, 50, false);
  REQUIRE(!ab4.negatives.empty());
  CHECK(ab4.negatives.front() == 2);
  const ExactScan first = exact_sign_scan(catalog("ab4"), q(1, 10), 1, 50, true);
  CHECK(first.negatives == std::vector<long>{2});
  const ExactScan ok = exact_sign_scan(catalog("bdf2"), q(1, 2), 1, 500, false);
  CHECK(ok.negatives.empty());
  CHECK(ok.zeros.empty());
  CHECK(ok.n_to == 500);
  const ExactScan ab2 = exact_sign_scan(catalog("ab2"), q(4, 9), 1, 20, false);
  CHECK(ab2.zeros == std::vector<long>{2});
}

TEST_CASE("interval enclosures contain the exact values") {
  for (const std::string name : {"bdf3", "bdf5", "ab3", "ebdf4"}) {
    CAPTURE(name);
    const Method m = catalog(name);
    const Rational g = q(3, 10);
    const auto exact = mu_prefix(m, g, 2000);
    IntervalMuStream rs(m, g, 60);
    IntervalMuStream is(m, Interval(g, bits_for_digits(80)), 80);
    for (long n = 0; n <= 2000; ++n) {
      const Interval& a = rs.next();
      const Interval& b = is.next();
      if (!a.contains(exact[static_cast<size_t>(n)]) || !b.contains(exact[static_cast<size_t>(n)])) {
        FAIL("enclosure misses mu_" << n);
      }
    }
    const auto encl = mu_enclosures(m, GammaValue(g), 300, 50);
    for (long n = 0; n <= 300; ++n) CHECK(encl[static_cast<size_t>(n)].contains(exact[static_cast<size_t>(n)]));
  }
}

TEST_CASE("interval scan agrees with the exact scan") {
  const Method m = catalog("bdf4");
  const Rational g = q(1, 2);
  const IntervalScan is = interval_sign_scan(m, g, 400, 40);
  const ExactScan es = exact_sign_scan(m, g, 1, 400, false);
  for (long n : is.negatives) CHECK(std::find(es.negatives.begin(), es.negatives.end(), n) != es.negatives.end());
  CHECK(is.negatives.size() + is.unknown.size() >= es.negatives.size());
  CHECK(is.positives + static_cast<long>(is.negatives.size() + is.unknown.size()) == 400);
}

TEST_CASE("numerator polynomials in gamma") {
  for (const char* name : {"bdf2", "bdf4", "ab3", "ebdf3"}) {
    const Method m = catalog(name);
    const auto nums = mu_numerators(m, 25);
    const IntegerPoly base = mu_denominator_base(m);
    for (const Rational& g : {q(1, 3), q(5, 2), q(7, 11)}) {
      const Rational L = to_rational(base)(g);
      CHECK(L > 0);
      for (long n = 0; n <= 25; ++n)
        CHECK(to_rational(nums[static_cast<size_t>(n)])(g) / pw(L, static_cast<int>(n + 1)) == eval_mu(m, g, n));
    }
  }
}

TEST_CASE("bdf4 witness set near gamma = 0.48625") {
  const Method m = catalog("bdf4");
  const ExactScan s = exact_sign_scan(m, parse_rational("0.48625"), 1, 27000, false);
  CHECK(s.negatives == std::vector<long>{26814, 26875, 26886, 26936, 26947, 26997});
}

TEST_CASE("sequence export") {
  const std::string csv = sequence_csv(catalog("bdf2"), SeqKind::Mu, q(1, 2), 3);
  CHECK(csv.find("n,value,sign") == 0);
  CHECK(csv.find("1,1/2,") != std::string::npos);
  CHECK(csv.find("3,1/4,") != std::string::npos);
}
