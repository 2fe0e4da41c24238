#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "scb/methods.hpp"
#include "scb/recursion.hpp"

#include <random>

using namespace scb;

namespace {

Rational q(long n, long d = 1) { return rational_of(n, d); }

std::vector<Rational> qs(std::initializer_list<std::pair<long, long>> v) {
  std::vector<Rational> out;
  for (const auto& [n, d] : v) out.push_back(q(n, d));
  return out;
}

// Textbook coefficient tables, typed in independently of the generators.
struct Table {
  const char* name;
  std::vector<Rational> a, b;
};

std::vector<Table> tables() {
  return {
      {"bdf1", qs({{1, 1}}), qs({{1, 1}, {0, 1}})},
      {"bdf2", qs({{4, 3}, {-1, 3}}), qs({{2, 3}, {0, 1}, {0, 1}})},
      {"bdf3", qs({{18, 11}, {-9, 11}, {2, 11}}), qs({{6, 11}, {0, 1}, {0, 1}, {0, 1}})},
      {"bdf4", qs({{48, 25}, {-36, 25}, {16, 25}, {-3, 25}}), qs({{12, 25}, {0, 1}, {0, 1}, {0, 1}, {0, 1}})},
      {"bdf5", qs({{300, 137}, {-300, 137}, {200, 137}, {-75, 137}, {12, 137}}),
       qs({{60, 137}, {0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}})},
      {"bdf6", qs({{360, 147}, {-450, 147}, {400, 147}, {-225, 147}, {72, 147}, {-10, 147}}),
       qs({{60, 147}, {0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}, {0, 1}})},
      {"ab1", qs({{1, 1}}), qs({{0, 1}, {1, 1}})},
      {"ab2", qs({{1, 1}, {0, 1}}), qs({{0, 1}, {3, 2}, {-1, 2}})},
      {"ab3", qs({{1, 1}, {0, 1}, {0, 1}}), qs({{0, 1}, {23, 12}, {-16, 12}, {5, 12}})},
      {"ab4", qs({{1, 1}, {0, 1}, {0, 1}, {0, 1}}), qs({{0, 1}, {55, 24}, {-59, 24}, {37, 24}, {-9, 24}})},
  };
}

}  // namespace

TEST_CASE("catalog matches independent coefficient tables") {
  for (const auto& t : tables()) {
    CAPTURE(t.name);
    const Method m = catalog(t.name);
    CHECK(m.k == static_cast<int>(t.a.size()));
    CHECK(m.a == t.a);
    CHECK(m.b == t.b);
    CHECK(is_valid(m));
  }
  CHECK(catalog("bdf2").family == Family::BDF);
  CHECK(catalog("ab3").family == Family::AB);
  CHECK(catalog("ebdf4").family == Family::EBDF);
}

TEST_CASE("unknown names list the available methods") {
  try {
    catalog("rk4");
    FAIL("expected an error");
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    CHECK(msg.find("bdf6") != std::string::npos);
    CHECK(msg.find("ebdf5") != std::string::npos);
  }
  CHECK(catalog_names().size() == 13);
}

TEST_CASE("every catalog method is consistent") {
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    const Method m = catalog(name);
    Rational sa = 0, sja = 0, sb = 0;
    for (int j = 1; j <= m.k; ++j) {
      sa += m.a_at(j);
      sja += j * m.a_at(j);
    }
    for (int j = 0; j <= m.k; ++j) sb += m.b_at(j);
    CHECK(sa == 1);
    CHECK(sja == sb);
    CHECK(m.b_at(0) >= 0);
    for (const auto& c : validate(m)) CHECK_MESSAGE(c.passed, c.name << ": " << c.detail);
  }
}

TEST_CASE("EBDF entries reproduce the printed tau starting values") {
  const std::vector<std::pair<const char*, std::vector<Rational>>> printed{
      {"ebdf3", qs({{18, 11}, {126, 121}, {1212, 1331}})},
      {"ebdf4", qs({{48, 25}, {504, 625}, {10992, 15625}, {366516, 390625}})},
      {"ebdf5", {q(300, 137), q(7800, 18769), q(1271400, 2571353), q(415574100, 352275361),
                 rational_of(Integer("64978409160"), Integer("48261724457"))}},
  };
  for (const auto& [name, tau] : printed) {
    CAPTURE(name);
    const Method m = catalog(name);
    CHECK(m.b_at(0) == 0);
    const auto t = tau_prefix(m, m.k);
    CHECK(t[0] == 0);
    for (size_t i = 0; i < tau.size(); ++i) CHECK(t[i + 1] == tau[i]);
    // rho is shared with the BDF method of the same step number.
    CHECK(generating_polys(m).rho == generating_polys(make_bdf(m.k)).rho);
    CHECK(n0(m) == 1);
  }
  CHECK(catalog("ebdf3").a == qs({{18, 11}, {-9, 11}, {2, 11}}));
}

TEST_CASE("validation reports failed assumptions") {
  Method bad = catalog("bdf2");
  bad.a = {q(2), q(-1)};
  bad.b = {q(1), q(0), q(0)};
  const auto checks = validate(bad);
  bool zero_stability_failed = false;
  for (const auto& c : checks)
    if (c.name == "zero-stability") zero_stability_failed = !c.passed;
  CHECK(zero_stability_failed);
  CHECK_THROWS_AS(require_valid(bad), std::invalid_argument);

  Method neg = catalog("bdf1");
  neg.b = {q(-1), q(2)};
  bool b0_failed = false;
  for (const auto& c : validate(neg))
    if (c.name == "b0-nonnegative") b0_failed = !c.passed;
  CHECK(b0_failed);

  Method inconsistent = catalog("ab1");
  inconsistent.b = {q(0), q(2)};
  CHECK(!is_valid(inconsistent));

  Method malformed = catalog("ab2");
  malformed.b.pop_back();
  CHECK_THROWS_AS(validate(malformed), std::invalid_argument);
}

TEST_CASE("generating polynomials") {
  const GeneratingPolys bdf2 = generating_polys(catalog("bdf2"));
  CHECK(bdf2.rho == RationalPoly{q(1), q(-4, 3), q(1, 3)});
  CHECK(bdf2.sigma == RationalPoly{q(2, 3), q(0), q(0)});
  const GeneratingPolys ab1 = generating_polys(catalog("ab1"));
  CHECK(ab1.rho == RationalPoly{1, -1});
  CHECK(ab1.sigma == RationalPoly{1});
  CHECK(generating_polys(catalog("ebdf3")).rho == RationalPoly{q(1), q(-18, 11), q(9, 11), q(-2, 11)});
}

TEST_CASE("characteristic polynomial of the mu recursion") {
  const Rational g = q(7, 5);
  // (2g+3) x^2 - 4x + 1
  CHECK(char_poly_mu(catalog("bdf2"), g) == RationalPoly{2 * g + 3, q(-4), q(1)});
  CHECK(char_poly_mu(catalog("bdf5"), g) == RationalPoly{60 * g + 137, q(-300), q(300), q(-200), q(75), q(-12)});

  std::mt19937 rng(11);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 20);
  for (const auto& name : catalog_names()) {
    const Method m = catalog(name);
    const RationalPoly p = char_poly_mu(m, 0);
    const RationalPoly rho = generating_polys(m).rho;
    const Rational ratio = p.leading() / rho.leading();
    CHECK(ratio > 0);
    for (int i = 0; i < 100; ++i) {
      const Rational z = rational_of(num(rng), den(rng));
      CHECK(p(z) == ratio * rho(z));
    }
    // Integer pencil agrees with the rational form.
    const Pencil pen = char_pencil(m);
    for (int i = 0; i < 10; ++i) {
      const Rational gamma = rational_of(std::abs(num(rng)), den(rng));
      const RationalPoly viapencil = to_rational(pen.p0) + gamma * to_rational(pen.p1);
      CHECK(viapencil == char_poly_mu(m, gamma));
    }
  }
}

TEST_CASE("n0") {
  CHECK(n0(catalog("ab1")) == 1);
  CHECK(n0(catalog("ebdf3")) == 1);
  CHECK(n0(catalog("ebdf5")) == 1);
  CHECK(n0(catalog("bdf2")) == 1);
}

TEST_CASE("JSON round trip") {
  for (const auto& name : catalog_names()) {
    const Method m = catalog(name);
    const Method back = method_from_json(method_to_json(m));
    CHECK(back.k == m.k);
    CHECK(back.a == m.a);
    CHECK(back.b == m.b);
    CHECK(back.name == m.name);
  }
  const Method custom = method_from_json(R"({"k": 1, "a": ["1"], "b": ["1/2", "1/2"], "name": "trapezoid"})");
  CHECK(custom.b == qs({{1, 2}, {1, 2}}));
  CHECK(is_valid(custom));
  CHECK_THROWS_AS(method_from_json(R"({"k": 2, "a": ["1"], "b": ["0", "1"]})"), std::invalid_argument);
  CHECK_THROWS_AS(method_from_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(resolve_method("/nonexistent/method.json"), std::invalid_argument);
}
