#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "scb/reference.hpp"
#include "support.hpp"

using namespace scb;
using scb::test::matches_printed;

namespace {

Rational q(long n, long d = 1) { return rational_of(n, d); }

// The optimal gamma of a BDF method as an algebraic number.
AlgebraicReal gamma_star(const std::string& method) {
  const ReferenceValue ref = *reference_value(method);
  for (const auto& r : isolate_real_roots(*ref.poly))
    if (r.compare(Rational(0)) > 0) return r;
  throw std::logic_error("no positive root");
}

bool box_matches(const ComplexBox& b, const std::string& re, const std::string& im) {
  return matches_printed(b.re, re) && matches_printed(b.im, im);
}

// Index of the root matching the printed value, or -1.
int find_root(const ClosedForm& cf, const std::string& re, const std::string& im = "0") {
  for (size_t i = 0; i < cf.roots.size(); ++i)
    if (box_matches(cf.roots[i].root.box, re, im)) return static_cast<int>(i);
  return -1;
}

struct Printed {
  std::string rho_re, rho_im, c_re, c_im;
};

void check_printed(const std::string& method, const std::vector<Printed>& values) {
  CAPTURE(method);
  const ClosedForm cf = closed_form(catalog(method), GammaValue(gamma_star(method)), SeqKind::Mu);
  for (const auto& v : values) {
    CAPTURE(v.rho_re);
    const int i = find_root(cf, v.rho_re, v.rho_im);
    REQUIRE(i >= 0);
    CHECK(box_matches(cf.roots[static_cast<size_t>(i)].coeffs[0], v.c_re, v.c_im));
  }
}

}  // namespace

TEST_CASE("ebdf3 tau closed form") {
  const ClosedForm cf = closed_form(catalog("ebdf3"), GammaValue(Rational(0)), SeqKind::Tau);
  REQUIRE(cf.roots.size() == 3);
  // Roots 1 and (7 +- i sqrt(39))/22, all with coefficient 1.
  const Interval s39 = Interval(Rational(39), 200).sqrt() / Integer(22);
  const Interval re(q(7, 22), 200);
  int found = 0;
  for (const auto& r : cf.roots) {
    const ComplexBox& b = r.root.box;
    if (b.re.contains(Rational(1)) && b.im.contains(Rational(0))) ++found;
    if (b.re.overlaps(re) && (b.im.overlaps(s39) || b.im.overlaps(-s39))) ++found;
    CHECK(r.coeffs[0].re.contains(Rational(1)));
    CHECK(r.coeffs[0].im.contains(Rational(0)));
  }
  CHECK(found == 3);
  // Conjugate roots carry conjugate coefficients.
  for (size_t i = 0; i < cf.roots.size(); ++i) {
    const int j = cf.roots[i].conjugate;
    if (j < 0) continue;
    const auto& c = cf.roots[i].coeffs[0];
    const auto& d = cf.roots[static_cast<size_t>(j)].coeffs[0];
    CHECK(c.re.overlaps(d.re));
    CHECK(c.im.overlaps(-d.im));
  }
}

TEST_CASE("bdf3 at the optimal gamma") {
  check_printed("bdf3", {{"0.500518", "0", "0.50155509", "0"}, {"0.312678", "0.390087", "-0.0631319", "-0.270418"}});
  const ClosedForm cf = closed_form(catalog("bdf3"), GammaValue(gamma_star("bdf3")), SeqKind::Mu);
  const int r2 = find_root(cf, "0.312678", "0.390087");
  REQUIRE(r2 >= 0);
  CHECK(matches_printed(cf.roots[static_cast<size_t>(r2)].root.box.abs(), "0.499935"));

  const auto mu = mu_enclosures(catalog("bdf3"), GammaValue(gamma_star("bdf3")), 100, 60);
  CHECK(mu[6].contains(Rational(0)));
  CHECK(matches_printed(mu[92] * Interval(parse_rational("1e28"), mu[92].bits()), "1.585176"));
  for (long n = 1; n <= 100; ++n)
    if (n != 6) CHECK(mu[static_cast<size_t>(n)].certainly_positive());

  const auto tail = tail_certificate(cf);
  REQUIRE(tail);
  CHECK(tail->n_start <= 93);
  CHECK(verify_tail(*tail));
}

TEST_CASE("bdf4 at the optimal gamma") {
  check_printed("bdf4", {{"0.605651", "0", "1.21912", "0"},
                         {"0.437941", "0", "-0.583734", "0"},
                         {"0.25655", "0.54863", "-0.123106", "-0.169757"}});
}

TEST_CASE("bdf5 at the optimal gamma") {
  check_printed("bdf5", {{"0.737893", "0", "0.994377", "0"},
                         {"0.195442", "0.711539", "-0.117157", "-0.126015"},
                         {"0.401777", "0.175943", "-0.186798", "-0.0841337"}});
}

TEST_CASE("bdf6 at the optimal gamma") {
  check_printed("bdf6", {{"0.87690236", "0", "1.0000077", "0"},
                         {"0.41284041", "0", "-0.13742979", "0"},
                         {"0.13673253", "0.86617664", "-0.11295491", "-0.10160183"},
                         {"0.38057439", "0.29512217", "-0.124637633", "-0.050848744"}});
}

TEST_CASE("reconstruction contains the exact values") {
  for (const std::string name : {"bdf2", "bdf3", "bdf5", "bdf6", "ab2", "ab3", "ebdf4"}) {
    CAPTURE(name);
    const Method m = catalog(name);
    const Rational g = q(1, 7);
    ClosedFormOptions opt;
    opt.allow_multiple = true;
    const ClosedForm cf = closed_form(m, GammaValue(g), SeqKind::Mu, opt);
    const auto exact = mu_prefix(m, g, 300);
    for (long n = std::max(0L, cf.valid_from); n <= 300; ++n) {
      const ComplexBox v = cf.value(n);
      if (!v.re.contains(exact[static_cast<size_t>(n)]) || !v.im.contains(Rational(0))) FAIL("mu_" << n);
    }
  }
}

TEST_CASE("tau converges to 1") {
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    ClosedFormOptions opt;
    opt.allow_multiple = true;
    const ClosedForm cf = closed_form(catalog(name), GammaValue(Rational(0)), SeqKind::Tau, opt);
    const int one = find_root(cf, "1.0000000");
    REQUIRE(one >= 0);
    CHECK(cf.roots[static_cast<size_t>(one)].coeffs[0].re.contains(Rational(1)));
  }
}

TEST_CASE("EBDF tail certificates") {
  for (const std::string name : {"ebdf3", "ebdf4", "ebdf5"}) {
    CAPTURE(name);
    const ClosedForm cf = closed_form(catalog(name), GammaValue(Rational(0)), SeqKind::Tau);
    const auto tail = tail_certificate(cf);
    REQUIRE(tail);
    CHECK(verify_tail(*tail));
    CHECK(tail->leading_lower > 0);
    CHECK(tail->residual_upper < tail->leading_lower);
    CHECK(tail->residual_upper <= q(9, 10));
    CHECK(tail->rho_lo <= 1);
    CHECK(tail->rho_hi >= 1);
  }
  const auto t3 = tail_certificate(closed_form(catalog("ebdf3"), GammaValue(Rational(0)), SeqKind::Tau));
  CHECK(t3->n_start == 1);
  const auto t5 = tail_certificate(closed_form(catalog("ebdf5"), GammaValue(Rational(0)), SeqKind::Tau));
  CHECK(t5->n_start <= 5);
}

TEST_CASE("tampered certificates are rejected") {
  auto tail = *tail_certificate(closed_form(catalog("ebdf4"), GammaValue(Rational(0)), SeqKind::Tau));
  auto bad = tail;
  bad.residual_upper = bad.leading_lower + 1;
  CHECK(!verify_tail(bad));
  bad = tail;
  if (!bad.terms.empty()) {
    bad.terms[0].ratio_upper = 2;
    CHECK(!verify_tail(bad));
  }
}

TEST_CASE("dominance classification") {
  // bdf4 at 1/2 is past its optimal value: a complex pair dominates.
  const ClosedForm c4 = closed_form(catalog("bdf4"), GammaValue(q(1, 2)), SeqKind::Mu);
  CHECK(dominance(c4).state == DominanceState::ComplexDominant);
  CHECK_THROWS_AS(tail_certificate(c4), std::domain_error);
  const ClosedForm c2 = closed_form(catalog("bdf2"), GammaValue(q(1, 3)), SeqKind::Mu);
  CHECK(dominance(c2).state == DominanceState::RealDominant);
  CHECK(eventual_sign(c2) == EventualSign::Positive);
}

TEST_CASE("multiple roots") {
  // bdf4's characteristic polynomial has a double root at gamma = 7/12.
  CHECK_THROWS_AS(closed_form(catalog("bdf4"), GammaValue(q(7, 12)), SeqKind::Mu), ClosedFormUnavailable);
  ClosedFormOptions opt;
  opt.allow_multiple = true;
  const ClosedForm cf = closed_form(catalog("bdf4"), GammaValue(q(7, 12)), SeqKind::Mu, opt);
  int total = 0;
  for (const auto& r : cf.roots) total += r.multiplicity;
  CHECK(total == 4);
  const auto exact = mu_prefix(catalog("bdf4"), q(7, 12), 60);
  for (long n = std::max(0L, cf.valid_from); n <= 60; ++n) CHECK(cf.value(n).re.contains(exact[static_cast<size_t>(n)]));
  // bdf2 at 1/2 has the double root 1/2.
  const ClosedForm d2 = closed_form(catalog("bdf2"), GammaValue(q(1, 2)), SeqKind::Mu, opt);
  REQUIRE(d2.roots.size() == 1);
  CHECK(d2.roots[0].multiplicity == 2);
  const auto t = tail_certificate(d2);
  REQUIRE(t);
  CHECK(t->rho_multiplicity == 2);
}
