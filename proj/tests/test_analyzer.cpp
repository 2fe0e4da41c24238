#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "scb/reference.hpp"

#include <map>
#include <random>

using namespace scb;

namespace {

Rational q(long n, long d = 1) { return rational_of(n, d); }

const Rational kTol = rational_of(1, 1000000000);

// gamma_sup runs are shared between test cases.
const GammaSupResult& sup(const std::string& name) {
  static std::map<std::string, GammaSupResult> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, gamma_sup(catalog(name), kTol)).first;
  return it->second;
}

}  // namespace

TEST_CASE("stability interior") {
  CHECK(in_stability_interior(catalog("bdf3"), -2) == Tri::Yes);
  CHECK(in_stability_interior(catalog("ab1"), -1) == Tri::Yes);
  CHECK(in_stability_interior(catalog("ab3"), q(-84, 529)) == Tri::Yes);
  CHECK(in_stability_interior(catalog("ab1"), -2) == Tri::No);
  CHECK(in_stability_interior(catalog("ab1"), 0) == Tri::No);  // root 1 on the circle
  // 1 - lambda b0 = 0 for bdf1 at lambda = 1.
  CHECK(in_stability_interior(catalog("bdf1"), 1) == Tri::No);

  std::mt19937 rng(3);
  std::uniform_int_distribution<long> num(1, 2999), den(1, 1000);
  for (int k = 1; k <= 6; ++k) {
    const Method m = make_bdf(k);
    for (int i = 0; i < 50; ++i) {
      Rational g = rational_of(num(rng), den(rng));
      while (g >= 3) g /= 2;
      CHECK(in_stability_interior(m, -g) == Tri::Yes);
    }
  }
}

TEST_CASE("check_scb examples") {
  const ScbVerdict bdf2 = check_scb(catalog("bdf2"), q(1, 2));
  CHECK(bdf2.status == Status::Feasible);
  CHECK(bdf2.evidence == EvidenceType::FeasibleCert);
  REQUIRE(bdf2.tail);
  CHECK(verify_tail(*bdf2.tail));

  const ScbVerdict ab4 = check_scb(catalog("ab4"), q(1, 10));
  CHECK(ab4.status == Status::Infeasible);
  REQUIRE(!ab4.witnesses.empty());
  CHECK(ab4.witnesses.front() == 2);

  CHECK(check_scb(catalog("bdf1"), Rational(1000000)).status == Status::Feasible);

  const ScbVerdict ab1 = check_scb(catalog("ab1"), 2);
  CHECK(ab1.status == Status::Infeasible);
  CHECK(ab1.evidence == EvidenceType::InfeasibleStability);

  CHECK_THROWS_AS(check_scb(catalog("bdf2"), 0), std::invalid_argument);
}

TEST_CASE("bdf4 first witness past its optimal value") {
  AnalyzerOptions opt = default_options();
  opt.horizon = 27000;
  const ScbVerdict v = check_scb(catalog("bdf4"), parse_rational("0.48625"), opt);
  CHECK(v.status == Status::Infeasible);
  CHECK(v.evidence == EvidenceType::InfeasibleWitness);
  REQUIRE(!v.witnesses.empty());
  CHECK(v.witnesses.front() == 26814);
  CHECK(v.witnesses == std::vector<long>{26814, 26875, 26886, 26936, 26947, 26997});
}

TEST_CASE("interval scan path agrees with the exact path") {
  AnalyzerOptions opt = default_options();
  opt.interval_digits = 30;
  const ScbVerdict a = check_scb(catalog("bdf4"), q(1, 2), opt);
  const ScbVerdict b = check_scb(catalog("bdf4"), q(1, 2));
  CHECK(a.status == b.status);
  CHECK(a.witnesses.front() == b.witnesses.front());
  CHECK(check_scb(catalog("bdf3"), q(1, 2), opt).status == Status::Feasible);
}

TEST_CASE("existence") {
  for (const char* name : {"ebdf3", "ebdf4", "ebdf5"}) {
    const ExistenceResult r = scb_exists(catalog(name));
    CHECK(r.verdict == Existence::Exists);
    CHECK(r.n0 == 1);
    REQUIRE(r.tail);
    CHECK(verify_tail(*r.tail));
  }
  const ExistenceResult ab4 = scb_exists(catalog("ab4"));
  CHECK(ab4.verdict == Existence::NotExists);
  REQUIRE(ab4.nonpositive_index);
  CHECK(*ab4.nonpositive_index % ab4.n0 == 0);
  CHECK(eval_tau(catalog("ab4"), *ab4.nonpositive_index) <= 0);
}

TEST_CASE("simple root bound") {
  const auto bdf3 = simple_root_bound(catalog("bdf3"), 10);
  REQUIRE(bdf3);
  CHECK(bdf3->n == 6);
  CHECK(bdf3->gamma.sign_of(IntegerPoly{5184, -539352, 4277340, -7093698, 3248425}) == 0);
  CHECK(bdf3->gamma.compare(parse_rational("0.831264155")) > 0);
  CHECK(bdf3->gamma.compare(parse_rational("0.831264156")) < 0);
  const auto ab2 = simple_root_bound(catalog("ab2"), 5);
  REQUIRE(ab2);
  CHECK(ab2->n == 2);
  CHECK(ab2->gamma.compare(q(4, 9)) == 0);
  const auto ab3 = simple_root_bound(catalog("ab3"), 5);
  REQUIRE(ab3);
  CHECK(ab3->n == 2);
  CHECK(ab3->gamma.compare(q(84, 529)) == 0);
}

TEST_CASE("crossover") {
  const auto c4 = crossover(catalog("bdf4"), q(1, 100), q(7, 12) - q(1, 1000), kTol);
  REQUIRE(c4);
  CHECK(c4->lo <= parse_rational("0.486220284043"));
  CHECK(c4->hi >= parse_rational("0.486220284043"));
  CHECK(c4->hi - c4->lo <= kTol);
  const auto c5 = crossover(catalog("bdf5"), q(1, 100), 1, kTol);
  REQUIRE(c5);
  CHECK(c5->lo <= parse_rational("0.304213712525"));
  CHECK(c5->hi >= parse_rational("0.304213712526"));
  const auto c6 = crossover(catalog("bdf6"), q(1, 100), q(37, 60), kTol);
  REQUIRE(c6);
  CHECK(c6->lo <= parse_rational("0.131359487166"));
  CHECK(c6->hi >= parse_rational("0.131359487167"));
  // bdf3's crossover is at 5/6.
  const auto c3 = crossover(catalog("bdf3"), q(1, 100), 1, kTol);
  REQUIRE(c3);
  CHECK(c3->lo <= q(5, 6));
  CHECK(c3->hi >= q(5, 6));

  CHECK(dominance_state_at(catalog("bdf4"), c4->lo) == DominanceState::RealDominant);
  CHECK(dominance_state_at(catalog("bdf4"), c4->hi) == DominanceState::ComplexDominant);
  CHECK(dominance_state_at(catalog("bdf6"), c6->lo) == DominanceState::RealDominant);
  CHECK(dominance_state_at(catalog("bdf6"), c6->hi) == DominanceState::ComplexDominant);
}

TEST_CASE("complex dominance certificates") {
  CHECK(infeasible_by_complex_dominance(catalog("bdf2"), q(6, 10)).has_value());
  const auto c = infeasible_by_complex_dominance(catalog("bdf4"), q(1, 2));
  REQUIRE(c);
  CHECK(c->ratio_upper < 1);
  CHECK(!c->root.im.contains_zero());
  CHECK(!infeasible_by_complex_dominance(catalog("bdf3"), q(1, 2)).has_value());
}

TEST_CASE("gamma_sup against the reference values") {
  for (const auto& ref : reference_values()) {
    CAPTURE(ref.method);
    const GammaSupResult& r = sup(ref.method);
    const ReferenceCheck c = compare_with_reference(r, ref);
    CHECK_MESSAGE(c.passed, c.detail);
    CHECK(r.mechanism == ref.mechanism);
    if (ref.mechanism == Mechanism::SimpleRoot) CHECK(r.simple_root_n == ref.simple_root_n);
    if (r.mechanism == Mechanism::Crossover || r.mechanism == Mechanism::SimpleRoot) {
      CHECK(r.certified);
      CHECK(r.lo < r.hi);
      CHECK(r.hi - r.lo <= kTol);
    }
  }
  const GammaSupResult& bdf2 = sup("bdf2");
  CHECK(bdf2.lo <= q(1, 2));
  CHECK(bdf2.hi >= q(1, 2));
  const GammaSupResult& bdf3 = sup("bdf3");
  CHECK(bdf3.lo <= parse_rational("0.831264155297"));
  CHECK(bdf3.hi >= parse_rational("0.831264155298"));
  const GammaSupResult& ab3 = sup("ab3");
  CHECK(ab3.lo <= q(84, 529));
  CHECK(ab3.hi >= q(84, 529));
  CHECK(sup("ab4").mechanism == Mechanism::NonePositive);
  CHECK(sup("bdf1").mechanism == Mechanism::Unbounded);
  CHECK(!sup("bdf1").ladder.empty());
}

TEST_CASE("gamma_sup certificates are consistent") {
  for (const auto& ref : reference_values()) {
    CAPTURE(ref.method);
    const GammaSupResult& r = sup(ref.method);
    if (r.mechanism != Mechanism::Crossover && r.mechanism != Mechanism::SimpleRoot) continue;
    REQUIRE(r.at_lo);
    REQUIRE(r.at_hi);
    CHECK(r.at_lo->status == Status::Feasible);
    CHECK(r.at_lo->gamma <= r.lo);
    CHECK(r.at_hi->status == Status::Infeasible);
    CHECK(r.at_hi->gamma >= r.hi);
    // The hi-side evidence matches the mechanism tag.
    if (r.mechanism == Mechanism::SimpleRoot) CHECK(r.at_hi->evidence == EvidenceType::InfeasibleWitness);
    if (r.mechanism == Mechanism::Crossover) CHECK(r.at_hi->evidence == EvidenceType::InfeasibleComplexDominance);
    // Infeasible at hi: re-derive the witness or the stability failure.
    for (long n : r.at_hi->witnesses) CHECK(eval_mu(catalog(ref.method), r.at_hi->gamma, n) < 0);
    // The simple-root bound never undercuts the lower end.
    if (const auto sr = simple_root_bound(catalog(ref.method), std::max(8, 4 * catalog(ref.method).k)))
      CHECK(sr->gamma.compare(r.lo - kTol) >= 0);
  }
}

TEST_CASE("verify_against_poly") {
  CHECK(verify_against_poly(sup("bdf3"), IntegerPoly{1, 0, -2}, RootSelector::Smallest) == PolyCheck::Refuted);
  for (const char* name : {"bdf4", "bdf5"}) {
    const ReferenceValue ref = *reference_value(name);
    CHECK(verify_against_poly(sup(name), *ref.poly, ref.selector) == PolyCheck::Confirmed);
  }
  CHECK(reference_value("bdf5")->selector == RootSelector::SmallerOfTwo);
  CHECK(reference_value("bdf4")->selector == RootSelector::Unique);
}

TEST_CASE("monotonicity and witness soundness on a grid") {
  AnalyzerOptions opt = default_options();
  opt.horizon = 300;
  opt.witness_cap = 2000;
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    const Method m = catalog(name);
    bool infeasible_seen = false;
    for (int i = 1; i <= 12; ++i) {
      const Rational g = q(i, 10);
      const ScbVerdict v = check_scb(m, g, opt);
      if (v.status == Status::Feasible) CHECK_MESSAGE(!infeasible_seen, "feasible above an infeasible gamma");
      if (v.status == Status::Infeasible) infeasible_seen = true;
      if (v.evidence == EvidenceType::InfeasibleWitness)
        for (long n : v.witnesses) CHECK(eval_mu(m, g, n) < 0);
      if (v.status == Status::Feasible) {
        REQUIRE(v.tail);
        CHECK(verify_tail(*v.tail));
        CHECK(v.checked_to >= v.tail->n_start - 1);
      }
    }
  }
}
