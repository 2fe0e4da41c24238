#include "scb/analyzer.hpp"

namespace scb {

std::string to_string(Mechanism m) {
  switch (m) {
    case Mechanism::Crossover: return "Crossover";
    case Mechanism::SimpleRoot: return "SimpleRoot";
    case Mechanism::Unbounded: return "Unbounded";
    case Mechanism::NonePositive: return "NonePositive";
    case Mechanism::Bisection: return "Bisection";
  }
  return "Bisection";
}

std::string to_string(RootSelector s) {
  switch (s) {
    case RootSelector::Smallest: return "smallest real root";
    case RootSelector::Unique: return "unique real root";
    case RootSelector::SmallerOfTwo: return "smaller real root";
  }
  return "";
}

std::string to_string(PolyCheck c) { return c == PolyCheck::Confirmed ? "Confirmed" : "Refuted"; }

std::optional<SimpleRoot> simple_root_bound(const Method& m, int n_scan) {
  if (n_scan < 1) throw std::invalid_argument("simple_root_bound: n_scan must be positive");
  std::optional<SimpleRoot> best;
  const auto numerators = mu_numerators(m, n_scan);
  for (int n = 1; n <= n_scan; ++n) {
    const IntegerPoly& p = numerators[static_cast<size_t>(n)];
    if (p.degree() < 1) continue;
    for (auto& r : isolate_real_roots(p)) {
      if (r.multiplicity() != 1 || r.compare(Rational(0)) <= 0) continue;
      // The denominator D(1 + b_0 gamma) has no positive roots, and a root
      // of multiplicity one has a nonzero derivative there.
      if (r.sign_of(p.derivative()) == 0) continue;
      if (!best || compare(r, best->gamma) < 0) best = SimpleRoot{r, n};
      break;  // roots are ascending
    }
  }
  return best;
}

namespace {

DominanceState classify(const std::vector<ComplexRootEnclosure>& roots) {
  if (roots.empty()) return DominanceState::Unknown;
  std::vector<Interval> m2;
  for (const auto& r : roots) m2.push_back(r.box.abs_sq());
  size_t best = 0;
  for (size_t i = 1; i < m2.size(); ++i)
    if (mpfr_greater_p(m2[i].lower(), m2[best].lower())) best = i;
  std::vector<size_t> top;
  for (size_t i = 0; i < m2.size(); ++i)
    if (i == best || !m2[i].certainly_less(m2[best])) top.push_back(i);
  if (top.size() == 1) {
    const auto& r = roots[top[0]];
    if (!r.real) return DominanceState::Unknown;
    if (r.box.re.certainly_positive()) return DominanceState::RealDominant;
    if (r.box.re.certainly_negative()) return DominanceState::NegativeDominant;
    return DominanceState::Unknown;
  }
  if (top.size() == 2) {
    const auto& a = roots[top[0]];
    const auto& b = roots[top[1]];
    if (!a.real && !b.real && a.box.conj().overlaps(b.box) && a.box.excludes_real_axis())
      return DominanceState::ComplexDominant;
  }
  return DominanceState::Degenerate;
}

}  // namespace

DominanceState dominance_state_at(const Method& m, const Rational& gamma, long digits) {
  const RationalPoly p = char_poly_mu(m, gamma);
  Rational width = 1;
  width /= Rational(Integer(1) << static_cast<unsigned long>(bits_for_digits(digits) / 2));
  return classify(enclose_all_roots(p, width));
}

namespace {

bool decided(DominanceState s) { return s == DominanceState::RealDominant || s == DominanceState::ComplexDominant; }

DominanceState state_with_retry(const Method& m, const Rational& g, long digits) {
  DominanceState s = dominance_state_at(m, g, digits);
  if (s == DominanceState::Unknown) s = dominance_state_at(m, g, digits * 4);
  return s;
}

}  // namespace

std::optional<Crossover> crossover(const Method& m, const Rational& search_lo, const Rational& search_hi,
                                   const Rational& tol, long digits) {
  if (!(search_lo < search_hi) || tol <= 0) throw std::invalid_argument("crossover: empty search interval or tol");
  const int grid = 256;
  std::optional<Rational> real_at;
  Rational lo, hi;
  bool found = false;
  for (int j = 1; j <= grid && !found; ++j) {
    const Rational g = search_lo + (search_hi - search_lo) * rational_of(j, grid);
    const DominanceState s = state_with_retry(m, g, digits);
    if (s == DominanceState::RealDominant) {
      real_at = g;
    } else if (s == DominanceState::ComplexDominant) {
      if (real_at) {
        lo = *real_at;
        hi = g;
        found = true;
      } else if (j == 1) {
        // Transition below the first grid point: look for a real-dominant
        // point closer to search_lo.
        Rational x = g;
        for (int t = 0; t < 64; ++t) {
          x = search_lo + (x - search_lo) / 2;
          const DominanceState sx = state_with_retry(m, x, digits);
          if (sx == DominanceState::RealDominant) {
            lo = x;
            hi = g;
            found = true;
            break;
          }
          if (sx == DominanceState::ComplexDominant) continue;
          break;
        }
      }
    } else if (s != DominanceState::Degenerate && s != DominanceState::Unknown) {
      real_at.reset();
    }
  }
  if (!found) return std::nullopt;

  static const Rational fractions[] = {rational_of(1, 2), rational_of(1, 3), rational_of(2, 3), rational_of(2, 5), rational_of(3, 5)};
  long d = digits;
  while (hi - lo > tol) {
    bool moved = false;
    for (const auto& f : fractions) {
      const Rational x = lo + (hi - lo) * f;
      const DominanceState s = state_with_retry(m, x, d);
      if (!decided(s)) continue;
      (s == DominanceState::RealDominant ? lo : hi) = x;
      moved = true;
      break;
    }
    if (moved) continue;
    if (d >= 4096) return std::nullopt;
    d *= 2;
  }
  return Crossover{lo, hi};
}

namespace {

bool feasible(const ScbVerdict& v) { return v.status == Status::Feasible; }
bool infeasible(const ScbVerdict& v) { return v.status == Status::Infeasible; }

AnalyzerOptions with_horizon(AnalyzerOptions o, long h) {
  o.horizon = std::max(o.horizon, h);
  return o;
}

// Bisection on check_scb between a feasible and an infeasible point.
bool bisect(const Method& m, const Rational& tol, const AnalyzerOptions& opt, GammaSupResult& r) {
  static const Rational fractions[] = {rational_of(1, 2), rational_of(1, 3), rational_of(2, 3)};
  while (r.hi - r.lo > tol) {
    bool moved = false;
    for (const auto& f : fractions) {
      const Rational x = r.lo + (r.hi - r.lo) * f;
      ScbVerdict v = check_scb(m, x, opt);
      if (feasible(v)) {
        r.lo = x;
        r.at_lo = std::move(v);
      } else if (infeasible(v)) {
        r.hi = x;
        r.at_hi = std::move(v);
      } else {
        continue;
      }
      moved = true;
      break;
    }
    if (!moved) return false;
  }
  return true;
}

// Generic fallback: find a feasible point below hi and bisect.
void fallback(const Method& m, const Rational& tol, const AnalyzerOptions& opt, GammaSupResult& r, Rational hi) {
  r.mechanism = Mechanism::Bisection;
  ScbVerdict vh = check_scb(m, hi, opt);
  while (!infeasible(vh) && hi < Rational(1L << 20)) {
    hi *= 2;
    vh = check_scb(m, hi, opt);
  }
  if (!infeasible(vh)) {
    r.note = "no infeasible point found";
    return;
  }
  r.hi = hi;
  r.at_hi = std::move(vh);
  Rational lo = hi;
  for (int t = 0; t < 64; ++t) {
    lo /= 2;
    ScbVerdict v = check_scb(m, lo, opt);
    if (feasible(v)) {
      r.lo = lo;
      r.at_lo = std::move(v);
      break;
    }
    if (infeasible(v)) {
      r.hi = lo;
      r.at_hi = std::move(v);
    }
  }
  if (!r.at_lo) {
    r.note = "no feasible point found";
    return;
  }
  r.certified = bisect(m, tol, opt, r);
  if (!r.certified) r.note = "bisection stalled on inconclusive verdicts";
}

}  // namespace

GammaSupResult gamma_sup(const Method& m, const Rational& tol, const GammaSupOptions& opt) {
  if (tol <= 0) throw std::invalid_argument("gamma_sup: tol must be positive");
  GammaSupResult r;
  const AnalyzerOptions& aopt = opt.analyzer;

  r.existence = scb_exists(m, aopt);
  if (r.existence->verdict == Existence::NotExists) {
    r.mechanism = Mechanism::NonePositive;
    r.certified = true;
    return r;
  }

  r.simple_root = simple_root_bound(m, std::max(8, 4 * m.k));
  r.crossover = crossover(m, Rational(0), opt.search_max, tol, aopt.digits);

  bool use_simple = false;
  if (r.simple_root && r.crossover) {
    use_simple = r.simple_root->gamma.compare(r.crossover->lo) < 0;
    if (!use_simple && r.simple_root->gamma.compare(r.crossover->hi) <= 0)
      r.note = "simple-root and crossover bounds overlap";
  } else {
    use_simple = r.simple_root.has_value();
  }

  if (use_simple) {
    r.mechanism = Mechanism::SimpleRoot;
    r.simple_root_n = r.simple_root->n;
    AlgebraicReal g = refine(r.simple_root->gamma, tol / 2);
    r.simple_root->gamma = g;
    Rational lo = g.lo(), hi = g.hi();
    if (g.is_rational()) {
      hi = lo + tol;
    } else {
      const Rational q = simplest_between(g.lo(), g.hi());
      if (g.compare(q) == 0) lo = q;
    }
    const AnalyzerOptions o = with_horizon(aopt, r.simple_root_n);
    ScbVerdict vl = check_scb(m, lo, o);
    ScbVerdict vh = check_scb(m, hi, o);
    if (feasible(vl) && infeasible(vh)) {
      r.lo = lo;
      r.hi = hi;
      r.at_lo = std::move(vl);
      r.at_hi = std::move(vh);
      r.certified = true;
      return r;
    }
    fallback(m, tol, aopt, r, hi);
    return r;
  }

  if (r.crossover) {
    r.mechanism = Mechanism::Crossover;
    Rational lo = r.crossover->lo, hi = r.crossover->hi;
    const Rational q = simplest_between(lo, hi);
    ScbVerdict vl = check_scb(m, lo, aopt);
    if (q.get_den() <= 10000 && q != lo) {
      ScbVerdict vq = check_scb(m, q, aopt);
      if (feasible(vq)) {
        lo = q;
        vl = std::move(vq);
      }
    }
    ScbVerdict vh = check_scb(m, hi, aopt);
    if (feasible(vl) && infeasible(vh)) {
      r.lo = lo;
      r.hi = hi;
      r.at_lo = std::move(vl);
      r.at_hi = std::move(vh);
      r.certified = true;
      return r;
    }
    fallback(m, tol, aopt, r, hi);
    return r;
  }

  // Neither mechanism applies: feasibility on a doubling ladder.
  for (Rational g = 1; g <= opt.ladder_max; g *= 2) {
    ScbVerdict v = check_scb(m, g, aopt);
    if (!feasible(v)) {
      fallback(m, tol, aopt, r, g);
      return r;
    }
    r.ladder.push_back(g);
  }
  r.mechanism = Mechanism::Unbounded;
  r.lo = opt.ladder_max;
  r.hi = opt.ladder_max;
  r.certified = true;
  r.note = "feasible at every rung of the ladder; feasibility at gamma implies feasibility below it";
  return r;
}

PolyCheck verify_against_poly(const GammaSupResult& result, const IntegerPoly& p, RootSelector selector) {
  if (result.mechanism == Mechanism::Unbounded || result.mechanism == Mechanism::NonePositive || !result.certified)
    return PolyCheck::Refuted;
  const auto roots = isolate_real_roots(p);
  const RealRootEnclosure* chosen = nullptr;
  switch (selector) {
    case RootSelector::Smallest:
      if (!roots.empty()) chosen = &roots.front();
      break;
    case RootSelector::Unique:
      if (roots.size() == 1) chosen = &roots.front();
      break;
    case RootSelector::SmallerOfTwo:
      if (roots.size() == 2) chosen = &roots.front();
      break;
  }
  if (!chosen) return PolyCheck::Refuted;
  return chosen->compare(result.lo) >= 0 && chosen->compare(result.hi) <= 0 ? PolyCheck::Confirmed : PolyCheck::Refuted;
}

}  // namespace scb
