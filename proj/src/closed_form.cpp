#include "scb/recursion.hpp"

#include <cmath>

namespace scb {

namespace {

ComplexBox box_of(const Interval& re, mpfr_prec_t bits) { return ComplexBox(re.with_bits(bits), Interval(bits)); }

ComplexBox int_pow(const ComplexBox& z, long n) {
  if (n >= 0) return z.pow(static_cast<unsigned long>(n));
  const mpfr_prec_t bits = z.bits();
  const ComplexBox one(Interval(1L, bits), Interval(bits));
  return one / z.pow(static_cast<unsigned long>(-n));
}

// n^i as an interval.
Interval n_power(long n, int i, mpfr_prec_t bits) {
  return Interval(n, bits).pow(static_cast<unsigned long>(i));
}

// Solves A x = y in complex interval arithmetic by Gaussian elimination with
// pivoting on the largest certified modulus. Returns nothing if a pivot
// cannot be separated from zero.
std::optional<std::vector<ComplexBox>> solve(std::vector<std::vector<ComplexBox>> A, std::vector<ComplexBox> y) {
  const size_t n = y.size();
  for (size_t col = 0; col < n; ++col) {
    size_t piv = n;
    double best = -1;
    for (size_t r = col; r < n; ++r) {
      const Interval a = A[r][col].abs_sq();
      if (!a.certainly_positive()) continue;
      const double v = a.approx();
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (piv == n) return std::nullopt;
    std::swap(A[piv], A[col]);
    std::swap(y[piv], y[col]);
    for (size_t r = col + 1; r < n; ++r) {
      const ComplexBox f = A[r][col] / A[col][col];
      for (size_t c = col; c < n; ++c) A[r][c] = A[r][c] - f * A[col][c];
      y[r] = y[r] - f * y[col];
    }
  }
  std::vector<ComplexBox> x(n, ComplexBox(y[0].bits()));
  for (size_t r = n; r-- > 0;) {
    ComplexBox s = y[r];
    for (size_t c = r + 1; c < n; ++c) s = s - A[r][c] * x[c];
    x[r] = s / A[r][r];
  }
  return x;
}

// Characteristic polynomial coefficients (ascending) as intervals, plus the
// exact rational polynomial when gamma is rational.
struct CharPoly {
  std::optional<RationalPoly> exact;
  IntegerPoly p0, p1;
};

int zero_root_multiplicity(const CharPoly& cp, const GammaValue& gamma, SeqKind kind) {
  if (cp.exact) {
    int z = 0;
    while (z < cp.exact->degree() && (*cp.exact)[static_cast<size_t>(z)] == 0) ++z;
    return z;
  }
  const auto& alpha = std::get<AlgebraicReal>(gamma);
  (void)kind;
  int z = 0;
  for (;; ++z) {
    const IntegerPoly coeff = IntegerPoly::from_descending({cp.p1[static_cast<size_t>(z)], cp.p0[static_cast<size_t>(z)]});
    if (coeff.is_zero() || alpha.sign_of(coeff) == 0) continue;
    break;
  }
  return z;
}

std::vector<Interval> interval_coefficients(const CharPoly& cp, const GammaValue& gamma, int drop, mpfr_prec_t bits) {
  std::vector<Interval> c;
  const Interval g = gamma_interval(gamma, bits + 16).with_bits(bits);
  const int deg = std::max(cp.p0.degree(), cp.p1.degree());
  for (int i = drop; i <= deg; ++i)
    c.push_back(Interval(cp.p0[static_cast<size_t>(i)], bits) + g * Interval(cp.p1[static_cast<size_t>(i)], bits));
  return c;
}

bool contains_value(const ComplexBox& b, const Interval& v) {
  return b.re.overlaps(v) && b.im.contains_zero();
}

}  // namespace

ComplexBox ClosedForm::value(long n) const {
  mpfr_prec_t bits = bits_for_digits(digits);
  ComplexBox sum(bits);
  for (const auto& r : roots) {
    const ComplexBox zn = int_pow(r.root.box, n);
    for (int i = 0; i < r.multiplicity; ++i) {
      ComplexBox term = r.coeffs[static_cast<size_t>(i)] * zn;
      if (i > 0) term = term * n_power(n, i, bits);
      sum = sum + term;
    }
  }
  return sum;
}

ClosedForm closed_form(const Method& m, const GammaValue& gamma_in, SeqKind kind, const ClosedFormOptions& opt) {
  const GammaValue gamma = kind == SeqKind::Tau ? GammaValue(Rational(0)) : gamma_in;
  const Pencil pencil = char_pencil(m);
  CharPoly cp{std::nullopt, pencil.p0, pencil.p1};
  if (const auto* q = std::get_if<Rational>(&gamma)) {
    cp.exact = to_rational(pencil.p0) + *q * to_rational(pencil.p1);
    if (cp.exact->degree() != m.k) throw std::domain_error("closed form: leading coefficient vanishes");
  }

  ClosedForm cf;
  cf.kind = kind;
  cf.gamma = to_string(gamma);
  const int h = std::max(m.last_nonzero_b(), 0);
  const int z = zero_root_multiplicity(cp, gamma, kind);
  if (z > 0 && !cp.exact) throw ClosedFormUnavailable("closed form: zero root at an algebraic gamma");
  cf.zero_root_multiplicity = z;
  cf.valid_from = h + 1 - m.k + z;
  const int kr = m.k - z;

  if (!cp.exact) {
    const RationalPoly disc = discriminant_in_parameter(to_rational(pencil.p0), to_rational(pencil.p1));
    if (std::get<AlgebraicReal>(gamma).sign_of(disc) == 0)
      throw ClosedFormUnavailable("closed form unavailable, use direct evaluation (multiple characteristic root)");
  }

  for (long digits = std::max(opt.digits, 20L); digits <= opt.max_digits; digits *= 2) {
    cf.digits = digits;
    cf.roots.clear();
    const mpfr_prec_t bits = bits_for_digits(digits);
    if (kr == 0) return cf;

    // Roots of the characteristic polynomial with zero roots removed.
    std::vector<ComplexRootEnclosure> roots;
    Rational width = 1;
    width /= Rational(Integer(1) << static_cast<unsigned long>(bits / 4));
    if (cp.exact) {
      std::vector<Rational> c(cp.exact->ascending().begin() + z, cp.exact->ascending().end());
      roots = enclose_all_roots(RationalPoly(std::move(c)), width);
      for (const auto& r : roots) {
        if (r.multiplicity > 1 && !opt.allow_multiple)
          throw ClosedFormUnavailable("closed form unavailable, use direct evaluation (multiple characteristic root)");
      }
    } else {
      auto r = enclose_simple_roots(interval_coefficients(cp, gamma, z, bits), width);
      if (!r) continue;
      roots = std::move(*r);
    }

    // Sequence values x_n for n = valid_from .. valid_from + 2k.
    const long n_lo = cf.valid_from, n_hi = cf.valid_from + 2L * m.k;
    std::vector<Interval> x;
    {
      std::vector<Interval> seq;
      if (const auto* q = std::get_if<Rational>(&gamma)) {
        for (const auto& v : mu_prefix(m, *q, std::max(n_hi, 0L))) seq.emplace_back(v, bits);
      } else {
        seq = mu_enclosures(m, gamma, std::max(n_hi, 0L), digits);
      }
      for (long n = n_lo; n <= n_hi; ++n) x.push_back(n < 0 ? Interval(bits) : seq[static_cast<size_t>(n)]);
    }

    // Unknowns c_{r,i}, equations at n = n_lo .. n_lo + kr - 1.
    std::vector<std::pair<size_t, int>> unknowns;
    for (size_t r = 0; r < roots.size(); ++r)
      for (int i = 0; i < roots[r].multiplicity; ++i) unknowns.emplace_back(r, i);
    std::vector<std::vector<ComplexBox>> A;
    std::vector<ComplexBox> y;
    bool ok = true;
    try {
      for (int e = 0; e < kr; ++e) {
        const long n = n_lo + e;
        std::vector<ComplexBox> row;
        for (const auto& [r, i] : unknowns) {
          ComplexBox t = int_pow(roots[r].box, n);
          if (i > 0) t = t * n_power(n, i, bits);
          row.push_back(t);
        }
        A.push_back(std::move(row));
        y.push_back(box_of(x[static_cast<size_t>(e)], bits));
      }
    } catch (const std::domain_error&) {
      ok = false;
    }
    if (!ok) continue;
    auto sol = solve(std::move(A), std::move(y));
    if (!sol) continue;

    for (size_t r = 0; r < roots.size(); ++r) {
      ClosedFormRoot cr;
      cr.root = roots[r];
      cr.multiplicity = roots[r].multiplicity;
      for (size_t u = 0; u < unknowns.size(); ++u)
        if (unknowns[u].first == r) cr.coeffs.push_back((*sol)[u]);
      cf.roots.push_back(std::move(cr));
    }
    // Conjugate pairing; real roots carry real coefficients.
    for (size_t r = 0; r < cf.roots.size(); ++r) {
      auto& cr = cf.roots[r];
      if (cr.root.real) {
        for (auto& c : cr.coeffs) {
          if (!c.im.contains_zero()) throw std::logic_error("closed form: real root with non-real coefficient");
          c.im = Interval(bits);
        }
        continue;
      }
      if (cr.conjugate >= 0 || !cr.root.box.im.certainly_positive()) continue;
      for (size_t s = 0; s < cf.roots.size(); ++s) {
        if (s == r || cf.roots[s].root.real) continue;
        const ComplexBox conj = cf.roots[s].root.box.conj();
        if (conj.re.overlaps(cr.root.box.re) && conj.im.overlaps(cr.root.box.im)) {
          cr.conjugate = static_cast<int>(s);
          cf.roots[s].conjugate = static_cast<int>(r);
          for (size_t i = 0; i < cr.coeffs.size(); ++i) cf.roots[s].coeffs[i] = cr.coeffs[i].conj();
          break;
        }
      }
      if (cr.conjugate < 0) throw std::logic_error("closed form: unpaired non-real root");
    }

    // Reconstruction check.
    bool reconstructed = true;
    for (long n = n_lo; n <= n_hi && reconstructed; ++n) {
      try {
        if (!contains_value(cf.value(n), x[static_cast<size_t>(n - n_lo)])) reconstructed = false;
      } catch (const std::domain_error&) {
        reconstructed = false;
      }
    }
    if (reconstructed) return cf;
  }
  throw ClosedFormUnavailable("closed form: roots or coefficients could not be certified within " +
                              std::to_string(opt.max_digits) + " digits");
}

std::string to_string(DominanceState s) {
  switch (s) {
    case DominanceState::RealDominant: return "RealDominant";
    case DominanceState::ComplexDominant: return "ComplexDominant";
    case DominanceState::NegativeDominant: return "NegativeDominant";
    case DominanceState::Degenerate: return "Degenerate";
    case DominanceState::Unknown: return "Unknown";
  }
  return "Unknown";
}

Dominance dominance(const ClosedForm& cf) {
  Dominance d;
  if (cf.roots.empty()) return d;
  std::vector<Interval> m2;
  for (const auto& r : cf.roots) m2.push_back(r.root.box.abs_sq());
  // Top class: every root whose modulus is not certainly below the largest
  // certified lower bound.
  size_t best = 0;
  for (size_t i = 1; i < m2.size(); ++i)
    if (mpfr_greater_p(m2[i].lower(), m2[best].lower())) best = i;
  for (size_t i = 0; i < m2.size(); ++i)
    if (!m2[i].certainly_less(m2[best]) || i == best) d.top.push_back(i);

  const auto& first = cf.roots[d.top[0]];
  bool single = d.top.size() == 1 && first.root.real;
  bool pair = d.top.size() == 2 && !first.root.real && first.conjugate == static_cast<int>(d.top[1]);
  if (!single && !pair) {
    d.state = d.top.size() > 2 ? DominanceState::Degenerate : DominanceState::Unknown;
    if (d.top.size() == 2 && (first.root.real != cf.roots[d.top[1]].root.real)) d.state = DominanceState::Degenerate;
    return d;
  }
  if (single) {
    if (first.root.box.re.certainly_positive()) d.state = DominanceState::RealDominant;
    else if (first.root.box.re.certainly_negative()) d.state = DominanceState::NegativeDominant;
    else return d;
  } else {
    d.state = DominanceState::ComplexDominant;
  }
  // Ratio bound.
  const Interval top_lower(m2[d.top[0]].lower_rational(), 128);
  Rational worst = 0;
  for (size_t i = 0; i < m2.size(); ++i) {
    if (std::find(d.top.begin(), d.top.end(), i) != d.top.end()) continue;
    const Interval ratio = (Interval(m2[i].upper_rational(), 128) / top_lower).sqrt();
    worst = std::max(worst, ratio.upper_rational());
  }
  d.ratio_upper = worst;
  return d;
}

namespace {

Rational ceil_rational(const Rational& q) {
  Integer c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(c);
}

// Upper bound of sum coeff * n^power * ratio^n.
Rational residual_at(const std::vector<TailCertificate::Term>& terms, long n) {
  Interval sum(Rational(0), 256);
  for (const auto& t : terms) {
    Interval v = Interval(t.coeff_upper, 256) * Interval(t.ratio_upper, 256).pow(static_cast<unsigned long>(n));
    if (t.n_power > 0) v = v * Interval(n, 256).pow(static_cast<unsigned long>(t.n_power));
    if (t.n_power < 0) v = v / Interval(n, 256).pow(static_cast<unsigned long>(-t.n_power));
    sum = sum + v;
  }
  return sum.upper_rational();
}

long monotone_start(const std::vector<TailCertificate::Term>& terms) {
  long start = 1;
  for (const auto& t : terms) {
    if (t.n_power <= 0) continue;
    const Rational s = ceil_rational(Rational(t.n_power) / (1 - t.ratio_upper));
    start = std::max(start, s.get_num().get_si());
  }
  return start;
}

}  // namespace

std::optional<TailCertificate> tail_certificate(const ClosedForm& cf) {
  TailCertificate t;
  if (cf.roots.empty()) {
    t.kind = TailKind::Zero;
    t.n_start = std::max(cf.valid_from, 1L);
    return t;
  }
  const Dominance d = dominance(cf);
  if (d.state == DominanceState::ComplexDominant)
    throw std::domain_error("tail certificate: dominant roots form a non-real pair; use the infeasibility test");
  if (d.state != DominanceState::RealDominant) return std::nullopt;

  const auto& dom = cf.roots[d.top[0]];
  const int top = dom.multiplicity - 1;
  const Rational c_top = dom.coeffs[static_cast<size_t>(top)].re.lower_rational();
  if (c_top <= 0) return std::nullopt;
  const Rational rho_lo = dom.root.box.re.lower_rational();
  if (rho_lo <= 0) return std::nullopt;
  t.rho_lo = rho_lo;
  t.rho_hi = dom.root.box.re.upper_rational();
  t.rho_multiplicity = dom.multiplicity;

  std::vector<std::pair<Rational, int>> lower_terms;  // negative lower-order coefficients of the dominant root
  for (int i = 0; i < top; ++i) {
    const Rational lo = dom.coeffs[static_cast<size_t>(i)].re.lower_rational();
    if (lo < 0) lower_terms.emplace_back(lo, i - top);
  }
  const Interval rho_lo_sq = Interval(rho_lo, 256).sqr();
  for (size_t j = 0; j < cf.roots.size(); ++j) {
    if (j == d.top[0]) continue;
    const auto& r = cf.roots[j];
    const Interval ratio = (Interval(r.root.box.abs_sq().upper_rational(), 256) / rho_lo_sq).sqrt();
    const Rational ru = ratio.upper_rational();
    if (ru >= 1) return std::nullopt;
    for (int i = 0; i < r.multiplicity; ++i)
      t.terms.push_back({r.coeffs[static_cast<size_t>(i)].abs().upper_rational(), i - top, ru});
  }

  auto leading_at = [&](long n) {
    Rational a = c_top;
    for (const auto& [lo, p] : lower_terms) {
      Rational f = 1;
      for (int e = 0; e < -p; ++e) f /= n;
      a += lo * f;
    }
    return a;
  };
  auto holds = [&](long n) { return residual_at(t.terms, n) < leading_at(n); };

  const long start = std::max({cf.valid_from, 1L, monotone_start(t.terms)});
  long good = -1, bad = start - 1;
  for (long n = start; n <= (1L << 40); n = n * 2 + 1) {
    if (holds(n)) {
      good = n;
      break;
    }
    bad = n;
  }
  if (good < 0) return std::nullopt;
  while (good - bad > 1) {
    const long mid = bad + (good - bad) / 2;
    if (holds(mid)) good = mid;
    else bad = mid;
  }
  t.kind = TailKind::Dominant;
  t.n_start = good;
  t.leading_lower = leading_at(good);
  t.residual_upper = residual_at(t.terms, good);
  return t;
}

bool verify_tail(const TailCertificate& t) {
  if (t.kind == TailKind::Zero) return true;
  if (t.rho_lo <= 0 || t.leading_lower <= 0) return false;
  for (const auto& term : t.terms)
    if (term.ratio_upper >= 1 || term.coeff_upper < 0) return false;
  if (t.n_start < monotone_start(t.terms)) return false;
  return residual_at(t.terms, t.n_start) <= t.residual_upper && t.residual_upper < t.leading_lower;
}

EventualSign eventual_sign(const ClosedForm& cf) {
  const Dominance d = dominance(cf);
  if (cf.roots.empty()) return EventualSign::Unknown;
  if (d.state != DominanceState::RealDominant && d.state != DominanceState::NegativeDominant)
    return EventualSign::Unknown;
  const auto& dom = cf.roots[d.top[0]];
  const Interval& c = dom.coeffs.back().re;
  if (d.state == DominanceState::NegativeDominant)
    return c.contains_zero() ? EventualSign::Unknown : EventualSign::Alternating;
  if (c.certainly_positive()) return EventualSign::Positive;
  if (c.certainly_negative()) return EventualSign::Negative;
  return EventualSign::Unknown;
}

}  // namespace scb
