#include "scb/poly.hpp"

#include <cmath>
#include <numeric>

namespace scb {

namespace {

// Simultaneous Aberth iteration on approximate coefficients (ascending).
std::vector<Complex> aberth(const std::vector<Float>& coeffs, mpfr_prec_t bits, std::vector<Complex> z,
                            int max_iter) {
  const size_t n = coeffs.size() - 1;
  auto horner = [&](const Complex& x, Complex& p, Complex& dp) {
    p = Complex(Float(coeffs[n]), Float(bits));
    dp = Complex(bits);
    for (size_t i = n; i-- > 0;) {
      dp = dp * x + p;
      p = p * x + Complex(Float(coeffs[i]), Float(bits));
    }
  };
  const long tol_exp = -static_cast<long>(bits) + 6;
  for (int it = 0; it < max_iter; ++it) {
    bool done = true;
    for (size_t i = 0; i < n; ++i) {
      Complex p(bits), dp(bits);
      horner(z[i], p, dp);
      if (p.re.is_zero() && p.im.is_zero()) continue;
      if (dp.re.is_zero() && dp.im.is_zero()) {
        // Nudge off a critical point.
        z[i].re = z[i].re + Float(1e-3, bits);
        done = false;
        continue;
      }
      const Complex ratio = p / dp;
      Complex sum(bits);
      for (size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const Complex d = z[i] - z[j];
        if (d.re.is_zero() && d.im.is_zero()) continue;
        sum = sum + Complex(Float(1.0, bits), Float(bits)) / d;
      }
      const Complex denom = Complex(Float(1.0, bits), Float(bits)) - ratio * sum;
      const Complex w = (denom.re.is_zero() && denom.im.is_zero()) ? ratio : ratio / denom;
      z[i] = z[i] - w;
      const Float wm = w.abs();
      const Float zm = z[i].abs();
      if (!wm.is_zero()) {
        const long rel = mpfr_get_exp(wm.get()) - (zm.is_zero() ? 0 : std::max<long>(mpfr_get_exp(zm.get()), 0));
        if (rel > tol_exp) done = false;
      }
    }
    if (done) break;
  }
  return z;
}

std::vector<Complex> initial_points(const std::vector<Float>& coeffs, mpfr_prec_t bits) {
  const size_t n = coeffs.size() - 1;
  // Radius from the geometric mean of the extreme coefficients.
  double lead = std::fabs(coeffs[n].to_double());
  double tail = 0;
  for (size_t i = 0; i < n && tail == 0; ++i) tail = std::fabs(coeffs[i].to_double());
  double r = (lead > 0 && tail > 0) ? std::pow(tail / lead, 1.0 / static_cast<double>(n)) : 1.0;
  if (!std::isfinite(r) || r <= 0) r = 1.0;
  std::vector<Complex> z;
  const double two_pi = 6.283185307179586;
  for (size_t i = 0; i < n; ++i) {
    const double t = two_pi * static_cast<double>(i) / static_cast<double>(n) + 0.4;
    z.emplace_back(Float(r * std::cos(t), bits), Float(r * std::sin(t), bits));
  }
  return z;
}

Interval midpoint_float_interval(const Interval& x) {
  // Point interval at the midpoint; certification uses the full intervals.
  mpfr_t m;
  mpfr_init2(m, x.bits() + 2);
  mpfr_add(m, x.lower(), x.upper(), MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  Interval r = Interval::from_endpoints(m, m, x.bits() + 2);
  mpfr_clear(m);
  return r;
}

Float to_float(const Interval& x, mpfr_prec_t bits) {
  Float f(bits);
  const Interval m = midpoint_float_interval(x);
  mpfr_set(f.get(), m.lower(), MPFR_RNDN);
  return f;
}

// Pairs up approximations: nearly-real values become exactly real, the rest
// are replaced by exact conjugate pairs. Returns false when pairing fails.
bool symmetrize(std::vector<Complex>& z, mpfr_prec_t bits) {
  const size_t n = z.size();
  const long thresh = -static_cast<long>(bits) / 2;
  std::vector<int> kind(n, 0);  // 0 real, 1 upper, -1 lower
  for (size_t i = 0; i < n; ++i) {
    const Float im = z[i].im.abs();
    if (im.is_zero()) continue;
    const Float zm = z[i].abs();
    const long rel = mpfr_get_exp(im.get()) - std::max<long>(mpfr_get_exp(zm.get()), 0);
    if (rel < thresh) continue;
    kind[i] = mpfr_sgn(z[i].im.get()) > 0 ? 1 : -1;
  }
  std::vector<bool> used(n, false);
  for (size_t i = 0; i < n; ++i) {
    if (kind[i] == 0) {
      z[i].im = Float(bits);
      continue;
    }
    if (kind[i] != 1) continue;
    // Nearest lower-half partner to conj(z_i).
    long best = -1;
    double best_d = 0;
    for (size_t j = 0; j < n; ++j) {
      if (kind[j] != -1 || used[j]) continue;
      const Complex c(z[i].re, -z[i].im);
      const double d = (z[j] - c).abs().to_double();
      if (best < 0 || d < best_d) {
        best = static_cast<long>(j);
        best_d = d;
      }
    }
    if (best < 0) return false;
    used[static_cast<size_t>(best)] = true;
    z[static_cast<size_t>(best)] = Complex(z[i].re, -z[i].im);
  }
  for (size_t j = 0; j < n; ++j)
    if (kind[j] == -1 && !used[j]) return false;
  return true;
}

struct Disc {
  ComplexBox center;
  Interval radius;
  bool real;
};

// Smith's bound: every root lies in the union of discs centered at z_i with
// radius n |p(z_i)| / (|a_n| prod_{j != i} |z_i - z_j|); a component made of
// m discs holds exactly m roots.
std::optional<std::vector<Disc>> smith_discs(const std::vector<Interval>& coeffs, const std::vector<Complex>& z,
                                             mpfr_prec_t bits) {
  const size_t n = z.size();
  const Interval lead_abs = coeffs.back().abs();
  if (!lead_abs.certainly_positive()) return std::nullopt;
  std::vector<ComplexBox> centers;
  for (const auto& zi : z) centers.push_back(zi.as_box());
  std::vector<Disc> discs;
  for (size_t i = 0; i < n; ++i) {
    const ComplexBox& c = centers[i];
    ComplexBox acc(bits);
    for (size_t k = coeffs.size(); k-- > 0;) acc = acc * c + ComplexBox(coeffs[k].with_bits(bits), Interval(bits));
    const Interval pv = acc.abs();
    Interval prod(1L, bits);
    for (size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      prod = prod * (c - centers[j]).abs();
    }
    if (!prod.certainly_positive()) return std::nullopt;
    Interval r = pv * Interval(static_cast<long>(n), bits) / (lead_abs * prod);
    const bool real = mpfr_zero_p(c.im.lower()) && mpfr_zero_p(c.im.upper());
    discs.push_back({c, r, real});
  }
  // Conjugate centers get a common radius so their boxes are exact mirrors.
  for (size_t i = 0; i < n; ++i) {
    if (discs[i].real || mpfr_sgn(discs[i].center.im.lower()) <= 0) continue;
    for (size_t j = 0; j < n; ++j) {
      if (j == i || discs[j].real) continue;
      if (mpfr_equal_p(z[i].re.get(), z[j].re.get()) && mpfr_equal_p(z[i].im.get(), (-z[j].im).get())) {
        const Interval r = max(discs[i].radius, discs[j].radius);
        discs[i].radius = r;
        discs[j].radius = r;
      }
    }
  }
  for (size_t i = 0; i < n; ++i) {
    const Interval ri(discs[i].radius.upper_rational(), bits);
    if (!discs[i].real) {
      // Must exclude the real axis.
      if (!ri.certainly_less(discs[i].center.im.abs())) return std::nullopt;
    }
    for (size_t j = i + 1; j < n; ++j) {
      const Interval dist = (discs[i].center - discs[j].center).abs();
      if (!(discs[i].radius + discs[j].radius).certainly_less(dist)) return std::nullopt;
    }
  }
  return discs;
}

ComplexRootEnclosure disc_to_enclosure(const Disc& d, int multiplicity) {
  const Rational r = d.radius.upper_rational();
  const mpfr_prec_t bits = d.center.bits() + 8;
  Interval re = Interval::hull(d.center.re.lower_rational() - r, d.center.re.upper_rational() + r, bits);
  Interval im = d.real ? Interval(bits)
                       : Interval::hull(d.center.im.lower_rational() - r, d.center.im.upper_rational() + r, bits);
  return {ComplexBox(std::move(re), std::move(im)), multiplicity, d.real};
}

bool box_narrow_enough(const ComplexBox& b, const Rational& w) {
  return b.re.width_upper() <= w && b.im.width_upper() <= w;
}

void sort_roots(std::vector<ComplexRootEnclosure>& roots) {
  std::stable_sort(roots.begin(), roots.end(), [](const ComplexRootEnclosure& a, const ComplexRootEnclosure& b) {
    if (a.real != b.real) return a.real;
    const double ar = a.box.re.approx(), br = b.box.re.approx();
    if (ar != br) return ar < br;
    return a.box.im.approx() > b.box.im.approx();
  });
}

std::optional<std::vector<ComplexRootEnclosure>> try_enclose(const std::vector<Interval>& coeffs, mpfr_prec_t bits,
                                                             const Rational& width, int multiplicity) {
  const size_t n = coeffs.size() - 1;
  std::vector<ComplexRootEnclosure> out;
  if (n == 1) {
    // Single root -a0/a1, real.
    const Interval root = -(coeffs[0].with_bits(bits) / coeffs[1].with_bits(bits));
    ComplexRootEnclosure e{ComplexBox(root, Interval(bits)), multiplicity, true};
    if (!box_narrow_enough(e.box, width)) return std::nullopt;
    out.push_back(std::move(e));
    return out;
  }
  std::vector<Float> approx;
  const mpfr_prec_t low = std::min<mpfr_prec_t>(bits, 96);
  for (const auto& c : coeffs) approx.push_back(to_float(c, low));
  std::vector<Complex> z = aberth(approx, low, initial_points(approx, low), 400 + 20 * static_cast<int>(n));
  if (bits > low) {
    approx.clear();
    for (const auto& c : coeffs) approx.push_back(to_float(c, bits));
    for (auto& zi : z) {
      Complex hi(bits);
      mpfr_set(hi.re.get(), zi.re.get(), MPFR_RNDN);
      mpfr_set(hi.im.get(), zi.im.get(), MPFR_RNDN);
      zi = hi;
    }
    z = aberth(approx, bits, std::move(z), 60);
  }
  if (!symmetrize(z, bits)) return std::nullopt;
  auto discs = smith_discs(coeffs, z, bits);
  if (!discs) return std::nullopt;
  for (const auto& d : *discs) {
    out.push_back(disc_to_enclosure(d, multiplicity));
    if (!box_narrow_enough(out.back().box, width)) return std::nullopt;
  }
  return out;
}

std::vector<Interval> point_coefficients(const IntegerPoly& p, mpfr_prec_t bits) {
  std::vector<Interval> c;
  for (const auto& v : p.ascending()) c.emplace_back(v, bits);
  return c;
}

bool pairwise_disjoint(const std::vector<ComplexRootEnclosure>& roots) {
  for (size_t i = 0; i < roots.size(); ++i)
    for (size_t j = i + 1; j < roots.size(); ++j)
      if (roots[i].box.overlaps(roots[j].box)) return false;
  return true;
}

constexpr mpfr_prec_t kMaxRootBits = 1 << 17;

}  // namespace

std::optional<std::vector<ComplexRootEnclosure>> enclose_simple_roots(const std::vector<Interval>& ascending,
                                                                      const Rational& target_width) {
  if (ascending.size() < 2) throw std::invalid_argument("enclose_simple_roots: constant polynomial");
  mpfr_prec_t bits = 0;
  for (const auto& c : ascending) bits = std::max(bits, c.bits());
  auto r = try_enclose(ascending, bits, target_width, 1);
  if (r) sort_roots(*r);
  return r;
}

std::vector<ComplexRootEnclosure> enclose_all_roots(const RationalPoly& p, const Rational& target_width) {
  if (p.degree() < 1) throw std::invalid_argument("enclose_all_roots: constant polynomial");
  if (target_width <= 0) throw std::invalid_argument("enclose_all_roots: width must be positive");
  const auto factors = square_free_decomposition(primitive_integer(p));
  for (mpfr_prec_t bits = 128; bits <= kMaxRootBits; bits *= 2) {
    std::vector<ComplexRootEnclosure> all;
    bool ok = true;
    for (const auto& [f, m] : factors) {
      auto r = try_enclose(point_coefficients(f, bits), bits, target_width, m);
      if (!r) {
        ok = false;
        break;
      }
      for (auto& e : *r) all.push_back(std::move(e));
    }
    if (!ok || !pairwise_disjoint(all)) continue;
    int total = 0;
    for (const auto& e : all) total += e.multiplicity;
    if (total != p.degree())
      throw std::logic_error("enclose_all_roots: root count does not match the degree");
    sort_roots(all);
    return all;
  }
  throw std::runtime_error("enclose_all_roots: could not certify root enclosures");
}

std::string to_string(RootCondition rc) {
  switch (rc) {
    case RootCondition::Violated: return "Violated";
    case RootCondition::Satisfied: return "Satisfied";
    case RootCondition::SatisfiedStrictly: return "SatisfiedStrictly";
  }
  return "Violated";
}

namespace {

// Roots of a square-free f on the unit circle, split into +1, -1 and the
// number of conjugate pairs e^{+-i theta}.
struct CircleSplit {
  bool one = false;
  bool minus_one = false;
  int pairs = 0;
  IntegerPoly reciprocal;  // gcd(f, reversed f)
};

CircleSplit split_circle(const IntegerPoly& f) {
  CircleSplit s;
  IntegerPoly g = gcd(f, f.reversed());
  s.reciprocal = g;
  if (g.degree() < 1) return s;
  const IntegerPoly x_minus_1({Integer(1), Integer(-1)});
  const IntegerPoly x_plus_1({Integer(1), Integer(1)});
  if (g(Integer(1)) == 0) {
    s.one = true;
    g = exact_quotient(g, x_minus_1);
  }
  if (g(Integer(-1)) == 0) {
    s.minus_one = true;
    g = exact_quotient(g, x_plus_1);
  }
  if (g.degree() < 1) return s;
  // g is now palindromic of even degree 2h: g(x) = x^h H(x + 1/x).
  const int deg = g.degree();
  if (deg % 2 != 0) throw std::logic_error("unit circle test: odd self-reciprocal factor");
  const IntegerPoly rev = g.reversed();
  if (!(rev == g)) throw std::logic_error("unit circle test: factor is not palindromic");
  const size_t h = static_cast<size_t>(deg / 2);
  // T_0 = 2, T_1 = y, T_{j+1} = y T_j - T_{j-1} with T_j(x + 1/x) = x^j + x^-j.
  std::vector<IntegerPoly> T{IntegerPoly::constant(2), IntegerPoly::x()};
  while (T.size() <= h) T.push_back(IntegerPoly::x() * T.back() - T[T.size() - 2]);
  IntegerPoly H = IntegerPoly::constant(g[h]);
  for (size_t j = 1; j <= h; ++j) H = H + g[h + j] * T[j];
  // Unit-circle pairs correspond to real roots of H in (-2, 2).
  const auto seq = sturm_sequence(to_rational(H));
  s.pairs = sturm_count(seq, Rational(-2), Rational(2));
  return s;
}

// Number of roots of a polynomial with no unit-circle roots lying outside the
// closed unit disc, decided with certified enclosures.
int count_outside_off_circle(const IntegerPoly& q) {
  if (q.degree() < 1) return 0;
  const RationalPoly qr = to_rational(q);
  for (Rational w = rational_of(1, 4); w > rational_of(1, 1) / Rational(Integer(1) << 400); w /= 1024) {
    const auto roots = enclose_all_roots(qr, w);
    int outside = 0;
    bool decided = true;
    for (const auto& r : roots) {
      const Interval m2 = r.box.abs_sq();
      const Interval one(1L, m2.bits());
      if (one.certainly_less(m2)) outside += r.multiplicity;
      else if (!m2.certainly_less(one)) decided = false;
    }
    if (decided) return outside;
  }
  throw std::runtime_error("unit circle test: could not separate roots from the unit circle");
}

}  // namespace

UnitCircleCount unit_circle_count(const RationalPoly& p) {
  if (p.degree() < 1) throw std::invalid_argument("unit_circle_count: constant polynomial");
  UnitCircleCount out;
  for (const auto& [f, m] : square_free_decomposition(primitive_integer(p))) {
    const CircleSplit s = split_circle(f);
    const int on = (s.one ? 1 : 0) + (s.minus_one ? 1 : 0) + 2 * s.pairs;
    const int recip_deg = std::max(s.reciprocal.degree(), 0);
    const int recip_off = recip_deg - on;  // reciprocal pairs z, 1/z off the circle
    const IntegerPoly rest = s.reciprocal.degree() >= 1 ? exact_quotient(f, s.reciprocal) : f;
    const int rest_out = count_outside_off_circle(rest);
    const int rest_in = std::max(rest.degree(), 0) - rest_out;
    out.on += m * on;
    out.outside += m * (rest_out + recip_off / 2);
    out.inside += m * (rest_in + recip_off / 2);
    if (m >= 2 && on > 0) out.multiple_on_circle = true;
  }
  return out;
}

RootCondition root_condition(const RationalPoly& p) {
  const UnitCircleCount c = unit_circle_count(p);
  if (c.outside > 0 || c.multiple_on_circle) return RootCondition::Violated;
  if (c.on == 0) return RootCondition::SatisfiedStrictly;
  return RootCondition::Satisfied;
}

UnitRoots unit_roots(const RationalPoly& p) {
  if (p.degree() < 1) throw std::invalid_argument("unit_roots: constant polynomial");
  const CircleSplit s = split_circle(square_free_part(primitive_integer(p)));
  UnitRoots u;
  u.has_one = s.one;
  u.has_minus_one = s.minus_one;
  u.distinct = (s.one ? 1 : 0) + (s.minus_one ? 1 : 0) + 2 * s.pairs;
  return u;
}

}  // namespace scb
