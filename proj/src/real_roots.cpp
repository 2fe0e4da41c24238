#include "scb/poly.hpp"

#include <cmath>

namespace scb {

namespace {

int sign_at_rational(const IntegerPoly& p, const Rational& x) {
  // Evaluate with a common denominator so only integer arithmetic is used.
  const Integer& num = x.get_num();
  const Integer& den = x.get_den();
  Integer acc = 0, dpow = 1;
  const auto& c = p.ascending();
  // sum c_i num^i den^(n-i), by Horner on num with den powers
  for (size_t i = c.size(); i-- > 0;) {
    acc = acc * num + c[i] * dpow;
    dpow *= den;
  }
  return sgn(acc);
}

// Sign variations of the Moebius transform of p that maps (0, inf) onto (a, b).
int descartes_bound(const RationalPoly& p, const Rational& a, const Rational& b) {
  const RationalPoly shifted = scale_argument(taylor_shift(p, a), b - a);
  const RationalPoly t = taylor_shift(shifted.reversed(), 1);
  return sign_variations(t.ascending());
}

// A splitting point of (a, b) that is not a root of p.
Rational split_point(const IntegerPoly& p, const Rational& a, const Rational& b) {
  for (long den = 2;; ++den) {
    for (long num = 1; num < den; ++num) {
      const Rational m = a + (b - a) * rational_of(num, den);
      if (sign_at_rational(p, m) != 0) return m;
    }
  }
}

void isolate_square_free(const IntegerPoly& f, int multiplicity, std::vector<RealRootEnclosure>& out) {
  const RationalPoly fr = to_rational(f);
  const Rational bound = root_bound(fr);
  struct Job {
    Rational a, b;
  };
  std::vector<Job> stack{{-bound, bound}};
  while (!stack.empty()) {
    Job job = stack.back();
    stack.pop_back();
    const int v = descartes_bound(fr, job.a, job.b);
    if (v == 0) continue;
    if (v == 1) {
      out.emplace_back(f, job.a, job.b, multiplicity);
      continue;
    }
    const Rational m = split_point(f, job.a, job.b);
    stack.push_back({m, job.b});
    stack.push_back({job.a, m});
  }
}

}  // namespace

RealRootEnclosure::RealRootEnclosure(IntegerPoly poly, Rational lo, Rational hi, int multiplicity)
    : poly_(std::move(poly)), lo_(std::move(lo)), hi_(std::move(hi)), multiplicity_(multiplicity) {
  if (poly_.degree() < 1) throw std::invalid_argument("RealRootEnclosure: polynomial must be non-constant");
  if (lo_ > hi_) throw std::invalid_argument("RealRootEnclosure: lo > hi");
  if (lo_ == hi_) {
    if (sign_at_rational(poly_, lo_) != 0) throw std::invalid_argument("RealRootEnclosure: point is not a root");
    return;
  }
  const int sl = sign_at_rational(poly_, lo_);
  sign_hi_ = sign_at_rational(poly_, hi_);
  if (sl == 0 || sign_hi_ == 0 || sl == sign_hi_)
    throw std::invalid_argument("RealRootEnclosure: endpoints do not bracket a simple root");
}

int RealRootEnclosure::sign_at(const Rational& x) const { return sign_at_rational(poly_, x); }

void RealRootEnclosure::bisect_once() {
  if (lo_ == hi_) return;
  const Rational m = (lo_ + hi_) / 2;
  const int s = sign_at(m);
  if (s == 0) {
    lo_ = hi_ = m;
  } else if (s == sign_hi_) {
    hi_ = m;
  } else {
    lo_ = m;
  }
}

void RealRootEnclosure::refine(const Rational& width) {
  if (width <= 0) throw std::invalid_argument("refine: width must be positive");
  while (hi_ - lo_ > width) bisect_once();
}

RealRootEnclosure refine(RealRootEnclosure enc, const Rational& width) {
  enc.refine(width);
  return enc;
}

Interval RealRootEnclosure::enclosure(mpfr_prec_t bits) const {
  if (is_rational()) return Interval(lo_, bits);
  // Certify a Newton approximation by an exact sign change around it; fall
  // back to bisection if that fails.
  RealRootEnclosure work = *this;
  Rational coarse = 1;
  coarse /= Integer(1) << 64;
  work.refine(coarse);
  if (work.is_rational()) return Interval(work.lo(), bits);

  const mpfr_prec_t wp = bits + 64;
  const RationalPoly pr = to_rational(poly_);
  const RationalPoly dp = pr.derivative();
  Float x(work.midpoint(), wp);
  auto eval = [&](const RationalPoly& q, const Float& at) {
    Float acc(wp);
    for (size_t i = q.ascending().size(); i-- > 0;) acc = acc * at + Float(q[i], wp);
    return acc;
  };
  for (int it = 0; it < 64; ++it) {
    const Float fx = eval(pr, x);
    const Float dfx = eval(dp, x);
    if (dfx.is_zero()) break;
    const Float step = fx / dfx;
    x = x - step;
    if (step.is_zero()) break;
    const long ex = mpfr_get_exp(step.get()) - mpfr_get_exp(x.get());
    if (!x.is_zero() && ex < -static_cast<long>(wp) + 8) break;
  }
  const Rational xr = x.to_rational();
  // eps = 2^(e - bits) with 2^e bounding the magnitude of the root.
  const Float scale(std::max(abs(work.lo()), abs(work.hi())), 64);
  const long e = static_cast<long>(mpfr_get_exp(scale.get()));
  Rational eps = 1;
  const long shift = e - static_cast<long>(bits);
  if (shift >= 0) eps = Rational(Integer(1) << static_cast<unsigned long>(shift));
  else eps = rational_of(1, 1) / Rational(Integer(1) << static_cast<unsigned long>(-shift));
  const Rational l = xr - eps, h = xr + eps;
  if (l >= work.lo() && h <= work.hi()) {
    const int sl = sign_at(l), sh = sign_at(h);
    if (sl != 0 && sh != 0 && sl != sh) return Interval::hull(l, h, bits);
    if (sl == 0) return Interval(l, bits);
    if (sh == 0) return Interval(h, bits);
  }
  work.refine(eps);
  return Interval::hull(work.lo(), work.hi(), bits);
}

double RealRootEnclosure::approx() const {
  RealRootEnclosure work = *this;
  work.refine(rational_of(1, 1) / Rational(Integer(1) << 60));
  return work.midpoint().get_d();
}

int RealRootEnclosure::compare(const Rational& q) const {
  if (q < lo_) return 1;
  if (q > hi_) return -1;
  if (lo_ == hi_) return 0;
  if (q == lo_) return 1;
  if (q == hi_) return -1;
  const int s = sign_at(q);
  if (s == 0) return 0;
  // Root lies between q and the endpoint where the sign differs from s.
  return s == sign_hi_ ? -1 : 1;
}

int RealRootEnclosure::sign_of(const RationalPoly& q) const {
  if (q.is_zero()) return 0;
  if (is_rational()) return sgn(q(lo_));
  const IntegerPoly qi = primitive_integer(q);
  const int scale = sgn(q.leading()) * sgn(qi.leading());
  return scale * sign_of(qi);
}

int RealRootEnclosure::sign_of(const IntegerPoly& q) const {
  if (q.is_zero()) return 0;
  if (is_rational()) return sign_at_rational(q, lo_);
  const IntegerPoly g = gcd(poly_, q);
  if (g.degree() >= 1) {
    const int gl = sign_at_rational(g, lo_), gh = sign_at_rational(g, hi_);
    if (gl != gh) return 0;
  }
  RealRootEnclosure work = *this;
  const RationalPoly qr = to_rational(q);
  for (;;) {
    if (work.is_rational()) return sign_at_rational(q, work.lo());
    if (descartes_bound(qr, work.lo(), work.hi()) == 0) {
      const int s = sign_at_rational(q, work.lo());
      if (s != 0) return s;
      const int t = sign_at_rational(q, work.hi());
      if (t != 0) return t;
      return sign_at_rational(q, work.midpoint());
    }
    work.bisect_once();
  }
}

std::string RealRootEnclosure::str(int digits) const {
  if (is_rational()) return to_string(lo_);
  return "[" + to_decimal(lo_, digits, Rounding::Down) + ", " + to_decimal(hi_, digits, Rounding::Up) + "]";
}

int compare(const RealRootEnclosure& x, const RealRootEnclosure& y) {
  if (y.is_rational()) return x.compare(y.lo());
  if (x.is_rational()) return -y.compare(x.lo());
  RealRootEnclosure a = x, b = y;
  const IntegerPoly g = gcd(a.poly(), b.poly());
  for (;;) {
    if (a.hi() < b.lo()) return -1;
    if (b.hi() < a.lo()) return 1;
    if (g.degree() >= 1) {
      const Rational lo = std::max(a.lo(), b.lo()), hi = std::min(a.hi(), b.hi());
      if (lo < hi) {
        const int sl = sgn(to_rational(g)(lo)), sh = sgn(to_rational(g)(hi));
        // Both roots are the unique roots of their polynomials in their
        // intervals, so a root of the gcd inside the overlap is both of them.
        if (sl != 0 && sh != 0 && sl != sh) return 0;
      }
    }
    a.refine(a.width() / 2);
    b.refine(b.width() / 2);
    if (a.is_rational()) return -b.compare(a.lo());
    if (b.is_rational()) return a.compare(b.lo());
  }
}

std::vector<RealRootEnclosure> isolate_real_roots(const IntegerPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("isolate_real_roots: zero polynomial");
  std::vector<RealRootEnclosure> out;
  if (p.is_constant()) return out;
  for (const auto& [f, m] : square_free_decomposition(p)) isolate_square_free(f, m, out);
  std::sort(out.begin(), out.end(),
            [](const RealRootEnclosure& a, const RealRootEnclosure& b) { return compare(a, b) < 0; });
  return out;
}

std::vector<RealRootEnclosure> isolate_real_roots(const RationalPoly& p) {
  return isolate_real_roots(primitive_integer(p));
}

std::vector<RealRootEnclosure> real_roots_in(const IntegerPoly& p, const Rational& a, const Rational& b) {
  std::vector<RealRootEnclosure> out;
  for (auto& r : isolate_real_roots(p)) {
    if (r.compare(a) > 0 && r.compare(b) < 0) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace scb
