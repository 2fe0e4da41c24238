#include "scb/arith.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace scb {

Rational rational_of(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("rational_of: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  if (s.empty()) throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  size_t i = 0;
  if (s[0] == '+' || s[0] == '-') i = 1;
  if (i == s.size()) throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  for (size_t j = i; j < s.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(s[j])))
      throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  }
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return Integer(digits, 10);
}

Integer pow10(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty rational");

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(trim(s.substr(0, slash)), s);
    Integer den = parse_integer(trim(s.substr(slash + 1)), s);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(s) + "'");
    return rational_of(num, den);
  }

  std::string_view mant = s;
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    mant = s.substr(0, e);
    std::string_view ex = s.substr(e + 1);
    Integer ez = parse_integer(ex, s);
    if (!ez.fits_slong_p() || abs(ez) > 100000)
      throw std::invalid_argument("exponent out of range in '" + std::string(s) + "'");
    exponent = ez.get_si();
  }

  bool negative = false;
  if (!mant.empty() && (mant[0] == '+' || mant[0] == '-')) {
    negative = mant[0] == '-';
    mant.remove_prefix(1);
  }
  std::string digits;
  long frac_len = 0;
  bool seen_dot = false;
  for (char c : mant) {
    if (c == '.') {
      if (seen_dot) throw std::invalid_argument("malformed rational: '" + std::string(s) + "'");
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_dot) ++frac_len;
    } else {
      throw std::invalid_argument("malformed rational: '" + std::string(s) + "'");
    }
  }
  if (digits.empty()) throw std::invalid_argument("malformed rational: '" + std::string(s) + "'");

  Integer num(digits, 10);
  if (negative) num = -num;
  const long shift = exponent - frac_len;
  if (shift >= 0) return Rational(num * pow10(static_cast<unsigned long>(shift)));
  return rational_of(num, pow10(static_cast<unsigned long>(-shift)));
}

std::string to_string(const Integer& z) { return z.get_str(10); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str(10);
  return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

std::string to_decimal(const Rational& q, int digits, Rounding mode) {
  if (q == 0) return "0";
  const mpfr_rnd_t rnd = mode == Rounding::Down ? MPFR_RNDD : mode == Rounding::Up ? MPFR_RNDU : MPFR_RNDN;
  mpfr_t f;
  mpfr_init2(f, bits_for_digits(digits) + 16);
  mpfr_set_q(f, q.get_mpq_t(), rnd);
  char* out = nullptr;
  const char* fmt = mode == Rounding::Down ? "%.*RDg" : mode == Rounding::Up ? "%.*RUg" : "%.*RNg";
  mpfr_asprintf(&out, fmt, digits, f);
  std::string s(out);
  mpfr_free_str(out);
  mpfr_clear(f);
  return s;
}

Integer lcm_of_denominators(std::span<const Rational> values) {
  Integer l = 1;
  for (const auto& v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  return l;
}

Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (lo < 0 || hi < lo) throw std::invalid_argument("simplest_between: need 0 <= lo <= hi");
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  if (lo == f) return lo;
  if (f + 1 <= hi) return Rational(f + 1);
  const Rational inner = simplest_between(1 / Rational(hi - f), 1 / Rational(lo - f));
  return Rational(f) + 1 / inner;
}

mpfr_prec_t bits_for_digits(long digits) {
  if (digits < 1) digits = 1;
  const long double bits = std::ceil(static_cast<long double>(digits) * 3.32192809488736234787L);
  return std::max<mpfr_prec_t>(static_cast<mpfr_prec_t>(bits), MPFR_PREC_MIN);
}

long digits_for_bits(mpfr_prec_t bits) {
  return static_cast<long>(std::floor(static_cast<long double>(bits) * 0.30102999566398119521L));
}

std::string to_string(Sign s) {
  switch (s) {
    case Sign::Positive: return "Positive";
    case Sign::Negative: return "Negative";
    case Sign::Unknown: return "Unknown";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- Interval

void Interval::init(mpfr_prec_t bits) {
  bits_ = std::max<mpfr_prec_t>(bits, MPFR_PREC_MIN);
  mpfr_init2(lo_, bits_);
  mpfr_init2(hi_, bits_);
}

Interval::Interval(mpfr_prec_t bits) {
  init(bits);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Rational& q, mpfr_prec_t bits) {
  init(bits);
  mpfr_set_q(lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, q.get_mpq_t(), MPFR_RNDU);
}

Interval::Interval(const Integer& z, mpfr_prec_t bits) {
  init(bits);
  mpfr_set_z(lo_, z.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi_, z.get_mpz_t(), MPFR_RNDU);
}

Interval::Interval(long v, mpfr_prec_t bits) {
  init(bits);
  mpfr_set_si(lo_, v, MPFR_RNDD);
  mpfr_set_si(hi_, v, MPFR_RNDU);
}

Interval Interval::hull(const Rational& lo, const Rational& hi, mpfr_prec_t bits) {
  if (lo > hi) throw std::invalid_argument("Interval::hull: lo > hi");
  Interval r(bits);
  mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, mpfr_prec_t bits) {
  if (mpfr_greater_p(lo, hi)) throw std::invalid_argument("Interval::from_endpoints: lo > hi");
  Interval r(bits);
  mpfr_set(r.lo_, lo, MPFR_RNDD);
  mpfr_set(r.hi_, hi, MPFR_RNDU);
  return r;
}

Interval::Interval(const Interval& other) {
  init(other.bits_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept {
  init(other.bits_);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this == &other) return *this;
  if (bits_ != other.bits_) {
    mpfr_set_prec(lo_, other.bits_);
    mpfr_set_prec(hi_, other.bits_);
    bits_ = other.bits_;
  }
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  std::swap(bits_, other.bits_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Rational Interval::lower_rational() const {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), lo_);
  return q;
}

Rational Interval::upper_rational() const {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), hi_);
  return q;
}

double Interval::approx() const {
  mpfr_t m;
  mpfr_init2(m, bits_ + 1);
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  const double d = mpfr_get_d(m, MPFR_RNDN);
  mpfr_clear(m);
  return d;
}

double Interval::width_approx() const {
  mpfr_t w;
  mpfr_init2(w, 64);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  const double d = mpfr_get_d(w, MPFR_RNDU);
  mpfr_clear(w);
  return d;
}

Rational Interval::width_upper() const { return upper_rational() - lower_rational(); }

bool Interval::contains(const Rational& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool Interval::contains(const Interval& inner) const {
  return mpfr_lessequal_p(lo_, inner.lo_) && mpfr_greaterequal_p(hi_, inner.hi_);
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

bool Interval::overlaps(const Interval& other) const {
  return mpfr_lessequal_p(lo_, other.hi_) && mpfr_lessequal_p(other.lo_, hi_);
}

bool Interval::certainly_less(const Interval& other) const { return mpfr_less_p(hi_, other.lo_) != 0; }
bool Interval::certainly_positive() const { return mpfr_sgn(lo_) > 0; }
bool Interval::certainly_negative() const { return mpfr_sgn(hi_) < 0; }

Interval Interval::with_bits(mpfr_prec_t bits) const {
  Interval r(bits);
  mpfr_set(r.lo_, lo_, MPFR_RNDD);
  mpfr_set(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::operator-() const {
  Interval r(bits_);
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(std::max(a.bits_, b.bits_));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(std::max(a.bits_, b.bits_));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  Interval r(std::max(a.bits_, b.bits_));
  const bool a_nonneg = mpfr_sgn(a.lo_) >= 0;
  const bool a_nonpos = mpfr_sgn(a.hi_) <= 0;
  const bool b_nonneg = mpfr_sgn(b.lo_) >= 0;
  const bool b_nonpos = mpfr_sgn(b.hi_) <= 0;
  auto set = [&](mpfr_srcptr l1, mpfr_srcptr l2, mpfr_srcptr h1, mpfr_srcptr h2) {
    mpfr_mul(r.lo_, l1, l2, MPFR_RNDD);
    mpfr_mul(r.hi_, h1, h2, MPFR_RNDU);
  };
  if (a_nonneg) {
    if (b_nonneg) set(a.lo_, b.lo_, a.hi_, b.hi_);
    else if (b_nonpos) set(a.hi_, b.lo_, a.lo_, b.hi_);
    else set(a.hi_, b.lo_, a.hi_, b.hi_);
  } else if (a_nonpos) {
    if (b_nonneg) set(a.lo_, b.hi_, a.hi_, b.lo_);
    else if (b_nonpos) set(a.hi_, b.hi_, a.lo_, b.lo_);
    else set(a.lo_, b.hi_, a.lo_, b.lo_);
  } else {
    if (b_nonneg) set(a.lo_, b.hi_, a.hi_, b.hi_);
    else if (b_nonpos) set(a.hi_, b.lo_, a.lo_, b.lo_);
    else {
      mpfr_t t;
      mpfr_init2(t, r.bits_);
      mpfr_mul(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
      mpfr_mul(t, a.hi_, b.lo_, MPFR_RNDD);
      mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
      mpfr_mul(r.hi_, a.lo_, b.lo_, MPFR_RNDU);
      mpfr_mul(t, a.hi_, b.hi_, MPFR_RNDU);
      mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
      mpfr_clear(t);
    }
  }
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw std::domain_error("interval division by an interval containing 0");
  Interval r(std::max(a.bits_, b.bits_));
  auto set = [&](mpfr_srcptr l1, mpfr_srcptr l2, mpfr_srcptr h1, mpfr_srcptr h2) {
    mpfr_div(r.lo_, l1, l2, MPFR_RNDD);
    mpfr_div(r.hi_, h1, h2, MPFR_RNDU);
  };
  const bool a_nonneg = mpfr_sgn(a.lo_) >= 0;
  const bool a_nonpos = mpfr_sgn(a.hi_) <= 0;
  if (mpfr_sgn(b.lo_) > 0) {
    if (a_nonneg) set(a.lo_, b.hi_, a.hi_, b.lo_);
    else if (a_nonpos) set(a.lo_, b.lo_, a.hi_, b.hi_);
    else set(a.lo_, b.lo_, a.hi_, b.lo_);
  } else {
    if (a_nonneg) set(a.hi_, b.hi_, a.lo_, b.lo_);
    else if (a_nonpos) set(a.hi_, b.lo_, a.lo_, b.hi_);
    else set(a.hi_, b.hi_, a.lo_, b.hi_);
  }
  return r;
}

Interval operator*(const Interval& a, const Integer& z) {
  Interval r(a.bits_);
  if (z >= 0) {
    mpfr_mul_z(r.lo_, a.lo_, z.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(r.hi_, a.hi_, z.get_mpz_t(), MPFR_RNDU);
  } else {
    mpfr_mul_z(r.lo_, a.hi_, z.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(r.hi_, a.lo_, z.get_mpz_t(), MPFR_RNDU);
  }
  return r;
}

Interval operator/(const Interval& a, const Integer& z) {
  if (z == 0) throw std::domain_error("interval division by zero");
  Interval r(a.bits_);
  if (z > 0) {
    mpfr_div_z(r.lo_, a.lo_, z.get_mpz_t(), MPFR_RNDD);
    mpfr_div_z(r.hi_, a.hi_, z.get_mpz_t(), MPFR_RNDU);
  } else {
    mpfr_div_z(r.lo_, a.hi_, z.get_mpz_t(), MPFR_RNDD);
    mpfr_div_z(r.hi_, a.lo_, z.get_mpz_t(), MPFR_RNDU);
  }
  return r;
}

Interval& Interval::operator+=(const Interval& b) { return *this = *this + b; }
Interval& Interval::operator-=(const Interval& b) { return *this = *this - b; }
Interval& Interval::operator*=(const Interval& b) { return *this = *this * b; }

Interval Interval::abs() const {
  if (mpfr_sgn(lo_) >= 0) return *this;
  if (mpfr_sgn(hi_) <= 0) return -*this;
  Interval r(bits_);
  mpfr_set_zero(r.lo_, 1);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  mpfr_max(r.hi_, r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::sqr() const {
  const Interval a = abs();
  Interval r(bits_);
  mpfr_sqr(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_sqr(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::pow(unsigned long n) const {
  if (n == 0) return Interval(1L, bits_);
  Interval r(bits_);
  if (n % 2 == 1) {
    mpfr_pow_ui(r.lo_, lo_, n, MPFR_RNDD);
    mpfr_pow_ui(r.hi_, hi_, n, MPFR_RNDU);
  } else {
    const Interval a = abs();
    mpfr_pow_ui(r.lo_, a.lo_, n, MPFR_RNDD);
    mpfr_pow_ui(r.hi_, a.hi_, n, MPFR_RNDU);
  }
  return r;
}

Interval Interval::sqrt() const {
  if (mpfr_sgn(hi_) < 0) throw std::domain_error("interval sqrt of a negative interval");
  Interval r(bits_);
  if (mpfr_sgn(lo_) <= 0) mpfr_set_zero(r.lo_, 1);
  else mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval hull(const Interval& a, const Interval& b) {
  Interval r(std::max(a.bits_, b.bits_));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval max(const Interval& a, const Interval& b) {
  Interval r(std::max(a.bits_, b.bits_));
  mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

std::string Interval::str(int digits) const {
  char* lo = nullptr;
  char* hi = nullptr;
  mpfr_asprintf(&lo, "%.*RDg", digits, lo_);
  mpfr_asprintf(&hi, "%.*RUg", digits, hi_);
  std::string s = std::string("[") + lo + ", " + hi + "]";
  mpfr_free_str(lo);
  mpfr_free_str(hi);
  return s;
}

Sign certified_sign(const Interval& x) {
  if (x.certainly_positive()) return Sign::Positive;
  if (x.certainly_negative()) return Sign::Negative;
  return Sign::Unknown;
}

// ---------------------------------------------------------------- ComplexBox

ComplexBox operator+(const ComplexBox& a, const ComplexBox& b) { return {a.re + b.re, a.im + b.im}; }
ComplexBox operator-(const ComplexBox& a, const ComplexBox& b) { return {a.re - b.re, a.im - b.im}; }

ComplexBox operator*(const ComplexBox& a, const ComplexBox& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexBox operator*(const ComplexBox& a, const Interval& s) { return {a.re * s, a.im * s}; }

ComplexBox operator/(const ComplexBox& a, const ComplexBox& b) {
  const Interval d = b.abs_sq();
  if (d.contains_zero()) throw std::domain_error("complex division by a box containing 0");
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

ComplexBox ComplexBox::pow(unsigned long n) const {
  ComplexBox result(Interval(1L, bits()), Interval(bits()));
  ComplexBox base = *this;
  while (n > 0) {
    if (n & 1UL) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

std::string ComplexBox::str(int digits) const { return re.str(digits) + " + i" + im.str(digits); }

// ---------------------------------------------------------------- Float

Float::Float(mpfr_prec_t bits) {
  mpfr_init2(v_, std::max<mpfr_prec_t>(bits, MPFR_PREC_MIN));
  mpfr_set_zero(v_, 1);
}

Float::Float(double v, mpfr_prec_t bits) {
  mpfr_init2(v_, std::max<mpfr_prec_t>(bits, MPFR_PREC_MIN));
  mpfr_set_d(v_, v, MPFR_RNDN);
}

Float::Float(const Rational& q, mpfr_prec_t bits) {
  mpfr_init2(v_, std::max<mpfr_prec_t>(bits, MPFR_PREC_MIN));
  mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

Float::Float(const Float& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

Float::Float(Float&& o) noexcept {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_swap(v_, o.v_);
}

Float& Float::operator=(const Float& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

Float& Float::operator=(Float&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

Float::~Float() { mpfr_clear(v_); }

Rational Float::to_rational() const {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), v_);
  return q;
}

namespace {
mpfr_prec_t pmax(const Float& a, const Float& b) { return std::max(a.bits(), b.bits()); }
}  // namespace

Float operator+(const Float& a, const Float& b) {
  Float r(pmax(a, b));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Float operator-(const Float& a, const Float& b) {
  Float r(pmax(a, b));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Float operator*(const Float& a, const Float& b) {
  Float r(pmax(a, b));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Float operator/(const Float& a, const Float& b) {
  Float r(pmax(a, b));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

Float Float::operator-() const {
  Float r(bits());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

Float Float::abs() const {
  Float r(bits());
  mpfr_abs(r.v_, v_, MPFR_RNDN);
  return r;
}

Float Float::sqrt() const {
  Float r(bits());
  mpfr_sqrt(r.v_, v_, MPFR_RNDN);
  return r;
}

Complex operator/(const Complex& a, const Complex& b) {
  const Float d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

ComplexBox Complex::as_box() const {
  return {Interval::from_endpoints(re.get(), re.get(), re.bits()),
          Interval::from_endpoints(im.get(), im.get(), im.bits())};
}

// ---------------------------------------------------------------- Expr

Expr Expr::leaf(Rational q) {
  Expr e;
  e.op_ = Op::Leaf;
  e.value_ = std::move(q);
  return e;
}

Expr Expr::node(Op op, Expr a, Expr* b) {
  Expr e;
  e.op_ = op;
  e.lhs_ = std::make_shared<const Expr>(std::move(a));
  if (b) e.rhs_ = std::make_shared<const Expr>(std::move(*b));
  return e;
}

Expr Expr::add(Expr a, Expr b) { return node(Op::Add, std::move(a), &b); }
Expr Expr::sub(Expr a, Expr b) { return node(Op::Sub, std::move(a), &b); }
Expr Expr::mul(Expr a, Expr b) { return node(Op::Mul, std::move(a), &b); }
Expr Expr::div(Expr a, Expr b) { return node(Op::Div, std::move(a), &b); }
Expr Expr::sqrt(Expr a) { return node(Op::Sqrt, std::move(a), nullptr); }

bool Expr::has_sqrt() const {
  if (op_ == Op::Sqrt) return true;
  return (lhs_ && lhs_->has_sqrt()) || (rhs_ && rhs_->has_sqrt());
}

Rational Expr::eval_exact() const {
  switch (op_) {
    case Op::Leaf: return value_;
    case Op::Add: return lhs_->eval_exact() + rhs_->eval_exact();
    case Op::Sub: return lhs_->eval_exact() - rhs_->eval_exact();
    case Op::Mul: return lhs_->eval_exact() * rhs_->eval_exact();
    case Op::Div: {
      const Rational d = rhs_->eval_exact();
      if (d == 0) throw std::domain_error("exact division by zero");
      return lhs_->eval_exact() / d;
    }
    case Op::Sqrt: throw std::logic_error("eval_exact: square roots are not rational in general");
  }
  return 0;
}

Interval Expr::eval_interval(mpfr_prec_t bits) const {
  switch (op_) {
    case Op::Leaf: return Interval(value_, bits);
    case Op::Add: return lhs_->eval_interval(bits) + rhs_->eval_interval(bits);
    case Op::Sub: return lhs_->eval_interval(bits) - rhs_->eval_interval(bits);
    case Op::Mul: return lhs_->eval_interval(bits) * rhs_->eval_interval(bits);
    case Op::Div: return lhs_->eval_interval(bits) / rhs_->eval_interval(bits);
    case Op::Sqrt: return lhs_->eval_interval(bits).sqrt();
  }
  return Interval(bits);
}

Interval interval_eval(const Expr& e, long digits) {
  if (digits < 10) throw std::invalid_argument("interval_eval: precision must be at least 10 digits");
  return e.eval_interval(bits_for_digits(digits));
}

}  // namespace scb
