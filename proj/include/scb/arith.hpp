#pragma once

// Exact rationals (GMP) and outward-rounded intervals (MPFR).
//
// Every inequality the analyzer reports as certified is decided either on a
// Rational or on an Interval whose sign query returned something other than
// Sign::Unknown.

#include <gmpxx.h>
#include <mpfr.h>

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scb {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical rational num/den. Throws std::invalid_argument when den == 0.
Rational rational_of(const Integer& num, const Integer& den);

/// Parses "p/q", integers, and decimals with optional exponent ("0.48625",
/// "1e-9", "-2.5E3"). Decimals are converted exactly, never through binary
/// floating point.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

enum class Rounding { Nearest, Down, Up };

/// Decimal rendering of q to `digits` significant digits. Down and Up give
/// a lower and an upper bound.
std::string to_decimal(const Rational& q, int digits = 12, Rounding mode = Rounding::Nearest);

Integer lcm_of_denominators(std::span<const Rational> values);

/// The rational with the smallest denominator in [lo, hi], 0 <= lo <= hi.
Rational simplest_between(const Rational& lo, const Rational& hi);

/// Decimal digits to binary precision: ceil(digits * log2(10)).
mpfr_prec_t bits_for_digits(long digits);
long digits_for_bits(mpfr_prec_t bits);

enum class Sign { Negative = -1, Unknown = 0, Positive = 1 };

std::string to_string(Sign s);

/// Closed interval [lower, upper] with MPFR endpoints. Results of every
/// operation are rounded outward, so they contain the exact result for any
/// choice of points in the operands.
class Interval {
 public:
  explicit Interval(mpfr_prec_t bits = 128);
  Interval(const Rational& q, mpfr_prec_t bits);
  Interval(const Integer& z, mpfr_prec_t bits);
  Interval(long v, mpfr_prec_t bits);

  /// Smallest representable interval containing [lo, hi].
  static Interval hull(const Rational& lo, const Rational& hi, mpfr_prec_t bits);
  /// Interval from MPFR endpoints, widened outward to `bits` if needed.
  static Interval from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, mpfr_prec_t bits);

  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  mpfr_prec_t bits() const { return bits_; }
  mpfr_srcptr lower() const { return lo_; }
  mpfr_srcptr upper() const { return hi_; }

  // Endpoints as exact (dyadic) rationals.
  Rational lower_rational() const;
  Rational upper_rational() const;

  /// Midpoint rounded to nearest; display and approximation only.
  double approx() const;
  /// Width rounded up.
  double width_approx() const;
  /// Upper bound on the width as an exact rational.
  Rational width_upper() const;

  bool contains(const Rational& q) const;
  bool contains(const Interval& inner) const;
  bool contains_zero() const;
  bool overlaps(const Interval& other) const;

  bool certainly_less(const Interval& other) const;     // every x < every y
  bool certainly_positive() const;
  bool certainly_negative() const;

  /// Re-rounds outward to a different precision.
  Interval with_bits(mpfr_prec_t bits) const;

  Interval operator-() const;
  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  /// Throws std::domain_error when b contains 0.
  friend Interval operator/(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Integer& z);
  friend Interval operator/(const Interval& a, const Integer& z);
  Interval& operator+=(const Interval& b);
  Interval& operator-=(const Interval& b);
  Interval& operator*=(const Interval& b);

  Interval sqr() const;
  Interval pow(unsigned long n) const;
  /// Requires upper >= 0; negative part of the operand is clipped.
  Interval sqrt() const;
  Interval abs() const;

  friend Interval hull(const Interval& a, const Interval& b);
  friend Interval max(const Interval& a, const Interval& b);

  /// "[lo, hi]" with endpoints printed to `digits` significant digits,
  /// rounded outward.
  std::string str(int digits = 20) const;

 private:
  void init(mpfr_prec_t bits);
  mpfr_t lo_;
  mpfr_t hi_;
  mpfr_prec_t bits_;
};

/// Positive iff lower > 0, Negative iff upper < 0, Unknown otherwise.
Sign certified_sign(const Interval& x);

/// Rectangular complex enclosure.
struct ComplexBox {
  Interval re;
  Interval im;

  explicit ComplexBox(mpfr_prec_t bits = 128) : re(bits), im(bits) {}
  ComplexBox(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}

  mpfr_prec_t bits() const { return std::max(re.bits(), im.bits()); }

  ComplexBox conj() const { return {re, -im}; }
  /// |z|^2 with outward rounding.
  Interval abs_sq() const { return re.sqr() + im.sqr(); }
  Interval abs() const { return abs_sq().sqrt(); }
  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
  bool excludes_real_axis() const { return !im.contains_zero(); }
  bool overlaps(const ComplexBox& o) const { return re.overlaps(o.re) && im.overlaps(o.im); }

  ComplexBox pow(unsigned long n) const;

  friend ComplexBox operator+(const ComplexBox& a, const ComplexBox& b);
  friend ComplexBox operator-(const ComplexBox& a, const ComplexBox& b);
  friend ComplexBox operator*(const ComplexBox& a, const ComplexBox& b);
  friend ComplexBox operator*(const ComplexBox& a, const Interval& s);
  /// Throws std::domain_error when |b|^2 encloses 0.
  friend ComplexBox operator/(const ComplexBox& a, const ComplexBox& b);
  ComplexBox operator-() const { return {-re, -im}; }

  std::string str(int digits = 12) const;
};

/// Round-to-nearest MPFR scalar for approximate iterations (root polishing).
/// Never used to decide anything.
class Float {
 public:
  explicit Float(mpfr_prec_t bits = 128);
  Float(double v, mpfr_prec_t bits);
  Float(const Rational& q, mpfr_prec_t bits);
  Float(const Float& o);
  Float(Float&& o) noexcept;
  Float& operator=(const Float& o);
  Float& operator=(Float&& o) noexcept;
  ~Float();

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }
  mpfr_prec_t bits() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  Rational to_rational() const;
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }

  friend Float operator+(const Float& a, const Float& b);
  friend Float operator-(const Float& a, const Float& b);
  friend Float operator*(const Float& a, const Float& b);
  friend Float operator/(const Float& a, const Float& b);
  Float operator-() const;
  Float abs() const;
  Float sqrt() const;
  friend bool operator<(const Float& a, const Float& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Float& a, const Float& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }

 private:
  mpfr_t v_;
};

/// Approximate complex number built on Float.
struct Complex {
  Float re;
  Float im;
  explicit Complex(mpfr_prec_t bits = 128) : re(bits), im(bits) {}
  Complex(Float r, Float i) : re(std::move(r)), im(std::move(i)) {}
  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator/(const Complex& a, const Complex& b);
  Float abs() const { return (re * re + im * im).sqrt(); }
  ComplexBox as_box() const;
};

/// Small arithmetic expression tree over rationals, evaluable exactly or in
/// interval arithmetic.
class Expr {
 public:
  enum class Op { Leaf, Add, Sub, Mul, Div, Sqrt };

  static Expr leaf(Rational q);
  static Expr add(Expr a, Expr b);
  static Expr sub(Expr a, Expr b);
  static Expr mul(Expr a, Expr b);
  static Expr div(Expr a, Expr b);
  static Expr sqrt(Expr a);

  Op op() const { return op_; }
  bool has_sqrt() const;
  /// Exact value. Throws std::domain_error on division by zero and
  /// std::logic_error when the tree contains a square root.
  Rational eval_exact() const;

 private:
  friend Interval interval_eval(const Expr& e, long digits);
  Interval eval_interval(mpfr_prec_t bits) const;
  static Expr node(Op op, Expr a, Expr* b);

  Op op_ = Op::Leaf;
  Rational value_;
  std::shared_ptr<const Expr> lhs_;
  std::shared_ptr<const Expr> rhs_;
};

/// Evaluates e with outward rounding at `digits` decimal digits (>= 10).
/// Throws std::domain_error for a division by an interval containing 0.
Interval interval_eval(const Expr& e, long digits);

}  // namespace scb
