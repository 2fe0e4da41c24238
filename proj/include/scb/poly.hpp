#pragma once

// Dense univariate polynomials with exact coefficients, real root isolation,
// certified complex root enclosures and exact unit-circle predicates.
//
// Storage is ascending (coefficient i multiplies x^i). Construction from and
// serialization to lists use descending order, the usual way published
// polynomials are printed.

#include "scb/arith.hpp"

#include <algorithm>
#include <initializer_list>
#include <optional>
#include <type_traits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace scb {

template <class T>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> ascending) : c_(std::move(ascending)) { trim(); }
  Poly(std::initializer_list<T> descending) : c_(descending.begin(), descending.end()) {
    std::reverse(c_.begin(), c_.end());
    trim();
  }

  static Poly from_descending(std::vector<T> desc) {
    std::reverse(desc.begin(), desc.end());
    return Poly(std::move(desc));
  }
  static Poly constant(T v) { return Poly(std::vector<T>{std::move(v)}); }
  static Poly monomial(T v, size_t degree) {
    std::vector<T> c(degree + 1, T(0));
    c[degree] = std::move(v);
    return Poly(std::move(c));
  }
  static Poly x() { return monomial(T(1), 1); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }

  /// Coefficient of x^i; zero beyond the degree.
  T operator[](size_t i) const { return i < c_.size() ? c_[i] : T(0); }
  const std::vector<T>& ascending() const { return c_; }
  std::vector<T> descending() const { return {c_.rbegin(), c_.rend()}; }
  T leading() const { return c_.empty() ? T(0) : c_.back(); }
  T trailing() const { return c_.empty() ? T(0) : c_.front(); }

  Poly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> d(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
    return Poly(std::move(d));
  }

  /// x^deg p(1/x).
  Poly reversed() const { return Poly(std::vector<T>(c_.rbegin(), c_.rend())); }

  /// p(-x).
  Poly negated_argument() const {
    std::vector<T> d = c_;
    for (size_t i = 1; i < d.size(); i += 2) d[i] = -d[i];
    return Poly(std::move(d));
  }

  /// Horner evaluation in any ring U that accepts U * U and U + T.
  template <class U>
  U eval(const U& x, const U& zero) const {
    U acc = zero;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + lift(c_[i], zero);
    return acc;
  }
  T operator()(const T& x) const { return eval<T>(x, T(0)); }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T(0));
    for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  Poly operator-() const {
    std::vector<T> r = c_;
    for (auto& v : r) v = -v;
    return Poly(std::move(r));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(r));
  }
  friend Poly operator*(const T& s, const Poly& p) {
    std::vector<T> r = p.c_;
    for (auto& v : r) v = s * v;
    return Poly(std::move(r));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

 private:
  template <class U>
  static U lift(const T& v, const U& zero) {
    if constexpr (std::is_same_v<U, T>) {
      (void)zero;
      return v;
    } else if constexpr (std::is_same_v<U, Interval>) {
      return Interval(v, zero.bits());
    } else if constexpr (std::is_same_v<U, ComplexBox>) {
      return ComplexBox(Interval(v, zero.bits()), Interval(zero.bits()));
    } else {
      return U(v);
    }
  }

  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<T> c_;
};

using IntegerPoly = Poly<Integer>;
using RationalPoly = Poly<Rational>;

RationalPoly to_rational(const IntegerPoly& p);

/// Positive rational multiple of p with coprime integer coefficients. The
/// sign of every coefficient is preserved.
IntegerPoly primitive_integer(const RationalPoly& p);
IntegerPoly primitive_part(const IntegerPoly& p);

/// Polynomial parsed from a list of decimal integer strings, descending.
IntegerPoly integer_poly_from_strings(const std::vector<std::string>& descending);
std::vector<std::string> to_strings(const IntegerPoly& p);
std::string to_string(const RationalPoly& p, const std::string& var = "x");

/// Quotient and remainder over the rationals. Throws on division by zero.
std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& a, const RationalPoly& b);
/// Monic gcd; the zero polynomial when both inputs are zero.
RationalPoly gcd(const RationalPoly& a, const RationalPoly& b);
/// Primitive gcd with positive leading coefficient.
IntegerPoly gcd(const IntegerPoly& a, const IntegerPoly& b);
/// a / b when b divides a exactly; throws std::logic_error otherwise.
IntegerPoly exact_quotient(const IntegerPoly& a, const IntegerPoly& b);

/// p(x + s) and p(s * x).
RationalPoly taylor_shift(const RationalPoly& p, const Rational& s);
RationalPoly scale_argument(const RationalPoly& p, const Rational& s);

/// Yun's square-free decomposition of a non-constant polynomial: pairs
/// (f_i, i) with f_i primitive, square-free, pairwise coprime and
/// p = c * prod f_i^i. Factors equal to 1 are omitted.
std::vector<std::pair<IntegerPoly, int>> square_free_decomposition(const IntegerPoly& p);
IntegerPoly square_free_part(const IntegerPoly& p);

Rational resultant(const RationalPoly& a, const RationalPoly& b);
/// (-1)^(n(n-1)/2) res(p, p') / lc(p). Zero iff p has a multiple root.
Rational discriminant(const RationalPoly& p);
/// Discriminant of p0 + t*p1 as a polynomial in t, taking the formal degree
/// max(deg p0, deg p1). Exact (interpolated at rational sample points).
RationalPoly discriminant_in_parameter(const RationalPoly& p0, const RationalPoly& p1);

/// Sturm sequence p, p', -rem(...), ...
std::vector<RationalPoly> sturm_sequence(const RationalPoly& p);
/// Number of distinct real roots in (a, b].
int sturm_count(const std::vector<RationalPoly>& seq, const Rational& a, const Rational& b);
/// Number of distinct real roots on the whole line.
int sturm_count_all(const std::vector<RationalPoly>& seq);
/// Number of sign variations in the coefficient list (zeros skipped).
int sign_variations(const std::vector<Rational>& coeffs);

/// Upper bound on the modulus of every root (Cauchy), as a power of two.
Rational root_bound(const RationalPoly& p);

// ---------------------------------------------------------------- real roots

/// Isolating interval [lo, hi] for one real root of a square-free primitive
/// integer polynomial. Either lo == hi (the root is this rational) or
/// lo < root < hi with p(lo), p(hi) of opposite nonzero signs.
class RealRootEnclosure {
 public:
  RealRootEnclosure(IntegerPoly poly, Rational lo, Rational hi, int multiplicity = 1);

  const IntegerPoly& poly() const { return poly_; }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  int multiplicity() const { return multiplicity_; }
  bool is_rational() const { return lo_ == hi_; }
  Rational width() const { return hi_ - lo_; }

  /// Shrinks the interval until its width is at most `width`.
  void refine(const Rational& width);
  /// Certified interval enclosure with at least `bits` of precision.
  Interval enclosure(mpfr_prec_t bits) const;
  double approx() const;
  /// Midpoint of the isolating interval.
  Rational midpoint() const { return (lo_ + hi_) / 2; }

  /// Exact sign of q at the root.
  int sign_of(const IntegerPoly& q) const;
  int sign_of(const RationalPoly& q) const;
  /// Exact comparison of the root with a rational: -1, 0, +1.
  int compare(const Rational& q) const;

  std::string str(int digits = 15) const;

 private:
  void bisect_once();
  int sign_at(const Rational& x) const;

  IntegerPoly poly_;
  Rational lo_, hi_;
  int multiplicity_;
  int sign_hi_ = 0;  // sign of poly at hi when lo < hi
};

using AlgebraicReal = RealRootEnclosure;

/// Returned by refine(): a copy with width at most `width`.
RealRootEnclosure refine(RealRootEnclosure enc, const Rational& width);

/// All real roots, ascending, each with its multiplicity in p. Uses
/// Descartes' rule on Moebius-transformed intervals with exact arithmetic.
std::vector<RealRootEnclosure> isolate_real_roots(const IntegerPoly& p);
std::vector<RealRootEnclosure> isolate_real_roots(const RationalPoly& p);
/// Real roots strictly inside (a, b).
std::vector<RealRootEnclosure> real_roots_in(const IntegerPoly& p, const Rational& a, const Rational& b);

/// Exact comparison of two algebraic reals: -1, 0, +1.
int compare(const RealRootEnclosure& x, const RealRootEnclosure& y);

// ---------------------------------------------------------------- complex roots

struct ComplexRootEnclosure {
  ComplexBox box;
  int multiplicity = 1;
  /// True when the root is certified real (box has zero imaginary width).
  bool real = false;
};

/// All complex roots of p with boxes of width at most target_width, real
/// roots first in ascending order, then non-real roots by ascending real
/// part with positive imaginary part first in each conjugate pair.
std::vector<ComplexRootEnclosure> enclose_all_roots(const RationalPoly& p, const Rational& target_width);

/// Same for a polynomial with interval coefficients (ascending), all roots
/// assumed simple. Returns nothing when the roots could not be certified at
/// the coefficients' precision (caller escalates).
std::optional<std::vector<ComplexRootEnclosure>> enclose_simple_roots(const std::vector<Interval>& ascending,
                                                                      const Rational& target_width);

enum class RootCondition { Violated, Satisfied, SatisfiedStrictly };
std::string to_string(RootCondition rc);

struct UnitCircleCount {
  int inside = 0;
  int on = 0;
  int outside = 0;
  bool multiple_on_circle = false;
};

/// Exact classification of all roots (with multiplicity) relative to the
/// unit circle. Unit-circle roots are found exactly through the
/// self-reciprocal gcd of p and its reversal.
UnitCircleCount unit_circle_count(const RationalPoly& p);
RootCondition root_condition(const RationalPoly& p);

/// Number of distinct roots of p with modulus exactly one, and whether 1 is
/// one of them.
struct UnitRoots {
  int distinct = 0;
  bool has_one = false;
  bool has_minus_one = false;
};
UnitRoots unit_roots(const RationalPoly& p);

}  // namespace scb
