#pragma once

// The sequences mu_n(gamma) and tau_n = mu_n(0):
//
//   mu_n = (b_n + sum_{j=1..k} (a_j - gamma b_j) mu_{n-j}) / (1 + gamma b_0)
//
// with b_n = 0 for n > k and mu_n = 0 for n < 0. Exact, integer-scaled and
// interval evaluation, closed forms sum_j c_j(n) rho_j^n over the roots of the
// characteristic polynomial, and tail certificates proving positivity of
// every term past a computed index.

#include "scb/methods.hpp"

#include <optional>
#include <stdexcept>
#include <variant>

namespace scb {

enum class SeqKind { Mu, Tau };
std::string to_string(SeqKind k);

/// A value of gamma: a rational, or a real algebraic number given by an
/// isolating interval of its defining polynomial.
using GammaValue = std::variant<Rational, AlgebraicReal>;
Interval gamma_interval(const GammaValue& g, mpfr_prec_t bits);
std::string to_string(const GammaValue& g);

// ---------------------------------------------------------------- exact

Rational eval_mu(const Method& m, const Rational& gamma, long n);
Rational eval_tau(const Method& m, long n);
/// mu_0 .. mu_{n_max}.
std::vector<Rational> mu_prefix(const Method& m, const Rational& gamma, long n_max);
std::vector<Rational> tau_prefix(const Method& m, long n_max);

/// Integer-scaled exact stream. With gamma = p/q and D the common
/// denominator of the method, L = qD(1 + gamma b_0), C_j = qD(a_j - gamma b_j)
/// and B_n = qD b_n are integers and M_n = mu_n L^{n+1} satisfies
///   M_n = B_n L^n + sum_j C_j L^{j-1} M_{n-j},
/// so sign(mu_n) = sign(M_n) without any rational arithmetic. Only a window
/// of k terms is kept.
class ExactMuStream {
 public:
  ExactMuStream(const Method& m, const Rational& gamma);
  /// Index of the term the next call to next() produces.
  long index() const { return n_; }
  /// Advances and returns the scaled term M_n.
  const Integer& next();
  /// Sign of the term most recently produced.
  int sign() const { return sgn(window_.back()); }
  /// mu_n of the term most recently produced, as an exact rational.
  Rational value() const;

 private:
  int k_;
  Integer L_;
  std::vector<Integer> E_;   // C_j L^{j-1}, j = 1..k
  std::vector<Integer> Bs_;  // B_n L^n, n = 0..k
  std::vector<Integer> window_;
  long n_ = 0;
};

struct ExactScan {
  long n_from = 0;
  long n_to = 0;                 // last index examined
  std::vector<long> negatives;   // all, or only the first when stopping early
  std::vector<long> zeros;
};
/// Signs of mu_n(gamma) for n_from <= n <= n_to.
ExactScan exact_sign_scan(const Method& m, const Rational& gamma, long n_from, long n_to, bool stop_at_first_negative);

/// Numerator polynomials in gamma: mu_n(gamma) = M_n(gamma) / L(gamma)^{n+1}
/// with L(gamma) = D(1 + gamma b_0) > 0 for gamma >= 0. Returns M_0..M_{n_max}.
std::vector<IntegerPoly> mu_numerators(const Method& m, long n_max);
IntegerPoly mu_denominator_base(const Method& m);

// ---------------------------------------------------------------- intervals

/// Interval stream. For a rational gamma the recursion runs on the integer
/// scaled coefficients (one product and one quotient by a machine-size
/// integer per term), otherwise on interval coefficients.
class IntervalMuStream {
 public:
  IntervalMuStream(const Method& m, const Rational& gamma, long digits);
  IntervalMuStream(const Method& m, const Interval& gamma, long digits);
  long index() const { return n_; }
  const Interval& next();

 private:
  int k_;
  mpfr_prec_t bits_;
  bool integer_path_ = false;
  std::vector<Integer> Ci_;
  Integer Li_;
  std::vector<Integer> Bi_;
  std::vector<Interval> C_;
  Interval L_;
  std::vector<Interval> B_;
  std::vector<Interval> window_;
  long n_ = 0;
};

struct IntervalScan {
  long n_max = 0;
  long digits = 0;
  std::vector<long> negatives;
  std::vector<long> unknown;
  long positives = 0;
};
/// Certified signs of mu_1..mu_{n_max}.
IntervalScan interval_sign_scan(const Method& m, const Rational& gamma, long n_max, long digits);
IntervalScan interval_sign_scan(const Method& m, const Interval& gamma, long n_max, long digits);

/// Interval enclosures of mu_0..mu_{n_max} at an algebraic or rational gamma.
std::vector<Interval> mu_enclosures(const Method& m, const GammaValue& gamma, long n_max, long digits);

// ---------------------------------------------------------------- closed form

/// Thrown when the characteristic polynomial has a multiple root and the
/// caller did not allow it.
class ClosedFormUnavailable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ClosedFormRoot {
  ComplexRootEnclosure root;
  int multiplicity = 1;
  /// c_i for the terms c_i n^i rho^n, i = 0..multiplicity-1.
  std::vector<ComplexBox> coeffs;
  /// Index of the conjugate root, or -1 for a real root.
  int conjugate = -1;
};

struct ClosedForm {
  SeqKind kind = SeqKind::Mu;
  std::string gamma;  // display form of gamma
  /// x_n = sum over roots for all n >= valid_from (zero roots removed).
  long valid_from = 0;
  /// Multiplicity of rho = 0 in the characteristic polynomial.
  int zero_root_multiplicity = 0;
  std::vector<ClosedFormRoot> roots;
  long digits = 0;

  /// Enclosure of the reconstructed x_n (n >= valid_from).
  ComplexBox value(long n) const;
};

struct ClosedFormOptions {
  long digits = 64;
  long max_digits = 4096;
  /// Accept multiple roots (rational gamma only).
  bool allow_multiple = false;
};

/// Closed form of mu_n(gamma) (or tau_n when kind == Tau; gamma ignored).
/// Throws ClosedFormUnavailable when a multiple root is present and not
/// allowed, or when roots cannot be separated within max_digits.
ClosedForm closed_form(const Method& m, const GammaValue& gamma, SeqKind kind, const ClosedFormOptions& opt = {});

enum class DominanceState { RealDominant, ComplexDominant, NegativeDominant, Degenerate, Unknown };
std::string to_string(DominanceState s);

struct Dominance {
  DominanceState state = DominanceState::Unknown;
  /// Indices into ClosedForm::roots of the top modulus class.
  std::vector<size_t> top;
  /// Certified upper bound on max |rho_j| / |rho_top| over the other roots,
  /// when the top class is a single root or a single conjugate pair.
  std::optional<Rational> ratio_upper;
};
/// Classifies the roots of largest modulus. Degenerate means the top class
/// could not be reduced to a single root or conjugate pair.
Dominance dominance(const ClosedForm& cf);

// ---------------------------------------------------------------- tail

enum class TailKind { Dominant, Zero };

/// Certificate that x_n > 0 for every n >= n_start (Dominant), or that
/// x_n = 0 for every n >= n_start (Zero).
struct TailCertificate {
  TailKind kind = TailKind::Dominant;
  long n_start = 0;
  /// Dominant positive real root: rational bracket and multiplicity.
  Rational rho_lo, rho_hi;
  int rho_multiplicity = 1;
  /// Lower bound on the leading coefficient after dividing by n^{m-1} rho^n,
  /// including the correction from lower-order terms at n_start.
  Rational leading_lower;
  /// Upper bound of the residual sum at n_start, decreasing for n >= n_start.
  Rational residual_upper;
  /// Per-term data of the residual: coefficient modulus bound, power of n
  /// relative to the leading term, ratio bound r < 1.
  struct Term {
    Rational coeff_upper;
    int n_power = 0;
    Rational ratio_upper;
  };
  std::vector<Term> terms;
};

/// Returns a certificate when the closed form has a strictly dominant
/// positive real root with positive leading coefficient. Returns nothing when
/// dominance cannot be certified at the closed form's precision. Throws
/// std::domain_error when the dominant class is a non-real pair.
std::optional<TailCertificate> tail_certificate(const ClosedForm& cf);

/// Re-checks residual_upper < leading_lower and the monotonicity condition
/// from the stored rational data alone.
bool verify_tail(const TailCertificate& t);

/// Sign of the dominant part when it is eventually negative: leading
/// coefficient certified negative, or a negative dominant real root with
/// nonzero coefficient (alternating signs).
enum class EventualSign { Positive, Negative, Alternating, Unknown };
EventualSign eventual_sign(const ClosedForm& cf);

// ---------------------------------------------------------------- export

/// CSV rows "n,value,sign" for mu_0..mu_{n_max} (exact rationals).
std::string sequence_csv(const Method& m, SeqKind kind, const Rational& gamma, long n_max);

}  // namespace scb
