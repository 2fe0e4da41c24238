#pragma once

// Decision procedures for step-size coefficients for boundedness.
//
// gamma > 0 is an SCB of a method iff -gamma lies in the interior of the
// stability region and mu_n(gamma) >= 0 for every n >= 1. check_scb decides
// this at a rational gamma with a certificate for either answer; gamma_sup
// brackets the largest such gamma between a certified feasible and a
// certified infeasible rational.

#include "scb/recursion.hpp"

#include <optional>

namespace scb {

enum class Tri { Yes, No, Unknown };
std::string to_string(Tri t);

/// 1 - lambda b_0 != 0 and every root of rho - lambda sigma has modulus < 1.
Tri in_stability_interior(const Method& m, const Rational& lambda);

struct AnalyzerOptions {
  long horizon = 1000;      // finite exact check length
  long digits = 64;         // starting precision for enclosures
  long max_digits = 20000;  // precision cap
  long closed_form_max_digits = 1024;
  long witness_cap = 1L << 16;
  /// When positive, the finite check runs in interval arithmetic starting at
  /// this many digits (doubling up to max_digits) instead of exact integers.
  long interval_digits = 0;
};

/// Default options with max_digits taken from SCB_PRECISION_CAP when set.
AnalyzerOptions default_options();

enum class Status { Feasible, Infeasible, Inconclusive };
std::string to_string(Status s);

enum class EvidenceType { FeasibleCert, InfeasibleWitness, InfeasibleStability, InfeasibleComplexDominance, InconclusiveHorizon };
std::string to_string(EvidenceType e);

struct StabilityData {
  RationalPoly poly;  // rho + gamma sigma
  UnitCircleCount count;
  bool leading_vanishes = false;
};

/// The dominant roots are a single conjugate pair, strictly larger in
/// modulus than every other root, with a coefficient bounded away from 0.
/// Then the sequence is negative infinitely often.
struct ComplexDominanceCert {
  ComplexBox root;
  ComplexBox coeff;
  Rational ratio_upper;  // max |other root| / |pair|, < 1
  long digits = 0;
};

struct ScbVerdict {
  Status status = Status::Inconclusive;
  EvidenceType evidence = EvidenceType::InconclusiveHorizon;
  Rational gamma;
  long horizon_used = 0;
  long precision_used = 0;

  // FeasibleCert: mu_n >= 0 checked for 1 <= n <= checked_to, tail beyond.
  long checked_to = 0;
  std::optional<TailCertificate> tail;
  // InfeasibleWitness: every certified negative index found (first is the
  // witness).
  std::vector<long> witnesses;
  // Interval finite checks: indices whose sign stayed undecided.
  std::vector<long> unknown;
  std::optional<StabilityData> stability;
  std::optional<ComplexDominanceCert> dominance;
  std::string note;
};

ScbVerdict check_scb(const Method& m, const Rational& gamma, const AnalyzerOptions& opt = default_options());

enum class Existence { Exists, NotExists, Inconclusive };
std::string to_string(Existence e);

struct ExistenceResult {
  Existence verdict = Existence::Inconclusive;
  int n0 = 0;
  long checked_to = 0;
  std::optional<TailCertificate> tail;
  UnitRoots rho_unit_roots;
  std::optional<long> nonpositive_index;  // multiple of n0 with tau <= 0
  std::string note;
};

ExistenceResult scb_exists(const Method& m, const AnalyzerOptions& opt = default_options());

struct SimpleRoot {
  AlgebraicReal gamma;
  int n = 0;
};
/// Smallest positive simple root of mu_n over 1 <= n <= n_scan.
std::optional<SimpleRoot> simple_root_bound(const Method& m, int n_scan);

/// Dominance classification from the roots of rho + gamma sigma alone.
DominanceState dominance_state_at(const Method& m, const Rational& gamma, long digits = 64);

struct Crossover {
  Rational lo, hi;  // RealDominant at lo, ComplexDominant at hi
};
/// First transition from a positive real dominant root to a dominant
/// conjugate pair on (search_lo, search_hi], bracketed to width <= tol.
std::optional<Crossover> crossover(const Method& m, const Rational& search_lo, const Rational& search_hi,
                                   const Rational& tol, long digits = 64);

std::optional<ComplexDominanceCert> infeasible_by_complex_dominance(const Method& m, const Rational& gamma,
                                                                    const AnalyzerOptions& opt = default_options());

enum class Mechanism { Crossover, SimpleRoot, Unbounded, NonePositive, Bisection };
std::string to_string(Mechanism m);

struct GammaSupResult {
  Mechanism mechanism = Mechanism::Bisection;
  Rational lo, hi;
  int simple_root_n = 0;  // SimpleRoot(n)
  std::optional<SimpleRoot> simple_root;
  std::optional<Crossover> crossover;
  std::optional<ScbVerdict> at_lo;  // Feasible
  std::optional<ScbVerdict> at_hi;  // Infeasible
  std::optional<ExistenceResult> existence;
  /// Unbounded: the feasible ladder gamma = 1, 2, 4, ...
  std::vector<Rational> ladder;
  bool certified = false;
  std::string note;
};

struct GammaSupOptions {
  AnalyzerOptions analyzer = default_options();
  Rational ladder_max = Rational(1L << 20);
  /// Upper end of the crossover search.
  Rational search_max = 4;
};

GammaSupResult gamma_sup(const Method& m, const Rational& tol, const GammaSupOptions& opt = {});

enum class RootSelector { Smallest, Unique, SmallerOfTwo };
std::string to_string(RootSelector s);

enum class PolyCheck { Confirmed, Refuted };
std::string to_string(PolyCheck c);

/// Whether the selected real root of p lies in [result.lo, result.hi].
PolyCheck verify_against_poly(const GammaSupResult& result, const IntegerPoly& p, RootSelector selector);

}  // namespace scb
