#pragma once

// Linear multistep methods
//
//   u_n = sum_{j=1..k} a_j u_{n-j} + dt sum_{j=0..k} b_j F(u_{n-j})
//
// with the built-in catalog (Adams-Bashforth, BDF, extrapolated BDF),
// validation of the standing assumptions and the polynomials derived from the
// coefficients.

#include "scb/poly.hpp"

#include <string>
#include <vector>

namespace scb {

enum class Family { AB, BDF, EBDF, Custom };
std::string to_string(Family f);

struct Method {
  std::string name;
  Family family = Family::Custom;
  int k = 0;
  std::vector<Rational> a;  // a_1 .. a_k
  std::vector<Rational> b;  // b_0 .. b_k

  /// a_j for 1 <= j <= k, zero otherwise.
  Rational a_at(int j) const;
  /// b_j for 0 <= j <= k, zero otherwise.
  Rational b_at(int j) const;
  /// Largest j with b_j != 0 (-1 if all vanish).
  int last_nonzero_b() const;
  /// Least common denominator of all coefficients.
  Integer denominator() const;
};

std::vector<std::string> catalog_names();
/// Throws std::invalid_argument for unknown names; the message lists the
/// available methods.
Method catalog(const std::string& name);

/// Generators used by the catalog, exposed for tests.
Method make_bdf(int k);
Method make_ab(int k);
Method make_ebdf(int k);

struct AssumptionCheck {
  std::string name;  // consistency, zero-stability, irreducibility, b0-nonnegative
  bool passed = false;
  std::string detail;
};

/// The four standing assumptions. Throws std::invalid_argument only for
/// structurally malformed methods (wrong list lengths, k < 1).
std::vector<AssumptionCheck> validate(const Method& m);
bool is_valid(const Method& m);
/// Throws std::invalid_argument naming every failed assumption.
void require_valid(const Method& m);

struct GeneratingPolys {
  RationalPoly rho;    // z^k - sum a_j z^(k-j)
  RationalPoly sigma;  // sum b_j z^(k-j)
};
GeneratingPolys generating_polys(const Method& m);

/// Characteristic polynomial of the mu recursion at gamma, scaled by the
/// method's common denominator D: D (rho + gamma sigma). Its leading
/// coefficient is D (1 + gamma b_0).
RationalPoly char_poly_mu(const Method& m, const Rational& gamma);

/// The same polynomial as an integer pencil p0 + gamma p1 = D rho + gamma D sigma.
struct Pencil {
  IntegerPoly p0;
  IntegerPoly p1;
  Integer scale;  // D
};
Pencil char_pencil(const Method& m);

/// First index 1..k with tau_n != 0.
int n0(const Method& m);

/// JSON: {"k": int, "a": ["p/q", ...], "b": [...], "name": string}.
Method method_from_json(const std::string& text);
Method load_method_file(const std::string& path);
std::string method_to_json(const Method& m);

/// A catalog name, or a path to a JSON method file.
Method resolve_method(const std::string& name_or_path);

}  // namespace scb
