#pragma once

// Reference optimal values for the catalog methods: exact rationals where
// known, otherwise the defining integer polynomial with the rule selecting
// the relevant real root.

#include "scb/analyzer.hpp"

#include <optional>

namespace scb {

struct ReferenceValue {
  std::string method;
  std::string approx;  // decimal, rounded down
  std::optional<Rational> exact;
  std::optional<IntegerPoly> poly;
  RootSelector selector = RootSelector::Smallest;
  Mechanism mechanism = Mechanism::Crossover;
  int simple_root_n = 0;
};

/// bdf1..bdf6 and ab1..ab4.
std::vector<ReferenceValue> reference_values();
std::optional<ReferenceValue> reference_value(const std::string& method);

/// Whether a gamma_sup result agrees with the reference entry (mechanism,
/// enclosure containing the value, polynomial root selection).
struct ReferenceCheck {
  bool passed = false;
  std::optional<PolyCheck> poly_check;
  std::string detail;
};
ReferenceCheck compare_with_reference(const GammaSupResult& r, const ReferenceValue& ref);

/// The negative terms of mu_n(48625/100000) for bdf4 over 1 <= n <= 27000.
struct WitnessSetReference {
  std::string method = "bdf4";
  Rational gamma = rational_of(48625, 100000);
  long horizon = 27000;
  std::vector<long> negatives{26814, 26875, 26886, 26936, 26947, 26997};
};

}  // namespace scb
