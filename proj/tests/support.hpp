#pragma once

#include "scb/arith.hpp"

#include <string>

namespace scb::test {

// A printed decimal v with d fractional digits stands for the interval
// [v - 10^-d, v + 10^-d]; an enclosure matches it when the two overlap.
inline bool matches_printed(const Interval& x, const std::string& printed) {
  const size_t dot = printed.find('.');
  const long frac = dot == std::string::npos ? 0 : static_cast<long>(printed.size() - dot - 1);
  Rational ulp = 1;
  for (long i = 0; i < frac; ++i) ulp /= 10;
  const Rational v = parse_rational(printed);
  return x.overlaps(Interval::hull(v - ulp, v + ulp, x.bits()));
}

}  // namespace scb::test
