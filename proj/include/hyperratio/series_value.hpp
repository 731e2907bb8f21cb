#pragma once

#include <cstddef>
#include <optional>

#include "hyperratio/rational.hpp"
#include "hyperratio/real.hpp"

namespace hyperratio {

// Numeric value with a rigorous absolute error radius: the true quantity lies
// in [value - error_radius, value + error_radius]. When the quantity is known
// as an exact rational (x = 0 evaluations, closed-form constants) `exact`
// carries it and value is its correctly rounded image.
struct SeriesValue {
  Real value;
  Real error_radius;
  std::size_t terms_used = 0;
  std::optional<Rational> exact;

  static SeriesValue from_rational(const Rational& q, unsigned bits);

  unsigned bits() const { return static_cast<unsigned>(value.bits()); }
  // Directed-rounded enclosure endpoints.
  Real lower() const;
  Real upper() const;

  bool contains(const Rational& q) const;
  bool contains(const Real& r) const;
  // Certified comparisons against a rational threshold.
  bool certainly_above(const Rational& q) const;
  bool certainly_below(const Rational& q) const;
  bool certainly_at_least(const Rational& q) const;
};

// Bits used for radius bookkeeping. Radii are always rounded upward, so a
// short mantissa only loosens them.
inline constexpr mpfr_prec_t kRadiusBits = 64;

// Adds half an ulp of `value` (at its own precision) to `radius`, rounding
// up. Called after every inexact rounding of a value.
void add_half_ulp(Real& radius, const Real& value);

// Enclosure arithmetic: result value rounded to nearest at `bits`, radius
// propagates both operands' radii plus the rounding of the result.
SeriesValue add(const SeriesValue& x, const SeriesValue& y, unsigned bits);
SeriesValue sub(const SeriesValue& x, const SeriesValue& y, unsigned bits);
SeriesValue mul(const SeriesValue& x, const SeriesValue& y, unsigned bits);
// Throws DivisionByZero when the divisor enclosure contains zero.
SeriesValue div(const SeriesValue& x, const SeriesValue& y, unsigned bits);
SeriesValue mul(const SeriesValue& x, const Rational& q, unsigned bits);

// Certified ordering of two enclosures.
enum class Separation { below, above, equal, overlap };
// below: every point of x is < every point of y; equal: both exact and equal.
Separation compare(const SeriesValue& x, const SeriesValue& y);

}  // namespace hyperratio
