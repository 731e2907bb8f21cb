#pragma once

#include <mpfr.h>

#include <compare>
#include <string>

#include "hyperratio/rational.hpp"

namespace hyperratio {

// Owning handle to an MPFR number. Every arithmetic entry point names its
// result precision and rounding direction explicitly; there is no global
// default precision involved anywhere.
class Real {
 public:
  explicit Real(mpfr_prec_t bits = 53);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  // Exact when `bits` suffices; otherwise correctly rounded in direction `rnd`.
  static Real from_rational(const Rational& q, mpfr_prec_t bits,
                            mpfr_rnd_t rnd = MPFR_RNDN);
  static Real from_long(long v, mpfr_prec_t bits = 64);
  // Decimal or "p/q" text, routed through exact rationals.
  static Real from_string(const std::string& text, mpfr_prec_t bits);

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t bits() const { return mpfr_get_prec(value_); }

  // Reprecision keeping the value when widening; rounds (rnd) when narrowing.
  Real with_bits(mpfr_prec_t bits, mpfr_rnd_t rnd = MPFR_RNDN) const;

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }
  bool is_nan() const { return mpfr_nan_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  // log2 of |value|, -inf for zero. Insensitive to double overflow.
  long double log2_abs() const;
  Rational to_rational() const;

  // Scientific decimal text with `digits` significant digits (0 selects
  // enough digits to round-trip at this precision).
  std::string to_decimal(std::size_t digits = 0, mpfr_rnd_t rnd = MPFR_RNDN) const;

  friend bool operator==(const Real& x, const Real& y) { return mpfr_equal_p(x.value_, y.value_) != 0; }
  friend std::partial_ordering operator<=>(const Real& x, const Real& y);
  friend std::partial_ordering operator<=>(const Real& x, const Rational& q);
  friend bool operator==(const Real& x, const Rational& q) { return mpfr_cmp_q(x.value_, q.get_mpq_t()) == 0; }

 private:
  mpfr_t value_;
};

// Working precision for floating evaluation.
struct Precision {
  unsigned working_bits = 128;
  long double target_rel_error = 1e-30L;

  void validate() const;
  // Doubles the working precision and tightens the truncation target so the
  // extra bits are actually used.
  Precision escalated() const;
};

}  // namespace hyperratio
