#include "hyperratio/series_value.hpp"

#include "hyperratio/errors.hpp"

namespace hyperratio {
namespace {

Real zero_radius() { return Real(kRadiusBits); }

Real abs_up(const Real& x) {
  Real out(kRadiusBits);
  mpfr_abs(out.get(), x.get(), MPFR_RNDU);
  return out;
}

Real abs_down(const Real& x) {
  Real out(kRadiusBits);
  mpfr_abs(out.get(), x.get(), MPFR_RNDD);
  return out;
}

Real add_up(const Real& x, const Real& y) {
  Real out(kRadiusBits);
  mpfr_add(out.get(), x.get(), y.get(), MPFR_RNDU);
  return out;
}

Real mul_up(const Real& x, const Real& y) {
  Real out(kRadiusBits);
  mpfr_mul(out.get(), x.get(), y.get(), MPFR_RNDU);
  return out;
}

std::optional<Rational> exact_or_none(bool both, auto&& op) {
  if (!both) return std::nullopt;
  return op();
}

SeriesValue finish(Real value, Real radius, int ternary, std::size_t terms,
                   std::optional<Rational> exact) {
  if (ternary != 0) add_half_ulp(radius, value);
  SeriesValue out{std::move(value), std::move(radius), terms, std::move(exact)};
  return out;
}

}  // namespace

SeriesValue SeriesValue::from_rational(const Rational& q, unsigned bits) {
  Real value(bits);
  int ternary = mpfr_set_q(value.get(), q.get_mpq_t(), MPFR_RNDN);
  return finish(std::move(value), zero_radius(), ternary, 0, q);
}

Real SeriesValue::lower() const {
  Real out(value.bits());
  mpfr_sub(out.get(), value.get(), error_radius.get(), MPFR_RNDD);
  return out;
}

Real SeriesValue::upper() const {
  Real out(value.bits());
  mpfr_add(out.get(), value.get(), error_radius.get(), MPFR_RNDU);
  return out;
}

bool SeriesValue::contains(const Rational& q) const {
  if (exact) return *exact == q;
  return lower() <= q && upper() >= q;
}

bool SeriesValue::contains(const Real& r) const {
  if (exact) return r == *exact;
  return lower() <= r && upper() >= r;
}

bool SeriesValue::certainly_above(const Rational& q) const {
  if (exact) return *exact > q;
  return lower() > q;
}

bool SeriesValue::certainly_below(const Rational& q) const {
  if (exact) return *exact < q;
  return upper() < q;
}

bool SeriesValue::certainly_at_least(const Rational& q) const {
  if (exact) return *exact >= q;
  return lower() >= q;
}

void add_half_ulp(Real& radius, const Real& value) {
  if (value.is_zero() || !value.is_finite()) return;
  Real half_ulp(kRadiusBits);
  mpfr_set_ui_2exp(half_ulp.get(), 1, mpfr_get_exp(value.get()) - value.bits() - 1, MPFR_RNDU);
  mpfr_add(radius.get(), radius.get(), half_ulp.get(), MPFR_RNDU);
}

SeriesValue add(const SeriesValue& x, const SeriesValue& y, unsigned bits) {
  Real value(bits);
  int t = mpfr_add(value.get(), x.value.get(), y.value.get(), MPFR_RNDN);
  return finish(std::move(value), add_up(x.error_radius, y.error_radius), t,
                x.terms_used + y.terms_used,
                exact_or_none(x.exact && y.exact, [&] { return Rational(*x.exact + *y.exact); }));
}

SeriesValue sub(const SeriesValue& x, const SeriesValue& y, unsigned bits) {
  Real value(bits);
  int t = mpfr_sub(value.get(), x.value.get(), y.value.get(), MPFR_RNDN);
  return finish(std::move(value), add_up(x.error_radius, y.error_radius), t,
                x.terms_used + y.terms_used,
                exact_or_none(x.exact && y.exact, [&] { return Rational(*x.exact - *y.exact); }));
}

SeriesValue mul(const SeriesValue& x, const SeriesValue& y, unsigned bits) {
  Real value(bits);
  int t = mpfr_mul(value.get(), x.value.get(), y.value.get(), MPFR_RNDN);
  // |xy - x'y'| <= |x| ry + |y| rx + rx ry
  Real radius = add_up(add_up(mul_up(abs_up(x.value), y.error_radius),
                              mul_up(abs_up(y.value), x.error_radius)),
                       mul_up(x.error_radius, y.error_radius));
  return finish(std::move(value), std::move(radius), t, x.terms_used + y.terms_used,
                exact_or_none(x.exact && y.exact, [&] { return Rational(*x.exact * *y.exact); }));
}

SeriesValue div(const SeriesValue& x, const SeriesValue& y, unsigned bits) {
  Real y_low = abs_down(y.value);
  mpfr_sub(y_low.get(), y_low.get(), y.error_radius.get(), MPFR_RNDD);
  if (y_low.sign() <= 0) throw DivisionByZero("divisor enclosure contains zero");
  Real value(bits);
  int t = mpfr_div(value.get(), x.value.get(), y.value.get(), MPFR_RNDN);
  // |x/y - x'/y'| <= (|x'| ry + |y'| rx) / (|y'| (|y'| - ry))
  Real numer = add_up(mul_up(abs_up(x.value), y.error_radius),
                      mul_up(abs_up(y.value), x.error_radius));
  Real denom(kRadiusBits);
  mpfr_abs(denom.get(), y.value.get(), MPFR_RNDD);
  mpfr_mul(denom.get(), denom.get(), y_low.get(), MPFR_RNDD);
  Real radius(kRadiusBits);
  mpfr_div(radius.get(), numer.get(), denom.get(), MPFR_RNDU);
  return finish(std::move(value), std::move(radius), t, x.terms_used + y.terms_used,
                exact_or_none(x.exact && y.exact, [&] { return Rational(*x.exact / *y.exact); }));
}

SeriesValue mul(const SeriesValue& x, const Rational& q, unsigned bits) {
  return mul(x, SeriesValue::from_rational(q, bits), bits);
}

Separation compare(const SeriesValue& x, const SeriesValue& y) {
  if (x.exact && y.exact) {
    if (*x.exact == *y.exact) return Separation::equal;
    return *x.exact < *y.exact ? Separation::below : Separation::above;
  }
  if (x.upper() < y.lower()) return Separation::below;
  if (x.lower() > y.upper()) return Separation::above;
  return Separation::overlap;
}

}  // namespace hyperratio
