#include "hyperratio/exp_sections.hpp"

#include <cmath>
#include <string>

#include "hyperratio/errors.hpp"
#include "hyperratio/hyper_series.hpp"

namespace hyperratio {
namespace {

const HyperParams& exp_params() {
  static const HyperParams params({Rational(1)}, {Rational(1)});
  return params;
}

void require_nonnegative(const Real& x) {
  if (!x.is_finite() || x.sign() < 0) throw DomainError("x must be finite and >= 0");
}

void require_positive_index(unsigned long n, const char* what) {
  if (n < 1) throw DomainError(std::string(what) + " needs n >= 1");
}

Rational n_pow_n(unsigned long n) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), n, n);
  return Rational(out);
}

Real integer_real(unsigned long n, unsigned bits) {
  Real out(bits);
  mpfr_set_ui(out.get(), n, MPFR_RNDN);
  return out;
}

// theta subtracts S_{n-1}(n) from e^n / 2 and keeps roughly n^n / (3 n!)
// of it, so the truncation target of e^n is divided by that loss factor.
Precision theta_exp_precision(unsigned long n, const Precision& prec) {
  const long double nn = static_cast<long double>(n);
  const long double log_loss =
      nn + std::log(1.5L) + std::lgamma(nn + 1.0L) - nn * std::log(nn);
  Precision out = prec;
  out.target_rel_error = prec.target_rel_error / (8.0L * std::exp(log_loss));
  const long double floor = std::ldexp(1.0L, -static_cast<int>(prec.working_bits));
  if (out.target_rel_error < floor) out.target_rel_error = floor;
  return out;
}

// Both forms share e^n / 2 minus the index-(n-1) piece.
SeriesValue index_piece(unsigned long n, const Precision& prec, RamanujanForm form) {
  if (form == RamanujanForm::partial_sum) {
    return SeriesValue::from_rational(section_exact(n - 1, Rational(n)), prec.working_bits);
  }
  return remainder(n - 1, integer_real(n, prec.working_bits), prec);
}

}  // namespace

SeriesValue section(unsigned long n, const Real& x, const Precision& prec) {
  require_nonnegative(x);
  return partial_sum(exp_params(), x, n + 1, prec);
}

Rational section_exact(unsigned long n, const Rational& x) {
  Rational term(1);
  Rational sum(0);
  for (unsigned long k = 0; k <= n; ++k) {
    sum += term;
    term *= x;
    term /= k + 1;
  }
  return sum;
}

SeriesValue remainder(unsigned long n, const Real& x, const Precision& prec) {
  require_nonnegative(x);
  const unsigned bits = prec.working_bits;
  if (x.is_zero()) return SeriesValue::from_rational(Rational(0), bits);
  SeriesValue kummer = eval_1f1(Rational(1), Rational(n + 2), x, prec);
  Real power(bits);
  int t = mpfr_pow_ui(power.get(), x.get(), n + 1, MPFR_RNDN);
  Real radius(kRadiusBits);
  if (t != 0) add_half_ulp(radius, power);
  SeriesValue lead{std::move(power), std::move(radius), 0, std::nullopt};
  lead = mul(lead, Rational(1, factorial(n + 1)), bits);
  return mul(lead, kummer, bits);
}

SeriesValue exp_enclosure(const Real& x, const Precision& prec) {
  require_nonnegative(x);
  return eval_pfq(exp_params(), x, prec);
}

SeriesValue ratio_g(unsigned long n, const Real& x, const Precision& prec) {
  require_positive_index(n, "g_n");
  require_nonnegative(x);
  const unsigned bits = prec.working_bits;
  if (x.is_zero()) return SeriesValue::from_rational(Rational(1), bits);
  SeriesValue lo = eval_1f1(Rational(1), Rational(n + 1), x, prec);
  SeriesValue mid = eval_1f1(Rational(1), Rational(n + 2), x, prec);
  SeriesValue hi = eval_1f1(Rational(1), Rational(n + 3), x, prec);
  return div(mul(lo, hi, bits), mul(mid, mid, bits), bits);
}

SeriesValue ratio_f(unsigned long n, const Real& x, const Precision& prec) {
  require_positive_index(n, "f_n");
  SeriesValue g = ratio_g(n, x, prec);
  return mul(g, Rational(n + 1, n + 2), prec.working_bits);
}

ThetaResult ramanujan_theta(unsigned long n, const Precision& prec, RamanujanForm form) {
  require_positive_index(n, "theta(n)");
  prec.validate();
  const unsigned bits = prec.working_bits;
  const Rational scale = Rational(factorial(n)) / n_pow_n(n);

  SeriesValue e_n = exp_enclosure(integer_real(n, bits), theta_exp_precision(n, prec));
  SeriesValue half_e = mul(e_n, Rational(1, 2), bits);
  SeriesValue theta = mul(sub(half_e, index_piece(n, prec, form), bits), scale, bits);

  ThetaResult out{n, std::move(theta), false};
  const Rational third(1, 3);
  const Rational half(1, 2);
  out.in_bounds = out.theta.certainly_above(third) && out.theta.certainly_below(half);
  if (!out.in_bounds && (out.theta.contains(third) || out.theta.contains(half))) {
    throw PrecisionError("theta(" + std::to_string(n) +
                         ") enclosure straddles a bound; raise working precision");
  }
  return out;
}

EPowerBounds e_power_bounds(unsigned long n, const Precision& prec, RamanujanForm form) {
  require_positive_index(n, "e^n bounds");
  prec.validate();
  const unsigned bits = prec.working_bits;
  const Rational lead = n_pow_n(n) / Rational(factorial(n));

  SeriesValue twice_piece = mul(index_piece(n, prec, form), Rational(2), bits);
  EPowerBounds out;
  out.n = n;
  out.lower = add(SeriesValue::from_rational(Rational(2, 3) * lead, bits), twice_piece, bits);
  out.upper = add(SeriesValue::from_rational(lead, bits), twice_piece, bits);
  out.e_power = exp_enclosure(integer_real(n, bits), prec);

  Separation lower_vs = compare(out.lower, out.e_power);
  Separation upper_vs = compare(out.e_power, out.upper);
  if (lower_vs == Separation::overlap || upper_vs == Separation::overlap) {
    throw PrecisionError("e^" + std::to_string(n) +
                         " enclosure straddles a rational bound; raise working precision");
  }
  out.lower_holds = lower_vs == Separation::below;
  out.upper_holds = upper_vs == Separation::below;
  return out;
}

}  // namespace hyperratio
