#pragma once

#include "hyperratio/rational.hpp"
#include "hyperratio/real.hpp"
#include "hyperratio/series_value.hpp"

namespace hyperratio {

// S_n(x) = sum_{k <= n} x^k / k!. Finite sum; the radius is rounding only.
SeriesValue section(unsigned long n, const Real& x, const Precision& prec);
// Exact S_n(x) at rational x.
Rational section_exact(unsigned long n, const Rational& x);

// R_n(x) = exp(x) - S_n(x), evaluated without cancellation as
// x^{n+1} / (n+1)! * 1F1(1; n+2; x).
SeriesValue remainder(unsigned long n, const Real& x, const Precision& prec);

// exp(x) through the 1F1(1; 1; x) series and its tail bound.
SeriesValue exp_enclosure(const Real& x, const Precision& prec);

// g_n(x) = 1F1(1; n+1; x) 1F1(1; n+3; x) / 1F1(1; n+2; x)^2, n >= 1.
// g_n(0) = 1 exactly.
SeriesValue ratio_g(unsigned long n, const Real& x, const Precision& prec);

// f_n(x) = R_{n-1}(x) R_{n+1}(x) / R_n(x)^2 = (n+1)/(n+2) g_n(x), n >= 1.
// f_n(0) = (n+1)/(n+2) exactly.
SeriesValue ratio_f(unsigned long n, const Real& x, const Precision& prec);

// How the Ramanujan quantities use the index-(n-1) exponential piece.
enum class RamanujanForm {
  // n! (e^n / 2 - S_{n-1}(n)) / n^n, the classical statement (default).
  partial_sum,
  // n! (e^n / 2 - R_{n-1}(n)) / n^n, the remainder reading; it violates the
  // (1/3, 1/2) bounds and is kept to document the discrepancy.
  literal_remainder,
};

struct ThetaResult {
  unsigned long n = 0;
  SeriesValue theta;
  // The whole enclosure lies inside (1/3, 1/2).
  bool in_bounds = false;
};

// Throws PrecisionError when the enclosure straddles 1/3 or 1/2.
ThetaResult ramanujan_theta(unsigned long n, const Precision& prec,
                            RamanujanForm form = RamanujanForm::partial_sum);

struct EPowerBounds {
  unsigned long n = 0;
  // Exact rationals (exact populated) in the partial_sum form.
  SeriesValue lower;
  SeriesValue upper;
  SeriesValue e_power;
  bool lower_holds = false;  // lower < e^n, certified
  bool upper_holds = false;  // e^n < upper, certified
  bool verified() const { return lower_holds && upper_holds; }
};

// lower = 2 n^n / (3 n!) + 2 S_{n-1}(n), upper = n^n / n! + 2 S_{n-1}(n),
// checked against an enclosure of e^n. Throws PrecisionError when an
// enclosure straddles a bound.
EPowerBounds e_power_bounds(unsigned long n, const Precision& prec,
                            RamanujanForm form = RamanujanForm::partial_sum);

}  // namespace hyperratio
