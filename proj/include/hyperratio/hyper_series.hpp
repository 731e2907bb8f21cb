#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "hyperratio/rational.hpp"
#include "hyperratio/real.hpp"
#include "hyperratio/series_value.hpp"

namespace hyperratio {

// Parameter vectors of pFq(a; b; x).
class HyperParams {
 public:
  // Throws DomainError unless 1 <= p <= q + 1 and no b_j is a nonpositive
  // integer.
  HyperParams(std::vector<Rational> a, std::vector<Rational> b);

  const std::vector<Rational>& a() const { return a_; }
  const std::vector<Rational>& b() const { return b_; }
  std::size_t p() const { return a_.size(); }
  std::size_t q() const { return b_.size(); }
  // Entire series (p <= q); otherwise radius of convergence 1.
  bool entire() const { return p() <= q(); }

 private:
  std::vector<Rational> a_;
  std::vector<Rational> b_;
};

// Rising factorial z (z + 1) ... (z + n - 1); 1 for n = 0.
Rational pochhammer(const Rational& z, unsigned long n);

// prod_i (a_i)_n / (prod_j (b_j)_n n!). Throws DivisionByZero if a (b_j)_n
// factor vanishes.
Rational coeff(const HyperParams& params, unsigned long n);

// Exact coeff(n + 1) / coeff(n) at unit argument:
// prod_i (a_i + n) / (prod_j (b_j + n) (n + 1)).
Rational coeff_ratio(const HyperParams& params, unsigned long n);

// t_{n+1} / t_n for t_n = coeff(n) x^n, exact for rational x.
Rational term_ratio_exact(const HyperParams& params, const Rational& x, unsigned long n);
// Same, correctly rounded at the precision of x.
Real term_ratio(const HyperParams& params, const Real& x, unsigned long n);

// pFq(a; b; x) for x >= 0 with a rigorous enclosure (see hyper_series.cpp for
// the truncation rule). Throws DomainError outside the supported domain and
// PrecisionError if the tail criterion is not met within the iteration cap.
SeriesValue eval_pfq(const HyperParams& params, const Real& x, const Precision& prec);
SeriesValue eval_1f1(const Rational& a, const Rational& b, const Real& x, const Precision& prec);

// Finite partial sum sum_{n < count} coeff(n) x^n; the radius covers
// rounding only.
SeriesValue partial_sum(const HyperParams& params, const Real& x, std::size_t count,
                        const Precision& prec);

// sum_n coeffs[n] x^n for an explicit polynomial with rational coefficients.
SeriesValue sum_power_series(std::span<const Rational> coeffs, const Real& x,
                             const Precision& prec);

// Iteration cap of the adaptive summation: 10 ceil(x) + 10000 terms.
std::size_t iteration_cap(const Real& x);

}  // namespace hyperratio
