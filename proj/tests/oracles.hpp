#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the library's summation, coefficient or certificate code.

#include <mpfr.h>

#include <map>
#include <random>
#include <vector>

#include "hyperratio/rational.hpp"
#include "hyperratio/real.hpp"
#include "hyperratio/series_value.hpp"

namespace oracle {

using hyperratio::Integer;
using hyperratio::Rational;
using hyperratio::Real;

inline constexpr mpfr_prec_t kOracleBits = 512;

inline Integer factorial(unsigned long n) {
  Integer out(1);
  for (unsigned long k = 2; k <= n; ++k) out *= k;
  return out;
}

inline Rational rising(const Rational& z, unsigned long n) {
  Rational out(1);
  Rational factor = z;
  for (unsigned long k = 0; k < n; ++k) {
    out *= factor;
    factor += 1;
  }
  return out;
}

// prod (a_i)_n / (prod (b_j)_n n!), straight from the definition.
inline Rational pfq_coefficient(const std::vector<Rational>& a, const std::vector<Rational>& b,
                                unsigned long n) {
  Rational out(1);
  for (const auto& ai : a) out *= rising(ai, n);
  for (const auto& bj : b) out /= rising(bj, n);
  return out / Rational(factorial(n));
}

// Exact sum_{n <= m} coeff(n) x^n.
inline Rational pfq_partial_sum(const std::vector<Rational>& a, const std::vector<Rational>& b,
                                const Rational& x, unsigned long m) {
  Rational sum(0);
  Rational power(1);
  for (unsigned long n = 0; n <= m; ++n) {
    sum += pfq_coefficient(a, b, n) * power;
    power *= x;
  }
  return sum;
}

// exp(x) from MPFR's correctly rounded exponential at kOracleBits.
inline Real exp_of(const Rational& x) {
  Real arg = Real::from_rational(x, kOracleBits);
  Real out(kOracleBits);
  mpfr_exp(out.get(), arg.get(), MPFR_RNDN);
  return out;
}

inline Real to_real(const Rational& q) { return Real::from_rational(q, kOracleBits); }

// |a - b| at oracle precision.
inline Real distance(const Real& a, const Real& b) {
  Real out(kOracleBits);
  mpfr_sub(out.get(), a.get(), b.get(), MPFR_RNDN);
  mpfr_abs(out.get(), out.get(), MPFR_RNDN);
  return out;
}

// True if `reference` (accurate to ~2^-500 relative) lies in the enclosure,
// with slack for the reference's own rounding.
inline bool encloses(const hyperratio::SeriesValue& v, const Real& reference) {
  Real slack(kOracleBits);
  mpfr_abs(slack.get(), reference.get(), MPFR_RNDU);
  mpfr_mul_2si(slack.get(), slack.get(), -480, MPFR_RNDU);
  Real d = distance(v.value, reference);
  Real allowed(kOracleBits);
  mpfr_add(allowed.get(), v.error_radius.get(), slack.get(), MPFR_RNDU);
  return d <= allowed;
}

// Coefficient-list product by accumulating every (i, j) pair into degree
// i + j, truncated at degree n.
inline std::vector<Rational> multiply_polynomials(const std::vector<Rational>& p,
                                                  const std::vector<Rational>& q,
                                                  std::size_t max_degree) {
  std::map<std::size_t, Rational> terms;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (i + j > max_degree) continue;
      terms[i + j] += p[i] * q[j];
    }
  }
  std::vector<Rational> out(max_degree + 1, Rational(0));
  for (const auto& [deg, c] : terms) out[deg] = c;
  return out;
}

// Random rational num/den with num in [lo*den, hi*den], den from a small set.
inline Rational random_rational(std::mt19937_64& rng, long lo_num, long hi_num,
                                const std::vector<long>& dens = {1, 2, 3, 4, 5, 8, 10}) {
  long den = dens[std::uniform_int_distribution<std::size_t>(0, dens.size() - 1)(rng)];
  long num = std::uniform_int_distribution<long>(lo_num * den, hi_num * den)(rng);
  Rational out(num, den);
  out.canonicalize();
  return out;
}

}  // namespace oracle
