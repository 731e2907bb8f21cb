#include "hyperratio/hyper_series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hyperratio/errors.hpp"

// Truncation rule for eval_pfq.
//
// Terms obey t_{n+1} = t_n r(n) with r(n) = x prod(a_i + n) / (prod(b_j + n) (n + 1)).
// For positive parameters every paired factor (alpha + n)/(beta + n) is
// monotone in n, so sup_{n >= M} r(n) <= rho_M, an exact rational times x.
// Summation stops at the first N with rho_{N+1} <= threshold (1/2 for entire
// series, max(1/2, (1 + x)/2) when p = q + 1) whose geometric tail estimate
// t_{N+1} / (1 - rho_{N+1}) also meets target_rel_error * S_N. The reported
// radius is the tail bound plus rounding error, both rounded upward:
//  - each term carries at most k_n roundings of relative size u = 2^-bits,
//    so |t'_n - t_n| <= gamma(k_n) t_n with gamma(k) = k u / (1 - k u);
//  - each inexact partial-sum addition contributes at most half an ulp of
//    the (increasing) final sum.

namespace hyperratio {
namespace {

struct LinearFactor {
  Integer constant;  // numerator of the parameter
  Integer slope;     // its denominator
};

// Integer form of the term ratio: r(n) = x * numer(n) / denom(n).
class TermRecurrence {
 public:
  explicit TermRecurrence(const HyperParams& params) {
    numer_scale_ = 1;
    denom_scale_ = 1;
    for (const auto& a : params.a()) {
      numer_.push_back({a.get_num(), a.get_den()});
      denom_scale_ *= a.get_den();
    }
    for (const auto& b : params.b()) {
      denom_.push_back({b.get_num(), b.get_den()});
      numer_scale_ *= b.get_den();
    }
  }

  void evaluate(unsigned long n, Integer& numer, Integer& denom) {
    numer = numer_scale_;
    for (const auto& f : numer_) {
      scratch_ = f.slope * n + f.constant;
      numer *= scratch_;
    }
    denom = denom_scale_;
    for (const auto& f : denom_) {
      scratch_ = f.slope * n + f.constant;
      denom *= scratch_;
    }
    denom *= n + 1;
  }

 private:
  std::vector<LinearFactor> numer_;
  std::vector<LinearFactor> denom_;
  Integer numer_scale_;
  Integer denom_scale_;
  Integer scratch_;
};

// sup over n >= m of (alpha + n) / (beta + n), for alpha, beta > 0.
Rational sup_pair(const Rational& alpha, const Rational& beta, unsigned long m) {
  if (alpha < beta) return Rational(1);
  return Rational((alpha + m) / (beta + m));
}

double sup_pair(double alpha, double beta, double m) {
  return alpha < beta ? 1.0 : (alpha + m) / (beta + m);
}

// rho_m / x as an exact rational, see the comment at the top of the file.
Rational ratio_majorant(const HyperParams& params, unsigned long m) {
  const auto& a = params.a();
  const auto& b = params.b();
  Rational out(1);
  if (params.entire()) {
    for (std::size_t i = 0; i < a.size(); ++i) out *= sup_pair(a[i], b[i], m);
    for (std::size_t j = a.size(); j < b.size(); ++j) out /= b[j] + m;
    out /= m + 1;
  } else {
    for (std::size_t i = 0; i < b.size(); ++i) out *= sup_pair(a[i], b[i], m);
    out *= sup_pair(a.back(), Rational(1), m);
  }
  return out;
}

class MajorantEstimate {
 public:
  explicit MajorantEstimate(const HyperParams& params) : entire_(params.entire()) {
    for (const auto& v : params.a()) a_.push_back(v.get_d());
    for (const auto& v : params.b()) b_.push_back(v.get_d());
  }

  double operator()(unsigned long m) const {
    double md = static_cast<double>(m);
    double out = 1.0;
    if (entire_) {
      for (std::size_t i = 0; i < a_.size(); ++i) out *= sup_pair(a_[i], b_[i], md);
      for (std::size_t j = a_.size(); j < b_.size(); ++j) out /= b_[j] + md;
      out /= md + 1.0;
    } else {
      for (std::size_t i = 0; i < b_.size(); ++i) out *= sup_pair(a_[i], b_[i], md);
      out *= sup_pair(a_.back(), 1.0, md);
    }
    return out;
  }

 private:
  bool entire_;
  std::vector<double> a_;
  std::vector<double> b_;
};

// gamma(k) = k u / (1 - k u), u = 2^-bits, rounded up.
Real gamma_bound(std::size_t k, unsigned bits) {
  Real ku(kRadiusBits);
  mpfr_set_ui_2exp(ku.get(), static_cast<unsigned long>(k), -static_cast<mpfr_exp_t>(bits), MPFR_RNDU);
  Real one_minus(kRadiusBits);
  mpfr_ui_sub(one_minus.get(), 1, ku.get(), MPFR_RNDD);
  if (one_minus.sign() <= 0) throw PrecisionError("rounding error bound degenerate");
  Real out(kRadiusBits);
  mpfr_div(out.get(), ku.get(), one_minus.get(), MPFR_RNDU);
  return out;
}

// Running state of the forward recurrence.
class TermSummer {
 public:
  TermSummer(const HyperParams& params, const Real& x, unsigned bits)
      : recurrence_(params), x_(x), bits_(bits), term_(bits), sum_(bits) {
    mpfr_set_ui(term_.get(), 1, MPFR_RNDN);
  }

  // Adds the current term to the sum and advances the term to index n + 1.
  void step(unsigned long n) {
    if (mpfr_add(sum_.get(), sum_.get(), term_.get(), MPFR_RNDN) != 0) ++inexact_adds_;
    term_rounds_before_ = term_rounds_;
    recurrence_.evaluate(n, numer_, denom_);
    if (mpfr_mul_z(term_.get(), term_.get(), numer_.get_mpz_t(), MPFR_RNDN) != 0) ++term_rounds_;
    if (mpfr_div_z(term_.get(), term_.get(), denom_.get_mpz_t(), MPFR_RNDN) != 0) ++term_rounds_;
    if (mpfr_mul(term_.get(), term_.get(), x_.get(), MPFR_RNDN) != 0) ++term_rounds_;
  }

  const Real& sum() const { return sum_; }
  const Real& next_term() const { return term_; }

  // Bound on |computed sum - exact partial sum|.
  Real rounding_radius() const {
    Real e_add(kRadiusBits);
    if (inexact_adds_ > 0 && !sum_.is_zero()) {
      mpfr_set_ui_2exp(e_add.get(), 1, mpfr_get_exp(sum_.get()) - bits_ - 1, MPFR_RNDU);
      mpfr_mul_ui(e_add.get(), e_add.get(), inexact_adds_, MPFR_RNDU);
    }
    if (term_rounds_before_ == 0) return e_add;
    Real gamma = gamma_bound(term_rounds_before_, bits_);
    Real bound(kRadiusBits);
    mpfr_add(bound.get(), sum_.get(), e_add.get(), MPFR_RNDU);
    mpfr_mul(bound.get(), bound.get(), gamma.get(), MPFR_RNDU);
    Real one_minus(kRadiusBits);
    mpfr_ui_sub(one_minus.get(), 1, gamma.get(), MPFR_RNDD);
    mpfr_div(bound.get(), bound.get(), one_minus.get(), MPFR_RNDU);
    mpfr_add(bound.get(), bound.get(), e_add.get(), MPFR_RNDU);
    return bound;
  }

  // Upper bound on the exact value of the next (not yet summed) term.
  Real next_term_upper() const {
    Real out(kRadiusBits);
    mpfr_set(out.get(), term_.get(), MPFR_RNDU);
    if (term_rounds_ == 0) return out;
    Real gamma = gamma_bound(term_rounds_, bits_);
    Real one_minus(kRadiusBits);
    mpfr_ui_sub(one_minus.get(), 1, gamma.get(), MPFR_RNDD);
    mpfr_div(out.get(), out.get(), one_minus.get(), MPFR_RNDU);
    return out;
  }

 private:
  TermRecurrence recurrence_;
  const Real& x_;
  unsigned bits_;
  Real term_;
  Real sum_;
  Integer numer_;
  Integer denom_;
  std::size_t inexact_adds_ = 0;
  std::size_t term_rounds_ = 0;
  std::size_t term_rounds_before_ = 0;
};

void check_eval_domain(const HyperParams& params, const Real& x, const Precision& prec) {
  prec.validate();
  if (!x.is_finite()) throw DomainError("x must be finite");
  if (x.sign() < 0) throw DomainError("x must be >= 0 (negative arguments are not supported)");
  if (!params.entire() && !(x < Rational(1))) {
    throw DomainError("x must be < 1 when p = q + 1 (series radius of convergence is 1)");
  }
  for (std::size_t i = 0; i < params.p(); ++i) {
    if (params.a()[i] <= 0) {
      throw DomainError("a_" + std::to_string(i + 1) + " must be > 0 on the evaluation path");
    }
  }
  for (std::size_t j = 0; j < params.q(); ++j) {
    if (params.b()[j] <= 0) {
      throw DomainError("b_" + std::to_string(j + 1) + " must be > 0 on the evaluation path");
    }
  }
}

SeriesValue exact_one(unsigned bits) {
  SeriesValue out = SeriesValue::from_rational(Rational(1), bits);
  out.terms_used = 1;
  return out;
}

}  // namespace

HyperParams::HyperParams(std::vector<Rational> a, std::vector<Rational> b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.empty()) throw DomainError("pFq needs p >= 1");
  if (a_.size() > b_.size() + 1) {
    throw DomainError("pFq needs p <= q + 1 (got p = " + std::to_string(a_.size()) +
                      ", q = " + std::to_string(b_.size()) + ")");
  }
  for (std::size_t j = 0; j < b_.size(); ++j) {
    if (is_nonpositive_integer(b_[j])) {
      throw DomainError("b_" + std::to_string(j + 1) + " = " + to_string(b_[j]) +
                        " is zero or a negative integer");
    }
  }
}

Rational pochhammer(const Rational& z, unsigned long n) {
  Rational out(1);
  for (unsigned long k = 0; k < n; ++k) out *= z + k;
  return out;
}

Rational coeff(const HyperParams& params, unsigned long n) {
  Rational numer(1);
  for (const auto& a : params.a()) numer *= pochhammer(a, n);
  Rational denom(factorial(n));
  for (const auto& b : params.b()) denom *= pochhammer(b, n);
  if (denom == 0) throw DivisionByZero("a (b_j)_n factor vanishes");
  return numer / denom;
}

Rational coeff_ratio(const HyperParams& params, unsigned long n) {
  Rational numer(1);
  for (const auto& a : params.a()) numer *= a + n;
  Rational denom(n + 1);
  for (const auto& b : params.b()) denom *= b + n;
  if (denom == 0) throw DivisionByZero("a (b_j + n) factor vanishes");
  return numer / denom;
}

Rational term_ratio_exact(const HyperParams& params, const Rational& x, unsigned long n) {
  return x * coeff_ratio(params, n);
}

Real term_ratio(const HyperParams& params, const Real& x, unsigned long n) {
  Rational ratio = coeff_ratio(params, n);
  Real out(x.bits());
  mpfr_mul_q(out.get(), x.get(), ratio.get_mpq_t(), MPFR_RNDN);
  return out;
}

std::size_t iteration_cap(const Real& x) {
  Real ceil_x(x.bits());
  mpfr_ceil(ceil_x.get(), x.get());
  double c = std::max(0.0, ceil_x.to_double());
  return static_cast<std::size_t>(10.0 * c) + 10000;
}

SeriesValue eval_pfq(const HyperParams& params, const Real& x, const Precision& prec) {
  check_eval_domain(params, x, prec);
  const unsigned bits = prec.working_bits;
  if (x.is_zero()) return exact_one(bits);

  const std::size_t cap = iteration_cap(x);
  const long double x_est = static_cast<long double>(x.to_double());
  const double threshold =
      params.entire() ? 0.5 : std::max(0.5, static_cast<double>((1.0L + x_est) / 2.0L));
  const long double log2_target = std::log2(prec.target_rel_error);
  MajorantEstimate majorant(params);
  TermSummer summer(params, x, bits);

  for (unsigned long n = 0; n < cap; ++n) {
    summer.step(n);
    const unsigned long m = n + 1;
    const double rho_est = static_cast<double>(x_est) * majorant(m);
    if (rho_est > threshold) continue;
    const long double tail_log2 =
        summer.next_term().log2_abs() - std::log2(1.0L - static_cast<long double>(rho_est));
    if (tail_log2 > log2_target + summer.sum().log2_abs()) continue;

    Real rho(kRadiusBits);
    Rational ratio = ratio_majorant(params, m);
    mpfr_mul_q(rho.get(), x.get(), ratio.get_mpq_t(), MPFR_RNDU);
    if (!(rho < Rational(1))) continue;

    Real tail = summer.next_term_upper();
    Real one_minus(kRadiusBits);
    mpfr_ui_sub(one_minus.get(), 1, rho.get(), MPFR_RNDD);
    mpfr_div(tail.get(), tail.get(), one_minus.get(), MPFR_RNDU);
    Real radius = summer.rounding_radius();
    mpfr_add(radius.get(), radius.get(), tail.get(), MPFR_RNDU);
    return SeriesValue{summer.sum(), std::move(radius), static_cast<std::size_t>(m), std::nullopt};
  }
  throw PrecisionError("pFq tail bound not reached within " + std::to_string(cap) + " terms");
}

SeriesValue eval_1f1(const Rational& a, const Rational& b, const Real& x, const Precision& prec) {
  return eval_pfq(HyperParams({a}, {b}), x, prec);
}

SeriesValue partial_sum(const HyperParams& params, const Real& x, std::size_t count,
                        const Precision& prec) {
  prec.validate();
  const unsigned bits = prec.working_bits;
  if (count == 0) return SeriesValue::from_rational(Rational(0), bits);
  if (x.is_zero()) return exact_one(bits);
  TermSummer summer(params, x, bits);
  for (unsigned long n = 0; n < count; ++n) summer.step(n);
  return SeriesValue{summer.sum(), summer.rounding_radius(), count, std::nullopt};
}

SeriesValue sum_power_series(std::span<const Rational> coeffs, const Real& x,
                             const Precision& prec) {
  prec.validate();
  const unsigned bits = prec.working_bits;
  SeriesValue acc = SeriesValue::from_rational(Rational(0), bits);
  SeriesValue arg{x, Real(kRadiusBits), 0, std::nullopt};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = add(mul(acc, arg, bits), SeriesValue::from_rational(*it, bits), bits);
  }
  acc.terms_used = coeffs.size();
  return acc;
}

}  // namespace hyperratio
