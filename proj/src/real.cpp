#include "hyperratio/real.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <utility>

#include "hyperratio/errors.hpp"

namespace hyperratio {

Real::Real(mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_zero(value_, 1);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.bits());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, other.bits());
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.bits());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

Real Real::from_rational(const Rational& q, mpfr_prec_t bits, mpfr_rnd_t rnd) {
  Real out(bits);
  mpfr_set_q(out.value_, q.get_mpq_t(), rnd);
  return out;
}

Real Real::from_long(long v, mpfr_prec_t bits) {
  Real out(bits);
  mpfr_set_si(out.value_, v, MPFR_RNDN);
  return out;
}

Real Real::from_string(const std::string& text, mpfr_prec_t bits) {
  return from_rational(parse_rational(text), bits);
}

Real Real::with_bits(mpfr_prec_t bits, mpfr_rnd_t rnd) const {
  Real out(bits);
  mpfr_set(out.value_, value_, rnd);
  return out;
}

long double Real::log2_abs() const {
  if (is_zero()) return -std::numeric_limits<long double>::infinity();
  long exp = 0;
  double mantissa = mpfr_get_d_2exp(&exp, value_, MPFR_RNDN);
  return std::log2(std::fabs(static_cast<long double>(mantissa))) + static_cast<long double>(exp);
}

Rational Real::to_rational() const {
  if (!is_finite()) throw DomainError("non-finite value has no rational form");
  Rational q;
  mpfr_get_q(q.get_mpq_t(), value_);
  return q;
}

std::string Real::to_decimal(std::size_t digits, mpfr_rnd_t rnd) const {
  if (is_nan()) return "nan";
  if (mpfr_inf_p(value_)) return sign() < 0 ? "-inf" : "inf";
  if (is_zero()) return "0";
  if (digits == 0) digits = mpfr_get_str_ndigits(10, bits());
  mpfr_exp_t exp = 0;
  char* raw = mpfr_get_str(nullptr, &exp, 10, digits, value_, rnd);
  std::string mant(raw);
  mpfr_free_str(raw);
  std::string sign_text;
  if (!mant.empty() && mant.front() == '-') {
    sign_text = "-";
    mant.erase(0, 1);
  }
  while (mant.size() > 1 && mant.back() == '0') mant.pop_back();
  std::string out = sign_text + mant.substr(0, 1);
  if (mant.size() > 1) out += "." + mant.substr(1);
  long e10 = static_cast<long>(exp) - 1;
  if (e10 != 0) out += "e" + std::to_string(e10);
  return out;
}

std::partial_ordering operator<=>(const Real& x, const Real& y) {
  if (x.is_nan() || y.is_nan()) return std::partial_ordering::unordered;
  int c = mpfr_cmp(x.value_, y.value_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const Real& x, const Rational& q) {
  if (x.is_nan()) return std::partial_ordering::unordered;
  int c = mpfr_cmp_q(x.value_, q.get_mpq_t());
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

void Precision::validate() const {
  if (working_bits < 53) throw DomainError("working precision must be at least 53 bits");
  if (working_bits > 1u << 20) throw DomainError("working precision is unreasonably large");
  if (!(target_rel_error > 0 && target_rel_error < 1)) {
    throw DomainError("target relative error must lie in (0, 1)");
  }
}

Precision Precision::escalated() const {
  Precision next = *this;
  next.working_bits = working_bits * 2;
  long double floor = std::ldexp(1.0L, -static_cast<int>(next.working_bits));
  if (floor < next.target_rel_error) next.target_rel_error = floor;
  return next;
}

}  // namespace hyperratio
