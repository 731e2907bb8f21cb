#include "hyperratio/rational.hpp"

#include <cctype>

#include "hyperratio/errors.hpp"

namespace hyperratio {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw ParseError("not a rational number: '" + std::string(whole) + "'");
  }
  Integer value(std::string(s), 10);
  return negative ? Integer(-value) : value;
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    Integer exp_value = parse_integer(s.substr(e + 1), whole);
    if (!exp_value.fits_slong_p() || abs(exp_value) > 100000) {
      throw ParseError("exponent out of range in '" + std::string(whole) + "'");
    }
    exponent = exp_value.get_si();
    s = s.substr(0, e);
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if ((int_part.empty() && frac_part.empty()) ||
        (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part))) {
      throw ParseError("not a rational number: '" + std::string(whole) + "'");
    }
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(s)) {
      throw ParseError("not a rational number: '" + std::string(whole) + "'");
    }
    digits = std::string(s);
  }
  if (digits.empty()) digits = "0";
  Integer mantissa(digits, 10);
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational result = exponent < 0 ? Rational(mantissa, scale) : Rational(mantissa * scale);
  result.canonicalize();
  return negative ? Rational(-result) : result;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw ParseError("empty rational");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(trim(s.substr(0, slash)), text);
    Integer den = parse_integer(trim(s.substr(slash + 1)), text);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational result(num, den);
    result.canonicalize();
    return result;
  }
  return parse_decimal(s, text);
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  if (trim(text).empty()) return out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    out.push_back(parse_rational(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string to_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

bool is_nonpositive_integer(const Rational& value) {
  return value.get_den() == 1 && value <= 0;
}

Integer factorial(unsigned long n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

}  // namespace hyperratio
