#include "options.hpp"

#include <mpfr.h>

#include <charconv>

#include "hyperratio/errors.hpp"

namespace hyperratio::cli {

Format parse_format(std::string_view text) {
  if (text == "plain") return Format::plain;
  if (text == "json") return Format::json;
  if (text == "csv") return Format::csv;
  throw ParseError("unknown format '" + std::string(text) + "' (plain, json, csv)");
}

Precision RunConfig::precision() const {
  const Rational target = parse_rational(rel_error);
  Real as_real = Real::from_rational(target, 64);
  Precision prec{precision_bits, mpfr_get_ld(as_real.get(), MPFR_RNDN)};
  prec.validate();
  return prec;
}

Format RunConfig::format_or(Format fallback) const {
  return format.empty() ? fallback : parse_format(format);
}

namespace {

unsigned long parse_index(std::string_view text) {
  unsigned long value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || text.empty())
    throw ParseError("not a nonnegative integer: '" + std::string(text) + "'");
  return value;
}

}  // namespace

IndexRange IndexRange::parse(std::string_view text) {
  IndexRange out;
  auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    out.first = out.last = parse_index(text);
  } else {
    out.first = parse_index(text.substr(0, dots));
    out.last = parse_index(text.substr(dots + 2));
  }
  if (out.first > out.last) throw ParseError("empty index range '" + std::string(text) + "'");
  return out;
}

Real real_at(const Rational& x, unsigned bits) { return Real::from_rational(x, bits); }

std::string plain_number(const Real& value, int digits) {
  char* raw = nullptr;
  if (mpfr_asprintf(&raw, "%.*Rg", digits, value.get()) < 0) return value.to_decimal();
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

}  // namespace hyperratio::cli
