#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "hyperratio/rational.hpp"
#include "hyperratio/real.hpp"

namespace hyperratio::cli {

enum class Format { plain, json, csv };

Format parse_format(std::string_view text);

struct RunConfig {
  unsigned precision_bits = 128;
  std::string rel_error = "1e-30";
  std::string format;  // empty: the command's own default

  Precision precision() const;
  Format format_or(Format fallback) const;
};

// "7" or "1..500".
struct IndexRange {
  unsigned long first = 1;
  unsigned long last = 1;

  static IndexRange parse(std::string_view text);
};

Real real_at(const Rational& x, unsigned bits);

// Fixed or scientific, whichever is shorter, with `digits` significant digits.
std::string plain_number(const Real& value, int digits = 20);

}  // namespace hyperratio::cli
