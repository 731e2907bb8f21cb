#include "hyperratio/ratio_kernel.hpp"

#include "hyperratio/errors.hpp"

namespace hyperratio {
namespace {

// coefficient table of pFq(a; b; .) for n = 0..N, exact.
std::vector<Rational> coefficient_table(std::span<const Rational> a, std::span<const Rational> b,
                                        std::size_t max_index) {
  std::vector<Rational> out;
  out.reserve(max_index + 1);
  out.emplace_back(1);
  for (std::size_t n = 0; n < max_index; ++n) {
    Rational numer(1);
    for (const auto& ai : a) numer *= ai + n;
    Rational denom(n + 1);
    for (const auto& bj : b) denom *= bj + n;
    if (denom == 0) throw DivisionByZero("a lower parameter is a nonpositive integer");
    out.push_back(out.back() * numer / denom);
  }
  return out;
}

std::vector<Rational> convolve(const std::vector<Rational>& x, const std::vector<Rational>& y) {
  std::vector<Rational> out(x.size());
  for (std::size_t n = 0; n < x.size(); ++n) {
    Rational acc(0);
    for (std::size_t k = 0; k <= n; ++k) acc += x[k] * y[n - k];
    out[n] = acc;
  }
  return out;
}

// (z)_k for k = 0..N.
std::vector<Rational> pochhammer_table(const Rational& z, std::size_t max_index) {
  std::vector<Rational> out;
  out.reserve(max_index + 1);
  out.emplace_back(1);
  for (std::size_t k = 0; k < max_index; ++k) out.push_back(out.back() * (z + k));
  return out;
}

void require_same_length(std::span<const Rational> b, std::span<const Rational> c) {
  if (b.size() != c.size()) {
    throw LengthMismatch("b has " + std::to_string(b.size()) + " entries but c has " +
                         std::to_string(c.size()));
  }
}

bool steps_against(const Rational& later, const Rational& earlier, Direction d) {
  return d == Direction::nondecreasing ? later < earlier : later > earlier;
}

std::optional<Direction> first_strict_step(std::span<const Rational> seq) {
  for (std::size_t i = 1; i < seq.size(); ++i) {
    if (seq[i] > seq[i - 1]) return Direction::nondecreasing;
    if (seq[i] < seq[i - 1]) return Direction::nonincreasing;
  }
  return std::nullopt;
}

}  // namespace

std::vector<Rational> CoeffSeq::take(std::size_t count) const {
  std::vector<Rational> out;
  out.reserve(count);
  for (std::size_t n = 0; n < count; ++n) out.push_back(generator(n));
  return out;
}

CoeffSeq CoeffSeq::hypergeometric(const HyperParams& params) {
  std::string label = "pFq coefficients (p=" + std::to_string(params.p()) +
                      ", q=" + std::to_string(params.q()) + ")";
  return {[params](std::size_t n) { return coeff(params, n); }, std::move(label)};
}

CoeffSeq CoeffSeq::from_values(std::vector<Rational> values, std::string description) {
  return {[v = std::move(values)](std::size_t n) { return n < v.size() ? v[n] : Rational(0); },
          std::move(description)};
}

std::string to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::prefix_ratio: return "prefix-ratio";
    case CertificateKind::coeff_ratio: return "coeff-ratio";
    case CertificateKind::w_ratio: return "w-ratio";
  }
  return "unknown";
}

std::string to_string(Direction direction) {
  return direction == Direction::nondecreasing ? "nondecreasing" : "nonincreasing";
}

Certificate certify_sequence(std::span<const Rational> seq, CertificateKind kind,
                             std::optional<Direction> direction, std::size_t lo) {
  Certificate cert;
  cert.kind = kind;
  cert.lo = lo;
  cert.hi = seq.empty() ? lo : lo + seq.size() - 1;
  cert.direction = direction.value_or(first_strict_step(seq).value_or(Direction::nondecreasing));
  cert.strict = true;
  for (std::size_t i = 1; i < seq.size(); ++i) {
    if (seq[i] == seq[i - 1]) cert.strict = false;
    if (!cert.first_violation && steps_against(seq[i], seq[i - 1], cert.direction)) {
      cert.first_violation = Violation{lo + i, std::nullopt, seq[i], seq[i - 1]};
    }
  }
  cert.holds = !cert.first_violation;
  if (!cert.holds) cert.strict = false;
  return cert;
}

Certificate prefix_ratio_monotone(const CoeffSeq& a, const CoeffSeq& b, std::size_t max_index) {
  std::vector<Rational> term_ratios;
  std::vector<Rational> prefix_ratios;
  Rational sum_a(0);
  Rational sum_b(0);
  for (std::size_t n = 0; n <= max_index; ++n) {
    Rational an = a(n);
    Rational bn = b(n);
    if (bn <= 0) {
      throw PreconditionError("b(" + std::to_string(n) + ") = " + to_string(bn) +
                              " is not positive");
    }
    term_ratios.push_back(an / bn);
    sum_a += an;
    sum_b += bn;
    prefix_ratios.push_back(sum_a / sum_b);
  }
  auto direction = first_strict_step(term_ratios).value_or(Direction::nondecreasing);
  return certify_sequence(prefix_ratios, CertificateKind::prefix_ratio, direction);
}

std::vector<Rational> cauchy_product_coeffs(const CoeffSeq& c1, const CoeffSeq& c2,
                                            std::size_t max_index) {
  return convolve(c1.take(max_index + 1), c2.take(max_index + 1));
}

Rational theorem1_w(const Rational& b, const Rational& c, unsigned long n, unsigned long k) {
  if (k > n) throw PreconditionError("w_{n,k} needs k <= n");
  Rational denom = pochhammer(b - c, k) * pochhammer(b + c, n - k);
  if (denom == 0) throw DivisionByZero("w_{n,k}: a denominator Pochhammer symbol vanishes");
  return pochhammer(b, k) * pochhammer(b, n - k) / denom;
}

Rational theorem1_w_ratio(const Rational& b, const Rational& c, unsigned long n, unsigned long k) {
  if (k >= n) throw PreconditionError("w ratio needs k < n");
  Rational denom = (b - c + k) * (b + (n - k - 1));
  if (denom == 0) throw DivisionByZero("w ratio: denominator vanishes");
  return (b + k) * (b + c + (n - k - 1)) / denom;
}

Rational theorem2_w(std::span<const Rational> b, std::span<const Rational> c, unsigned long n,
                    unsigned long k) {
  require_same_length(b, c);
  Rational out(1);
  for (std::size_t j = 0; j < b.size(); ++j) out *= theorem1_w(b[j], c[j], n, k);
  return out;
}

Rational theorem2_w_ratio(std::span<const Rational> b, std::span<const Rational> c,
                          unsigned long n, unsigned long k) {
  require_same_length(b, c);
  Rational out(1);
  for (std::size_t j = 0; j < b.size(); ++j) out *= theorem1_w_ratio(b[j], c[j], n, k);
  return out;
}

bool CoeffCertificate::consistent() const {
  bool w_up = w_ratio.holds && w_ratio.direction == Direction::nondecreasing;
  return !w_up || coeff_ratio.holds;
}

ConditionReport certify_conditions(std::span<const Rational> a, std::span<const Rational> b,
                                   std::span<const Rational> c) {
  AbcVecParams vec{{a.begin(), a.end()}, {b.begin(), b.end()}, {c.begin(), c.end()}};
  ConditionReport pfq = check_theorem2_conditions(vec);
  if (a.size() == 1 && b.size() == 1 && c.size() == 1 && !pfq.passed()) {
    ConditionReport kummer = check_theorem1_conditions({a[0], b[0], c[0]});
    if (kummer.passed()) return kummer;
  }
  return pfq;
}

CoeffCertificate certify_coeff_monotone(std::span<const Rational> a, std::span<const Rational> b,
                                        std::span<const Rational> c, std::size_t max_index,
                                        CertifyOptions options) {
  require_same_length(b, c);
  if (a.empty()) throw PreconditionError("a must have at least one entry");
  CoeffCertificate out;
  out.conditions = certify_conditions(a, b, c);
  const bool forced = !out.conditions.passed();
  if (forced && !options.force) {
    throw PreconditionError("parameter hypotheses fail: " + out.conditions.failures());
  }

  std::vector<Rational> minus;
  std::vector<Rational> plus;
  for (std::size_t j = 0; j < b.size(); ++j) {
    minus.push_back(b[j] - c[j]);
    plus.push_back(b[j] + c[j]);
  }
  const auto numer = convolve(coefficient_table(a, minus, max_index),
                              coefficient_table(a, plus, max_index));
  const auto base = coefficient_table(a, b, max_index);
  const auto denom = convolve(base, base);

  out.c_values.reserve(max_index + 1);
  for (std::size_t n = 0; n <= max_index; ++n) {
    if (denom[n] == 0) throw DivisionByZero("B_" + std::to_string(n) + " vanishes");
    out.c_values.push_back(numer[n] / denom[n]);
  }
  out.coeff_ratio = certify_sequence(out.c_values, CertificateKind::coeff_ratio,
                                     Direction::nondecreasing);
  out.coeff_ratio.forced = forced;

  // w_{n,k} from Pochhammer tables, row by row.
  std::vector<std::vector<Rational>> poch_b, poch_minus, poch_plus;
  for (std::size_t j = 0; j < b.size(); ++j) {
    poch_b.push_back(pochhammer_table(b[j], max_index));
    poch_minus.push_back(pochhammer_table(minus[j], max_index));
    poch_plus.push_back(pochhammer_table(plus[j], max_index));
  }
  Certificate& w = out.w_ratio;
  w.kind = CertificateKind::w_ratio;
  w.lo = 0;
  w.hi = max_index;
  w.forced = forced;
  w.strict = true;
  std::optional<Direction> direction;
  std::vector<Rational> row;
  for (std::size_t n = 0; n <= max_index && !w.first_violation; ++n) {
    row.assign(n + 1, Rational(1));
    for (std::size_t k = 0; k <= n; ++k) {
      for (std::size_t j = 0; j < b.size(); ++j) {
        Rational d = poch_minus[j][k] * poch_plus[j][n - k];
        if (d == 0) throw DivisionByZero("w_{n,k}: a denominator Pochhammer symbol vanishes");
        row[k] *= poch_b[j][k] * poch_b[j][n - k] / d;
      }
    }
    if (!direction) direction = first_strict_step(row);
    const Direction d = direction.value_or(Direction::nondecreasing);
    for (std::size_t k = 1; k <= n; ++k) {
      if (row[k] == row[k - 1]) w.strict = false;
      if (steps_against(row[k], row[k - 1], d)) {
        w.first_violation = Violation{n, k, row[k], row[k - 1]};
        break;
      }
    }
  }
  w.direction = direction.value_or(Direction::nondecreasing);
  w.holds = !w.first_violation;
  if (!w.holds) w.strict = false;
  return out;
}

}  // namespace hyperratio
