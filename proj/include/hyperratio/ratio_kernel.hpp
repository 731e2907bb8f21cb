#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperratio/conditions.hpp"
#include "hyperratio/hyper_series.hpp"
#include "hyperratio/rational.hpp"

namespace hyperratio {

// Total, deterministic index -> Rational map with a label.
struct CoeffSeq {
  std::function<Rational(std::size_t)> generator;
  std::string description;

  Rational operator()(std::size_t n) const { return generator(n); }
  std::vector<Rational> take(std::size_t count) const;

  static CoeffSeq hypergeometric(const HyperParams& params);
  // Values past the end of the list are zero.
  static CoeffSeq from_values(std::vector<Rational> values, std::string description);
};

enum class CertificateKind { prefix_ratio, coeff_ratio, w_ratio };
enum class Direction { nondecreasing, nonincreasing };

std::string to_string(CertificateKind kind);
std::string to_string(Direction direction);

struct Violation {
  std::size_t index = 0;
  // Position inside row `index` for two-level sequences (w_{n,k}: k).
  std::optional<std::size_t> inner_index;
  Rational lhs;  // the later element
  Rational rhs;  // the element it should not fall below (or exceed)
};

// Exact, replayable record that a finite sequence is monotone, or its first
// counterexample.
struct Certificate {
  CertificateKind kind = CertificateKind::prefix_ratio;
  std::size_t lo = 0;
  std::size_t hi = 0;
  Direction direction = Direction::nondecreasing;
  bool holds = false;
  bool strict = false;
  std::optional<Violation> first_violation;
  bool forced = false;
};

// Monotonicity of seq[0..] as indices lo, lo+1, ... With no direction given,
// the direction of the first strict step is used (nondecreasing if none).
Certificate certify_sequence(std::span<const Rational> seq, CertificateKind kind,
                             std::optional<Direction> direction = std::nullopt,
                             std::size_t lo = 0);

// Prefix-sum ratios (a_0 + ... + a_n) / (b_0 + ... + b_n) on [0, N], checked
// in the direction of a_n / b_n. Throws PreconditionError if some b_n <= 0.
Certificate prefix_ratio_monotone(const CoeffSeq& a, const CoeffSeq& b, std::size_t max_index);

// sum_{k <= n} c1(k) c2(n - k) for n = 0..N.
std::vector<Rational> cauchy_product_coeffs(const CoeffSeq& c1, const CoeffSeq& c2,
                                            std::size_t max_index);

// w_{n,k} = (b)_k (b)_{n-k} / ((b-c)_k (b+c)_{n-k}).
Rational theorem1_w(const Rational& b, const Rational& c, unsigned long n, unsigned long k);
// w_{n,k+1} / w_{n,k} = (b+k)(b+c+n-k-1) / ((b-c+k)(b+n-k-1)).
Rational theorem1_w_ratio(const Rational& b, const Rational& c, unsigned long n, unsigned long k);

// Vector forms: products over j of the scalar factors.
Rational theorem2_w(std::span<const Rational> b, std::span<const Rational> c, unsigned long n,
                    unsigned long k);
Rational theorem2_w_ratio(std::span<const Rational> b, std::span<const Rational> c,
                          unsigned long n, unsigned long k);

struct CertifyOptions {
  // Run even if the parameter hypotheses fail; recorded in the certificates.
  bool force = false;
};

struct CoeffCertificate {
  ConditionReport conditions;
  // C_n = A_n / B_n nondecreasing on [0, N].
  Certificate coeff_ratio;
  // w_{n,k} monotone in k for every n <= N (direction as found).
  Certificate w_ratio;
  std::vector<Rational> c_values;

  // Lemma-1 style implication: nondecreasing w rows imply nondecreasing C.
  bool consistent() const;
};

// A_n: Cauchy product of pFq(a; b-c; .) and pFq(a; b+c; .) coefficients;
// B_n: Cauchy square of pFq(a; b; .). Hypotheses: p = q = 1 accepts either
// the Kummer or the pFq theorem's conditions, otherwise the pFq ones.
// Throws PreconditionError (unless forced), LengthMismatch, DivisionByZero.
CoeffCertificate certify_coeff_monotone(std::span<const Rational> a, std::span<const Rational> b,
                                        std::span<const Rational> c, std::size_t max_index,
                                        CertifyOptions options = {});

// Parameter hypotheses used by certify_coeff_monotone.
ConditionReport certify_conditions(std::span<const Rational> a, std::span<const Rational> b,
                                   std::span<const Rational> c);

inline constexpr std::size_t kDefaultCertificateDepth = 64;

}  // namespace hyperratio
