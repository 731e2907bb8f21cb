#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "hyperratio/conditions.hpp"
#include "hyperratio/rational.hpp"
#include "hyperratio/real.hpp"
#include "hyperratio/series_value.hpp"

namespace hyperratio {

// h(a, b, c, x). Exactly 1 at x = 0 and for c = 0.
SeriesValue h_kummer(const AbcParams& params, const Real& x, const Precision& prec);

// h_{p,q}(a, b, c, x). Exactly 1 at x = 0 and for c = 0. Throws
// LengthMismatch, DomainError (x >= 1 with p = q + 1), PrecisionError.
SeriesValue h_pfq(const AbcVecParams& params, const Real& x, const Precision& prec);

// One of the ratio functions under study.
class RatioTarget {
 public:
  static RatioTarget exp_ratio_f(unsigned long n);
  static RatioTarget exp_ratio_g(unsigned long n);
  static RatioTarget kummer(AbcParams params);
  static RatioTarget pfq(AbcVecParams params);

  SeriesValue evaluate(const Real& x, const Precision& prec) const;

  // Value at x = 0, the floor of the Turán-type inequality: (n+1)/(n+2) for
  // f_n, 1 otherwise.
  Rational baseline() const;
  // Limit at infinity where it is a known strict upper bound: 1 for f_n,
  // (n+2)/(n+1) for g_n.
  std::optional<Rational> supremum() const;
  // Domain is [0, 1) (p = q + 1).
  bool unit_interval_domain() const;
  // Default right end of the verification grid: 100 or 0.99.
  Rational default_x_max() const;
  // The stated monotonicity theorem only covers [0, 1) for h_{p,q}; entire
  // cases may still be sampled past it.
  bool beyond_theorem_domain(const Rational& x_max) const;
  ConditionReport conditions() const;
  std::string describe() const;

 private:
  struct ExpF { unsigned long n; };
  struct ExpG { unsigned long n; };
  using Spec = std::variant<ExpF, ExpG, AbcParams, AbcVecParams>;
  explicit RatioTarget(Spec spec) : spec_(std::move(spec)) {}
  Spec spec_;
};

enum class Spacing { linear, log };

// min:max:points with optional "@log" suffix.
struct GridSpec {
  Rational min;
  Rational max;
  std::size_t points = 129;
  Spacing spacing = Spacing::log;

  // Throws ParseError.
  static GridSpec parse(std::string_view text);
  void validate() const;
  // Linear points are exact rationals rounded at `bits`; log points follow
  // x_i = min + (1 + max - min)^(i / (points - 1)) - 1 with exact endpoints.
  std::vector<Real> build(unsigned bits) const;
};

GridSpec default_grid(const RatioTarget& target);

enum class Verdict { holds, violated, inconclusive };
std::string to_string(Verdict verdict);

struct MonotoneReport {
  std::string target;
  std::vector<Real> grid;
  std::vector<SeriesValue> values;
  std::vector<unsigned> bits_used;

  // Certified decrease => violated; unresolved overlap after escalation =>
  // inconclusive. nondecreasing is false only on a certified decrease.
  Verdict monotone = Verdict::holds;
  bool nondecreasing = true;
  // min over consecutive pairs of upper(v[i+1]) - lower(v[i]).
  Real worst_margin;
  std::pair<std::size_t, std::size_t> worst_location{0, 0};

  // value - error_radius >= floor at every point.
  Rational turan_floor;
  Verdict turan = Verdict::holds;
  Real turan_min;

  // value + error_radius < ceiling at every point, when a ceiling is known.
  std::optional<Rational> ceiling;
  Verdict below_ceiling = Verdict::holds;
  Real ceiling_margin;

  bool beyond_theorem_domain = false;
  std::size_t escalations = 0;

  bool passed() const;
};

struct GridCheckOptions {
  unsigned max_escalations = 4;
  bool resolve_monotone = true;
  bool resolve_turan = true;
  bool resolve_ceiling = true;
};

// Evaluates the target on the grid and classifies monotonicity, the Turán
// floor and the ceiling. Inconclusive enclosures are re-evaluated at doubled
// precision (up to max_escalations times per point).
MonotoneReport analyze_grid(const RatioTarget& target, const std::vector<Real>& grid,
                            const Precision& prec, const GridCheckOptions& options = {});

MonotoneReport grid_monotone_check(const RatioTarget& target, const std::vector<Real>& grid,
                                   const Precision& prec);
MonotoneReport turan_check(const RatioTarget& target, const std::vector<Real>& grid,
                           const Precision& prec);

}  // namespace hyperratio
