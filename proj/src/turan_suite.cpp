#include "hyperratio/turan_suite.hpp"

#include <algorithm>

#include "hyperratio/errors.hpp"
#include "hyperratio/exp_sections.hpp"
#include "hyperratio/hyper_series.hpp"

namespace hyperratio {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool all_zero(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r == 0; });
}

std::string join(const std::vector<Rational>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += to_string(v[i]);
  }
  return out + "]";
}

SeriesValue exact_one(unsigned bits) { return SeriesValue::from_rational(Rational(1), bits); }

Real margin_lower(const SeriesValue& v, const Rational& floor) {
  Real out(v.bits());
  if (v.exact) {
    mpfr_set_q(out.get(), Rational(*v.exact - floor).get_mpq_t(), MPFR_RNDD);
  } else {
    mpfr_sub_q(out.get(), v.lower().get(), floor.get_mpq_t(), MPFR_RNDD);
  }
  return out;
}

Real margin_below(const SeriesValue& v, const Rational& ceiling) {
  Real out(v.bits());
  if (v.exact) {
    mpfr_set_q(out.get(), Rational(ceiling - *v.exact).get_mpq_t(), MPFR_RNDD);
  } else {
    // ceiling - upper, rounded down: -(upper - ceiling) rounded up.
    mpfr_sub_q(out.get(), v.upper().get(), ceiling.get_mpq_t(), MPFR_RNDU);
    mpfr_neg(out.get(), out.get(), MPFR_RNDN);
  }
  return out;
}

// upper(later) - lower(earlier); negative iff a decrease is certified.
Real step_margin(const SeriesValue& earlier, const SeriesValue& later) {
  unsigned bits = std::max(earlier.bits(), later.bits());
  Real out(bits);
  if (earlier.exact && later.exact) {
    mpfr_set_q(out.get(), Rational(*later.exact - *earlier.exact).get_mpq_t(), MPFR_RNDD);
  } else {
    mpfr_sub(out.get(), later.upper().get(), earlier.lower().get(), MPFR_RNDD);
  }
  return out;
}

Verdict worst_of(Verdict x, Verdict y) {
  if (x == Verdict::violated || y == Verdict::violated) return Verdict::violated;
  if (x == Verdict::inconclusive || y == Verdict::inconclusive) return Verdict::inconclusive;
  return Verdict::holds;
}

// Per-point evaluation state with on-demand precision escalation.
class PointCache {
 public:
  PointCache(const RatioTarget& target, const std::vector<Real>& grid, const Precision& prec,
             unsigned max_escalations)
      : target_(target), grid_(grid), max_escalations_(max_escalations) {
    precisions_.assign(grid.size(), prec);
    levels_.assign(grid.size(), 0);
    values_.reserve(grid.size());
    for (const auto& x : grid) values_.push_back(target.evaluate(x, prec));
  }

  const SeriesValue& value(std::size_t i) const { return values_[i]; }

  bool escalate(std::size_t i) {
    if (levels_[i] >= max_escalations_) return false;
    const Precision next = precisions_[i].escalated();
    try {
      values_[i] = target_.evaluate(grid_[i], next);
    } catch (const PrecisionError&) {
      // The tighter target is out of reach of the iteration cap.
      levels_[i] = max_escalations_;
      return false;
    }
    ++levels_[i];
    ++escalations_;
    precisions_[i] = next;
    return true;
  }

  std::vector<SeriesValue> take_values() { return std::move(values_); }
  std::vector<unsigned> bits() const {
    std::vector<unsigned> out;
    for (const auto& p : precisions_) out.push_back(p.working_bits);
    return out;
  }
  std::size_t escalations() const { return escalations_; }

 private:
  const RatioTarget& target_;
  const std::vector<Real>& grid_;
  unsigned max_escalations_;
  std::vector<Precision> precisions_;
  std::vector<unsigned> levels_;
  std::vector<SeriesValue> values_;
  std::size_t escalations_ = 0;
};

Verdict resolve_pair(PointCache& cache, std::size_t i, bool escalate) {
  while (true) {
    Separation s = compare(cache.value(i), cache.value(i + 1));
    if (s == Separation::below || s == Separation::equal) return Verdict::holds;
    if (s == Separation::above) return Verdict::violated;
    if (!escalate) return Verdict::inconclusive;
    bool left = cache.escalate(i);
    bool right = cache.escalate(i + 1);
    if (!left && !right) return Verdict::inconclusive;
  }
}

Verdict resolve_floor(PointCache& cache, std::size_t i, const Rational& floor, bool escalate) {
  while (true) {
    const SeriesValue& v = cache.value(i);
    if (v.certainly_at_least(floor)) return Verdict::holds;
    if (v.certainly_below(floor)) return Verdict::violated;
    if (!escalate || !cache.escalate(i)) return Verdict::inconclusive;
  }
}

Verdict resolve_ceiling(PointCache& cache, std::size_t i, const Rational& ceiling, bool escalate) {
  while (true) {
    const SeriesValue& v = cache.value(i);
    if (v.certainly_below(ceiling)) return Verdict::holds;
    if (v.certainly_at_least(ceiling)) return Verdict::violated;
    if (!escalate || !cache.escalate(i)) return Verdict::inconclusive;
  }
}

}  // namespace

SeriesValue h_pfq(const AbcVecParams& params, const Real& x, const Precision& prec) {
  if (params.b.size() != params.c.size()) {
    throw LengthMismatch("b and c must have the same length");
  }
  if (!x.is_finite() || x.sign() < 0) throw DomainError("x must be finite and >= 0");
  std::vector<Rational> minus;
  std::vector<Rational> plus;
  for (std::size_t j = 0; j < params.q(); ++j) {
    minus.push_back(params.b[j] - params.c[j]);
    plus.push_back(params.b[j] + params.c[j]);
    if (minus.back() <= 0) {
      throw DomainError("b_" + std::to_string(j + 1) + " - c_" + std::to_string(j + 1) +
                        " must be > 0");
    }
  }
  HyperParams base(params.a, params.b);
  HyperParams lower(params.a, std::move(minus));
  HyperParams upper(params.a, std::move(plus));
  const unsigned bits = prec.working_bits;
  if (x.is_zero() || all_zero(params.c)) {
    // Validate all three parameter sets so bad inputs fail the same way.
    for (const HyperParams* hp : {&base, &lower, &upper}) eval_pfq(*hp, Real(bits), prec);
    if (!base.entire() && !(x < Rational(1))) {
      throw DomainError("x must be < 1 when p = q + 1 (series radius of convergence is 1)");
    }
    return exact_one(bits);
  }
  SeriesValue num = mul(eval_pfq(lower, x, prec), eval_pfq(upper, x, prec), bits);
  SeriesValue den = eval_pfq(base, x, prec);
  return div(num, mul(den, den, bits), bits);
}

SeriesValue h_kummer(const AbcParams& params, const Real& x, const Precision& prec) {
  return h_pfq(AbcVecParams::from_scalar(params), x, prec);
}

RatioTarget RatioTarget::exp_ratio_f(unsigned long n) {
  if (n < 1) throw DomainError("f_n needs n >= 1");
  return RatioTarget(ExpF{n});
}

RatioTarget RatioTarget::exp_ratio_g(unsigned long n) {
  if (n < 1) throw DomainError("g_n needs n >= 1");
  return RatioTarget(ExpG{n});
}

RatioTarget RatioTarget::kummer(AbcParams params) { return RatioTarget(std::move(params)); }

RatioTarget RatioTarget::pfq(AbcVecParams params) {
  if (params.b.size() != params.c.size()) {
    throw LengthMismatch("b and c must have the same length");
  }
  if (params.a.empty() || params.a.size() > params.b.size() + 1) {
    throw DomainError("h_pq needs 1 <= p <= q + 1");
  }
  return RatioTarget(std::move(params));
}

SeriesValue RatioTarget::evaluate(const Real& x, const Precision& prec) const {
  return std::visit(overloaded{
                        [&](const ExpF& s) { return ratio_f(s.n, x, prec); },
                        [&](const ExpG& s) { return ratio_g(s.n, x, prec); },
                        [&](const AbcParams& s) { return h_kummer(s, x, prec); },
                        [&](const AbcVecParams& s) { return h_pfq(s, x, prec); },
                    },
                    spec_);
}

Rational RatioTarget::baseline() const {
  if (auto* f = std::get_if<ExpF>(&spec_)) return Rational(f->n + 1, f->n + 2);
  return Rational(1);
}

std::optional<Rational> RatioTarget::supremum() const {
  if (std::holds_alternative<ExpF>(spec_)) return Rational(1);
  if (auto* g = std::get_if<ExpG>(&spec_)) return Rational(g->n + 2, g->n + 1);
  return std::nullopt;
}

bool RatioTarget::unit_interval_domain() const {
  auto* v = std::get_if<AbcVecParams>(&spec_);
  return v && v->p() == v->q() + 1;
}

Rational RatioTarget::default_x_max() const {
  return unit_interval_domain() ? Rational(99, 100) : Rational(100);
}

bool RatioTarget::beyond_theorem_domain(const Rational& x_max) const {
  return std::holds_alternative<AbcVecParams>(spec_) && x_max >= 1;
}

ConditionReport RatioTarget::conditions() const {
  return std::visit(overloaded{
                        [](const ExpF& s) {
                          return check_theorem1_conditions({1, Rational(s.n + 2), 1});
                        },
                        [](const ExpG& s) {
                          return check_theorem1_conditions({1, Rational(s.n + 2), 1});
                        },
                        [](const AbcParams& s) { return check_theorem1_conditions(s); },
                        [](const AbcVecParams& s) { return check_theorem2_conditions(s); },
                    },
                    spec_);
}

std::string RatioTarget::describe() const {
  return std::visit(overloaded{
                        [](const ExpF& s) { return "f_" + std::to_string(s.n); },
                        [](const ExpG& s) { return "g_" + std::to_string(s.n); },
                        [](const AbcParams& s) {
                          return "h(a=" + to_string(s.a) + ", b=" + to_string(s.b) +
                                 ", c=" + to_string(s.c) + ")";
                        },
                        [](const AbcVecParams& s) {
                          return "h_" + std::to_string(s.p()) + std::to_string(s.q()) +
                                 "(a=" + join(s.a) + ", b=" + join(s.b) + ", c=" + join(s.c) +
                                 ")";
                        },
                    },
                    spec_);
}

GridSpec GridSpec::parse(std::string_view text) {
  GridSpec spec;
  spec.spacing = Spacing::linear;
  std::string_view body = text;
  if (auto at = text.find('@'); at != std::string_view::npos) {
    std::string_view suffix = text.substr(at + 1);
    if (suffix == "log") {
      spec.spacing = Spacing::log;
    } else if (suffix != "linear") {
      throw ParseError("unknown grid spacing '" + std::string(suffix) + "'");
    }
    body = text.substr(0, at);
  }
  auto first = body.find(':');
  auto second = first == std::string_view::npos ? first : body.find(':', first + 1);
  if (second == std::string_view::npos) {
    throw ParseError("grid must look like min:max:points[@log], got '" + std::string(text) + "'");
  }
  spec.min = parse_rational(body.substr(0, first));
  spec.max = parse_rational(body.substr(first + 1, second - first - 1));
  Rational points = parse_rational(body.substr(second + 1));
  if (points.get_den() != 1 || points < 2 || points > 1000000) {
    throw ParseError("grid point count must be an integer in [2, 1000000]");
  }
  spec.points = points.get_num().get_ui();
  spec.validate();
  return spec;
}

void GridSpec::validate() const {
  if (!(min < max)) throw DomainError("grid needs min < max");
  if (points < 2) throw DomainError("grid needs at least 2 points");
  if (min < 0) throw DomainError("grid must lie in x >= 0");
}

std::vector<Real> GridSpec::build(unsigned bits) const {
  validate();
  std::vector<Real> out;
  out.reserve(points);
  const std::size_t last = points - 1;
  for (std::size_t i = 0; i <= last; ++i) {
    if (i == 0 || i == last) {
      out.push_back(Real::from_rational(i == 0 ? min : max, bits));
      continue;
    }
    if (spacing == Spacing::linear) {
      out.push_back(Real::from_rational(min + (max - min) * Rational(i, last), bits));
      continue;
    }
    Real base = Real::from_rational(Rational(1) + max - min, bits);
    Real exponent = Real::from_rational(Rational(i, last), bits);
    Real x(bits);
    mpfr_pow(x.get(), base.get(), exponent.get(), MPFR_RNDN);
    mpfr_sub_ui(x.get(), x.get(), 1, MPFR_RNDN);
    mpfr_add_q(x.get(), x.get(), min.get_mpq_t(), MPFR_RNDN);
    out.push_back(std::move(x));
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (!(out[i - 1] < out[i])) throw DomainError("grid is not strictly increasing at this precision");
  }
  return out;
}

GridSpec default_grid(const RatioTarget& target) {
  GridSpec spec;
  spec.min = 0;
  spec.max = target.default_x_max();
  spec.points = 129;
  spec.spacing = Spacing::log;
  return spec;
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

bool MonotoneReport::passed() const {
  return monotone == Verdict::holds && turan == Verdict::holds &&
         below_ceiling == Verdict::holds;
}

MonotoneReport analyze_grid(const RatioTarget& target, const std::vector<Real>& grid,
                            const Precision& prec, const GridCheckOptions& options) {
  prec.validate();
  if (grid.empty()) throw DomainError("grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i - 1] < grid[i])) throw DomainError("grid must be strictly increasing");
  }

  PointCache cache(target, grid, prec, options.max_escalations);
  MonotoneReport report;
  report.target = target.describe();
  report.grid = grid;
  report.turan_floor = target.baseline();
  report.ceiling = target.supremum();
  report.beyond_theorem_domain = target.beyond_theorem_domain(grid.back().to_rational());

  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    report.monotone = worst_of(report.monotone, resolve_pair(cache, i, options.resolve_monotone));
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    report.turan = worst_of(report.turan,
                            resolve_floor(cache, i, report.turan_floor, options.resolve_turan));
    if (report.ceiling) {
      report.below_ceiling = worst_of(
          report.below_ceiling, resolve_ceiling(cache, i, *report.ceiling, options.resolve_ceiling));
    }
  }
  // Escalating a point for the floor or ceiling can only tighten its
  // enclosure, so pair verdicts are recomputed once from the final values.
  report.monotone = Verdict::holds;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    report.monotone = worst_of(report.monotone, resolve_pair(cache, i, false));
  }
  report.nondecreasing = report.monotone != Verdict::violated;

  report.turan_min = margin_lower(cache.value(0), report.turan_floor);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    Real m = margin_lower(cache.value(i), report.turan_floor);
    if (m < report.turan_min) report.turan_min = std::move(m);
  }
  if (report.ceiling) {
    report.ceiling_margin = margin_below(cache.value(0), *report.ceiling);
    for (std::size_t i = 1; i < grid.size(); ++i) {
      Real m = margin_below(cache.value(i), *report.ceiling);
      if (m < report.ceiling_margin) report.ceiling_margin = std::move(m);
    }
  }
  if (grid.size() > 1) {
    report.worst_margin = step_margin(cache.value(0), cache.value(1));
    report.worst_location = {0, 1};
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
      Real m = step_margin(cache.value(i), cache.value(i + 1));
      if (m < report.worst_margin) {
        report.worst_margin = std::move(m);
        report.worst_location = {i, i + 1};
      }
    }
  }
  report.bits_used = cache.bits();
  report.escalations = cache.escalations();
  report.values = cache.take_values();
  return report;
}

MonotoneReport grid_monotone_check(const RatioTarget& target, const std::vector<Real>& grid,
                                   const Precision& prec) {
  return analyze_grid(target, grid, prec, {4, true, false, true});
}

MonotoneReport turan_check(const RatioTarget& target, const std::vector<Real>& grid,
                           const Precision& prec) {
  return analyze_grid(target, grid, prec, {4, false, true, false});
}

}  // namespace hyperratio
