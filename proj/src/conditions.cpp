#include "hyperratio/conditions.hpp"

namespace hyperratio {
namespace {

std::string idx(const char* base, std::size_t i) { return std::string(base) + "_" + std::to_string(i); }

Clause make_clause(std::string name, bool passed, std::string detail) {
  return Clause{std::move(name), passed, std::move(detail)};
}

}  // namespace

bool ConditionReport::passed() const {
  for (const auto& clause : clauses) {
    if (!clause.passed) return false;
  }
  return true;
}

std::string ConditionReport::failures() const {
  std::string out;
  for (const auto& clause : clauses) {
    if (clause.passed) continue;
    if (!out.empty()) out += "; ";
    out += clause.name + " (" + clause.detail + ")";
  }
  return out;
}

ConditionReport check_theorem1_conditions(const AbcParams& params) {
  const auto& [a, b, c] = params;
  const Rational gap = b - c;
  ConditionReport report{"kummer-monotonicity", {}};
  report.clauses.push_back(make_clause("0 < a", a > 0, "0 < " + to_string(a)));
  report.clauses.push_back(
      make_clause("a < b - c", a < gap, to_string(a) + " < " + to_string(gap)));
  report.clauses.push_back(make_clause("b > 1", b > 1, to_string(b) + " > 1"));
  return report;
}

ConditionReport check_theorem2_conditions(const AbcVecParams& params) {
  const std::size_t p = params.p();
  const std::size_t q = params.q();
  ConditionReport report{"pfq-monotonicity", {}};
  report.clauses.push_back(make_clause("p >= 1", p >= 1, "p = " + std::to_string(p)));
  report.clauses.push_back(make_clause(
      "p <= q + 1", p <= q + 1, std::to_string(p) + " <= " + std::to_string(q + 1)));
  if (params.c.size() != q) {
    report.clauses.push_back(make_clause(
        "len(c) = q", false,
        std::to_string(params.c.size()) + " = " + std::to_string(q)));
    return report;
  }
  for (std::size_t i = 0; i < q; ++i) {
    const auto& b = params.b[i];
    const Rational gap = b - params.c[i];
    const std::size_t n = i + 1;
    report.clauses.push_back(make_clause(idx("b", n) + " > 0", b > 0, to_string(b) + " > 0"));
    report.clauses.push_back(make_clause(idx("b", n) + " - " + idx("c", n) + " > 0", gap > 0,
                                         to_string(gap) + " > 0"));
  }
  for (std::size_t i = 1; i < p && q > 0; ++i) {
    const std::size_t j = i < q ? i : q - 1;
    const auto& a = params.a[i];
    const auto& b = params.b[j];
    report.clauses.push_back(make_clause(idx("a", i + 1) + " > " + idx("b", j + 1), a > b,
                                         to_string(a) + " > " + to_string(b)));
  }
  for (std::size_t i = 0; i < q; ++i) {
    const auto& b = params.b[i];
    report.clauses.push_back(
        make_clause(idx("b", i + 1) + " > 1", b > 1, to_string(b) + " > 1"));
  }
  return report;
}

}  // namespace hyperratio
