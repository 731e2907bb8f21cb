#pragma once

#include <string>
#include <vector>

#include "hyperratio/rational.hpp"

namespace hyperratio {

// Scalar parameters of h(a, b, c, x) = 1F1(a; b-c; x) 1F1(a; b+c; x) / 1F1(a; b; x)^2.
struct AbcParams {
  Rational a;
  Rational b;
  Rational c;
};

// Vector parameters of h_{p,q}: a has length p, b and c length q.
struct AbcVecParams {
  std::vector<Rational> a;
  std::vector<Rational> b;
  std::vector<Rational> c;

  static AbcVecParams from_scalar(const AbcParams& s) { return {{s.a}, {s.b}, {s.c}}; }
  std::size_t p() const { return a.size(); }
  std::size_t q() const { return b.size(); }
};

struct Clause {
  std::string name;     // e.g. "a < b - c"
  bool passed = false;
  std::string detail;   // the instantiated comparison, e.g. "1/1 < 1/2"
};

struct ConditionReport {
  std::string theorem;
  std::vector<Clause> clauses;

  bool passed() const;
  // Names of failed clauses joined by "; ", empty when all pass.
  std::string failures() const;
};

// Hypotheses of the Kummer monotonicity theorem, verbatim: 0 < a, a < b - c,
// b > 1. Nothing is assumed about the sign of c.
ConditionReport check_theorem1_conditions(const AbcParams& params);

// Hypotheses of the pFq monotonicity theorem: p <= q + 1, b_i > 0,
// b_i - c_i > 0, b_i > 1 for every i, and a_i > b_i for i = 2..p. For
// i = q + 1 (only when p = q + 1) there is no b_i and the clause compares
// against b_q.
ConditionReport check_theorem2_conditions(const AbcVecParams& params);

}  // namespace hyperratio
