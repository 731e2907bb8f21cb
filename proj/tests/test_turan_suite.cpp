#include <doctest.h>

#include <algorithm>
#include <random>

#include "hyperratio/errors.hpp"
#include "hyperratio/exp_sections.hpp"
#include "hyperratio/ratio_kernel.hpp"
#include "hyperratio/serialize.hpp"
#include "hyperratio/turan_suite.hpp"
#include "oracles.hpp"

using namespace hyperratio;

namespace {

Real at(const Rational& x, unsigned bits = 128) { return Real::from_rational(x, bits); }

std::vector<Real> points(std::initializer_list<Rational> xs, unsigned bits = 128) {
  std::vector<Real> out;
  for (const auto& x : xs) out.push_back(at(x, bits));
  return out;
}

bool clause_failed(const ConditionReport& report, const std::string& name) {
  for (const auto& clause : report.clauses)
    if (clause.name == name) return !clause.passed;
  FAIL("no clause named " << name);
  return false;
}

// Exact 1F1 partial sums give an independent h at rational x.
Real h_oracle(const AbcParams& p, const Rational& x) {
  const unsigned long m = 400;
  Real num1 = oracle::to_real(oracle::pfq_partial_sum({p.a}, {p.b - p.c}, x, m));
  Real num2 = oracle::to_real(oracle::pfq_partial_sum({p.a}, {p.b + p.c}, x, m));
  Real den = oracle::to_real(oracle::pfq_partial_sum({p.a}, {p.b}, x, m));
  Real out(oracle::kOracleBits);
  mpfr_mul(out.get(), num1.get(), num2.get(), MPFR_RNDN);
  mpfr_div(out.get(), out.get(), den.get(), MPFR_RNDN);
  mpfr_div(out.get(), out.get(), den.get(), MPFR_RNDN);
  return out;
}

}  // namespace

TEST_CASE("h at the origin and for zero shift") {
  const Precision prec;
  for (const AbcParams& p : {AbcParams{1, 3, 1}, AbcParams{Rational(1, 2), Rational(33, 10), Rational(9, 5)},
                             AbcParams{7, 2, Rational(-3, 2)}}) {
    auto h0 = h_kummer(p, at(Rational(0)), prec);
    REQUIRE(h0.exact.has_value());
    CHECK(*h0.exact == 1);
    CHECK(h0.error_radius.is_zero());
  }
  for (const Rational& x : {Rational(1, 2), Rational(13), Rational(90)}) {
    auto h = h_kummer({Rational(5, 3), 3, 0}, at(x), prec);
    CHECK(h.value == Rational(1));
    CHECK(h.error_radius.is_zero());
  }
  auto hp0 = h_pfq({{2, 1}, {Rational(3, 2)}, {Rational(1, 2)}}, at(Rational(0)), prec);
  CHECK(hp0.value == Rational(1));
  CHECK(hp0.error_radius.is_zero());
}

TEST_CASE("h against exact partial sums") {
  const Precision prec;
  for (const AbcParams& p : {AbcParams{1, 3, 1}, AbcParams{Rational(5, 2), Rational(7, 2), Rational(-1, 3)}}) {
    for (const Rational& x : {Rational(1, 4), Rational(1), Rational(6)}) {
      CHECK(oracle::encloses(h_kummer(p, at(x), prec), h_oracle(p, x)));
    }
  }
}

TEST_CASE("h with a = 1, b = n + 2, c = 1 is g_n") {
  const Precision prec;
  for (unsigned long n = 1; n <= 10; ++n) {
    for (const Rational& x : {Rational(0), Rational(1), Rational(5), Rational(20)}) {
      auto h = h_kummer({1, Rational(n + 2), 1}, at(x), prec);
      auto g = ratio_g(n, at(x), prec);
      CHECK(compare(h, g) != Separation::below);
      CHECK(compare(h, g) != Separation::above);
    }
  }
}

TEST_CASE("h is symmetric in the sign of c") {
  const Precision prec;
  for (const AbcParams& p : {AbcParams{1, 3, 1}, AbcParams{Rational(3, 4), Rational(9, 2), Rational(5, 3)}}) {
    for (const Rational& x : {Rational(1, 3), Rational(4), Rational(50)}) {
      auto plus = h_kummer(p, at(x), prec);
      auto minus = h_kummer({p.a, p.b, -p.c}, at(x), prec);
      CHECK(compare(plus, minus) == Separation::overlap);
    }
  }
}

TEST_CASE("vector h") {
  const Precision prec;
  auto h = h_pfq({{2, 1}, {Rational(3, 2)}, {Rational(1, 2)}}, at(Rational(1, 2)), prec);
  CHECK(h.certainly_above(1));
  CHECK(h.value.to_double() == doctest::Approx(1.2104717144459393).epsilon(1e-14));
  for (const Rational& x : {Rational(1, 5), Rational(3), Rational(40)}) {
    AbcParams s{Rational(4, 3), Rational(5, 2), Rational(2, 3)};
    auto v = h_pfq(AbcVecParams::from_scalar(s), at(x), prec);
    auto k = h_kummer(s, at(x), prec);
    CHECK(compare(v, k) == Separation::overlap);
  }
  CHECK_THROWS_AS(h_pfq({{1}, {2, 3}, {1}}, at(Rational(1, 2)), prec), LengthMismatch);
  CHECK_THROWS_AS(h_pfq({{2, 1}, {Rational(3, 2)}, {Rational(1, 2)}}, at(Rational(1)), prec), DomainError);
  CHECK_THROWS_AS(h_kummer({1, 1, 2}, at(Rational(1)), prec), DomainError);
}

TEST_CASE("Kummer theorem conditions") {
  CHECK(check_theorem1_conditions({1, 3, 1}).passed());
  auto narrow = check_theorem1_conditions({1, Rational(3, 2), 1});
  CHECK_FALSE(narrow.passed());
  CHECK(clause_failed(narrow, "a < b - c"));
  CHECK(narrow.failures() == "a < b - c (1/1 < 1/2)");
  auto edge = check_theorem1_conditions({1, 1, 0});
  CHECK(clause_failed(edge, "b > 1"));
  CHECK_FALSE(clause_failed(edge, "0 < a"));
  CHECK(clause_failed(check_theorem1_conditions({0, 3, 1}), "0 < a"));
  CHECK(check_theorem1_conditions({1, 3, -1}).passed());
}

TEST_CASE("pFq theorem conditions") {
  CHECK(check_theorem2_conditions({{1}, {3}, {1}}).passed());
  auto extra = check_theorem2_conditions({{1, 1}, {2}, {Rational(1, 2)}});
  CHECK_FALSE(extra.passed());
  CHECK(clause_failed(extra, "a_2 > b_1"));
  auto small = check_theorem2_conditions({{1}, {Rational(1, 2)}, {Rational(1, 4)}});
  CHECK(clause_failed(small, "b_1 > 1"));
  CHECK_FALSE(clause_failed(small, "b_1 - c_1 > 0"));
  auto three = check_theorem2_conditions({{1, 5, 6}, {2, 3}, {1, 1}});
  CHECK(three.passed());
  auto three_bad = check_theorem2_conditions({{1, 5, 2}, {2, 3}, {1, 1}});
  CHECK(clause_failed(three_bad, "a_3 > b_2"));
  CHECK(clause_failed(check_theorem2_conditions({{1}, {2, 3}, {1}}), "len(c) = q"));
  CHECK(clause_failed(check_theorem2_conditions({{1, 1, 1}, {2}, {1}}), "p <= q + 1"));
  CHECK(clause_failed(check_theorem2_conditions({{}, {2}, {1}}), "p >= 1"));
}

TEST_CASE("grid specs") {
  auto g = GridSpec::parse("0:10:11");
  CHECK(g.min == 0);
  CHECK(g.max == 10);
  CHECK(g.points == 11);
  CHECK(g.spacing == Spacing::linear);
  auto xs = g.build(128);
  REQUIRE(xs.size() == 11);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(xs[i] == Rational(static_cast<long>(i)));

  auto lg = GridSpec::parse("0:200:129@log");
  CHECK(lg.spacing == Spacing::log);
  auto ls = lg.build(128);
  REQUIRE(ls.size() == 129);
  CHECK(ls.front() == Rational(0));
  CHECK(ls.back() == Rational(200));
  for (std::size_t i = 1; i < ls.size(); ++i) CHECK(ls[i - 1] < ls[i]);
  // Log spacing packs points toward the left end.
  CHECK(ls[64] < Rational(20));

  CHECK(GridSpec::parse("1/2:0.99:3@linear").build(64)[1] ==
        Real::from_rational(Rational(149, 200), 64));
  for (const char* bad : {"0:1", "0:1:x", "0:1:1", "0:1:5@cubic", "a:1:3"}) {
    CAPTURE(bad);
    CHECK_THROWS(GridSpec::parse(bad).validate());
  }
  CHECK_THROWS_AS(GridSpec::parse("2:1:5").validate(), DomainError);
  CHECK_THROWS_AS(GridSpec::parse("-1:1:5").validate(), DomainError);
}

TEST_CASE("default grids and target metadata") {
  auto f = RatioTarget::exp_ratio_f(3);
  CHECK(f.baseline() == Rational(4, 5));
  CHECK(f.supremum() == Rational(1));
  CHECK(f.default_x_max() == 100);
  CHECK(RatioTarget::exp_ratio_g(3).supremum() == Rational(5, 4));
  auto hpq = RatioTarget::pfq({{2, 1}, {Rational(3, 2)}, {Rational(1, 2)}});
  CHECK(hpq.unit_interval_domain());
  CHECK(hpq.default_x_max() == Rational(99, 100));
  auto g = default_grid(hpq);
  CHECK(g.points == 129);
  CHECK(g.spacing == Spacing::log);
  CHECK(g.max == Rational(99, 100));
  auto entire = RatioTarget::pfq({{1}, {2, 3}, {1, 1}});
  CHECK(entire.beyond_theorem_domain(Rational(5)));
  CHECK_FALSE(entire.beyond_theorem_domain(Rational(1, 2)));
  CHECK_FALSE(RatioTarget::kummer({1, 3, 1}).beyond_theorem_domain(Rational(100)));
}

TEST_CASE("f_1 on a small grid") {
  auto report = grid_monotone_check(RatioTarget::exp_ratio_f(1),
                                    points({0, 1, 2, 5, 10}), Precision{});
  CHECK(report.monotone == Verdict::holds);
  CHECK(report.nondecreasing);
  REQUIRE(report.values.front().exact.has_value());
  CHECK(*report.values.front().exact == Rational(2, 3));
  CHECK(report.below_ceiling == Verdict::holds);
  CHECK(report.passed());
}

TEST_CASE("zero shift is constant and non-strictly monotone") {
  auto report = grid_monotone_check(RatioTarget::kummer({1, 3, 0}),
                                    GridSpec::parse("0:10:11").build(128), Precision{});
  CHECK(report.monotone == Verdict::holds);
  for (const auto& v : report.values) CHECK(v.value == Rational(1));
  CHECK(report.worst_margin.is_zero());
  auto turan = turan_check(RatioTarget::kummer({1, 3, 0}), points({0, 1, 10}), Precision{});
  CHECK(turan.turan == Verdict::holds);
}

TEST_CASE("h_pq in the unit-disc regime") {
  auto target = RatioTarget::pfq({{1}, {2}, {1}});
  auto report = grid_monotone_check(target, points({0, Rational(1, 4), Rational(1, 2), Rational(3, 4)}),
                                    Precision{});
  CHECK(report.nondecreasing);
  CHECK(report.monotone == Verdict::holds);
  CHECK(certify_coeff_monotone(std::vector<Rational>{1}, std::vector<Rational>{2},
                               std::vector<Rational>{1}, 64)
            .coeff_ratio.strict);
}

TEST_CASE("Turán floor") {
  auto report = turan_check(RatioTarget::kummer({1, 3, 1}), points({0, 1, 10}), Precision{});
  CHECK(report.turan == Verdict::holds);
  for (const auto& v : report.values) CHECK(v.certainly_at_least(1));
  auto g = turan_check(RatioTarget::exp_ratio_g(1), points({0, 1}), Precision{});
  CHECK(g.turan == Verdict::holds);
  CHECK(g.values[1].value.to_double() == doctest::Approx(1.0904693927534437).epsilon(1e-14));
  auto f = turan_check(RatioTarget::exp_ratio_f(2), points({0, 3}), Precision{});
  CHECK(f.turan_floor == Rational(3, 4));
  CHECK(f.turan == Verdict::holds);
}

TEST_CASE("monotone on [0, 100] for Kummer parameters with a >= 1") {
  std::mt19937_64 rng(404);
  auto grid = GridSpec{0, 100, 64, Spacing::log}.build(128);
  int done = 0;
  while (done < 8) {
    Rational b = oracle::random_rational(rng, 1, 6);
    Rational c = oracle::random_rational(rng, 0, 4);
    Rational a = oracle::random_rational(rng, 1, 6);
    if (!(b > 1 && a < b - c)) continue;
    auto target = RatioTarget::kummer({a, b, c});
    auto report = analyze_grid(target, grid, Precision{});
    CAPTURE(target.describe());
    CHECK(report.monotone == Verdict::holds);
    CHECK(report.turan == Verdict::holds);
    ++done;
  }
}

TEST_CASE("certified decrease for a below 1") {
  AbcParams p{Rational(1, 2), Rational(33, 10), Rational(9, 5)};
  CHECK(check_theorem1_conditions(p).passed());
  auto report = grid_monotone_check(RatioTarget::kummer(p), GridSpec{0, 100, 64, Spacing::log}.build(128),
                                    Precision{});
  CHECK(report.monotone == Verdict::violated);
  CHECK_FALSE(report.nondecreasing);
  CHECK(report.worst_margin.sign() < 0);
  CHECK_FALSE(report.passed());
  auto pair = report.worst_location;
  CHECK(pair.second == pair.first + 1);
  CHECK(compare(report.values[pair.second], report.values[pair.first]) == Separation::below);
  // Turán still holds there.
  CHECK(report.turan == Verdict::holds);
}

TEST_CASE("strict certificates never meet a certified decrease") {
  std::mt19937_64 rng(606);
  auto grid = GridSpec{0, 100, 64, Spacing::log}.build(128);
  for (int trial = 0; trial < 10; ++trial) {
    Rational b = oracle::random_rational(rng, 1, 6);
    Rational c = oracle::random_rational(rng, 0, 4);
    Rational a = oracle::random_rational(rng, 0, 6);
    if (!(a > 0 && b > 1 && a < b - c)) continue;
    auto cert = certify_coeff_monotone(std::vector<Rational>{a}, std::vector<Rational>{b},
                                       std::vector<Rational>{c}, 64);
    if (!(cert.coeff_ratio.holds && cert.coeff_ratio.strict)) continue;
    auto report = grid_monotone_check(RatioTarget::kummer({a, b, c}), grid, Precision{});
    CHECK(report.monotone != Verdict::violated);
  }
}

TEST_CASE("evaluation order does not change results") {
  auto target = RatioTarget::exp_ratio_f(4);
  auto forward = GridSpec::parse("0:30:7").build(128);
  auto report = grid_monotone_check(target, forward, Precision{});
  for (std::size_t i = forward.size(); i-- > 0;) {
    auto v = target.evaluate(forward[i], Precision{});
    CHECK(v.value == report.values[i].value);
  }
}

TEST_CASE("report serialization") {
  auto report = grid_monotone_check(RatioTarget::exp_ratio_f(1), points({0, 1, 2}), Precision{});
  Json j = to_json(report);
  CHECK(j["verdict"] == "holds");
  CHECK(j["points"].size() == 3);
  CHECK(j["points"][0]["value"].is_string());
  CHECK(j.contains("worst_margin"));
  CHECK(j.contains("turan_min"));
  std::string csv = to_csv(report);
  CHECK(csv.rfind("x,value,error_radius\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);

  auto cert = certify_coeff_monotone(std::vector<Rational>{1}, std::vector<Rational>{2},
                                     std::vector<Rational>{1}, 4);
  Json c = to_json(cert.coeff_ratio);
  CHECK(c["kind"] == "coeff-ratio");
  CHECK(c["range"][0] == 0);
  CHECK(c["range"][1] == 4);
  CHECK(c["holds"] == true);
  CHECK(c["violation"].is_null());
  auto broken = certify_sequence(std::vector<Rational>{1, Rational(1, 2)}, CertificateKind::w_ratio,
                                 Direction::nondecreasing);
  Json b = to_json(broken);
  CHECK(b["violation"]["lhs"] == "1/2");
  CHECK(b["violation"]["rhs"] == "1/1");
}
