#include <doctest.h>

#include <random>

#include "hyperratio/errors.hpp"
#include "hyperratio/hyper_series.hpp"
#include "oracles.hpp"

using namespace hyperratio;

namespace {

Precision default_prec() { return Precision{}; }

Real at(const Rational& x, unsigned bits = 128) { return Real::from_rational(x, bits); }

// Sup over n >= m of the term ratio, bounded factor by factor. Each
// (a + n)/(b + n) moves monotonically toward 1, so max(1, value at m) bounds it.
Rational crude_ratio_bound(const std::vector<Rational>& a, const std::vector<Rational>& b,
                           const Rational& x, unsigned long m) {
  Rational rho = x;
  const Rational mm(static_cast<long>(m));
  std::size_t i = 0;
  for (; i < a.size() && i < b.size(); ++i) {
    Rational f = (a[i] + mm) / (b[i] + mm);
    if (f > 1) rho *= f;
  }
  for (; i < b.size(); ++i) rho /= b[i] + mm;
  Rational last = a.size() > b.size() ? Rational((a.back() + mm) / (mm + 1)) : Rational(1 / (mm + 1));
  if (a.size() > b.size()) {
    if (last > 1) rho *= last;
  } else {
    rho *= last;
  }
  return rho;
}

}  // namespace

TEST_CASE("pochhammer") {
  CHECK(pochhammer(Rational(5, 2), 0) == 1);
  CHECK(pochhammer(Rational(2), 3) == 24);
  for (unsigned long n = 0; n <= 10; ++n) {
    CAPTURE(n);
    CHECK(pochhammer(Rational(1), n) == Rational(oracle::factorial(n)));
  }
  CHECK(pochhammer(Rational(-2), 3) == 0);
  CHECK(pochhammer(Rational(1, 2), 3) == Rational(15, 8));
}

TEST_CASE("coefficients") {
  CHECK(coeff(HyperParams({1}, {2}), 1) == Rational(1, 2));
  CHECK(coeff(HyperParams({1, 1}, {1}), 2) == 1);
  CHECK(coeff(HyperParams({Rational(7, 3)}, {Rational(1, 5), 4}), 0) == 1);
  CHECK(coeff(HyperParams({1}, {}), 0) == 1);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Rational> a{oracle::random_rational(rng, 1, 6)};
    std::vector<Rational> b{oracle::random_rational(rng, 1, 6), oracle::random_rational(rng, 1, 6)};
    if (a[0] == 0 || b[0] == 0 || b[1] == 0) continue;
    HyperParams params(a, b);
    for (unsigned long n = 0; n <= 12; ++n)
      CHECK(coeff(params, n) == oracle::pfq_coefficient(a, b, n));
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(HyperParams({}, {1}), DomainError);
  CHECK_THROWS_AS(HyperParams({1, 1, 1}, {1}), DomainError);
  CHECK_THROWS_AS(HyperParams({1}, {0}), DomainError);
  CHECK_THROWS_AS(HyperParams({1}, {-3}), DomainError);
  CHECK_NOTHROW(HyperParams({1}, {Rational(-3, 2)}));
  CHECK(HyperParams({1}, {2}).entire());
  CHECK_FALSE(HyperParams({1, 2}, {3}).entire());
}

TEST_CASE("term ratio") {
  CHECK(term_ratio_exact(HyperParams({1}, {2}), Rational(1), 0) == Rational(1, 2));
  CHECK(term_ratio_exact(HyperParams({1}, {3}), Rational(2), 1) == Rational(1, 2));
  CHECK(term_ratio(HyperParams({1}, {2}), at(Rational(1)), 0) == Rational(1, 2));
  CHECK(term_ratio(HyperParams({1}, {3}), at(Rational(2)), 1) == Rational(1, 2));
  for (unsigned long n : {0ul, 3ul, 17ul}) {
    CHECK(term_ratio(HyperParams({Rational(3, 2), 2}, {Rational(5, 7)}), at(Rational(0)), n)
              .is_zero());
  }
}

TEST_CASE("coefficient ratio equals the term ratio at unit argument") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t q = std::uniform_int_distribution<std::size_t>(0, 2)(rng);
    const std::size_t p = std::uniform_int_distribution<std::size_t>(1, q + 1)(rng);
    std::vector<Rational> a, b;
    for (std::size_t i = 0; i < p; ++i) a.emplace_back(std::uniform_int_distribution<long>(1, 9)(rng));
    for (std::size_t j = 0; j < q; ++j) b.emplace_back(std::uniform_int_distribution<long>(1, 9)(rng));
    HyperParams params(a, b);
    Rational previous = coeff(params, 0);
    for (unsigned long n = 0; n <= 100; ++n) {
      Rational next = coeff(params, n + 1);
      CHECK(next / previous == term_ratio_exact(params, Rational(1), n));
      CHECK(coeff_ratio(params, n) == term_ratio_exact(params, Rational(1), n));
      previous = next;
    }
  }
}

TEST_CASE("pFq evaluation against closed forms") {
  auto geometric = eval_pfq(HyperParams({1}, {}), at(Rational(1, 2)), default_prec());
  CHECK(geometric.contains(Rational(2)));
  CHECK(geometric.error_radius.sign() > 0);

  auto origin = eval_pfq(HyperParams({Rational(3, 2), 2}, {Rational(1, 3)}), at(Rational(0)),
                         default_prec());
  CHECK(origin.value == Rational(1));
  CHECK(origin.error_radius.is_zero());
  CHECK(origin.terms_used == 1);

  // 1F1(1; 2; x) = (e^x - 1) / x
  Real e = oracle::exp_of(Rational(1));
  Real e_minus_1(oracle::kOracleBits);
  mpfr_sub_ui(e_minus_1.get(), e.get(), 1, MPFR_RNDN);
  auto kummer = eval_pfq(HyperParams({1}, {2}), at(Rational(1)), default_prec());
  CHECK(oracle::encloses(kummer, e_minus_1));
  CHECK(kummer.value.to_double() == doctest::Approx(1.7182818284590452).epsilon(1e-15));
  CHECK(oracle::encloses(eval_1f1(1, 2, at(Rational(1)), default_prec()), e_minus_1));
  CHECK(oracle::encloses(eval_1f1(2, 2, at(Rational(1)), default_prec()), e));
  auto zero = eval_1f1(Rational(7, 3), Rational(5, 2), at(Rational(0)), default_prec());
  CHECK(zero.value == Rational(1));
  CHECK(zero.error_radius.is_zero());
}

TEST_CASE("1F1(a; a; x) is the exponential") {
  for (const Rational& a : {Rational(1), Rational(2), Rational(7, 2)}) {
    for (const Rational& x : {Rational(0), Rational(1, 2), Rational(1), Rational(5), Rational(20)}) {
      CAPTURE(to_string(a));
      CAPTURE(to_string(x));
      auto v = eval_1f1(a, a, at(x), default_prec());
      CHECK(oracle::encloses(v, oracle::exp_of(x)));
      Real rel(64);
      mpfr_div(rel.get(), v.error_radius.get(), v.value.get(), MPFR_RNDU);
      CHECK(rel.to_double() <= 1e-29);
    }
  }
}

TEST_CASE("enclosure agrees with exact partial sums and an independent tail bound") {
  std::mt19937_64 rng(7);
  const std::vector<Rational> xs{Rational(1, 3), Rational(1, 2), Rational(3, 4), Rational(2), Rational(7)};
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t q = std::uniform_int_distribution<std::size_t>(0, 2)(rng);
    const std::size_t p = std::uniform_int_distribution<std::size_t>(1, q + 1)(rng);
    std::vector<Rational> a, b;
    for (std::size_t i = 0; i < p; ++i) a.push_back(oracle::random_rational(rng, 0, 4) + Rational(1, 10));
    for (std::size_t j = 0; j < q; ++j) b.push_back(oracle::random_rational(rng, 0, 4) + Rational(1, 10));
    HyperParams params(a, b);
    for (const auto& x : xs) {
      if (!params.entire() && x >= 1) continue;
      Precision prec{96, 1e-25L};
      auto v = eval_pfq(params, at(x, prec.working_bits), prec);
      const unsigned long m = v.terms_used + 40;
      const Rational partial = oracle::pfq_partial_sum(a, b, x, m);
      const Rational rho = crude_ratio_bound(a, b, x, m + 1);
      REQUIRE(rho < 1);
      Rational next_term = oracle::pfq_coefficient(a, b, m + 1);
      for (unsigned long k = 0; k <= m; ++k) next_term *= x;
      const Rational tail = next_term / (1 - rho);
      const Rational lo = v.lower().to_rational();
      const Rational hi = v.upper().to_rational();
      CAPTURE(to_string(x));
      CHECK(partial <= hi);
      CHECK(lo <= partial + tail);
      ++checked;
    }
  }
  CHECK(checked > 60);
}

TEST_CASE("more working bits never widen the radius") {
  const std::vector<std::pair<HyperParams, Rational>> cases{
      {HyperParams({1}, {2}), Rational(1)},
      {HyperParams({Rational(1, 2)}, {Rational(33, 10)}), Rational(10)},
      {HyperParams({2, 1}, {Rational(3, 2)}), Rational(1, 2)},
      {HyperParams({1}, {}), Rational(9, 10)},
      {HyperParams({Rational(5, 2)}, {Rational(7, 3), 4}), Rational(40)},
  };
  for (const auto& [params, x] : cases) {
    CAPTURE(to_string(x));
    Real previous;
    bool first = true;
    for (unsigned bits : {64u, 128u, 256u, 512u}) {
      Precision prec{bits, 1e-15L};
      auto v = eval_pfq(params, at(x, bits), prec);
      if (!first) CHECK(v.error_radius <= previous);
      previous = v.error_radius;
      first = false;
    }
  }
}

TEST_CASE("domain errors") {
  const Precision prec;
  CHECK_THROWS_AS(eval_pfq(HyperParams({1, 1}, {2}), at(Rational(1)), prec), DomainError);
  CHECK_THROWS_AS(eval_pfq(HyperParams({1}, {}), at(Rational(3, 2)), prec), DomainError);
  CHECK_THROWS_AS(eval_pfq(HyperParams({1}, {2}), at(Rational(-1, 2)), prec), DomainError);
  CHECK_THROWS_AS(eval_pfq(HyperParams({0}, {2}), at(Rational(1)), prec), DomainError);
  CHECK_THROWS_AS(eval_pfq(HyperParams({-1, 2}, {2}), at(Rational(1, 2)), prec), DomainError);
  CHECK_THROWS_AS(eval_pfq(HyperParams({1}, {Rational(-1, 2)}), at(Rational(1)), prec), DomainError);
}

TEST_CASE("iteration cap") {
  CHECK(iteration_cap(at(Rational(1, 2))) == 10010);
  CHECK(iteration_cap(at(Rational(0))) == 10000);
  CHECK(iteration_cap(at(Rational(200))) == 12000);
  CHECK(iteration_cap(at(Rational(201, 2))) == 11010);
  Real near_one = at(Rational(9999999, 10000000));
  CHECK_THROWS_AS(eval_pfq(HyperParams({1}, {}), near_one, Precision{}), PrecisionError);
}

TEST_CASE("finite sums") {
  HyperParams params({Rational(3, 2)}, {Rational(5, 4)});
  const Rational x(2, 3);
  auto partial = partial_sum(params, at(x), 15, Precision{});
  CHECK(partial.contains(oracle::pfq_partial_sum(params.a(), params.b(), x, 14)));
  CHECK(partial.terms_used == 15);

  std::vector<Rational> poly{Rational(1), Rational(-2, 3), Rational(5, 7), Rational(1, 11)};
  auto value = sum_power_series(poly, at(x), Precision{});
  Rational expected = poly[0] + poly[1] * x + poly[2] * x * x + poly[3] * x * x * x;
  CHECK(value.contains(expected));
  CHECK(sum_power_series(poly, at(Rational(0)), Precision{}).value == Rational(1));
}
