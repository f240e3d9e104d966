#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "ansatz/error.hpp"
#include "ansatz/families.hpp"
#include "ansatz/resolvent.hpp"
#include "support.hpp"

using namespace ansatz;
using ansatz::testing::probes_avoiding;

namespace {

std::vector<Complex> singular_points(const ResolventSolution& sol) {
  std::vector<Complex> pts = sol.weight.singular_points();
  pts.push_back(0.0);
  return pts;
}

// Central difference of log h, taken as the ratio of nearby values so branch
// offsets cancel.
Complex numeric_log_derivative(const WeightForm& w, Complex t, double step) {
  const Complex hp = weight_eval(w, t + step), hm = weight_eval(w, t - step);
  return std::log(hp / hm) / (2.0 * step);
}

}  // namespace

TEST(Resolvent, LegendreLogDerivativeMatchesClosedForm) {
  for (double x : {0.3, 2.0, -1.5}) {
    const auto sol = derive_resolvent(make_family("legendre", {{"x", x}}).spec);
    const Polynomial& num = sol.log_derivative.numerator();
    const Polynomial& den = sol.log_derivative.denominator();
    ASSERT_EQ(den.degree(), 2) << x;
    ASSERT_EQ(num.degree(), 1) << x;
    const Complex s = den.leading();
    EXPECT_LT(std::abs(den.coefficient(0) / s - 1.0), 1e-12);
    EXPECT_LT(std::abs(den.coefficient(1) / s + 2.0 * x), 1e-12);
    EXPECT_LT(std::abs(num.coefficient(0) / s - x), 1e-12);
    EXPECT_LT(std::abs(num.coefficient(1) / s + 1.0), 1e-12);
  }
}

TEST(Resolvent, LegendreWeightIsInverseSquareRoot) {
  const auto sol = derive_resolvent(make_family("legendre", {{"x", 0.3}}).spec);
  ASSERT_EQ(sol.weight.power_factors.size(), 2u);
  EXPECT_TRUE(sol.weight.exp_poly.is_zero());
  EXPECT_TRUE(sol.weight.essential_terms.empty());
  const Complex r = 0.3 + Complex(0.0, 1.0) * std::sqrt(1.0 - 0.09);
  for (const PowerFactor& p : sol.weight.power_factors) {
    EXPECT_LT(std::abs(p.exponent + 0.5), 1e-13);
    EXPECT_LT(std::min(std::abs(p.root - r), std::abs(p.root - std::conj(r))), 1e-13);
  }
}

TEST(Resolvent, HermiteWeight) {
  const auto sol = derive_resolvent(make_family("hermite", {{"x", 1.0}}).spec);
  EXPECT_TRUE(sol.weight.power_factors.empty());
  EXPECT_TRUE(sol.weight.essential_terms.empty());
  ASSERT_EQ(sol.boundary_poly, Polynomial{2.0});
  const Polynomial& p = sol.weight.exp_poly;
  ASSERT_EQ(p.degree(), 2);
  EXPECT_EQ(p.coefficient(0), Complex(0.0));
  EXPECT_LT(std::abs(p.coefficient(1) + 1.0), 1e-15);
  EXPECT_LT(std::abs(p.coefficient(2) - 0.25), 1e-15);
  EXPECT_LT(std::abs(weight_eval(sol.weight, 0.0) - 1.0), 1e-15);
}

TEST(Resolvent, LaguerreWeight) {
  const double x = 1.0;
  const auto sol = derive_resolvent(make_family("laguerre", {{"x", x}}).spec);
  ASSERT_EQ(sol.weight.power_factors.size(), 1u);
  ASSERT_EQ(sol.weight.essential_terms.size(), 1u);
  EXPECT_LT(std::abs(sol.weight.power_factors[0].root - 1.0), 1e-13);
  EXPECT_LT(std::abs(sol.weight.power_factors[0].exponent + 1.0), 1e-13);
  EXPECT_LT(std::abs(sol.weight.essential_terms[0].pole - 1.0), 1e-13);
  EXPECT_LT(std::abs(sol.weight.essential_terms[0].strength + x), 1e-13);
}

TEST(Resolvent, ClosedFormsAgreeThroughLogDerivative) {
  std::mt19937_64 rng(5);
  for (double x : {0.5, 1.0, 2.5}) {
    const auto herm = derive_resolvent(make_family("hermite", {{"x", x}}).spec);
    const auto lag = derive_resolvent(make_family("laguerre", {{"x", x}}).spec);
    for (Complex t : probes_avoiding(rng, {0.0, 1.0}, 20)) {
      const Complex want_h = t / 2.0 - x;
      const Complex want_l = -1.0 / (t - 1.0) + x / ((t - 1.0) * (t - 1.0));
      EXPECT_LT(std::abs(weight_log_derivative(herm.weight, t) - want_h), 1e-12 * (1.0 + std::abs(want_h)));
      EXPECT_LT(std::abs(herm.log_derivative(t) - want_h), 1e-12 * (1.0 + std::abs(want_h)));
      EXPECT_LT(std::abs(weight_log_derivative(lag.weight, t) - want_l), 1e-12 * (1.0 + std::abs(want_l)));
      EXPECT_LT(std::abs(lag.log_derivative(t) - want_l), 1e-12 * (1.0 + std::abs(want_l)));
    }
  }
}

TEST(Resolvent, WeightExamples) {
  for (double x : {0.0, 0.5, -0.8}) {
    const auto sol = derive_resolvent(make_family("legendre", {{"x", x}}).spec);
    EXPECT_LT(std::abs(weight_eval(sol.weight, 0.0) - 1.0), 1e-13) << x;
  }
  const auto gamma = derive_resolvent(make_family("gamma").spec);
  EXPECT_LT(std::abs(weight_eval(gamma.weight, 2.0) - std::exp(-2.0)), 1e-15);
}

TEST(Resolvent, WeightNearRootThrows) {
  const auto sol = derive_resolvent(make_family("legendre", {{"x", 2.0}}).spec);
  try {
    weight_eval(sol.weight, 2.0 + std::sqrt(3.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::singularity);
  }
}

TEST(Resolvent, DegenerateBoundaryPolynomial) {
  // alpha = beta = gamma = 0 leaves D identically zero
  const auto spec = RecurrenceSpec::second_order(0.0, 1.0, 0.0, 1.0, 0.0, 1.0);
  try {
    derive_resolvent(spec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::degenerate_recurrence);
  }
}

TEST(Resolvent, CheckPassesForDerivedSolutions) {
  std::mt19937_64 rng(17);
  std::vector<RecurrenceSpec> specs;
  for (const char* name : {"legendre", "hermite", "laguerre"}) specs.push_back(make_family(name, {{"x", 0.7}}).spec);
  specs.push_back(make_family("gamma").spec);
  specs.push_back(make_family("gauss2f1", {{"b", 0.7}, {"c", 1.9}, {"z", -0.45}}).spec);
  for (int i = 0; i < 10; ++i) specs.push_back(ansatz::testing::random_second_order(rng));
  for (const auto& spec : specs) {
    const auto sol = derive_resolvent(spec);
    std::vector<Complex> probes;
    for (Complex t : probes_avoiding(rng, singular_points(sol), 400, 10.0, 0.1)) {
      if (std::abs(t) >= 0.1 && probes.size() < 50) probes.push_back(t);
    }
    EXPECT_LE(resolvent_check(spec, sol, probes), 1e-9);
  }
}

TEST(Resolvent, CheckDetectsPerturbedExponent) {
  const auto spec = make_family("legendre", {{"x", 0.3}}).spec;
  auto sol = derive_resolvent(spec);
  sol.weight.power_factors[0].exponent += 0.01;
  std::mt19937_64 rng(2);
  EXPECT_GT(resolvent_check(spec, sol, probes_avoiding(rng, singular_points(sol), 50)), 1e-3);
}

TEST(Resolvent, HermitePaperFormPassesCheck) {
  const auto spec = make_family("hermite", {{"x", 1.0}}).spec;
  ResolventSolution sol;
  sol.boundary_poly = Polynomial{2.0};
  sol.weight.exp_poly = Polynomial{0.0, -1.0, 0.25};
  std::mt19937_64 rng(4);
  EXPECT_LE(resolvent_check(spec, sol, probes_avoiding(rng, {}, 50)), 1e-9);
}

TEST(Resolvent, LogDerivativeFiniteDifferences) {
  std::mt19937_64 rng(23);
  std::vector<RecurrenceSpec> specs;
  for (double x : {0.3, 2.0}) {
    for (const char* name : {"legendre", "hermite", "laguerre"}) specs.push_back(make_family(name, {{"x", x}}).spec);
  }
  for (int i = 0; i < 6; ++i) specs.push_back(ansatz::testing::random_second_order(rng));
  for (const auto& spec : specs) {
    const auto sol = derive_resolvent(spec);
    for (Complex t : probes_avoiding(rng, singular_points(sol), 20, 3.0, 0.3)) {
      const Complex want = sol.log_derivative(t);
      const Complex got = numeric_log_derivative(sol.weight, t, 1e-6);
      EXPECT_LT(std::abs(got - want), 1e-6 * std::max(1.0, std::abs(want)));
    }
  }
}

TEST(Resolvent, ShiftCovariance) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 10; ++i) {
    RecurrenceSpec spec = ansatz::testing::random_second_order(rng);
    const RationalFunction lk = log_derivative_of(spec);
    spec.shift = 1;
    const RationalFunction lk1 = log_derivative_of(spec);
    for (Complex t : probes_avoiding(rng, {0.0}, 10)) {
      const auto dt = boundary_polynomial(spec)(t);
      if (std::abs(dt) < 0.1) continue;
      EXPECT_LT(std::abs(lk1(t) - lk(t) + 1.0 / t), 1e-12 * (1.0 + std::abs(lk(t))));
    }
  }
}
