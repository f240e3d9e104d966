#include <gtest/gtest.h>

#include <random>

#include "ansatz/error.hpp"
#include "ansatz/families.hpp"
#include "ansatz/recurrence.hpp"
#include "support.hpp"

using namespace ansatz;

TEST(Iterate, LegendreP3) {
  const auto spec = make_family("legendre", {{"x", 0.5}}).spec;
  const Complex seeds[] = {1.0, 0.5};
  const auto v = iterate_forward(spec, 0.0, seeds, 2);
  ASSERT_EQ(v.size(), 4u);
  EXPECT_LT(std::abs(v[3] + 0.4375), 1e-15);
}

TEST(Iterate, HermiteH3) {
  const auto spec = make_family("hermite", {{"x", 1.0}}).spec;
  const Complex seeds[] = {1.0, 2.0};
  EXPECT_LT(std::abs(iterate_forward(spec, 0.0, seeds, 2).back() + 4.0), 1e-14);
}

TEST(Iterate, GammaProduct) {
  const auto spec = make_family("gamma").spec;
  const Complex seeds[] = {1.0};
  const auto v = iterate_forward(spec, 1.0, seeds, 4);
  EXPECT_LT(std::abs(v.back() - 24.0), 1e-13);
}

TEST(Iterate, SingularStepThrows) {
  // (x - 1) f(x+2) = ...: leading coefficient vanishes at x = 1
  const auto spec = RecurrenceSpec::second_order(1.0, -1.0, 1.0, 0.0, 1.0, 0.0);
  const Complex seeds[] = {1.0, 1.0};
  try {
    iterate_forward(spec, 0.0, seeds, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::singular_step);
  }
}

TEST(Validate, RejectsDegenerateLeadingSide) {
  const auto spec = RecurrenceSpec::second_order(0.0, 0.0, 0.0, 0.0, 1.0, 1.0);
  try {
    spec.validate();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::degenerate_recurrence);
  }
}

TEST(Residual, ZeroFunctionVanishes) {
  const auto spec = make_family("legendre", {{"x", 0.5}}).spec;
  const auto r = residual(spec, [](Complex) { return Complex{}; }, 2.5);
  EXPECT_EQ(r.absolute_residual, 0.0);
  EXPECT_EQ(r.relative_residual, 0.0);
}

TEST(Residual, LegendreIteratesSatisfyRecurrence) {
  const auto spec = make_family("legendre", {{"x", 0.3}}).spec;
  const Complex seeds[] = {1.0, 0.3};
  const auto v = iterate_forward(spec, 0.0, seeds, 20);
  const ScalarFunction f = [&](Complex x) { return v.at(static_cast<std::size_t>(std::lround(x.real()))); };
  for (int n = 0; n <= 18; ++n) EXPECT_LE(residual(spec, f, double(n)).relative_residual, 1e-13) << n;
}

TEST(Residual, IsLinearInTheFunction) {
  std::mt19937_64 rng(3);
  const auto spec = make_family("hermite", {{"x", 0.7}}).spec;
  for (int trial = 0; trial < 20; ++trial) {
    const Complex a = ansatz::testing::random_complex(rng), b = ansatz::testing::random_complex(rng);
    const ScalarFunction f = [](Complex x) { return std::exp(0.3 * x); };
    const ScalarFunction g = [](Complex x) { return x * x + 1.0; };
    const ScalarFunction h = [&](Complex x) { return a * f(x) + b * g(x); };
    const Complex x = ansatz::testing::random_complex(rng, 4.0);
    auto signed_residual = [&](const ScalarFunction& fn) {
      const auto r = residual(spec, fn, x);
      return r.terms[0] - r.terms[1] - r.terms[2];
    };
    const Complex lhs = signed_residual(h);
    const Complex rhs = a * signed_residual(f) + b * signed_residual(g);
    EXPECT_LT(std::abs(lhs - rhs), 1e-12 * (1.0 + std::abs(lhs)));
  }
}
