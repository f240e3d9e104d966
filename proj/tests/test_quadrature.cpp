#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "ansatz/error.hpp"
#include "ansatz/families.hpp"
#include "ansatz/quadrature.hpp"
#include "support.hpp"

using namespace ansatz;
using ansatz::testing::rel_err;

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

struct Planned {
  ResolventSolution sol;
  EndpointPair pair;
  PlannedPath path;
};

Planned plan_family(const FamilyDescriptor& fam, Interval window, std::size_t pair_index = 0) {
  Planned p;
  p.sol = derive_resolvent(fam.spec);
  const auto pairs = enumerate_pairs(find_endpoints(p.sol, window));
  p.pair = pairs.at(pair_index);
  p.path = plan_path(p.pair, p.sol.weight, fam.spec.shift);
  return p;
}

PathSegment segment(Complex a, Complex b, SegmentTransform tr = SegmentTransform::finite_regular) {
  PathSegment s;
  s.start = a;
  s.end = b;
  s.transform = tr;
  return s;
}

PathSegment ray(Complex from, double angle, bool reversed) {
  PathSegment s = segment(from, from, SegmentTransform::infinite_ray);
  s.ray_angle = angle;
  s.reversed = reversed;
  return s;
}

// Hermite contour: in along angle `lo`, through 0, out along angle `hi`.
std::vector<PathSegment> hermite_contour(double lo, double hi, double radius) {
  const Complex a = std::polar(radius, lo), b = std::polar(radius, hi);
  return {ray(a, lo, true), segment(a, 0.0), segment(0.0, b), ray(b, hi, false)};
}

}  // namespace

TEST(Quadrature, GammaAtOne) {
  const double tol = 1e-10;
  const auto p = plan_family(make_family("gamma"), {0.5, 10});
  const auto r = integrate(p.path.weight, 1.0 - 1.0, p.path.segments, tol);
  EXPECT_TRUE(r.converged);
  EXPECT_LE(rel_err(r.value, 1.0), 10 * tol);
  EXPECT_LE(r.error_estimate, tol * (1.0 + std::abs(r.value)));
}

TEST(Quadrature, LegendreNormalizationIsIPi) {
  const double tol = 1e-10;
  for (double x : {2.0, 0.5, -1.5}) {
    const auto p = plan_family(make_family("legendre", {{"x", x}}), {0, 20});
    const auto r = integrate(p.path.weight, 0.0, p.path.segments, tol);
    EXPECT_TRUE(r.converged);
    EXPECT_LE(std::abs(r.value - kI * kPi), 1e-9) << x << " got " << r.value;
  }
}

TEST(Quadrature, HermiteAtZeroOrder) {
  const double tol = 1e-10;
  const auto p = plan_family(make_family("hermite", {{"x", 1.0}}), {0, 15});
  const auto r = integrate(p.path.weight, 0.0, p.path.segments, tol);
  EXPECT_LE(rel_err(r.value, 2.0 * kI * std::sqrt(kPi) * std::exp(-1.0)), 10 * tol);
}

TEST(Quadrature, RejectsBadTolerance) {
  const auto p = plan_family(make_family("gamma"), {0.5, 10});
  for (double tol : {1e-15, 0.1}) {
    try {
      integrate(p.path.weight, 0.0, p.path.segments, tol);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::invalid_input);
    }
  }
}

TEST(Quadrature, OverflowNamesSegment) {
  WeightForm w;
  w.exp_poly = Polynomial{0.0, 0.0, 1.0};
  try {
    integrate(w, 0.0, {segment(0.0, 1.0), ray(1.0, 0.0, false)}, 1e-8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::path_failure);
    EXPECT_NE(std::string(e.what()).find("segment 1"), std::string::npos) << e.what();
  }
}

TEST(Quadrature, ReportsNonConvergence) {
  const auto p = plan_family(make_family("legendre", {{"x", 2.0}}), {0, 20});
  QuadratureOptions opts;
  opts.min_level = 0;
  opts.max_level = 1;
  const auto r = integrate(p.path.weight, 0.0, p.path.segments, 1e-14, opts);
  EXPECT_FALSE(r.converged);
  EXPECT_GT(r.nodes_used, 0);
}

TEST(Quadrature, ConvergenceOrderOnGamma) {
  const auto p = plan_family(make_family("gamma"), {0.5, 10});
  const auto coarse = integrate(p.path.weight, 1.5, p.path.segments, 1e-6);
  const auto fine = integrate(p.path.weight, 1.5, p.path.segments, 1e-12);
  ASSERT_TRUE(coarse.converged && fine.converged);
  EXPECT_LT(double(fine.nodes_used) / coarse.nodes_used, std::pow(4.0, 6));
  // Gamma(2.5) = 1.5 * 0.5 * sqrt(pi)
  EXPECT_LE(rel_err(fine.value, 0.75 * std::sqrt(kPi)), 1e-11);
}

TEST(Quadrature, HermitePathIndependence) {
  const double tol = 1e-10;
  for (double x : {0.0, 1.0, 3.0}) {
    const auto sol = derive_resolvent(make_family("hermite", {{"x", x}}).spec);
    for (double n : {0.0, 2.0, 5.5}) {
      const Complex base = integrate(sol.weight, n, hermite_contour(-kPi / 2, kPi / 2, 6.0), tol).value;
      for (double tilt : {kPi / 8, -kPi / 8}) {
        const auto c = hermite_contour(-kPi / 2 + tilt, kPi / 2 + tilt, 6.0);
        const Complex rotated = integrate(sol.weight, n, c, tol).value;
        EXPECT_LE(std::abs(rotated - base), 10 * tol * std::abs(base)) << x << " " << n;
      }
    }
  }
}

TEST(Quadrature, SegmentAdditivity) {
  std::mt19937_64 rng(13);
  const double tol = 1e-10;
  const auto sol = derive_resolvent(make_family("hermite", {{"x", 1.0}}).spec);
  for (int trial = 0; trial < 10; ++trial) {
    // Right half-plane: the cut of t^1.3 runs along the negative real axis.
    const Complex a = ansatz::testing::random_complex(rng, 2.0) + 2.1;
    const Complex b = ansatz::testing::random_complex(rng, 2.0) + 2.1;
    const double s = ansatz::testing::random_real(rng, 0.1, 0.9);
    const Complex m = a + s * (b - a);
    const Complex whole = integrate(sol.weight, 1.3, {segment(a, b)}, tol).value;
    const Complex split = integrate(sol.weight, 1.3, {segment(a, m), segment(m, b)}, tol).value;
    EXPECT_LE(std::abs(whole - split), 10 * tol * std::max(1.0, std::abs(whole)));
  }
}

TEST(Path, HermiteShape) {
  const auto p = plan_family(make_family("hermite", {{"x", 1.0}}), {0, 15});
  const auto& segs = p.path.segments;
  ASSERT_EQ(segs.size(), 3u);
  EXPECT_EQ(segs[0].transform, SegmentTransform::infinite_ray);
  EXPECT_TRUE(segs[0].reversed);
  EXPECT_EQ(segs[2].transform, SegmentTransform::infinite_ray);
  EXPECT_FALSE(segs[2].reversed);
  const double T = std::abs(segs[1].start);
  EXPECT_GE(T, 1.0);
  EXPECT_LE(T, 100.0);
  EXPECT_LT(std::abs(segs[1].start + kI * T), 1e-12 * T);
  EXPECT_LT(std::abs(segs[1].end - kI * T), 1e-12 * T);
  ASSERT_EQ(segs[1].waypoints.size(), 1u);
  EXPECT_EQ(segs[1].waypoints[0], Complex{});
}

TEST(Path, IdenticalEndpointsFail) {
  const auto sol = derive_resolvent(make_family("legendre", {{"x", 2.0}}).spec);
  const auto eps = find_endpoints(sol, {0, 20});
  EndpointPair pair{eps[0], eps[0], eps[0].window};
  try {
    plan_path(pair, sol.weight, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::path_planning);
  }
}

TEST(Path, DetoursKeepClearOfInteriorSingularities) {
  // A power factor sitting on the straight line between two endpoints.
  WeightForm w;
  w.power_factors.push_back({-1.0, -0.5, {}});
  w.power_factors.push_back({1.0, -0.5, {}});
  w.power_factors.push_back({0.3, 0.5, {}});
  EndpointSpec lo, hi;
  lo.location = -1.0;
  hi.location = 1.0;
  lo.window = hi.window = {0, 1};
  const auto planned = plan_path({lo, hi, {0, 1}}, w, 0);
  const double delta = 1e-3 * 2.0;
  bool detoured = false;
  for (const PathSegment& s : planned.segments) {
    for (Complex wp : s.waypoints) {
      EXPECT_GE(std::abs(wp - 0.3), delta * (1 - 1e-9));
      detoured = detoured || std::abs(wp.imag()) > 0.0;
    }
  }
  EXPECT_TRUE(detoured);
  const auto r = integrate(planned.weight, 0.5, planned.segments, 1e-10);
  EXPECT_TRUE(r.converged);
  EXPECT_TRUE(std::isfinite(std::abs(r.value)));
}
