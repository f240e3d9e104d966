#pragma once

#include <vector>

#include "ansatz/endpoints.hpp"
#include "ansatz/weight.hpp"

namespace ansatz {

enum class SegmentTransform { finite_regular, finite_endpoint_singular, infinite_ray };

/// One piece of an integration path.
///
/// Finite segments run start -> waypoints... -> end. A ray runs from `start`
/// to infinity along exp(i*ray_angle), or back from infinity when `reversed`.
struct PathSegment {
  Complex start;
  Complex end;
  SegmentTransform transform = SegmentTransform::finite_regular;
  double ray_angle = 0.0;
  bool reversed = false;
  std::vector<Complex> waypoints;
};

struct QuadratureOptions {
  int max_level = 12;
  /// Levels below this are never accepted, however close successive sums are.
  int min_level = 3;
};

struct QuadratureResult {
  Complex value;
  double error_estimate = 0.0;
  int nodes_used = 0;
  bool converged = false;
  /// Sum of |integrand * weight| over the final nodes; the scale used by
  /// cancellation-aware tolerances.
  double magnitude = 0.0;
};

/// Integral of t^(x_plus_k) h(t) along `path`, with double-exponential rules:
/// tanh-sinh on finite pieces, exp-sinh on rays. Levels halve the step until
/// two successive sums agree within tol. Throws path_failure naming the
/// segment when the integrand overflows; tol must lie in [1e-14, 1e-2].
QuadratureResult integrate(const WeightForm& w, Complex x_plus_k, const std::vector<PathSegment>& path, double tol,
                           const QuadratureOptions& options = {});

struct PathOptions {
  /// Detour clearance relative to the path diameter.
  double clearance = 1e-3;
  /// |exp(P)| must fall below this at the ray split radius.
  double split_decay = 1e-4;
  double min_split = 1.0;
  double max_split = 100.0;
};

/// A path together with the weight whose branch cuts it was planned against.
struct PlannedPath {
  std::vector<PathSegment> segments;
  WeightForm weight;
};

/// Straight path between the endpoints with semicircular detours around
/// singular points, ray tails for infinite endpoints and a loop for two
/// approaches to the same essential singularity. Branch cuts are re-anchored
/// at the path midpoint and rotated off the path when needed. `shift` is the
/// ansatz k; together with the pair's window it decides whether the path may
/// pass through t = 0.
PlannedPath plan_path(const EndpointPair& pair, const WeightForm& w, int shift, const PathOptions& options = {});

/// Radius along `angle` beyond which the ray tail starts.
double ray_split_radius(const WeightForm& w, double angle, const PathOptions& options = {});

}  // namespace ansatz
