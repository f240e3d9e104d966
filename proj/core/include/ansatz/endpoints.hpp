#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ansatz/resolvent.hpp"

namespace ansatz {

/// Closed real interval [lo, hi]; empty when lo > hi.
struct Interval {
  double lo = 0.0;
  double hi = -1.0;

  bool empty() const noexcept { return lo > hi; }
  bool contains(double x) const noexcept { return x >= lo && x <= hi; }
  Interval intersect(const Interval& other) const noexcept;

  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class EndpointKind { finite, infinite };

/// A zero of the boundary term B(t) = t^(x+k+1) D(t) h(t): either a finite
/// point (approached along `approach` when it is an essential singularity)
/// or a ray r*exp(i*direction) with r -> infinity.
struct EndpointSpec {
  EndpointKind kind = EndpointKind::finite;
  Complex location{};
  double direction = 0.0;
  std::optional<Complex> approach;
  Interval window;
  /// True when admissibility depends on x (t = 0 through the moment factor,
  /// or a power-law tail).
  bool conditional = false;
};

struct EndpointPair {
  EndpointSpec lower;
  EndpointSpec upper;
  Interval joint_window;
};

enum class ConditionalPolicy {
  /// Use conditional endpoints only when fewer than two unconditional exist.
  fallback,
  always,
};

struct EndpointOptions {
  ConditionalPolicy conditional_policy = ConditionalPolicy::fallback;
  /// Smallest Re(local exponent) accepted for power-law decay.
  double min_exponent = 0.05;
  /// Required drop of |B| along the validation sequence.
  double decay_ratio = 1e-8;
};

/// Candidate endpoints, each validated numerically at both edges of its
/// window. Throws no_representation when fewer than two survive.
std::vector<EndpointSpec> find_endpoints(const ResolventSolution& sol, Interval x_window,
                                         const EndpointOptions& options = {});

/// All unordered pairs with a nonempty joint window, finite before infinite,
/// then lexicographic by location / approach angle / ray angle.
std::vector<EndpointPair> enumerate_pairs(std::span<const EndpointSpec> endpoints);

/// log|B(t)| for real-part purposes; `local` gives exact offsets near a root.
double boundary_log_magnitude(const ResolventSolution& sol, double x, Complex t,
                              const std::optional<LocalOffset>& local = std::nullopt);

/// The decay test applied by find_endpoints: |B| along a geometric sequence
/// towards the endpoint must fall monotonically from its peak to below
/// decay_ratio times that peak.
bool validate_decay(const ResolventSolution& sol, const EndpointSpec& endpoint, double x,
                    const EndpointOptions& options = {});

/// Strict weak ordering used by enumerate_pairs.
bool endpoint_less(const EndpointSpec& lhs, const EndpointSpec& rhs);

}  // namespace ansatz
