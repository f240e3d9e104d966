#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ansatz/error.hpp"
#include "ansatz/quadrature.hpp"

namespace ansatz {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kDetourChords = 8;
constexpr int kLoopChords = 12;
constexpr int kCutAttempts = 8;

double cross(Complex u, Complex v) { return u.real() * v.imag() - u.imag() * v.real(); }
double dot(Complex u, Complex v) { return u.real() * v.real() + u.imag() * v.imag(); }

double distance_to_segment(Complex q, Complex a, Complex b) {
  const Complex d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(q - a);
  const double lambda = std::clamp(dot(q - a, d) / len2, 0.0, 1.0);
  return std::abs(q - (a + lambda * d));
}

bool same_endpoint(const EndpointSpec& l, const EndpointSpec& r) {
  if (l.kind != r.kind) return false;
  if (l.kind == EndpointKind::infinite) return l.direction == r.direction;
  return l.location == r.location && l.approach == r.approach;
}

// Piece of path geometry used for the cut test: a segment [a, b] or, when
// `ray`, the half-line a + s*dir.
struct Edge {
  Complex a;
  Complex b;
  bool ray = false;
};

// Does the ray root + s*e^{i psi}, s > slack, meet the edge?
bool cut_meets(Complex root, double psi, const Edge& edge, double slack) {
  const Complex e = std::polar(1.0, psi);
  const Complex d = edge.ray ? edge.b : edge.b - edge.a;
  const double denom = cross(d, e);
  const Complex ra = root - edge.a;
  if (std::abs(denom) <= 1e-14 * std::abs(d)) {
    if (std::abs(cross(ra, e)) > slack) return false;
    const double sa = dot(edge.a - root, e);
    if (edge.ray) return sa > slack || dot(d, e) > 0.0;
    return std::max(sa, dot(edge.b - root, e)) > slack;
  }
  const double lambda = cross(ra, e) / denom;
  const double s = cross(ra, d) / denom;
  const bool on_edge = edge.ray ? lambda >= 0.0 : (lambda >= 0.0 && lambda <= 1.0);
  return on_edge && s > slack;
}

bool cut_is_clear(Complex root, double psi, const std::vector<Edge>& edges, double slack) {
  return std::none_of(edges.begin(), edges.end(), [&](const Edge& e) { return cut_meets(root, psi, e, slack); });
}

// Rotate the cut at `root` off the path, starting from its preferred angle.
double clear_angle(Complex root, double preferred, const std::vector<Edge>& edges, double slack) {
  if (cut_is_clear(root, preferred, edges, slack)) return preferred;
  for (int j = 1; j <= kCutAttempts; ++j) {
    for (double sign : {1.0, -1.0}) {
      const double psi = preferred + sign * j * kPi / 8.0;
      if (cut_is_clear(root, psi, edges, slack)) return psi;
    }
  }
  throw Error(ErrorKind::path_planning, "no branch-cut direction avoids the path");
}

std::vector<Complex> semicircle(Complex center, Complex u, double side, double radius) {
  const Complex n = Complex{0.0, 1.0} * u * side;
  std::vector<Complex> pts;
  for (int j = 0; j <= kDetourChords; ++j) {
    const double phi = kPi * j / kDetourChords;
    pts.push_back(center - radius * std::cos(phi) * u + radius * std::sin(phi) * n);
  }
  return pts;
}

PathSegment line(Complex a, Complex b, SegmentTransform transform) {
  PathSegment s;
  s.start = a;
  s.end = b;
  s.transform = transform;
  return s;
}

}  // namespace

double ray_split_radius(const WeightForm& w, double angle, const PathOptions& options) {
  double outer = 0.0;
  for (Complex p : w.singular_points()) outer = std::max(outer, std::abs(p));
  double T = options.max_split;
  if (w.exp_poly.degree() >= 1) {
    const double target = std::log(options.split_decay);
    const double base = w.exp_poly(Complex{}).real();
    const Complex dir = std::polar(1.0, angle);
    for (double r = options.min_split; r <= options.max_split; r += 0.01 * std::max(1.0, r)) {
      if (w.exp_poly(r * dir).real() - base < target) {
        T = r;
        break;
      }
    }
  } else {
    T = std::clamp(2.0 * outer, options.min_split, options.max_split);
  }
  return std::max(T, 1.25 * outer);
}

PlannedPath plan_path(const EndpointPair& pair, const WeightForm& w, int shift, const PathOptions& options) {
  const EndpointSpec& lower = pair.lower;
  const EndpointSpec& upper = pair.upper;
  if (same_endpoint(lower, upper)) throw Error(ErrorKind::path_planning, "the two endpoints coincide");
  if (pair.joint_window.empty()) throw Error(ErrorKind::path_planning, "empty joint window");

  const std::vector<Complex> singular = w.singular_points();
  const bool origin_in_weight = std::find(singular.begin(), singular.end(), Complex{}) != singular.end();
  const bool origin_passable = !origin_in_weight && pair.joint_window.lo + shift > -1.0;
  std::vector<Complex> obstacles = singular;
  if (!origin_in_weight && !origin_passable) obstacles.push_back(Complex{});

  auto reach = [&](Complex p) {
    double d = 1.0;
    for (Complex q : obstacles)
      if (q != p) d = std::min(d, std::abs(q - p));
    if (p != Complex{}) d = std::min(d, std::abs(p));
    return 0.5 * d;
  };

  PlannedPath planned;
  std::vector<PathSegment>& segs = planned.segments;
  Complex anchor;
  // Power factors whose cut direction is fixed by the geometry (loop centers).
  std::optional<std::pair<Complex, double>> pinned_cut;

  const bool loop = lower.kind == EndpointKind::finite && upper.kind == EndpointKind::finite &&
                    lower.location == upper.location;
  if (loop) {
    if (!lower.approach || !upper.approach) throw Error(ErrorKind::path_planning, "loop endpoints need approaches");
    const Complex p = lower.location;
    const double rho = reach(p);
    const Complex d1 = *lower.approach;
    const Complex d2 = *upper.approach;
    // Wind the long way around p; the short gap holds the decay bisector.
    double sweep = std::arg(d2 / d1);
    sweep = sweep > 0.0 ? sweep - 2.0 * kPi : sweep + 2.0 * kPi;
    PathSegment arc = line(p + rho * d1, p + rho * d2, SegmentTransform::finite_regular);
    const double a1 = std::arg(d1);
    for (int j = 1; j < kLoopChords; ++j) arc.waypoints.push_back(p + std::polar(rho, a1 + sweep * j / kLoopChords));
    segs.push_back(line(p, p + rho * d1, SegmentTransform::finite_endpoint_singular));
    segs.push_back(arc);
    segs.push_back(line(p + rho * d2, p, SegmentTransform::finite_endpoint_singular));
    anchor = p;
    pinned_cut = std::pair{p, std::arg(d1 + d2)};
  } else {
    auto attach = [&](const EndpointSpec& e, bool at_start, std::vector<PathSegment>& outer) -> Complex {
      if (e.kind == EndpointKind::infinite) {
        const double T = ray_split_radius(w, e.direction, options);
        const Complex q = std::polar(T, e.direction);
        PathSegment ray = line(q, q, SegmentTransform::infinite_ray);
        ray.ray_angle = e.direction;
        ray.reversed = at_start;
        outer.push_back(ray);
        return q;
      }
      if (!e.approach) return e.location;
      const Complex q = e.location + reach(e.location) * *e.approach;
      outer.push_back(at_start ? line(e.location, q, SegmentTransform::finite_endpoint_singular)
                               : line(q, e.location, SegmentTransform::finite_endpoint_singular));
      return q;
    };
    std::vector<PathSegment> head;
    std::vector<PathSegment> tail;
    const Complex A = attach(lower, true, head);
    const Complex B = attach(upper, false, tail);
    const double diameter = std::abs(B - A);
    if (diameter == 0.0) throw Error(ErrorKind::path_planning, "degenerate straight path");
    const double delta = options.clearance * diameter;
    const Complex u = (B - A) / diameter;

    // Interior vertices, keyed by their position along the core.
    std::vector<std::pair<double, std::vector<Complex>>> inserts;
    for (Complex q : obstacles) {
      if (q == A || q == B) continue;
      if (distance_to_segment(q, A, B) >= delta) continue;
      const double along = dot(q - A, u);
      const Complex center = A + along * u;
      const double offset = dot(q - center, Complex{0.0, 1.0} * u);
      inserts.push_back({along, semicircle(center, u, offset > 0.0 ? -1.0 : 1.0, 2.0 * delta)});
    }
    if (origin_passable && A != Complex{} && B != Complex{} && distance_to_segment(Complex{}, A, B) < delta) {
      inserts.push_back({dot(-A, u), {Complex{}}});
    }
    std::sort(inserts.begin(), inserts.end(), [](const auto& l, const auto& r) { return l.first < r.first; });

    const bool singular_core = (lower.kind == EndpointKind::finite && !lower.approach) ||
                               (upper.kind == EndpointKind::finite && !upper.approach);
    PathSegment core =
        line(A, B, singular_core ? SegmentTransform::finite_endpoint_singular : SegmentTransform::finite_regular);
    for (const auto& ins : inserts) core.waypoints.insert(core.waypoints.end(), ins.second.begin(), ins.second.end());

    segs = std::move(head);
    segs.push_back(std::move(core));
    segs.insert(segs.end(), tail.begin(), tail.end());
    anchor = 0.5 * (A + B);
  }

  // Geometry for the cut test.
  std::vector<Edge> edges;
  double scale = 1.0;
  for (const PathSegment& s : segs) {
    if (s.transform == SegmentTransform::infinite_ray) {
      edges.push_back({s.start, std::polar(1.0, s.ray_angle), true});
      scale = std::max(scale, std::abs(s.start));
      continue;
    }
    Complex prev = s.start;
    for (Complex wp : s.waypoints) {
      edges.push_back({prev, wp});
      prev = wp;
    }
    edges.push_back({prev, s.end});
    scale = std::max({scale, std::abs(s.start), std::abs(s.end)});
  }
  const double slack = 1e-12 * scale;

  WeightForm placed = anchored(w, anchor);
  auto choose = [&](Complex root, double preferred) {
    if (pinned_cut && pinned_cut->first == root) return cut_with_angle(root, anchor, pinned_cut->second);
    return cut_with_angle(root, anchor, clear_angle(root, preferred, edges, slack));
  };
  for (PowerFactor& f : placed.power_factors) f.cut = choose(f.root, f.cut.angle);
  placed.origin_cut = choose(Complex{}, placed.origin_cut.angle);
  planned.weight = std::move(placed);
  return planned;
}

}  // namespace ansatz
