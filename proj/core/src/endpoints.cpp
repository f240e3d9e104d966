#include "ansatz/endpoints.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ansatz/error.hpp"

namespace ansatz {

namespace {

constexpr double kPi = std::numbers::pi;
// Essential endpoints are approached at the decay bisector rotated by this.
constexpr double kApproachSpread = kPi / 4.0;
constexpr int kSequenceLength = 1200;  // quarter decades: 300 decades total
constexpr double kSequenceStep = 0.25;

double wrap_angle(double a) {
  while (a <= -kPi) a += 2.0 * kPi;
  while (a > kPi) a -= 2.0 * kPi;
  return a;
}

// |B(t)| = |t^(x+k+1)| |D(t)| |h(t)|, with D kept in factored form so local
// offsets apply to its roots as well.
class BoundaryModel {
 public:
  explicit BoundaryModel(const ResolventSolution& sol) : sol_(sol) {
    const Polynomial& D = sol.boundary_poly;
    lead_ = D.leading();
    if (D.degree() >= 1) roots_ = roots_low_degree(D);
  }

  double log_magnitude(double x, Complex t, const std::optional<LocalOffset>& local) const {
    auto diff = [&](Complex root) { return (local && local->base == root) ? local->offset : t - root; };
    const double moment = x + sol_.shift + 1.0;
    double acc = moment * std::log(std::abs(diff(Complex{})));
    acc += std::log(std::abs(lead_));
    for (const Root& r : roots_) acc += r.multiplicity * std::log(std::abs(diff(r.value)));
    acc += weight_log(sol_.weight, t, local).real();
    return acc;
  }

  std::span<const Root> d_roots() const { return roots_; }

 private:
  const ResolventSolution& sol_;
  Complex lead_;
  std::vector<Root> roots_;
};

struct FinitePoint {
  Complex location;
  Complex power_exponent{};
  int d_multiplicity = 0;
  Complex essential{};
};

std::vector<FinitePoint> finite_candidates(const ResolventSolution& sol, const BoundaryModel& model) {
  std::vector<FinitePoint> pts;
  auto find_or_add = [&](Complex p) -> FinitePoint& {
    for (FinitePoint& q : pts)
      if (nearly_equal(q.location, p, kRootTolerance)) return q;
    pts.push_back({p});
    return pts.back();
  };
  find_or_add(Complex{});
  for (const Root& r : model.d_roots()) find_or_add(r.value).d_multiplicity += r.multiplicity;
  for (const PowerFactor& f : sol.weight.power_factors) find_or_add(f.root).power_exponent += f.exponent;
  for (const EssentialTerm& e : sol.weight.essential_terms) find_or_add(e.pole).essential += e.strength;
  return pts;
}

double distance_to_others(const std::vector<FinitePoint>& pts, Complex p) {
  double d = std::numeric_limits<double>::infinity();
  for (const FinitePoint& q : pts)
    if (q.location != p) d = std::min(d, std::abs(q.location - p));
  return d;
}

bool monotone_tail(const std::vector<double>& values, double log_ratio) {
  if (values.empty()) return false;
  for (double v : values)
    if (std::isnan(v) || v == std::numeric_limits<double>::infinity()) return false;
  const auto peak_it = std::max_element(values.begin(), values.end());
  const double peak = *peak_it;
  if (!std::isfinite(peak)) return false;
  for (auto it = peak_it + 1; it != values.end(); ++it) {
    if (*it > *(it - 1) + 1e-9 * std::max(1.0, std::abs(*(it - 1)))) return false;
  }
  return values.back() <= peak + log_ratio;
}

}  // namespace

Interval Interval::intersect(const Interval& other) const noexcept {
  return {std::max(lo, other.lo), std::min(hi, other.hi)};
}

double boundary_log_magnitude(const ResolventSolution& sol, double x, Complex t,
                              const std::optional<LocalOffset>& local) {
  return BoundaryModel(sol).log_magnitude(x, t, local);
}

bool validate_decay(const ResolventSolution& sol, const EndpointSpec& endpoint, double x,
                    const EndpointOptions& options) {
  const BoundaryModel model(sol);
  const double log_ratio = std::log(options.decay_ratio);
  std::vector<double> values;
  values.reserve(kSequenceLength);
  try {
    if (endpoint.kind == EndpointKind::finite) {
      const std::vector<FinitePoint> pts = finite_candidates(sol, model);
      const double reach = 0.5 * std::min(1.0, distance_to_others(pts, endpoint.location));
      const Complex dir = endpoint.approach.value_or(Complex{1.0, 0.0});
      for (int j = 0; j < kSequenceLength; ++j) {
        const Complex offset = dir * (reach * std::pow(10.0, -kSequenceStep * j));
        const Complex t = endpoint.location + offset;
        values.push_back(model.log_magnitude(x, t, LocalOffset{endpoint.location, offset}));
        if (values.back() < *std::max_element(values.begin(), values.end()) + log_ratio - 20.0) break;
      }
    } else {
      double radius = 1.0;
      for (Complex p : sol.weight.singular_points()) radius = std::max(radius, 2.0 * std::abs(p));
      for (const Root& r : model.d_roots()) radius = std::max(radius, 2.0 * std::abs(r.value));
      const Complex dir = std::polar(1.0, endpoint.direction);
      for (int j = 0; j < kSequenceLength; ++j) {
        const Complex t = dir * (radius * std::pow(10.0, kSequenceStep * j));
        values.push_back(model.log_magnitude(x, t, std::nullopt));
        if (values.back() < *std::max_element(values.begin(), values.end()) + log_ratio - 20.0) break;
      }
    }
  } catch (const Error&) {
    return false;
  }
  return monotone_tail(values, log_ratio);
}

std::vector<EndpointSpec> find_endpoints(const ResolventSolution& sol, Interval x_window,
                                         const EndpointOptions& options) {
  if (x_window.empty()) throw Error(ErrorKind::invalid_input, "empty x window");
  const BoundaryModel model(sol);
  const double k1 = sol.shift + 1.0;
  std::vector<EndpointSpec> candidates;

  const std::vector<FinitePoint> pts = finite_candidates(sol, model);
  for (const FinitePoint& p : pts) {
    const bool at_origin = p.location == Complex{};
    if (p.essential != Complex{}) {
      const Complex bisector = -p.essential / std::abs(p.essential);
      for (double spread : {-kApproachSpread, kApproachSpread}) {
        EndpointSpec e;
        e.location = p.location;
        e.approach = bisector * std::polar(1.0, spread);
        e.window = x_window;
        candidates.push_back(e);
      }
      continue;
    }
    const double fixed = (p.power_exponent + double(p.d_multiplicity)).real();
    EndpointSpec e;
    e.location = p.location;
    if (at_origin) {
      e.window = x_window.intersect({options.min_exponent - k1 - fixed, x_window.hi});
      e.conditional = true;
    } else if (fixed >= options.min_exponent) {
      e.window = x_window;
    } else {
      continue;
    }
    if (!e.window.empty()) candidates.push_back(e);
  }

  const Polynomial& P = sol.weight.exp_poly;
  if (P.degree() == 2) {
    const double theta = 0.5 * (kPi - std::arg(P.coefficient(2)));
    for (double dir : {theta, theta + kPi}) {
      EndpointSpec e;
      e.kind = EndpointKind::infinite;
      e.direction = wrap_angle(dir);
      e.window = x_window;
      candidates.push_back(e);
    }
  } else if (P.degree() == 1) {
    EndpointSpec e;
    e.kind = EndpointKind::infinite;
    e.direction = wrap_angle(kPi - std::arg(P.coefficient(1)));
    e.window = x_window;
    candidates.push_back(e);
  } else {
    Complex mu_sum{};
    for (const PowerFactor& f : sol.weight.power_factors) mu_sum += f.exponent;
    const double fixed = k1 + std::max(sol.boundary_poly.degree(), 0) + mu_sum.real();
    EndpointSpec e;
    e.kind = EndpointKind::infinite;
    e.direction = 0.0;
    e.conditional = true;
    e.window = x_window.intersect({x_window.lo, -options.min_exponent - fixed});
    if (!e.window.empty()) candidates.push_back(e);
  }

  std::vector<EndpointSpec> validated;
  for (const EndpointSpec& e : candidates) {
    if (validate_decay(sol, e, e.window.lo, options) && validate_decay(sol, e, e.window.hi, options)) {
      validated.push_back(e);
    }
  }

  const auto unconditional = std::count_if(validated.begin(), validated.end(),
                                           [](const EndpointSpec& e) { return !e.conditional; });
  if (options.conditional_policy == ConditionalPolicy::fallback && unconditional >= 2) {
    std::erase_if(validated, [](const EndpointSpec& e) { return e.conditional; });
  }
  if (validated.size() < 2) {
    throw Error(ErrorKind::no_representation,
                "the boundary term vanishes at " + std::to_string(validated.size()) + " point(s); need two");
  }
  std::sort(validated.begin(), validated.end(), endpoint_less);
  return validated;
}

bool endpoint_less(const EndpointSpec& lhs, const EndpointSpec& rhs) {
  if (lhs.kind != rhs.kind) return lhs.kind == EndpointKind::finite;
  if (lhs.kind == EndpointKind::infinite) return lhs.direction < rhs.direction;
  if (lhs.location.real() != rhs.location.real()) return lhs.location.real() < rhs.location.real();
  if (lhs.location.imag() != rhs.location.imag()) return lhs.location.imag() < rhs.location.imag();
  const double la = lhs.approach ? std::arg(*lhs.approach) : -10.0;
  const double ra = rhs.approach ? std::arg(*rhs.approach) : -10.0;
  return la < ra;
}

std::vector<EndpointPair> enumerate_pairs(std::span<const EndpointSpec> endpoints) {
  std::vector<EndpointPair> pairs;
  for (std::size_t i = 0; i < endpoints.size(); ++i) {
    for (std::size_t j = i + 1; j < endpoints.size(); ++j) {
      const Interval joint = endpoints[i].window.intersect(endpoints[j].window);
      if (joint.empty()) continue;
      const bool swap = endpoint_less(endpoints[j], endpoints[i]);
      pairs.push_back({swap ? endpoints[j] : endpoints[i], swap ? endpoints[i] : endpoints[j], joint});
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const EndpointPair& l, const EndpointPair& r) {
    if (endpoint_less(l.lower, r.lower)) return true;
    if (endpoint_less(r.lower, l.lower)) return false;
    return endpoint_less(l.upper, r.upper);
  });
  return pairs;
}

}  // namespace ansatz
