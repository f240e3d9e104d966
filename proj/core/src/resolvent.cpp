#include "ansatz/resolvent.hpp"

#include <algorithm>
#include <cmath>

#include "ansatz/error.hpp"

namespace ansatz {

namespace {

// Leading coefficients that cancel to roundoff would create spurious roots.
constexpr double kTrim = 1e-14;
constexpr double kResidueFloor = 1e-12;

// Drops real or imaginary parts that are roundoff relative to |z|.
Complex clean(Complex z) {
  const double floor = 1e-14 * std::abs(z);
  return {std::abs(z.real()) <= floor ? 0.0 : z.real(), std::abs(z.imag()) <= floor ? 0.0 : z.imag()};
}

const Polynomial kT{0.0, 1.0};

void require_nondegenerate(const RecurrenceSpec& spec) {
  if (spec.order != 1 && spec.order != 2) {
    throw Error(ErrorKind::invalid_input, "order must be 1 or 2");
  }
  const bool lead_vanishes = spec.order == 2 ? (spec.alpha == Complex{} && spec.a == Complex{})
                                             : (spec.beta == Complex{} && spec.b == Complex{});
  if (lead_vanishes) throw Error(ErrorKind::degenerate_recurrence, "the leading side vanishes identically");
}

double relative_defect(Complex lhs, std::initializer_list<Complex> rhs) {
  Complex diff = lhs;
  double scale = std::abs(lhs);
  for (Complex r : rhs) {
    diff -= r;
    scale = std::max(scale, std::abs(r));
  }
  return std::abs(diff) / std::max(scale, kScaleFloor);
}

}  // namespace

Polynomial boundary_polynomial(const RecurrenceSpec& spec) {
  if (spec.order == 2) return Polynomial{-spec.gamma, -spec.beta, spec.alpha};
  return Polynomial{-spec.gamma, spec.beta};
}

RationalFunction log_derivative_of(const RecurrenceSpec& spec) {
  require_nondegenerate(spec);
  const double scale = std::max({std::abs(spec.alpha), std::abs(spec.a), std::abs(spec.beta), std::abs(spec.b),
                                 std::abs(spec.gamma), std::abs(spec.c), 1e-300});
  const Polynomial D = boundary_polynomial(spec).trimmed(kTrim);
  if (D.is_zero()) {
    throw Error(ErrorKind::degenerate_recurrence, "boundary polynomial D(t) vanishes identically");
  }
  const Complex k1 = double(spec.shift + 1);
  Polynomial M = spec.order == 2 ? Polynomial{-spec.c, -spec.b, spec.a} : Polynomial{-spec.c, spec.b};
  M = M - k1 * D - kT * D.derivative();
  // Trim against the coefficient scale, not M itself: M may be tiny overall.
  std::vector<Complex> m(M.coefficients().begin(), M.coefficients().end());
  while (!m.empty() && std::abs(m.back()) <= kTrim * scale) m.pop_back();
  return RationalFunction(Polynomial(std::move(m)), kT * D);
}

ResolventSolution derive_resolvent(const RecurrenceSpec& spec) {
  ResolventSolution sol;
  sol.order = spec.order;
  sol.shift = spec.shift;
  sol.log_derivative = log_derivative_of(spec);
  sol.boundary_poly = boundary_polynomial(spec).trimmed(kTrim);

  const PartialFractionExpansion pf = partial_fractions(sol.log_derivative);
  WeightForm& w = sol.weight;
  w.exp_poly = pf.polynomial_part.antiderivative();
  const double snap = kRootTolerance * std::max(1.0, sol.boundary_poly.max_abs());
  // Poles must match the roots of D bit for bit so local offsets apply to both.
  std::vector<Root> d_roots;
  if (sol.boundary_poly.degree() >= 1) d_roots = roots_low_degree(sol.boundary_poly);
  double coef_scale = 1.0;
  for (const PoleTerm& term : pf.terms) coef_scale = std::max(coef_scale, std::abs(term.coefficient));
  for (const PoleTerm& term : pf.terms) {
    // Residues at roundoff level come from cancelled factors.
    if (std::abs(term.coefficient) <= kResidueFloor * coef_scale) continue;
    Complex pole = std::abs(term.pole) <= snap ? Complex{} : term.pole;
    for (const Root& r : d_roots)
      if (pole != Complex{} && nearly_equal(pole, r.value, kRootTolerance)) pole = r.value;
    switch (term.order) {
      case 1:
        w.power_factors.push_back({pole, clean(term.coefficient), {}});
        break;
      case 2:
        w.essential_terms.push_back({pole, -clean(term.coefficient)});
        break;
      default:
        throw Error(ErrorKind::internal_consistency,
                    "pole of order " + std::to_string(term.order) + " in the logarithmic derivative");
    }
  }

  Complex anchor{};
  const std::vector<Complex> pts = w.singular_points();
  for (Complex p : pts) anchor += p;
  if (!pts.empty()) anchor /= double(pts.size());
  sol.weight = anchored(std::move(sol.weight), anchor);
  return sol;
}

double resolvent_check(const RecurrenceSpec& spec, const ResolventSolution& sol, std::span<const Complex> probes) {
  const Polynomial& D = sol.boundary_poly;
  const Polynomial dD = D.derivative();
  const Complex k1 = double(sol.shift + 1);
  double worst = 0.0;
  for (Complex t : probes) {
    const Complex h = weight_eval(sol.weight, t);
    const Complex dh = h * weight_log_derivative(sol.weight, t);
    const Complex Q = D(t) * h;
    const Complex dQ = dD(t) * h + D(t) * dh;
    if (spec.order == 2) {
      worst = std::max(worst, relative_defect(spec.alpha * t * t * h, {spec.beta * t * h, spec.gamma * h, Q}));
      worst = std::max(worst, relative_defect(spec.a * t * t * h, {spec.b * t * h, spec.c * h, k1 * Q, t * dQ}));
    } else {
      worst = std::max(worst, relative_defect(spec.beta * t * h, {spec.gamma * h, Q}));
      worst = std::max(worst, relative_defect(spec.b * t * h, {spec.c * h, k1 * Q, t * dQ}));
    }
  }
  return worst;
}

}  // namespace ansatz
