#pragma once

#include <span>

#include "ansatz/algebra.hpp"
#include "ansatz/recurrence.hpp"
#include "ansatz/weight.hpp"

namespace ansatz {

/// Closed-form solution of the coefficient-comparison system for R(t) = t.
///
/// The boundary function is Q(t) = D(t) h(t) with D = alpha t^2 - beta t - gamma
/// (order 2) or D = beta t - gamma (order 1); log_derivative is h'/h.
struct ResolventSolution {
  WeightForm weight;
  Polynomial boundary_poly;
  RationalFunction log_derivative{Polynomial{}, Polynomial::constant(1.0)};
  int shift = 0;
  int order = 2;
};

/// D(t) for the given recurrence.
Polynomial boundary_polynomial(const RecurrenceSpec& spec);

/// h'/h = M(t) / (t D(t)) with the shift-adapted numerator M.
RationalFunction log_derivative_of(const RecurrenceSpec& spec);

/// Derives h by partial fractions of h'/h and term-wise integration:
/// simple poles become power factors, double poles essential terms and the
/// polynomial part the exponential polynomial. The multiplicative constant
/// is fixed to 1.
ResolventSolution derive_resolvent(const RecurrenceSpec& spec);

/// Worst relative defect of the two coefficient-comparison equations
///   (I)  alpha t^2 h = beta t h + gamma h + Q
///   (II) a t^2 h = b t h + c h + (k+1) Q + t Q'
/// (order-1 analogues without the t^2 terms) at the probe points. h and h'
/// come from the weight's closed form.
double resolvent_check(const RecurrenceSpec& spec, const ResolventSolution& sol, std::span<const Complex> probes);

}  // namespace ansatz
