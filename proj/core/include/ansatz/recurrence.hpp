#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ansatz/algebra.hpp"

namespace ansatz {

/// Floor applied to the term scale when forming relative residuals.
inline constexpr double kScaleFloor = 1e-300;

struct InitialCondition {
  Complex x;
  Complex value;
};

/// Difference equation with linear coefficients in shifted normal form:
///
///   order 2:  (alpha x + a) f(x+2) = (beta x + b) f(x+1) + (gamma x + c) f(x)
///   order 1:                         (beta x + b) f(x+1) = (gamma x + c) f(x)
///
/// `shift` is the k of the ansatz f(x) = C * integral t^(x+k) h(t) dt. The first
/// initial condition normalizes the representation; later ones are only
/// checked.
struct RecurrenceSpec {
  int order = 2;
  Complex alpha, a, beta, b, gamma, c;
  int shift = 0;
  std::vector<InitialCondition> initial_conditions;

  static RecurrenceSpec second_order(Complex alpha, Complex a, Complex beta, Complex b, Complex gamma,
                                     Complex c, int shift = 0);
  static RecurrenceSpec first_order(Complex beta, Complex b, Complex gamma, Complex c, int shift = -1);

  /// Coefficient multiplying f(x + order).
  Complex leading(Complex x) const { return order == 2 ? alpha * x + a : beta * x + b; }

  /// Throws invalid_input / degenerate_recurrence when the invariants fail.
  void validate() const;
};

struct ResidualReport {
  Complex x;
  double absolute_residual = 0.0;
  double relative_residual = 0.0;
  /// Left-hand term followed by the right-hand terms, highest shift first.
  std::vector<Complex> terms;
};

/// Unrolls the recurrence from seeds at x0, x0+1 (one seed for order 1).
/// Returns the seeds followed by n_steps new values.
std::vector<Complex> iterate_forward(const RecurrenceSpec& spec, Complex x0, std::span<const Complex> seeds,
                                     int n_steps);

using ScalarFunction = std::function<Complex(Complex)>;

ResidualReport residual(const RecurrenceSpec& spec, const ScalarFunction& f, Complex x);

}  // namespace ansatz
