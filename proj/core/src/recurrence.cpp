#include "ansatz/recurrence.hpp"

#include <algorithm>
#include <string>

#include "ansatz/error.hpp"

namespace ansatz {

namespace {

std::string describe(Complex z) {
  return "(" + std::to_string(z.real()) + ", " + std::to_string(z.imag()) + ")";
}

}  // namespace

RecurrenceSpec RecurrenceSpec::second_order(Complex alpha, Complex a, Complex beta, Complex b, Complex gamma,
                                            Complex c, int shift) {
  RecurrenceSpec spec;
  spec.order = 2;
  spec.alpha = alpha;
  spec.a = a;
  spec.beta = beta;
  spec.b = b;
  spec.gamma = gamma;
  spec.c = c;
  spec.shift = shift;
  return spec;
}

RecurrenceSpec RecurrenceSpec::first_order(Complex beta, Complex b, Complex gamma, Complex c, int shift) {
  RecurrenceSpec spec;
  spec.order = 1;
  spec.beta = beta;
  spec.b = b;
  spec.gamma = gamma;
  spec.c = c;
  spec.shift = shift;
  return spec;
}

void RecurrenceSpec::validate() const {
  if (order != 1 && order != 2) {
    throw Error(ErrorKind::invalid_input, "order must be 1 or 2, got " + std::to_string(order));
  }
  const bool lead_vanishes = order == 2 ? (alpha == Complex{} && a == Complex{}) : (beta == Complex{} && b == Complex{});
  if (lead_vanishes) {
    throw Error(ErrorKind::degenerate_recurrence, "the leading side of the recurrence vanishes identically");
  }
  if (initial_conditions.empty()) {
    throw Error(ErrorKind::invalid_input, "at least one initial condition is required");
  }
}

std::vector<Complex> iterate_forward(const RecurrenceSpec& spec, Complex x0, std::span<const Complex> seeds,
                                     int n_steps) {
  if (static_cast<int>(seeds.size()) != spec.order) {
    throw Error(ErrorKind::invalid_input, "expected " + std::to_string(spec.order) + " seed values");
  }
  if (n_steps < 0) throw Error(ErrorKind::invalid_input, "n_steps must be non-negative");

  std::vector<Complex> values(seeds.begin(), seeds.end());
  values.reserve(values.size() + static_cast<std::size_t>(n_steps));
  for (int step = 0; step < n_steps; ++step) {
    const Complex x = x0 + double(step);
    const Complex lead = spec.leading(x);
    if (std::abs(lead) <= kScaleFloor) {
      throw Error(ErrorKind::singular_step, "leading coefficient vanishes at x = " + describe(x));
    }
    const std::size_t i = static_cast<std::size_t>(step);
    Complex next;
    if (spec.order == 2) {
      next = ((spec.beta * x + spec.b) * values[i + 1] + (spec.gamma * x + spec.c) * values[i]) / lead;
    } else {
      next = (spec.gamma * x + spec.c) * values[i] / lead;
    }
    values.push_back(next);
  }
  return values;
}

ResidualReport residual(const RecurrenceSpec& spec, const ScalarFunction& f, Complex x) {
  ResidualReport report;
  report.x = x;
  if (spec.order == 2) {
    report.terms = {(spec.alpha * x + spec.a) * f(x + 2.0), (spec.beta * x + spec.b) * f(x + 1.0),
                    (spec.gamma * x + spec.c) * f(x)};
    report.absolute_residual = std::abs(report.terms[0] - report.terms[1] - report.terms[2]);
  } else {
    report.terms = {(spec.beta * x + spec.b) * f(x + 1.0), (spec.gamma * x + spec.c) * f(x)};
    report.absolute_residual = std::abs(report.terms[0] - report.terms[1]);
  }
  double scale = kScaleFloor;
  for (Complex t : report.terms) scale = std::max(scale, std::abs(t));
  report.relative_residual = report.absolute_residual / scale;
  return report;
}

}  // namespace ansatz
