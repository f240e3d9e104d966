#include "ansatz/representation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace ansatz {

namespace {

// Normalization integrals below this fraction of the integrand scale vanish.
constexpr double kNormFloor = 1e-12;
constexpr double kWindowSlack = 1e-12;

Evaluation integral_at(const IntegralRepresentation& rep, Complex x) {
  Evaluation e;
  e.quadrature = integrate(rep.weight, x + double(rep.solution.shift), rep.path, rep.tol, rep.quadrature);
  e.value = rep.normalization * e.quadrature.value;
  return e;
}

void require_inside(const Interval& window, double x, const char* what) {
  const double slack = kWindowSlack * std::max(1.0, std::abs(x));
  if (x < window.lo - slack || x > window.hi + slack) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s %.17g outside the window [%.17g, %.17g]", what, x, window.lo, window.hi);
    throw Error(ErrorKind::out_of_domain, buf);
  }
}

std::string describe(const EndpointSpec& e) {
  char buf[128];
  if (e.kind == EndpointKind::infinite) {
    std::snprintf(buf, sizeof buf, "ray(%.6g)", e.direction);
  } else if (e.approach) {
    std::snprintf(buf, sizeof buf, "(%.6g%+.6gi) via %.6g", e.location.real(), e.location.imag(),
                  std::arg(*e.approach));
  } else {
    std::snprintf(buf, sizeof buf, "(%.6g%+.6gi)", e.location.real(), e.location.imag());
  }
  return buf;
}

}  // namespace

double residual_tolerance(double tol) { return std::max(1e-6, 100.0 * tol); }

std::vector<double> probe_points(const RecurrenceSpec& spec, Interval window, int count) {
  std::vector<double> xs;
  if (count <= 0 || window.empty()) return xs;
  double hi = window.hi - spec.order;
  if (hi <= window.lo) hi = window.hi;
  const double step = (hi - window.lo) / count;
  const double scale = std::max({std::abs(spec.alpha), std::abs(spec.a), std::abs(spec.beta), std::abs(spec.b), 1.0});
  for (int j = 0; j < count; ++j) {
    double x = window.lo + (j + 0.5) * step;
    // Integers are where polynomial families vanish by symmetry, and zeros of
    // the leading coefficient make the residual meaningless.
    for (int tries = 0; tries < 4; ++tries) {
      const bool near_integer = std::abs(x - std::round(x)) < 0.05;
      const bool near_zero = std::abs(spec.leading(x)) < 1e-6 * scale * (1.0 + std::abs(x));
      if (!near_integer && !near_zero) break;
      x += 0.1 * step;
    }
    xs.push_back(x);
  }
  return xs;
}

SolveReport solve_detailed(const RecurrenceSpec& spec, Interval x_window, const SolveOptions& options) {
  spec.validate();
  if (x_window.empty()) throw Error(ErrorKind::invalid_input, "empty x window");
  if (spec.initial_conditions.empty()) throw Error(ErrorKind::invalid_input, "at least one initial condition is required");
  if (!(options.tol >= 1e-14 && options.tol <= 1e-2)) {
    throw Error(ErrorKind::invalid_input, "tolerance must lie in [1e-14, 1e-2]");
  }

  SolveReport report;
  report.solution = derive_resolvent(spec);
  report.endpoints = find_endpoints(report.solution, x_window, options.endpoints);
  const double tol_res = residual_tolerance(options.tol);
  const InitialCondition& first = spec.initial_conditions.front();

  for (const EndpointPair& pair : enumerate_pairs(report.endpoints)) {
    auto reject = [&](ErrorKind kind, std::string why) { report.rejected.push_back({pair, kind, std::move(why)}); };
    try {
      require_inside(pair.joint_window, first.x.real(), "initial condition at x =");
      PlannedPath planned = plan_path(pair, report.solution.weight, spec.shift, options.path);
      IntegralRepresentation rep{spec, report.solution, pair, std::move(planned.segments), std::move(planned.weight),
                                 Complex{1.0, 0.0}, options.tol, options.quadrature};

      const Evaluation base = integral_at(rep, first.x);
      if (!base.quadrature.converged) {
        reject(ErrorKind::path_failure, "normalization integral did not converge");
        continue;
      }
      if (std::abs(base.quadrature.value) < kNormFloor * base.quadrature.magnitude ||
          base.quadrature.value == Complex{}) {
        reject(ErrorKind::degenerate_normalization, "normalization integral vanishes");
        continue;
      }
      rep.normalization = first.value / base.quadrature.value;

      bool ok = true;
      for (std::size_t i = 1; i < spec.initial_conditions.size() && ok; ++i) {
        const InitialCondition& ic = spec.initial_conditions[i];
        if (!pair.joint_window.contains(ic.x.real())) continue;
        const Complex v = integral_at(rep, ic.x).value;
        const double scale = std::max({std::abs(ic.value), std::abs(first.value), kScaleFloor});
        if (std::abs(v - ic.value) > tol_res * scale) {
          char buf[160];
          std::snprintf(buf, sizeof buf, "initial condition at x = %.6g not reproduced (relative error %.3g)",
                        ic.x.real(), std::abs(v - ic.value) / scale);
          reject(ErrorKind::no_valid_representation, buf);
          ok = false;
        }
      }
      if (!ok) continue;

      const ScalarFunction f = [&rep](Complex x) { return integral_at(rep, x).value; };
      for (double x : probe_points(spec, pair.joint_window, options.probes)) {
        const ResidualReport r = residual(spec, f, x);
        if (r.relative_residual > tol_res) {
          char buf[160];
          std::snprintf(buf, sizeof buf, "relative residual %.3g at x = %.6g exceeds %.3g", r.relative_residual, x,
                        tol_res);
          reject(ErrorKind::no_valid_representation, buf);
          ok = false;
          break;
        }
      }
      if (ok) report.representations.push_back(std::move(rep));
    } catch (const Error& e) {
      reject(e.kind(), e.what());
    }
  }

  if (report.representations.empty()) {
    std::string msg = "every endpoint pair failed";
    for (const PairDiagnostic& d : report.rejected) {
      msg += "; [" + describe(d.pair.lower) + ", " + describe(d.pair.upper) + "] " + d.reason;
    }
    throw Error(ErrorKind::no_valid_representation, msg);
  }
  return report;
}

std::vector<IntegralRepresentation> solve(const RecurrenceSpec& spec, Interval x_window, double tol) {
  SolveOptions options;
  options.tol = tol;
  return solve_detailed(spec, x_window, options).representations;
}

Evaluation evaluate_detailed(const IntegralRepresentation& rep, Complex x) {
  require_inside(rep.pair.joint_window, x.real(), "x =");
  return integral_at(rep, x);
}

Complex evaluate(const IntegralRepresentation& rep, Complex x) { return evaluate_detailed(rep, x).value; }

std::vector<ResidualReport> verify(const IntegralRepresentation& rep, const std::vector<Complex>& xs) {
  for (Complex x : xs) {
    require_inside(rep.pair.joint_window, x.real(), "x =");
    require_inside(rep.pair.joint_window, x.real() + rep.spec.order, "x + order =");
  }
  const ScalarFunction f = [&rep](Complex x) { return integral_at(rep, x).value; };
  std::vector<ResidualReport> out;
  out.reserve(xs.size());
  for (Complex x : xs) out.push_back(residual(rep.spec, f, x));
  return out;
}

}  // namespace ansatz
