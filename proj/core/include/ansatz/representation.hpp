#pragma once

#include <string>
#include <vector>

#include "ansatz/endpoints.hpp"
#include "ansatz/error.hpp"
#include "ansatz/quadrature.hpp"
#include "ansatz/recurrence.hpp"
#include "ansatz/resolvent.hpp"

namespace ansatz {

/// f(x) = C * integral over `path` of t^(x+k) h(t) dt, solved for one
/// endpoint pair and normalized against the first initial condition.
struct IntegralRepresentation {
  RecurrenceSpec spec;
  ResolventSolution solution;
  EndpointPair pair;
  std::vector<PathSegment> path;
  /// The solution's weight with branch cuts placed for `path`.
  WeightForm weight;
  Complex normalization;
  double tol = 1e-10;
  QuadratureOptions quadrature;
};

struct SolveOptions {
  double tol = 1e-10;
  int probes = 5;
  EndpointOptions endpoints;
  PathOptions path;
  QuadratureOptions quadrature;
};

/// Why a pair was dropped.
struct PairDiagnostic {
  EndpointPair pair;
  ErrorKind kind;
  std::string reason;
};

struct SolveReport {
  ResolventSolution solution;
  std::vector<EndpointSpec> endpoints;
  std::vector<IntegralRepresentation> representations;
  std::vector<PairDiagnostic> rejected;
};

/// max(1e-6, 100 * tol)
double residual_tolerance(double tol);

/// Full pipeline with per-pair diagnostics. Throws no_valid_representation
/// (message lists each pair) when nothing survives the screens.
SolveReport solve_detailed(const RecurrenceSpec& spec, Interval x_window, const SolveOptions& options = {});

std::vector<IntegralRepresentation> solve(const RecurrenceSpec& spec, Interval x_window, double tol = 1e-10);

struct Evaluation {
  Complex value;
  QuadratureResult quadrature;
};

/// Requires Re(x) inside the pair's joint window.
Evaluation evaluate_detailed(const IntegralRepresentation& rep, Complex x);
Complex evaluate(const IntegralRepresentation& rep, Complex x);

/// Residual of the evaluated representation at each x; x + order must also
/// lie in the window.
std::vector<ResidualReport> verify(const IntegralRepresentation& rep, const std::vector<Complex>& xs);

/// Residual probes used by the screen: equispaced in the window interior,
/// nudged off integers and off zeros of the leading coefficient.
std::vector<double> probe_points(const RecurrenceSpec& spec, Interval window, int count);

}  // namespace ansatz
