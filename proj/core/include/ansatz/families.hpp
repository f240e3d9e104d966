#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ansatz/endpoints.hpp"
#include "ansatz/recurrence.hpp"

namespace ansatz {

/// A built-in problem: recurrence in shifted normal form, the default x
/// window used by solve, and an independent reference evaluator.
///
///   gamma     f(x+1) = x f(x),                         f(1) = 1
///   legendre  (n+2)P(n+2) = (2n+3)x P(n+1) - (n+1)P(n),   P(0) = 1
///   hermite   H(n+2) = 2x H(n+1) - 2(n+1) H(n),          H(0) = 1, H(1) = 2x
///   laguerre  (n+2)L(n+2) = (2n+3-x)L(n+1) - (n+1)L(n),  L(0) = 1
///   gauss2f1  Gauss' contiguous relation in the first parameter a,
///             f(a) = 2F1(a, b; c; z), seeds at a = 1 and a = 2
struct FamilyDescriptor {
  std::string name;
  std::map<std::string, Complex> parameters;
  RecurrenceSpec spec;
  Interval window;
  std::string oracle;
};

std::vector<std::string> family_names();

/// Throws invalid_input for unknown names, missing or unknown parameters, and
/// excluded values (legendre x = +-1; gauss2f1 needs 0 < |z| < 1 and c not a
/// nonpositive integer).
FamilyDescriptor make_family(std::string_view name, const std::map<std::string, Complex>& parameters = {});

/// Reference value. Polynomial families take integer x >= 0, gamma integer
/// or half-integer x >= 1/2; anything else is out_of_domain.
Complex oracle_eval(const FamilyDescriptor& family, Complex x);

/// Truncated Gauss series; stops once a geometric bound on the tail is below
/// 1e-14 * max(1, |sum|). Requires |z| < 1.
Complex hypergeometric_series(Complex a, Complex b, Complex c, Complex z);

struct ComparisonRow {
  double x = 0.0;
  Complex pipeline;
  Complex oracle;
  double relative_difference = 0.0;
};

/// |value - oracle| / |oracle|, except that references which vanish (below
/// 1e-12 * scale, e.g. odd Hermite values at x = 0) are measured against
/// `scale`, the largest |oracle| of the table. Absolute when scale is 0.
double relative_difference(Complex value, Complex oracle, double scale);

/// Solves the family at `tol`, evaluates the principal representation and
/// compares against oracle_eval using relative_difference.
std::vector<ComparisonRow> compare(const FamilyDescriptor& family, const std::vector<double>& xs, double tol = 1e-10);

double max_relative_difference(const std::vector<ComparisonRow>& rows);

}  // namespace ansatz
