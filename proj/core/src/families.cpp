#include "ansatz/families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ansatz/error.hpp"
#include "ansatz/representation.hpp"

namespace ansatz {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;  // Gamma(1/2)
constexpr double kIntegerSlack = 1e-12;
constexpr double kSeriesTail = 1e-14;
constexpr int kSeriesMaxTerms = 1000000;
constexpr double kZeroReference = 1e-12;

Complex require(const std::map<std::string, Complex>& params, const std::string& key, std::string_view family) {
  const auto it = params.find(key);
  if (it == params.end()) {
    throw Error(ErrorKind::invalid_input, std::string(family) + " needs parameter '" + key + "'");
  }
  return it->second;
}

void reject_unknown(const std::map<std::string, Complex>& params, std::initializer_list<const char*> allowed,
                    std::string_view family) {
  for (const auto& [key, value] : params) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return key == k; })) {
      throw Error(ErrorKind::invalid_input, std::string(family) + " has no parameter '" + key + "'");
    }
  }
}

bool is_integer(double v) { return std::abs(v - std::round(v)) <= kIntegerSlack * std::max(1.0, std::abs(v)); }

int nonnegative_integer(Complex x, std::string_view family) {
  if (x.imag() != 0.0 || !is_integer(x.real()) || x.real() < -0.5) {
    throw Error(ErrorKind::out_of_domain, std::string(family) + " oracle needs an integer x >= 0");
  }
  return static_cast<int>(std::lround(x.real()));
}

Complex polynomial_oracle(const FamilyDescriptor& fam, int n, Complex seed1) {
  if (n == 0) return 1.0;
  const Complex seeds[] = {1.0, seed1};
  return iterate_forward(fam.spec, 0.0, seeds, std::max(0, n - 1)).at(n);
}

Complex gamma_oracle(Complex x) {
  if (x.imag() != 0.0 || x.real() < 0.5) throw Error(ErrorKind::out_of_domain, "gamma oracle needs real x >= 1/2");
  const double v = x.real();
  double start = 0.0;
  double value = 0.0;
  if (is_integer(v)) {
    start = 1.0;
    value = 1.0;
  } else if (is_integer(v - 0.5)) {
    start = 0.5;
    value = kSqrtPi;
  } else {
    throw Error(ErrorKind::out_of_domain, "gamma oracle covers integers and half-integers only");
  }
  const long steps = std::lround(v - start);
  for (long i = 0; i < steps; ++i) value *= start + double(i);
  return value;
}

}  // namespace

std::vector<std::string> family_names() { return {"gamma", "legendre", "hermite", "laguerre", "gauss2f1"}; }

FamilyDescriptor make_family(std::string_view name, const std::map<std::string, Complex>& params) {
  FamilyDescriptor fam;
  fam.name = std::string(name);
  fam.parameters = params;
  if (name == "gamma") {
    reject_unknown(params, {}, name);
    fam.spec = RecurrenceSpec::first_order(0.0, 1.0, 1.0, 0.0, -1);
    fam.spec.initial_conditions = {{1.0, 1.0}};
    fam.window = {0.5, 10.0};
    fam.oracle = "product iteration from Gamma(1)=1 or Gamma(1/2)=sqrt(pi)";
  } else if (name == "legendre") {
    reject_unknown(params, {"x"}, name);
    const Complex x = require(params, "x", name);
    if (x == Complex{1.0} || x == Complex{-1.0}) {
      throw Error(ErrorKind::invalid_input, "legendre x = +-1 makes the two endpoints collide");
    }
    fam.spec = RecurrenceSpec::second_order(1.0, 2.0, 2.0 * x, 3.0 * x, -1.0, -1.0);
    fam.spec.initial_conditions = {{0.0, 1.0}};
    fam.window = {0.0, 20.0};
    fam.oracle = "forward recurrence from P0=1, P1=x";
  } else if (name == "hermite") {
    reject_unknown(params, {"x"}, name);
    const Complex x = require(params, "x", name);
    fam.spec = RecurrenceSpec::second_order(0.0, 1.0, 0.0, 2.0 * x, -2.0, -2.0);
    fam.spec.initial_conditions = {{0.0, 1.0}, {1.0, 2.0 * x}};
    fam.window = {0.0, 20.0};
    fam.oracle = "forward recurrence from H0=1, H1=2x";
  } else if (name == "laguerre") {
    reject_unknown(params, {"x"}, name);
    const Complex x = require(params, "x", name);
    fam.spec = RecurrenceSpec::second_order(1.0, 2.0, 2.0, 3.0 - x, -1.0, -1.0);
    fam.spec.initial_conditions = {{0.0, 1.0}};
    fam.window = {0.0, 20.0};
    fam.oracle = "forward recurrence from L0=1, L1=1-x";
  } else if (name == "gauss2f1") {
    reject_unknown(params, {"b", "c", "z"}, name);
    const Complex b = require(params, "b", name);
    const Complex c = require(params, "c", name);
    const Complex z = require(params, "z", name);
    if (!(std::abs(z) < 1.0) || z == Complex{}) throw Error(ErrorKind::invalid_input, "gauss2f1 needs 0 < |z| < 1");
    if (c.imag() == 0.0 && c.real() <= 0.0 && is_integer(c.real())) {
      throw Error(ErrorKind::invalid_input, "gauss2f1 c must not be a nonpositive integer");
    }
    // (a+1)(1-z) F(a+2) = (2a+2-c+(b-a-1)z) F(a+1) + (c-a-1) F(a)
    fam.spec = RecurrenceSpec::second_order(1.0 - z, 1.0 - z, 2.0 - z, 2.0 - c + (b - 1.0) * z, -1.0, c - 1.0);
    fam.spec.initial_conditions = {{1.0, hypergeometric_series(1.0, b, c, z)},
                                   {2.0, hypergeometric_series(2.0, b, c, z)}};
    fam.window = {1.0, 6.0};
    fam.oracle = "truncated Gauss series";
  } else {
    throw Error(ErrorKind::invalid_input, "unknown family '" + std::string(name) + "'");
  }
  fam.spec.validate();
  return fam;
}

Complex hypergeometric_series(Complex a, Complex b, Complex c, Complex z) {
  if (!(std::abs(z) < 1.0)) throw Error(ErrorKind::out_of_domain, "series needs |z| < 1");
  Complex sum = 1.0;
  Complex term = 1.0;
  for (int n = 0; n < kSeriesMaxTerms; ++n) {
    const Complex denom = (c + double(n)) * double(n + 1);
    if (denom == Complex{}) throw Error(ErrorKind::out_of_domain, "series hits a pole of (c)_n");
    term *= (a + double(n)) * (b + double(n)) / denom * z;
    sum += term;
    if (term == Complex{}) return sum;
    // Ratio bound for every later term once N + Re(c) > 0.
    const double N = n + 1;
    if (N + c.real() <= 0.0) continue;
    const double ratio = std::abs(z) * (1.0 + std::abs(a - 1.0) / (N + 1.0)) * (1.0 + std::abs(b - c) / (N + c.real()));
    if (ratio < 1.0 && std::abs(term) * ratio / (1.0 - ratio) < kSeriesTail * std::max(1.0, std::abs(sum))) {
      return sum;
    }
  }
  throw Error(ErrorKind::internal_consistency, "hypergeometric series did not converge");
}

Complex oracle_eval(const FamilyDescriptor& fam, Complex x) {
  if (fam.name == "gamma") return gamma_oracle(x);
  if (fam.name == "gauss2f1") {
    return hypergeometric_series(x, fam.parameters.at("b"), fam.parameters.at("c"), fam.parameters.at("z"));
  }
  const int n = nonnegative_integer(x, fam.name);
  const Complex p = fam.parameters.at("x");
  if (fam.name == "legendre") return polynomial_oracle(fam, n, p);
  if (fam.name == "hermite") return polynomial_oracle(fam, n, 2.0 * p);
  if (fam.name == "laguerre") return polynomial_oracle(fam, n, 1.0 - p);
  throw Error(ErrorKind::invalid_input, "unknown family '" + fam.name + "'");
}

double relative_difference(Complex value, Complex oracle, double scale) {
  const double diff = std::abs(value - oracle);
  if (std::abs(oracle) > kZeroReference * scale) return diff / std::abs(oracle);
  return scale > 0.0 ? diff / scale : diff;
}

std::vector<ComparisonRow> compare(const FamilyDescriptor& fam, const std::vector<double>& xs, double tol) {
  const std::vector<IntegralRepresentation> reps = solve(fam.spec, fam.window, tol);
  std::vector<ComparisonRow> rows;
  double oracle_scale = 0.0;
  for (double x : xs) {
    ComparisonRow row;
    row.x = x;
    row.pipeline = evaluate(reps.front(), x);
    row.oracle = oracle_eval(fam, x);
    oracle_scale = std::max(oracle_scale, std::abs(row.oracle));
    rows.push_back(row);
  }
  for (ComparisonRow& row : rows) row.relative_difference = relative_difference(row.pipeline, row.oracle, oracle_scale);
  return rows;
}

double max_relative_difference(const std::vector<ComparisonRow>& rows) {
  double worst = 0.0;
  for (const ComparisonRow& r : rows) worst = std::max(worst, r.relative_difference);
  return worst;
}

}  // namespace ansatz
