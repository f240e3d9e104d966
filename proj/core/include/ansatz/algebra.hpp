#pragma once

#include <complex>
#include <span>
#include <vector>

namespace ansatz {

using Complex = std::complex<double>;

/// Relative tolerance used to cluster roots and to cancel common factors of
/// rational functions.
inline constexpr double kRootTolerance = 1e-9;

/// Dense polynomial with complex coefficients stored in ascending degree.
///
/// Trailing zero coefficients are stripped on construction, so the leading
/// coefficient is nonzero unless the polynomial is identically zero. Only
/// finite coefficients are accepted.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> coefficients);
  Polynomial(std::initializer_list<Complex> coefficients);

  static Polynomial constant(Complex value);
  /// (t - root)
  static Polynomial linear_factor(Complex root);

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  std::span<const Complex> coefficients() const noexcept { return coeffs_; }
  /// Coefficient of t^i, zero outside the stored range.
  Complex coefficient(int i) const noexcept;
  Complex leading() const noexcept;

  Complex operator()(Complex t) const noexcept;

  Polynomial derivative() const;
  /// Antiderivative with zero constant term.
  Polynomial antiderivative() const;
  /// Coefficients of p(center + u) as a polynomial in u.
  Polynomial shifted(Complex center) const;
  /// Drops leading coefficients below rel_tol * max |coefficient|.
  Polynomial trimmed(double rel_tol) const;
  /// Largest coefficient magnitude.
  double max_abs() const noexcept;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(Complex s);

  friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
  friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
  friend Polynomial operator*(Polynomial lhs, Complex s) { return lhs *= s; }
  friend Polynomial operator*(Complex s, Polynomial rhs) { return rhs *= s; }
  friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void normalize();

  std::vector<Complex> coeffs_;
};

Complex poly_eval(const Polynomial& p, Complex t) noexcept;

struct DivisionResult {
  Polynomial quotient;
  Polynomial remainder;
};

/// Polynomial long division. Throws invalid_input on a zero divisor.
DivisionResult divide(const Polynomial& dividend, const Polynomial& divisor);

struct Root {
  Complex value;
  int multiplicity = 1;
};

/// Closed-form roots of a polynomial of degree at most 3, polished by one
/// Newton step. Multiplicities sum to the degree. Throws unsupported_degree
/// for degree > 3 and invalid_input for the zero polynomial.
std::vector<Root> roots_low_degree(const Polynomial& p);

/// numerator / denominator with common roots cancelled (to kRootTolerance).
class RationalFunction {
 public:
  RationalFunction(Polynomial numerator, Polynomial denominator);

  const Polynomial& numerator() const noexcept { return num_; }
  const Polynomial& denominator() const noexcept { return den_; }

  Complex operator()(Complex t) const;

 private:
  Polynomial num_;
  Polynomial den_;
};

struct PoleTerm {
  Complex pole;
  int order = 1;
  Complex coefficient;
};

/// polynomial_part(t) + sum coefficient / (t - pole)^order.
struct PartialFractionExpansion {
  Polynomial polynomial_part;
  std::vector<PoleTerm> terms;

  Complex operator()(Complex t) const;
};

/// Requires a denominator of degree at most 3.
PartialFractionExpansion partial_fractions(const RationalFunction& r);

/// |a - b| <= tol * max(1, |a|, |b|)
bool nearly_equal(Complex a, Complex b, double tol) noexcept;

}  // namespace ansatz
