#include "ansatz/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ansatz/error.hpp"

namespace ansatz {

namespace {

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Sum |c_i| |t|^i; the natural scale for judging |p(t)| against roundoff.
double eval_scale(const Polynomial& p, Complex t) {
  double scale = 0.0;
  double power = 1.0;
  for (Complex c : p.coefficients()) {
    scale += std::abs(c) * power;
    power *= std::abs(t);
  }
  return scale;
}

Complex newton_polish(const Polynomial& p, const Polynomial& dp, Complex r) {
  const Complex d = dp(r);
  if (d == Complex{}) return r;
  const Complex candidate = r - p(r) / d;
  return std::abs(p(candidate)) <= std::abs(p(r)) ? candidate : r;
}

// Merge roots closer than kRootTolerance (relative); multiplicities add.
std::vector<Root> cluster(std::vector<Root> roots) {
  std::vector<Root> out;
  for (const Root& r : roots) {
    auto hit = std::find_if(out.begin(), out.end(), [&](const Root& o) {
      return nearly_equal(o.value, r.value, kRootTolerance);
    });
    if (hit == out.end()) {
      out.push_back(r);
    } else {
      const int m = hit->multiplicity + r.multiplicity;
      hit->value = (hit->value * double(hit->multiplicity) + r.value * double(r.multiplicity)) / double(m);
      hit->multiplicity = m;
    }
  }
  return out;
}

std::vector<Root> quadratic_roots(Complex a, Complex b, Complex c) {
  const Complex disc = b * b - 4.0 * a * c;
  if (std::abs(disc) <= kRootTolerance * (std::norm(b) + 4.0 * std::abs(a * c))) {
    return {{-b / (2.0 * a), 2}};
  }
  Complex sq = std::sqrt(disc);
  if ((std::conj(b) * sq).real() < 0.0) sq = -sq;
  const Complex q = -0.5 * (b + sq);
  return {{q / a, 1}, {c / q, 1}};
}

std::vector<Root> cubic_roots(const Polynomial& p) {
  const Complex lead = p.leading();
  const Complex A = p.coefficient(2) / lead;
  const Complex B = p.coefficient(1) / lead;
  const Complex C = p.coefficient(0) / lead;
  const Polynomial monic{C, B, A, 1.0};
  const Polynomial dp = monic.derivative();

  // A multiple root of p is a root of p'; test those first, the closed form
  // loses half the digits near a double root.
  for (const Root& s : quadratic_roots(dp.coefficient(2), dp.coefficient(1), dp.coefficient(0))) {
    if (std::abs(monic(s.value)) > kRootTolerance * eval_scale(monic, s.value)) continue;
    const Complex rest = -A - 2.0 * s.value;
    if (s.multiplicity == 2 || nearly_equal(rest, s.value, kRootTolerance)) {
      return {{-A / 3.0, 3}};
    }
    return {{s.value, 2}, {rest, 1}};
  }

  const Complex shift = A / 3.0;
  const Complex pp = B - A * A / 3.0;
  const Complex qq = 2.0 * A * A * A / 27.0 - A * B / 3.0 + C;
  const Complex sq = std::sqrt(qq * qq / 4.0 + pp * pp * pp / 27.0);
  Complex u3 = -qq / 2.0 + sq;
  if (std::abs(-qq / 2.0 - sq) > std::abs(u3)) u3 = -qq / 2.0 - sq;
  std::vector<Root> roots;
  if (u3 == Complex{}) {
    return {{-shift, 3}};
  }
  const Complex u = std::exp(std::log(u3) / 3.0);
  const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  Complex w = 1.0;
  for (int k = 0; k < 3; ++k, w *= omega) {
    const Complex uk = u * w;
    const Complex y = uk - pp / (3.0 * uk);
    roots.push_back({newton_polish(monic, dp, y - shift), 1});
  }
  return roots;
}

}  // namespace

bool nearly_equal(Complex a, Complex b, double tol) noexcept {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(std::vector<Complex> coefficients) : coeffs_(std::move(coefficients)) {
  normalize();
}

Polynomial::Polynomial(std::initializer_list<Complex> coefficients) : coeffs_(coefficients) {
  normalize();
}

void Polynomial::normalize() {
  for (Complex c : coeffs_) {
    if (!is_finite(c)) throw Error(ErrorKind::invalid_input, "non-finite polynomial coefficient");
  }
  while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
}

Polynomial Polynomial::constant(Complex value) { return Polynomial{value}; }

Polynomial Polynomial::linear_factor(Complex root) { return Polynomial{-root, 1.0}; }

Complex Polynomial::coefficient(int i) const noexcept {
  return (i >= 0 && i < static_cast<int>(coeffs_.size())) ? coeffs_[static_cast<std::size_t>(i)] : Complex{};
}

Complex Polynomial::leading() const noexcept { return coeffs_.empty() ? Complex{} : coeffs_.back(); }

Complex Polynomial::operator()(Complex t) const noexcept {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  std::vector<Complex> d;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * double(i));
  return Polynomial(std::move(d));
}

Polynomial Polynomial::antiderivative() const {
  if (coeffs_.empty()) return {};
  std::vector<Complex> a(coeffs_.size() + 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) a[i + 1] = coeffs_[i] / double(i + 1);
  return Polynomial(std::move(a));
}

Polynomial Polynomial::shifted(Complex center) const {
  // Repeated synthetic division by (t - center) yields the Taylor coefficients.
  std::vector<Complex> work = coeffs_;
  std::vector<Complex> out;
  while (!work.empty()) {
    Complex carry{};
    for (auto it = work.rbegin(); it != work.rend(); ++it) {
      carry = carry * center + *it;
      *it = carry;
    }
    out.push_back(work.front());
    work.erase(work.begin());
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::trimmed(double rel_tol) const {
  const double cutoff = rel_tol * max_abs();
  std::vector<Complex> c = coeffs_;
  while (!c.empty() && std::abs(c.back()) <= cutoff) c.pop_back();
  return Polynomial(std::move(c));
}

double Polynomial::max_abs() const noexcept {
  double m = 0.0;
  for (Complex c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  normalize();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  normalize();
  return *this;
}

Polynomial& Polynomial::operator*=(Complex s) {
  for (Complex& c : coeffs_) c *= s;
  normalize();
  return *this;
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return {};
  std::vector<Complex> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1);
  for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
  return Polynomial(std::move(out));
}

Complex poly_eval(const Polynomial& p, Complex t) noexcept { return p(t); }

DivisionResult divide(const Polynomial& dividend, const Polynomial& divisor) {
  if (divisor.is_zero()) throw Error(ErrorKind::invalid_input, "division by the zero polynomial");
  const int n = dividend.degree();
  const int m = divisor.degree();
  if (n < m) return {Polynomial{}, dividend};
  std::vector<Complex> rem(dividend.coefficients().begin(), dividend.coefficients().end());
  std::vector<Complex> quot(static_cast<std::size_t>(n - m + 1));
  const Complex lead = divisor.leading();
  for (int k = n - m; k >= 0; --k) {
    const Complex f = rem[static_cast<std::size_t>(k + m)] / lead;
    quot[static_cast<std::size_t>(k)] = f;
    for (int j = 0; j <= m; ++j) rem[static_cast<std::size_t>(k + j)] -= f * divisor.coefficient(j);
  }
  rem.resize(static_cast<std::size_t>(m));
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

std::vector<Root> roots_low_degree(const Polynomial& p) {
  if (p.is_zero()) throw Error(ErrorKind::invalid_input, "roots of the zero polynomial");
  if (p.degree() >= 1 && p.degree() <= 3 && p.coefficient(0) == Complex{}) {
    // Factor out t exactly so a root at the origin is exactly zero.
    const auto c = p.coefficients();
    std::vector<Root> rest = roots_low_degree(Polynomial(std::vector<Complex>(c.begin() + 1, c.end())));
    for (Root& r : rest) {
      if (r.value == Complex{}) {
        ++r.multiplicity;
        return rest;
      }
    }
    rest.insert(rest.begin(), Root{Complex{}, 1});
    return rest;
  }
  switch (p.degree()) {
    case 0:
      return {};
    case 1:
      return {{-p.coefficient(0) / p.coefficient(1), 1}};
    case 2: {
      std::vector<Root> roots = quadratic_roots(p.coefficient(2), p.coefficient(1), p.coefficient(0));
      if (roots.size() == 2) {
        const Polynomial dp = p.derivative();
        for (Root& r : roots) r.value = newton_polish(p, dp, r.value);
      }
      return cluster(std::move(roots));
    }
    case 3:
      return cluster(cubic_roots(p));
    default:
      throw Error(ErrorKind::unsupported_degree,
                  "closed-form roots need degree <= 3, got " + std::to_string(p.degree()));
  }
}

// ---------------------------------------------------------- RationalFunction

namespace {

// Components below roundoff of the largest coefficient are set to zero, so
// cancelled roots do not leave 1e-16 constants behind.
Polynomial tidy(const Polynomial& p) {
  const double floor = 1e-15 * p.max_abs();
  std::vector<Complex> c(p.coefficients().begin(), p.coefficients().end());
  for (Complex& z : c) {
    z = {std::abs(z.real()) <= floor ? 0.0 : z.real(), std::abs(z.imag()) <= floor ? 0.0 : z.imag()};
  }
  return Polynomial(std::move(c));
}

}  // namespace

RationalFunction::RationalFunction(Polynomial numerator, Polynomial denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_.is_zero()) throw Error(ErrorKind::invalid_input, "rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = Polynomial::constant(1.0);
    return;
  }
  if (den_.degree() >= 1 && den_.degree() <= 3) {
    for (const Root& r : roots_low_degree(den_)) {
      for (int k = 0; k < r.multiplicity && num_.degree() >= 1; ++k) {
        const double scale = std::max(eval_scale(num_, r.value), num_.max_abs());
        if (std::abs(num_(r.value)) > kRootTolerance * scale) break;
        const Polynomial factor = Polynomial::linear_factor(r.value);
        num_ = divide(num_, factor).quotient;
        den_ = divide(den_, factor).quotient;
      }
    }
  }
  const Complex lead = den_.leading();
  num_ = tidy(num_ * (1.0 / lead));
  den_ = tidy(den_ * (1.0 / lead));
}

Complex RationalFunction::operator()(Complex t) const { return num_(t) / den_(t); }

// --------------------------------------------------------- partial fractions

Complex PartialFractionExpansion::operator()(Complex t) const {
  Complex acc = polynomial_part(t);
  for (const PoleTerm& term : terms) acc += term.coefficient / std::pow(t - term.pole, term.order);
  return acc;
}

PartialFractionExpansion partial_fractions(const RationalFunction& r) {
  const Polynomial& den = r.denominator();
  if (den.degree() > 3) {
    throw Error(ErrorKind::unsupported_degree, "partial fractions need denominator degree <= 3");
  }
  auto [quotient, remainder] = divide(r.numerator(), den);
  PartialFractionExpansion out{std::move(quotient), {}};
  if (den.degree() == 0 || remainder.is_zero()) return out;

  const std::vector<Root> poles = roots_low_degree(den);
  for (std::size_t j = 0; j < poles.size(); ++j) {
    Polynomial other = Polynomial::constant(den.leading());
    for (std::size_t i = 0; i < poles.size(); ++i) {
      if (i == j) continue;
      for (int k = 0; k < poles[i].multiplicity; ++k) other = other * Polynomial::linear_factor(poles[i].value);
    }
    // Laurent coefficients at the pole: series of remainder(p+u) / other(p+u).
    const Complex p = poles[j].value;
    const int m = poles[j].multiplicity;
    const Polynomial num_local = remainder.shifted(p);
    const Polynomial den_local = other.shifted(p);
    std::vector<Complex> g(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      Complex acc = num_local.coefficient(i);
      for (int l = 0; l < i; ++l) acc -= g[static_cast<std::size_t>(l)] * den_local.coefficient(i - l);
      g[static_cast<std::size_t>(i)] = acc / den_local.coefficient(0);
    }
    for (int i = 0; i < m; ++i) {
      if (g[static_cast<std::size_t>(i)] == Complex{}) continue;
      out.terms.push_back({p, m - i, g[static_cast<std::size_t>(i)]});
    }
  }
  return out;
}

}  // namespace ansatz
