#include "ansatz/weight.hpp"

#include <cmath>
#include <numbers>

#include "ansatz/error.hpp"

namespace ansatz {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTieSlack = 1e-12;

// Argument of w in [-pi, pi); the negative real axis maps to -pi.
double reference_arg(Complex w) {
  const double a = std::arg(w);
  return a > kPi - kTieSlack ? a - 2.0 * kPi : a;
}

Complex local_difference(Complex t, Complex root, const std::optional<LocalOffset>& local) {
  if (local && local->base == root) return local->offset;
  const Complex d = t - root;
  if (std::abs(d) <= kRootTolerance * std::max(1.0, std::abs(root))) {
    throw Error(ErrorKind::singularity, "evaluation too close to a singular point of the weight");
  }
  return d;
}

}  // namespace

Complex branch_log(Complex w, const BranchCut& cut) {
  const Complex rot = std::polar(1.0, -cut.angle);
  const double arg = cut.angle + kPi + std::arg(-w * rot) + 2.0 * kPi * cut.sheet;
  return {std::log(std::abs(w)), arg};
}

BranchCut cut_with_angle(Complex root, Complex anchor, double angle) {
  Complex ref = anchor - root;
  if (ref == Complex{}) ref = -std::polar(1.0, angle);
  BranchCut cut{angle, 0};
  const double base = branch_log(ref, cut).imag();
  cut.sheet = static_cast<int>(std::lround((reference_arg(ref) - base) / (2.0 * kPi)));
  return cut;
}

BranchCut cut_away_from(Complex root, Complex anchor) {
  const Complex away = root - anchor;
  return cut_with_angle(root, anchor, away == Complex{} ? kPi : std::arg(away));
}

Complex WeightForm::exponent_at_origin() const {
  for (const PowerFactor& f : power_factors)
    if (f.root == Complex{}) return f.exponent;
  return {};
}

std::vector<Complex> WeightForm::singular_points() const {
  std::vector<Complex> pts;
  auto add = [&](Complex p) {
    for (Complex q : pts)
      if (q == p) return;
    pts.push_back(p);
  };
  for (const PowerFactor& f : power_factors) add(f.root);
  for (const EssentialTerm& e : essential_terms) add(e.pole);
  return pts;
}

WeightForm anchored(WeightForm w, Complex anchor) {
  w.branch_anchor = anchor;
  for (PowerFactor& f : w.power_factors) f.cut = cut_away_from(f.root, anchor);
  w.origin_cut = cut_away_from(Complex{}, anchor);
  return w;
}

Complex weight_log(const WeightForm& w, Complex t, const std::optional<LocalOffset>& local) {
  Complex acc = w.exp_poly(t);
  for (const EssentialTerm& e : w.essential_terms) acc += e.strength / local_difference(t, e.pole, local);
  for (const PowerFactor& f : w.power_factors)
    acc += f.exponent * branch_log(local_difference(t, f.root, local), f.cut);
  return acc;
}

Complex weight_eval(const WeightForm& w, Complex t) { return std::exp(weight_log(w, t)); }

Complex weight_log_derivative(const WeightForm& w, Complex t) {
  Complex acc = w.exp_poly.derivative()(t);
  for (const EssentialTerm& e : w.essential_terms) {
    const Complex d = local_difference(t, e.pole, std::nullopt);
    acc -= e.strength / (d * d);
  }
  for (const PowerFactor& f : w.power_factors) acc += f.exponent / local_difference(t, f.root, std::nullopt);
  return acc;
}

}  // namespace ansatz
