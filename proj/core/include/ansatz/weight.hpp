#pragma once

#include <optional>
#include <vector>

#include "ansatz/algebra.hpp"

namespace ansatz {

/// A branch of log(t - root): the cut is the ray from the root at `angle`
/// (radians); `sheet` adds 2*pi*sheet to the argument.
struct BranchCut {
  double angle = 3.141592653589793;
  int sheet = 0;

  friend bool operator==(const BranchCut&, const BranchCut&) = default;
};

/// log(w) on the branch described by `cut`; the argument lies in
/// (angle, angle + 2*pi] + 2*pi*sheet.
Complex branch_log(Complex w, const BranchCut& cut);

/// Cut along the ray from `root` directed away from `anchor`, with the sheet
/// chosen so that the argument of (anchor - root) is its reference value in
/// [-pi, pi). When root == anchor the cut points along the negative real axis.
BranchCut cut_away_from(Complex root, Complex anchor);

/// Same reference rule as cut_away_from, for a cut direction picked elsewhere.
BranchCut cut_with_angle(Complex root, Complex anchor, double angle);

struct PowerFactor {
  Complex root;
  Complex exponent;
  BranchCut cut;
};

struct EssentialTerm {
  Complex pole;
  Complex strength;
};

/// Local coordinates near a path vertex: when a root equals `base` exactly,
/// (t - root) is taken to be `offset` instead of the rounded difference.
struct LocalOffset {
  Complex base;
  Complex offset;
};

/// h(t) = exp(P(t) + sum strength/(t - pole)) * prod (t - root)^exponent.
///
/// `origin_cut` is the branch used for the moment factor t^(x+k); when a
/// power factor sits at t = 0 it shares this branch.
struct WeightForm {
  Polynomial exp_poly;
  std::vector<EssentialTerm> essential_terms;
  std::vector<PowerFactor> power_factors;
  Complex branch_anchor{};
  BranchCut origin_cut;

  /// Exponent of the power factor at t = 0, or 0 when there is none.
  Complex exponent_at_origin() const;
  /// Power roots and essential poles (no duplicates beyond exact equality).
  std::vector<Complex> singular_points() const;
};

/// Re-anchors every cut, including origin_cut, away from `anchor`.
WeightForm anchored(WeightForm w, Complex anchor);

/// log h(t). Throws singularity when t is within kRootTolerance of a root or
/// pole (unless `local` supplies the exact offset).
Complex weight_log(const WeightForm& w, Complex t, const std::optional<LocalOffset>& local = std::nullopt);

/// h(t) on the branches stored in the weight.
Complex weight_eval(const WeightForm& w, Complex t);

/// h'(t)/h(t) computed from the closed form.
Complex weight_log_derivative(const WeightForm& w, Complex t);

}  // namespace ansatz
