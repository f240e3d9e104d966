#pragma once

#include <complex>
#include <random>
#include <vector>

#include "ansatz/algebra.hpp"
#include "ansatz/recurrence.hpp"

namespace ansatz::testing {

inline double rel_err(Complex got, Complex want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

inline Complex random_complex(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng)};
}

inline double random_real(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Random order-2 spec with a genuine quadratic D and generic numerator.
inline RecurrenceSpec random_second_order(std::mt19937_64& rng) {
  auto pick = [&] { return Complex(random_real(rng, 0.5, 2.0), 0.0) * (random_real(rng, 0, 1) < 0.5 ? -1.0 : 1.0); };
  return RecurrenceSpec::second_order(pick(), pick(), pick(), pick(), pick(), pick());
}

/// Points in a box that stay away from `avoid` by at least `gap`.
inline std::vector<Complex> probes_avoiding(std::mt19937_64& rng, const std::vector<Complex>& avoid, int count,
                                            double box = 3.0, double gap = 0.2) {
  std::vector<Complex> out;
  while (static_cast<int>(out.size()) < count) {
    const Complex t = random_complex(rng, box);
    bool ok = true;
    for (Complex a : avoid) ok = ok && std::abs(t - a) > gap;
    if (ok) out.push_back(t);
  }
  return out;
}

}  // namespace ansatz::testing
