#include "ansatz/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "ansatz/error.hpp"

namespace ansatz {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kStep0 = 0.5;
constexpr double kSpan = 6.0;
constexpr double kLogOverflow = 709.0;
constexpr double kLogUnderflow = -745.0;
// Level-0 nodes below this fraction of the largest term bound the extent.
constexpr double kTailCut = 1e-30;
constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Piece {
  Complex a;
  Complex b;  // unused for rays
  bool ray = false;
  double angle = 0.0;
  bool reversed = false;
  std::size_t segment = 0;
};

struct Node {
  Complex t;
  LocalOffset local;
  Complex jacobian;
};

std::optional<Node> map_node(const Piece& p, double s) {
  const double u = 0.5 * kPi * std::sinh(s);
  const double du = 0.5 * kPi * std::cosh(s);
  if (p.ray) {
    const Complex dir = std::polar(1.0, p.angle);
    const double r = std::exp(u);
    const Complex off = dir * r;
    return Node{p.a + off, {p.a, off}, dir * (r * du)};
  }
  const Complex len = p.b - p.a;
  const double ch = std::cosh(u);
  const Complex jac = 0.5 * len * (du / (ch * ch));
  if (s < 0.0) {
    const Complex off = len / (1.0 + std::exp(-2.0 * u));
    if (off == Complex{}) return std::nullopt;
    return Node{p.a + off, {p.a, off}, jac};
  }
  const Complex off = -len / (1.0 + std::exp(2.0 * u));
  if (off == Complex{}) return std::nullopt;
  return Node{p.b + off, {p.b, off}, jac};
}

class Integrand {
 public:
  Integrand(const WeightForm& w, Complex x_plus_k) : w_(w), power_(x_plus_k) {}

  Complex operator()(const Node& n, std::size_t segment) const {
    const Complex origin = n.local.base == Complex{} ? n.local.offset : n.t;
    Complex lg;
    try {
      lg = weight_log(w_, n.t, n.local);
      if (power_ != Complex{}) {
        if (origin == Complex{}) {
          if (power_.real() > 0.0) return {};
          fail(segment, "moment factor is singular at t = 0");
        }
        lg += power_ * branch_log(origin, w_.origin_cut);
      }
    } catch (const Error& e) {
      fail(segment, e.what());
    }
    if (std::isnan(lg.real()) || std::isnan(lg.imag())) fail(segment, "integrand is not a number");
    if (lg.real() > kLogOverflow) fail(segment, "integrand overflows");
    if (lg.real() < kLogUnderflow) return {};
    return std::exp(lg);
  }

 private:
  [[noreturn]] static void fail(std::size_t segment, const std::string& why) {
    throw Error(ErrorKind::path_failure, "segment " + std::to_string(segment) + ": " + why);
  }

  const WeightForm& w_;
  Complex power_;
};

struct PieceState {
  Piece piece;
  double s_lo = -kSpan;
  double s_hi = kSpan;
  Complex sum;        // h * sum of terms at the current level
  double abs_sum = 0.0;
};

std::vector<Piece> flatten(const std::vector<PathSegment>& path) {
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const PathSegment& seg = path[i];
    if (seg.transform == SegmentTransform::infinite_ray) {
      pieces.push_back({seg.start, seg.start, true, seg.ray_angle, seg.reversed, i});
      continue;
    }
    Complex prev = seg.start;
    for (Complex wp : seg.waypoints) {
      pieces.push_back({prev, wp, false, 0.0, false, i});
      prev = wp;
    }
    pieces.push_back({prev, seg.end, false, 0.0, false, i});
  }
  return pieces;
}

}  // namespace

QuadratureResult integrate(const WeightForm& w, Complex x_plus_k, const std::vector<PathSegment>& path, double tol,
                           const QuadratureOptions& options) {
  if (!(tol >= 1e-14 && tol <= 1e-2)) throw Error(ErrorKind::invalid_input, "tolerance must lie in [1e-14, 1e-2]");
  const Integrand f(w, x_plus_k);
  QuadratureResult result;

  std::vector<PieceState> states;
  for (const Piece& p : flatten(path)) {
    if (!p.ray && p.a == p.b) continue;
    PieceState st;
    st.piece = p;
    states.push_back(st);
  }

  auto term = [&](const Piece& p, double s) -> Complex {
    const std::optional<Node> n = map_node(p, s);
    if (!n) return {};
    ++result.nodes_used;
    const Complex v = f(*n, p.segment);
    return v == Complex{} ? Complex{} : v * n->jacobian;
  };

  // Level 0 fixes the extent of each piece.
  const int k_max = static_cast<int>(kSpan / kStep0);
  for (PieceState& st : states) {
    std::vector<Complex> terms;
    double peak = 0.0;
    for (int k = -k_max; k <= k_max; ++k) {
      terms.push_back(term(st.piece, k * kStep0));
      peak = std::max(peak, std::abs(terms.back()));
    }
    int lo = 0;
    int hi = 2 * k_max;
    while (lo < hi && std::abs(terms[lo]) <= kTailCut * peak) ++lo;
    while (hi > lo && std::abs(terms[hi]) <= kTailCut * peak) --hi;
    st.s_lo = std::max(-kSpan, (lo - k_max - 1) * kStep0);
    st.s_hi = std::min(kSpan, (hi - k_max + 1) * kStep0);
    for (Complex t : terms) {
      st.sum += kStep0 * t;
      st.abs_sum += kStep0 * std::abs(t);
    }
  }

  auto total = [&] {
    Complex s;
    double m = 0.0;
    for (const PieceState& st : states) {
      s += st.piece.reversed ? -st.sum : st.sum;
      m += st.abs_sum;
    }
    return std::pair{s, m};
  };

  auto [previous, magnitude] = total();
  result.value = previous;
  result.magnitude = magnitude;
  result.error_estimate = std::abs(previous);
  if (states.empty()) {
    result.converged = true;
    result.error_estimate = 0.0;
    return result;
  }

  double h = kStep0;
  for (int level = 1; level <= options.max_level; ++level) {
    h *= 0.5;
    for (PieceState& st : states) {
      Complex fresh;
      double fresh_abs = 0.0;
      const long j_lo = static_cast<long>(std::ceil((st.s_lo / h - 1.0) / 2.0));
      const long j_hi = static_cast<long>(std::floor((st.s_hi / h - 1.0) / 2.0));
      for (long j = j_lo; j <= j_hi; ++j) {
        const Complex t = term(st.piece, (2.0 * j + 1.0) * h);
        fresh += t;
        fresh_abs += std::abs(t);
      }
      st.sum = 0.5 * st.sum + h * fresh;
      st.abs_sum = 0.5 * st.abs_sum + h * fresh_abs;
    }
    const auto [current, mag] = total();
    result.value = current;
    result.magnitude = mag;
    result.error_estimate = std::abs(current - previous);
    previous = current;
    if (level < options.min_level) continue;
    const double size = std::abs(current);
    if (result.error_estimate <= tol * size ||
        result.error_estimate <= std::min(tol * (1.0 + size), 64.0 * kEps * mag)) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace ansatz
