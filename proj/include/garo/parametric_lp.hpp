#ifndef GARO_PARAMETRIC_LP_HPP
#define GARO_PARAMETRIC_LP_HPP

#include <stdexcept>
#include <vector>

#include "garo/conic_program.hpp"
#include "garo/core.hpp"
#include "garo/simplex.hpp"

namespace garo {

/// One affine piece of the parametric value function: on [gamma_lo, gamma_hi]
/// the vertex is optimal and value(γ) = intercept + slope·γ.
struct ParametricSegment {
  double gamma_lo = 0.0;
  double gamma_hi = 0.0;
  Vector vertex;
  double intercept = 0.0;
  double slope = 0.0;

  double value_at(double gamma) const { return intercept + slope * gamma; }
};

namespace detail {

struct ParametricPoint {
  double gamma;
  Vector vertex;
  double intercept, slope; // supporting line of this vertex
};

inline ParametricPoint solve_at(const ConicProgram& prog, const Vector& base,
                                const Vector& direction, double gamma) {
  ConicProgram local = prog;
  local.set_objective(base + gamma * direction);
  const auto out = solve_lp(local);
  if (out.status == SolveStatus::Unbounded)
    throw std::runtime_error("solve_lp_parametric: LP unbounded within range");
  if (out.status != SolveStatus::Optimal)
    throw std::runtime_error(std::string("solve_lp_parametric: solver returned ") +
                             to_string(out.status));
  ParametricPoint pt;
  pt.gamma = gamma;
  pt.vertex = out.primal;
  pt.intercept = base.dot(out.primal);
  pt.slope = direction.dot(out.primal);
  return pt;
}

inline bool same_line(const ParametricPoint& a, const ParametricPoint& b, double scale) {
  const double tol = kBreakpointMergeTol * scale;
  return std::abs(a.slope - b.slope) <= tol && std::abs(a.intercept - b.intercept) <= tol;
}

inline void bisect_segments(const ConicProgram& prog, const Vector& base, const Vector& direction,
                            const ParametricPoint& a, const ParametricPoint& b, int depth,
                            double scale, std::vector<ParametricSegment>& out) {
  if (same_line(a, b, scale) || depth >= 60) {
    out.push_back({a.gamma, b.gamma, a.vertex, a.intercept, a.slope});
    return;
  }
  // Lines of distinct vertices: concavity gives slope(a) >= slope(b). They
  // cross at gs; if the LP value there matches both lines, gs is the exact
  // breakpoint, otherwise at least one more piece lives in between.
  double gs;
  if (a.slope - b.slope > kBreakpointMergeTol * scale)
    gs = (b.intercept - a.intercept) / (a.slope - b.slope);
  else
    gs = 0.5 * (a.gamma + b.gamma);
  const double margin = 1e-12 * (1.0 + std::abs(b.gamma));
  if (!(gs > a.gamma + margin && gs < b.gamma - margin)) gs = 0.5 * (a.gamma + b.gamma);

  const ParametricPoint m = solve_at(prog, base, direction, gs);
  const double fm = m.intercept + m.slope * gs;
  const double fa = a.intercept + a.slope * gs;
  const double fb = b.intercept + b.slope * gs;
  const double tol = 1e-9 * scale;
  if (std::abs(fm - fa) <= tol && std::abs(fm - fb) <= tol) {
    out.push_back({a.gamma, gs, a.vertex, a.intercept, a.slope});
    out.push_back({gs, b.gamma, b.vertex, b.intercept, b.slope});
    return;
  }
  bisect_segments(prog, base, direction, a, m, depth + 1, scale, out);
  bisect_segments(prog, base, direction, m, b, depth + 1, scale, out);
}

} // namespace detail

/// Trace the optimal-value function of the LP with objective base + γ·direction
/// over γ ∈ [lo, hi]. The value function is concave piecewise linear; the
/// returned segments cover the range with the segment-optimal vertex on each.
inline std::vector<ParametricSegment> solve_lp_parametric(const ConicProgram& prog,
                                                          const Vector& direction, double lo,
                                                          double hi) {
  if (!prog.is_pure_lp())
    throw std::invalid_argument("solve_lp_parametric: program has SOC rows");
  if (!(lo <= hi)) throw std::invalid_argument("solve_lp_parametric: empty range");
  const Vector base = prog.objective();

  const auto pa = detail::solve_at(prog, base, direction, lo);
  if (lo == hi || direction.norm() == 0.0)
    return {{lo, hi, pa.vertex, pa.intercept, pa.slope}};
  const auto pb = detail::solve_at(prog, base, direction, hi);

  const double scale = std::max({1.0, std::abs(pa.intercept), std::abs(pb.intercept),
                                 std::abs(pa.slope), std::abs(pb.slope)});
  std::vector<ParametricSegment> raw;
  detail::bisect_segments(prog, base, direction, pa, pb, 0, scale, raw);

  // Merge adjacent pieces carrying the same supporting line.
  std::vector<ParametricSegment> merged;
  for (const auto& seg : raw) {
    if (!merged.empty() &&
        std::abs(merged.back().slope - seg.slope) <= kBreakpointMergeTol * scale &&
        std::abs(merged.back().intercept - seg.intercept) <= kBreakpointMergeTol * scale) {
      merged.back().gamma_hi = seg.gamma_hi;
    } else {
      merged.push_back(seg);
    }
  }
  return merged;
}

} // namespace garo

#endif
