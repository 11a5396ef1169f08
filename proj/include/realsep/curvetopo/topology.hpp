#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <set>

#include "realsep/curvetopo/curve_point.hpp"

namespace realsep {

struct TopologyOptions {
  unsigned seed = 0;        // offset into the shear sequence
  unsigned max_shears = 16;
  int line_bound = 3;
  unsigned polyline_bits = 20;  // vertex tolerance 2^-bits in chart units
  int samples_per_slab = 24;
};

enum class ComponentType { oval, pseudoline };
inline const char* to_string(ComponentType t) { return t == ComponentType::oval ? "oval" : "pseudoline"; }

inline int genus_of_degree(int n) { return (n - 1) * (n - 2) / 2; }

/// A real critical value of the projection and the fold above it.
struct CriticalValue {
  IsolatingInterval iv;   // root of the discriminant
  bool opens_right = true;  // two more fiber points to the right
  int merge_index = 0;      // lower index of the merging pair on the richer side
  Rational box_u_lo, box_u_hi, box_v_lo, box_v_hi;  // certified fold box
};

struct Fiber {
  Rational u;
  std::vector<IsolatingInterval> roots;  // real roots in v, ascending
};

enum class JunctionKind { fold, infinity };

/// Maximal x-monotone chain of arcs between two junctions.
struct Run {
  std::vector<std::pair<int, int>> arcs;  // (slab, index), increasing u
  int left = -1, right = -1;             // junction ids
  int component = -1;
};

struct TraversalStep {
  int run = 0;
  int dir = 1;  // +1: increasing u
};

struct Component {
  ComponentType type = ComponentType::oval;
  int depth = 0;  // nesting depth for ovals; -1 when not certified
  std::vector<TraversalStep> steps;  // cyclic
  std::vector<int> junctions;        // junctions[p] follows steps[p]; the last one is the start
  int infinity_crossings = 0;
  std::vector<std::array<double, 3>> polyline;  // projective (x, y, z) vertices, closed
};

/// Topology of X(R) for a smooth plane curve, computed by a certified sweep
/// in a generic chart.
struct CurveTopology {
  PlaneForm F;
  int degree = 0;
  int genus = 0;
  Chart chart;
  bool all_ovals_bounded = true;
  QBiPoly f;        // F in the chart, w = 1
  QPoly disc;       // Res_v(f, f_v)
  QPoly s0, s1;     // first subresultant of (f, f_v)
  QPoly at_infinity;  // F_chart(1, s, 0): slopes of the points on the line w = 0
  std::vector<IsolatingInterval> slopes;
  std::vector<CriticalValue> critical;
  std::vector<Fiber> fibers;  // one per slab, critical.size() + 1
  std::vector<Run> runs;
  std::vector<std::vector<int>> run_of;  // [slab][index] -> run id
  int fold_junctions() const { return static_cast<int>(critical.size()); }
  std::vector<std::array<int, 2>> junction_runs;  // runs meeting at each junction
  std::vector<Component> components;

  int r() const { return static_cast<int>(components.size()); }
  JunctionKind junction_kind(int id) const {
    return id < fold_junctions() ? JunctionKind::fold : JunctionKind::infinity;
  }
  int pseudoline_count() const {
    int c = 0;
    for (const auto& comp : components) c += comp.type == ComponentType::pseudoline;
    return c;
  }
};

struct SmoothnessReport {
  bool smooth = false;
  int genus = 0;
  std::string witness;
};

namespace detail {

struct ChartEval {
  Chart chart;
  PlaneForm Ft;
  QBiPoly f;
  QPoly at_infinity;
};

/// Center off the curve and the line at infinity transversal.
inline std::optional<ChartEval> admissible_chart(const PlaneForm& F, const Chart& c) {
  ChartEval e{c, c.to_chart(F), {}, {}};
  const int n = F.degree();
  Exponent top{0, n, 0};
  if (e.Ft.coeff(top).is_zero()) return std::nullopt;
  e.f = QBiPoly::dehomogenize(e.Ft);
  e.at_infinity = e.Ft.restrict_to(1, {Qsqrt(1), Qsqrt(0), Qsqrt(0)});
  if (e.at_infinity.degree() != n) return std::nullopt;
  if (n >= 1 && gcd(e.at_infinity, e.at_infinity.derivative()).degree() > 0) return std::nullopt;
  return e;
}

inline bool is_squarefree(const QPoly& p) {
  if (p.degree() < 1) return true;
  return gcd(p, p.derivative()).degree() < 1;
}

}  // namespace detail

/// Certify that F, F_x, F_y, F_z have no common projective zero.
///
/// In a chart whose line at infinity is transversal and whose center is off
/// the curve, a singular point is affine and its u-coordinate is a common
/// root of Res_v(f, f_v) and Res_v(f, f_u). Coprimality certifies
/// smoothness; a common root carrying a common fiber point certifies a
/// singularity.
inline SmoothnessReport check_smooth(const PlaneForm& F, const TopologyOptions& opt = {}) {
  if (F.nvars() != 3) fail(ErrorCode::invalid_input, "curve must be a ternary form");
  if (F.is_zero() || F.degree() < 1) fail(ErrorCode::invalid_input, "curve must have degree >= 1");
  SmoothnessReport rep;
  rep.genus = genus_of_degree(F.degree());
  if (F.degree() == 1) {
    rep.smooth = true;
    return rep;
  }
  for (const auto& line : candidate_lines(opt.line_bound)) {
    auto [p, q] = complement_axes(line);
    for (unsigned s = 0; s < opt.max_shears; ++s) {
      auto ce = detail::admissible_chart(F, make_chart(line, p, q, shear_value(opt.seed + s)));
      if (!ce) continue;
      QBiPoly fv = ce->f.d_dv(), fu = ce->f.d_du();
      QPoly D = resultant_in_v(ce->f, fv);
      if (D.is_zero()) continue;
      if (detail::is_squarefree(D)) {
        rep.smooth = true;
        return rep;
      }
      if (fu.is_zero()) continue;
      QPoly E = resultant_in_v(ce->f, fu);
      if (E.is_zero()) continue;
      QPoly g = gcd(D, E);
      if (g.degree() < 1) {
        rep.smooth = true;
        return rep;
      }
      auto sub = subresultant_in_v(ce->f, fv, 1);
      const QPoly& s0 = sub[0];
      const QPoly& s1 = sub[1];
      QPoly gs = squarefree_part(g);
      if (s1.is_zero() || gcd(gs, s1).degree() > 0) continue;
      QPoly hu = substitute_fiber_point(fu, s0, s1);
      QPoly sing = hu.is_zero() ? gs : gcd(gs, hu);
      if (sing.degree() < 1) continue;
      rep.smooth = false;
      std::string where;
      auto real = isolate_real_roots(sing);
      if (!real.empty()) {
        CurvePoint pt(std::make_shared<FiberData>(FiberData{ce->chart, sing, s0, s1}), real.front());
        auto a = pt.approx();
        where = "near (" + std::to_string(a[0]) + " : " + std::to_string(a[1]) + " : " + std::to_string(a[2]) + ")";
      } else {
        where = "at a non-real point";
      }
      rep.witness = "singular point " + where + " (chart " + ce->chart.describe() + ", u-polynomial " +
                    sing.str("u") + ")";
      return rep;
    }
  }
  fail(ErrorCode::genericity_failure, "no admissible chart found for the smoothness check");
}

}  // namespace realsep

#include "realsep/curvetopo/sweep.hpp"
