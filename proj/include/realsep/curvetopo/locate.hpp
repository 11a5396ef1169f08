#pragma once

#include "realsep/curvetopo/topology.hpp"

namespace realsep {

/// Position of a real curve point in the traversal of its component.
/// Points are compared by (major, minor): major is 2p+1 on traversal step p
/// and 2p+2 at the junction after it (the start junction has major 0);
/// minor orders points on one run by u * dir.
struct PointLocation {
  enum Kind { run, fold, infinity } kind = run;
  int component = -1;
  int run_id = -1;      // kind == run
  int junction = -1;    // kind == fold / infinity
  int step = -1;
  int dir = 1;
  int major = 0;
  Rational minor_lo, minor_hi;
};

namespace detail {

inline std::array<Ball, 3> to_chart_box(const Chart& c, const Box3& x) {
  return apply3<Ball>(c.N, x);
}

inline PointLocation place_junction(const CurveTopology& T, PointLocation loc) {
  for (size_t c = 0; c < T.components.size(); ++c) {
    const auto& comp = T.components[c];
    for (size_t p = 0; p < comp.junctions.size(); ++p) {
      if (comp.junctions[p] != loc.junction) continue;
      loc.component = static_cast<int>(c);
      loc.step = static_cast<int>(p);
      loc.major = p + 1 == comp.junctions.size() ? 0 : static_cast<int>(2 * p + 2);
      return loc;
    }
  }
  fail(ErrorCode::internal, "junction missing from every traversal");
}

/// Index of the unique interval (refined as needed) that meets the ball
/// returned by `enclosure(bits)`.
template <class Enclosure>
int unique_overlap(const QPoly& poly, std::vector<IsolatingInterval> ivs, Enclosure enclosure,
                   const char* what) {
  for (unsigned bits = 16; bits <= precision_cap(); bits *= 2) {
    Ball b;
    try {
      b = enclosure(bits);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::undetermined) throw;
      continue;
    }
    int hit = -1, hits = 0;
    for (size_t i = 0; i < ivs.size(); ++i) {
      refine_interval_bits(poly, ivs[i], bits);
      if (!(ivs[i].hi < b.lo() || b.hi() < ivs[i].lo)) {
        hit = static_cast<int>(i);
        ++hits;
      }
    }
    if (hits == 1) return hit;
    if (hits == 0) fail(ErrorCode::internal, std::string("point matches no ") + what);
  }
  fail(ErrorCode::undetermined, std::string("could not separate ") + what + " at precision cap");
}

}  // namespace detail

/// Forms used by point location, pulled back to original coordinates.
struct LocatorForms {
  PlaneForm line;  // w of the topology chart
  PlaneForm fv;    // dF/dv in the topology chart
  explicit LocatorForms(const CurveTopology& T) {
    line = PlaneForm::linear({Qsqrt(T.chart.line[0]), Qsqrt(T.chart.line[1]), Qsqrt(T.chart.line[2])});
    fv = T.chart.from_chart(T.chart.to_chart(T.F).derivative(1));
  }
};

/// Locate a real curve point: its component and traversal position.
inline PointLocation locate_point(const CurveTopology& T, const LocatorForms& forms, const CurvePoint& P,
                                  unsigned min_bits = 16) {
  PointLocation loc;
  const size_t m = T.critical.size();
  if (P.vanishes(forms.line)) {
    loc.kind = PointLocation::infinity;
    int rank = detail::unique_overlap(T.at_infinity, T.slopes,
                                      [&](unsigned bits) {
                                        auto c = detail::to_chart_box(T.chart, P.enclose(bits));
                                        return c[1] / c[0];
                                      },
                                      "point at infinity");
    loc.junction = static_cast<int>(m) + rank;
    return detail::place_junction(T, loc);
  }
  if (T.degree >= 2 && P.vanishes(forms.fv)) {
    loc.kind = PointLocation::fold;
    std::vector<IsolatingInterval> ivs;
    for (const auto& cv : T.critical) ivs.push_back(cv.iv);
    loc.junction = detail::unique_overlap(T.disc, ivs,
                                          [&](unsigned bits) {
                                            auto c = detail::to_chart_box(T.chart, P.enclose(bits));
                                            return c[0] / c[2];
                                          },
                                          "critical value");
    return detail::place_junction(T, loc);
  }
  for (unsigned bits = min_bits; bits <= precision_cap(); bits += bits / 2) {
    auto c = detail::to_chart_box(T.chart, P.enclose(bits));
    if (c[2].contains_zero()) continue;
    Ball U = c[0] / c[2], V = c[1] / c[2];
    // taller than wide, so a branch of any finite slope leaves through the sides
    Rational eps = detail::pow2(-static_cast<long>(bits)), tall = detail::pow2(-static_cast<long>(bits / 2));
    Rational a = U.lo() - eps, b = U.hi() + eps, vl = V.lo() - tall, vh = V.hi() + tall;
    if (T.disc.sign_at(a) == Sign::zero || T.disc.sign_at(b) == Sign::zero) continue;
    if (m > 0 && count_real_roots_in(T.disc, a, b).count > 1) continue;
    QPoly bottom = T.f.at_v(Qsqrt(vl)), top = T.f.at_v(Qsqrt(vh));
    if (bottom.is_zero() || top.is_zero()) continue;
    if (count_real_roots_in(bottom, a, b).count != 0 || count_real_roots_in(top, a, b).count != 0) continue;
    QPoly fa = T.f.at_u(Qsqrt(a)), fb = T.f.at_u(Qsqrt(b));
    if (count_real_roots_in(fa, vl, vh).count != 1 || count_real_roots_in(fb, vl, vh).count != 1) continue;
    int rank = detail::count_below(fa, vl);
    int slab = m == 0 ? 0 : detail::count_below(T.disc, a);
    loc.kind = PointLocation::run;
    loc.run_id = T.run_of[static_cast<size_t>(slab)][static_cast<size_t>(rank)];
    loc.component = T.runs[static_cast<size_t>(loc.run_id)].component;
    const auto& comp = T.components[static_cast<size_t>(loc.component)];
    for (size_t p = 0; p < comp.steps.size(); ++p)
      if (comp.steps[p].run == loc.run_id) {
        loc.step = static_cast<int>(p);
        loc.dir = comp.steps[p].dir;
      }
    loc.major = 2 * loc.step + 1;
    if (loc.dir > 0) {
      loc.minor_lo = a;
      loc.minor_hi = b;
    } else {
      loc.minor_lo = -b;
      loc.minor_hi = -a;
    }
    return loc;
  }
  fail(ErrorCode::undetermined, "point location did not converge at precision cap");
}

inline int locate_component(const CurveTopology& T, const CurvePoint& P) {
  return locate_point(T, LocatorForms(T), P).component;
}

/// Cyclic order of points on one component, starting at the traversal
/// origin. Returns indices into `points`.
inline std::vector<size_t> cyclic_order(const CurveTopology& T, int component, const std::vector<CurvePoint>& points) {
  LocatorForms forms(T);
  std::vector<PointLocation> locs;
  for (const auto& p : points) {
    locs.push_back(locate_point(T, forms, p));
    if (locs.back().component != component) fail(ErrorCode::invalid_input, "point is not on the named component");
  }
  std::vector<unsigned> bits(points.size(), 16);
  while (true) {
    bool clash = false;
    for (size_t i = 0; i < locs.size(); ++i)
      for (size_t j = i + 1; j < locs.size(); ++j) {
        if (locs[i].major != locs[j].major) continue;
        if (locs[i].kind != PointLocation::run) fail(ErrorCode::invalid_input, "repeated point in cyclic_order");
        if (locs[i].minor_hi < locs[j].minor_lo || locs[j].minor_hi < locs[i].minor_lo) continue;
        clash = true;
        for (size_t k : {i, j}) {
          bits[k] *= 2;
          if (bits[k] > precision_cap()) fail(ErrorCode::undetermined, "points could not be separated along the component");
          locs[k] = locate_point(T, forms, points[k], bits[k]);
        }
      }
    if (!clash) break;
  }
  std::vector<size_t> idx(points.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](size_t x, size_t y) {
    if (locs[x].major != locs[y].major) return locs[x].major < locs[y].major;
    return locs[x].minor_hi < locs[y].minor_lo;
  });
  return idx;
}

}  // namespace realsep
