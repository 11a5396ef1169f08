#pragma once

#include <complex>

#include "realsep/curvetopo/locate.hpp"
#include "realsep/exactnum/approx_roots.hpp"

namespace realsep {

struct DivisorOptions {
  unsigned seed = 0;
  unsigned max_shears = 16;
  int line_bound = 3;
  bool cross_check = true;  // repeat in a second chart and compare
  std::optional<Chart> prefer;  // tried before the search when given
};

/// One point of the zero divisor of G on X.
struct DivisorPoint {
  bool real = true;
  int multiplicity = 1;
  int component = -1;              // real points only
  std::optional<CurvePoint> point;  // real points only
  std::array<cdouble, 3> approx{};  // original coordinates, not certified
  int factor = -1;                  // index into Divisor::factors
};

/// Zero divisor of a form G on the curve F, solved in one chart: the u-
/// coordinates of the points are the roots of R = Res_v(F, G), grouped by
/// square-free factors, and v = -s0(u)/s1(u).
struct Divisor {
  PlaneForm G;
  int curve_degree = 0;
  int form_degree = 0;
  Chart chart;
  QPoly s0, s1;
  std::vector<SquarefreeFactor<Qsqrt>> factors;
  std::vector<DivisorPoint> points;

  int total() const {
    int t = 0;
    for (const auto& f : factors) t += f.factor.degree() * f.multiplicity;
    return t;
  }
  int real_count() const {
    int t = 0;
    for (const auto& p : points) t += p.real ? p.multiplicity : 0;
    return t;
  }
};

struct RealnessProfile {
  bool all_real = true;
  bool all_simple = true;
  std::vector<int> per_component;  // real zeros with multiplicity
};

inline RealnessProfile realness_profile(const Divisor& d, int components) {
  RealnessProfile rp;
  rp.per_component.assign(static_cast<size_t>(components), 0);
  for (const auto& p : d.points) {
    if (!p.real) rp.all_real = false;
    if (p.multiplicity > 1) rp.all_simple = false;
    if (p.real && p.component >= 0) rp.per_component[static_cast<size_t>(p.component)] += p.multiplicity;
  }
  return rp;
}

namespace detail {

struct SolveData {
  QPoly R, s0, s1;
};

/// Resultant and fiber subresultant of (F, G) in a chart, or nullopt if the
/// chart is not generic for G: both forms must be monic in v up to a
/// constant, no intersection may lie on the line at infinity, and no two
/// intersection points may share a u-coordinate.
inline std::optional<SolveData> solve_in_chart(const QBiPoly& f, const PlaneForm& Gt) {
  const int k = Gt.degree();
  if (Gt.coeff({0, k, 0}).is_zero()) return std::nullopt;
  QBiPoly g = QBiPoly::dehomogenize(Gt);
  SolveData sd;
  sd.R = resultant_in_v(f, g);
  if (sd.R.degree() != f.total_degree() * k) return std::nullopt;
  if (f.degree_v() == 1) {
    sd.s1 = f.coeff_v(1);
    sd.s0 = f.coeff_v(0);
  } else if (g.degree_v() == 1) {
    sd.s1 = g.coeff_v(1);
    sd.s0 = g.coeff_v(0);
  } else {
    auto sub = subresultant_in_v(f, g, 1);
    sd.s0 = sub[0];
    sd.s1 = sub[1];
  }
  if (sd.s1.is_zero()) return std::nullopt;
  if (gcd(squarefree_part(sd.R), sd.s1).degree() > 0) return std::nullopt;
  return sd;
}

struct FamilyChart {
  Chart chart;
  std::vector<SolveData> data;
};

/// The preferred chart if it is generic for every form in the family, else
/// the first such chart in the deterministic search order other than `other`.
inline FamilyChart find_family_chart(const PlaneForm& F, const std::vector<PlaneForm>& forms,
                                     const DivisorOptions& opt, const Chart* other = nullptr) {
  const int n = F.degree();
  auto try_chart = [&](const Chart& c) -> std::optional<FamilyChart> {
    PlaneForm Ft = c.to_chart(F);
    if (Ft.coeff({0, n, 0}).is_zero()) return std::nullopt;
    QBiPoly f = QBiPoly::dehomogenize(Ft);
    FamilyChart fc{c, {}};
    for (const auto& G : forms) {
      auto sd = solve_in_chart(f, c.to_chart(G));
      if (!sd) return std::nullopt;
      fc.data.push_back(std::move(*sd));
    }
    return fc;
  };
  if (opt.prefer && !other)
    if (auto fc = try_chart(*opt.prefer)) return *fc;
  for (const auto& line : candidate_lines(opt.line_bound)) {
    auto [p, q] = complement_axes(line);
    for (unsigned s = 0; s < opt.max_shears; ++s) {
      auto fc = try_chart(make_chart(line, p, q, shear_value(opt.seed + s)));
      if (!fc) continue;
      if (other && fc->chart.N == other->N) continue;
      return *fc;
    }
  }
  fail(ErrorCode::genericity_failure, "no chart is generic for all forms within the search budget");
}

inline std::array<cdouble, 3> complex_point(const Chart& c, const QPoly& s0, const QPoly& s1, cdouble u) {
  cdouble v = -eval_complex(s0, u) / eval_complex(s1, u);
  std::array<cdouble, 3> out;
  for (int i = 0; i < 3; ++i) out[i] = c.M[i][0].get_d() * u + c.M[i][1].get_d() * v + c.M[i][2].get_d();
  return out;
}

}  // namespace detail

/// Fill the point list of a divisor from its square-free factors.
inline void build_points(Divisor& d, const CurveTopology* topo) {
  d.points.clear();
  std::optional<LocatorForms> forms;
  if (topo) forms.emplace(*topo);
  struct Real {
    DivisorPoint p;
    IsolatingInterval iv;
  };
  std::vector<Real> reals;
  std::vector<DivisorPoint> complexes;
  for (size_t fi = 0; fi < d.factors.size(); ++fi) {
    const auto& sf = d.factors[fi];
    auto data = std::make_shared<FiberData>(FiberData{d.chart, sf.factor, d.s0, d.s1});
    auto ivs = isolate_squarefree(sf.factor);
    for (const auto& iv : ivs) {
      DivisorPoint p;
      p.real = true;
      p.multiplicity = sf.multiplicity;
      p.factor = static_cast<int>(fi);
      p.point = CurvePoint(data, iv);
      auto a = p.point->approx();
      p.approx = {a[0], a[1], a[2]};
      if (topo) p.component = locate_point(*topo, *forms, *p.point).component;
      reals.push_back({std::move(p), iv});
    }
    int nonreal = sf.factor.degree() - static_cast<int>(ivs.size());
    if (nonreal > 0) {
      std::vector<cdouble> zs;
      for (auto z : approximate_roots(sf.factor))
        if (std::abs(z.imag()) > 0) zs.push_back(z);
      std::sort(zs.begin(), zs.end(), [](cdouble a, cdouble b) {
        return std::abs(a.imag()) != std::abs(b.imag()) ? std::abs(a.imag()) > std::abs(b.imag()) : false;
      });
      zs.resize(std::min<size_t>(zs.size(), static_cast<size_t>(nonreal)));
      std::sort(zs.begin(), zs.end(), [](cdouble a, cdouble b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
      });
      while (static_cast<int>(zs.size()) < nonreal) zs.emplace_back(0, 0);
      for (auto z : zs) {
        DivisorPoint p;
        p.real = false;
        p.multiplicity = sf.multiplicity;
        p.factor = static_cast<int>(fi);
        p.approx = detail::complex_point(d.chart, d.s0, d.s1, z);
        complexes.push_back(p);
      }
    }
  }
  // Real points in increasing chart u; roots of different factors are
  // distinct, so overlapping intervals refine apart.
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < reals.size(); ++i)
      for (size_t j = i + 1; j < reals.size(); ++j) {
        if (reals[i].iv.disjoint_from(reals[j].iv)) continue;
        changed = true;
        for (auto* r : {&reals[i], &reals[j]})
          if (!r->iv.exact()) refine_interval(d.factors[r->p.factor].factor, r->iv, r->iv.width() / 4);
      }
  }
  std::sort(reals.begin(), reals.end(), [](const Real& a, const Real& b) { return a.iv.lo < b.iv.lo; });
  for (auto& r : reals) d.points.push_back(std::move(r.p));
  for (auto& c : complexes) d.points.push_back(std::move(c));
}

namespace detail {

inline Divisor make_divisor(const PlaneForm& F, const PlaneForm& G, const Chart& chart, const SolveData& sd,
                            const CurveTopology* topo) {
  Divisor d;
  d.G = G;
  d.curve_degree = F.degree();
  d.form_degree = G.degree();
  d.chart = chart;
  d.s0 = sd.s0;
  d.s1 = sd.s1;
  d.factors = squarefree_decomposition(sd.R);
  build_points(d, topo);
  if (d.total() != d.curve_degree * d.form_degree) fail(ErrorCode::internal, "Bezout count violated");
  return d;
}

/// Real points of two solutions of the same system in different charts
/// must correspond one-to-one with equal multiplicities; non-real
/// multiplicity profiles must agree.
inline void cross_check(const Divisor& a, const Divisor& b) {
  std::map<int, int> ca, cb;
  std::vector<const DivisorPoint*> ra, rb;
  for (const auto& p : a.points) p.real ? ra.push_back(&p) : void(++ca[p.multiplicity]);
  for (const auto& p : b.points) p.real ? rb.push_back(&p) : void(++cb[p.multiplicity]);
  if (ca != cb || ra.size() != rb.size())
    fail(ErrorCode::internal, "intersection differs between elimination charts");
  auto chart_uv = [&](const CurvePoint& P, unsigned bits) {
    auto c = apply3<Ball>(a.chart.N, P.enclose(bits));
    return std::make_pair(c[0] / c[2], c[1] / c[2]);
  };
  for (unsigned bits = 24; bits <= precision_cap(); bits *= 2) {
    std::vector<std::pair<Ball, Ball>> ba, bb;
    try {
      for (auto* p : ra) ba.push_back(chart_uv(*p->point, bits));
      for (auto* p : rb) bb.push_back(chart_uv(*p->point, bits));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::undetermined) throw;
      continue;
    }
    bool unique = true;
    std::vector<int> partner(ra.size(), -1);
    for (size_t i = 0; i < ba.size() && unique; ++i) {
      int hits = 0;
      for (size_t j = 0; j < bb.size(); ++j)
        if (ba[i].first.overlaps(bb[j].first) && ba[i].second.overlaps(bb[j].second)) {
          ++hits;
          partner[i] = static_cast<int>(j);
        }
      if (hits == 0) fail(ErrorCode::internal, "real intersection point missing in the second chart");
      unique = hits == 1;
    }
    if (!unique) continue;
    std::vector<int> used(rb.size(), 0);
    for (size_t i = 0; i < ra.size(); ++i) {
      if (used[partner[i]]++) fail(ErrorCode::internal, "two points matched to one in the second chart");
      if (ra[i]->multiplicity != rb[partner[i]]->multiplicity)
        fail(ErrorCode::internal, "intersection multiplicity differs between elimination charts");
    }
    return;
  }
  fail(ErrorCode::undetermined, "could not match intersection points between charts");
}

}  // namespace detail

/// Zero divisors of several forms on F, solved in one common chart (and
/// cross-checked in a second one when requested).
inline std::vector<Divisor> intersect_many(const PlaneForm& F, const std::vector<PlaneForm>& forms,
                                           const CurveTopology* topo, const DivisorOptions& opt = {}) {
  for (const auto& G : forms) {
    if (G.nvars() != 3 || G.is_zero() || G.degree() < 1)
      fail(ErrorCode::invalid_input, "intersect expects nonzero ternary forms of degree >= 1");
  }
  std::vector<Divisor> out;
  detail::FamilyChart fc;
  try {
    fc = detail::find_family_chart(F, forms, opt);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::genericity_failure) throw;
    // R vanishes identically in every chart exactly when F and G share a component.
    for (const auto& G : forms) {
      PlaneForm Ft = F, Gt = G;
      bool common = true;
      for (const auto& line : candidate_lines(1)) {
        auto [p, q] = complement_axes(line);
        Chart c = make_chart(line, p, q, Rational(1, 3));
        Ft = c.to_chart(F);
        Gt = c.to_chart(G);
        if (Ft.coeff({0, F.degree(), 0}).is_zero() || Gt.coeff({0, G.degree(), 0}).is_zero()) continue;
        common = resultant_in_v(QBiPoly::dehomogenize(Ft), QBiPoly::dehomogenize(Gt)).is_zero();
        break;
      }
      if (common) fail(ErrorCode::common_component, "the form vanishes on a component of the curve");
    }
    throw;
  }
  for (size_t i = 0; i < forms.size(); ++i) out.push_back(detail::make_divisor(F, forms[i], fc.chart, fc.data[i], topo));
  if (opt.cross_check) {
    auto fc2 = detail::find_family_chart(F, forms, opt, &fc.chart);
    for (size_t i = 0; i < forms.size(); ++i)
      detail::cross_check(out[i], detail::make_divisor(F, forms[i], fc2.chart, fc2.data[i], nullptr));
  }
  return out;
}

inline Divisor intersect(const PlaneForm& F, const PlaneForm& G, const CurveTopology* topo,
                         const DivisorOptions& opt = {}) {
  return intersect_many(F, {G}, topo, opt).front();
}

/// Common points of two divisors solved in the same chart.
struct BaseMatch {
  std::vector<DivisorPoint> points;
  std::vector<SquarefreeFactor<Qsqrt>> factors;  // u-polynomials of the common points
  Divisor residual0, residual1;
  int total() const {
    int t = 0;
    for (const auto& f : factors) t += f.factor.degree() * f.multiplicity;
    return t;
  }
  int real_total() const {
    int t = 0;
    for (const auto& p : points) t += p.real ? p.multiplicity : 0;
    return t;
  }
  /// Product of factor^multiplicity.
  QPoly product() const {
    QPoly b = QPoly::constant(Qsqrt(1));
    for (const auto& f : factors)
      for (int i = 0; i < f.multiplicity; ++i) b = b * f.factor;
    return b;
  }
};

/// Match common points of two divisors and remove them. A point common to
/// both must carry the same multiplicity in each; otherwise the pencil has
/// a base point of unsupported type. With strict = false the smaller
/// multiplicity is taken instead.
inline BaseMatch match_common_points(const Divisor& a, const Divisor& b, const CurveTopology* topo,
                                     bool strict = true) {
  if (!(a.chart.N == b.chart.N)) fail(ErrorCode::invalid_input, "match_common_points needs divisors from one chart");
  BaseMatch m;
  m.residual0 = a;
  m.residual1 = b;
  QPoly same_fiber = a.s0 * b.s1 - b.s0 * a.s1;
  auto& fa = m.residual0.factors;
  auto& fb = m.residual1.factors;
  for (auto& x : fa)
    for (auto& y : fb) {
      QPoly h = gcd(x.factor, y.factor);
      if (h.degree() < 1) continue;
      if (!same_fiber.is_zero()) h = gcd(h, same_fiber);
      if (h.degree() < 1) continue;
      if (strict && x.multiplicity != y.multiplicity)
        fail(ErrorCode::ambiguous_base_point, "a common point has multiplicity " + std::to_string(x.multiplicity) +
                                                  " in one form and " + std::to_string(y.multiplicity) + " in the other");
      m.factors.push_back({h.monic(), std::min(x.multiplicity, y.multiplicity)});
      x.factor = x.factor.exact_div(h);
      y.factor = y.factor.exact_div(h);
    }
  auto prune = [](std::vector<SquarefreeFactor<Qsqrt>>& fs) {
    std::erase_if(fs, [](const auto& f) { return f.factor.degree() < 1; });
  };
  prune(fa);
  prune(fb);
  build_points(m.residual0, topo);
  build_points(m.residual1, topo);
  Divisor base = a;
  base.factors = m.factors;
  build_points(base, topo);
  m.points = std::move(base.points);
  return m;
}

}  // namespace realsep
