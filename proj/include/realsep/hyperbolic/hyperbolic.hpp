#pragma once

#include <random>
#include <set>
#include <sstream>

#include "realsep/pencil/pencil.hpp"

namespace realsep {

/// Map X -> P^m given by forms v_0..v_m of one degree with no common zero on X.
struct EmbeddingMap {
  std::shared_ptr<const CurveTopology> topo;
  std::vector<PlaneForm> forms;
  int k = 0;
};

inline EmbeddingMap make_embedding(std::shared_ptr<const CurveTopology> topo, std::vector<PlaneForm> forms,
                                   const DivisorOptions& opt = {}) {
  if (!topo) fail(ErrorCode::invalid_input, "make_embedding: missing topology");
  if (forms.size() < 3) fail(ErrorCode::invalid_input, "an embedding needs at least three forms");
  for (const auto& v : forms) {
    if (v.nvars() != 3 || v.is_zero()) fail(ErrorCode::invalid_input, "embedding forms must be nonzero ternary forms");
    if (v.degree() != forms[0].degree()) fail(ErrorCode::invalid_input, "embedding forms must have equal degree");
  }
  if (std::all_of(forms.begin(), forms.end(), [&](const PlaneForm& v) { return v.proportional_to(forms[0]); }))
    fail(ErrorCode::invalid_input, "embedding forms are all proportional");
  // Common zeros: u-roots shared by every resultant with matching fiber points.
  auto ds = intersect_many(topo->F, forms, topo.get(), DivisorOptions{opt.seed, opt.max_shears, opt.line_bound, false, opt.prefer});
  QPoly h = QPoly::constant(Qsqrt(1));
  for (const auto& f : ds[0].factors) h = h * f.factor;
  for (size_t j = 1; j < ds.size() && h.degree() > 0; ++j) {
    QPoly rj = QPoly::constant(Qsqrt(1));
    for (const auto& f : ds[j].factors) rj = rj * f.factor;
    h = gcd(h, rj);
    QPoly same = ds[0].s0 * ds[j].s1 - ds[j].s0 * ds[0].s1;
    if (!same.is_zero() && h.degree() > 0) h = gcd(h, same);
  }
  if (h.degree() > 0) {
    auto z = approximate_roots(h).front();
    auto p = detail::complex_point(ds[0].chart, ds[0].s0, ds[0].s1, z);
    std::ostringstream w;
    w << "embedding forms share a zero on the curve near (" << p[0] << " : " << p[1] << " : " << p[2] << ")";
    fail(ErrorCode::invalid_input, w.str());
  }
  const int k = forms[0].degree();
  return EmbeddingMap{std::move(topo), std::move(forms), k};
}

/// Center E = {a.v = 0} cap {b.v = 0} of a projection from P^m.
struct ProjectionCenter {
  std::vector<Rational> a, b;
};

inline PlaneForm apply_functional(const EmbeddingMap& m, const std::vector<Rational>& c) {
  PlaneForm out = PlaneForm::constant(3, Qsqrt(0));
  bool any = false;
  for (size_t j = 0; j < c.size(); ++j) {
    if (c[j] == 0) continue;
    PlaneForm term = Qsqrt(c[j]) * m.forms[j];
    out = any ? out + term : term;
    any = true;
  }
  return out;
}

namespace detail {

/// Forms whose signs at a zero P of C = A + tB give the sense in which the
/// parameter A/B passes -t along the topology traversal.
struct WindingForms {
  PlaneForm fv, jac, B, line;
};

inline WindingForms winding_forms(const CurveTopology& T, const PlaneForm& C, const PlaneForm& B) {
  PlaneForm Ft = T.chart.to_chart(T.F), Ct = T.chart.to_chart(C);
  PlaneForm J = Ct.derivative(0) * Ft.derivative(1) - Ct.derivative(1) * Ft.derivative(0);
  LocatorForms lf(T);
  return {lf.fv, T.chart.from_chart(J), B, lf.line};
}

}  // namespace detail

/// Signed degree of (A : B) : X_i -> RP^1 on each component, as the signed
/// count of crossings of A + tB = 0 along the traversal. Requires A and B to
/// have no common real zero on X.
inline std::vector<int> winding_numbers(const CurveTopology& T, const PlaneForm& A, const PlaneForm& B,
                                        const DivisorOptions& opt = {}) {
  LocatorForms lf(T);
  for (unsigned i = 0; i < 24; ++i) {
    Rational t(detail::sample_point(i));
    PlaneForm C = A + Qsqrt(t) * B;
    if (C.is_zero()) continue;
    Divisor d;
    try {
      d = intersect(T.F, C, &T, DivisorOptions{opt.seed, opt.max_shears, opt.line_bound, false, opt.prefer});
    } catch (const Error& e) {
      if (e.code() == ErrorCode::genericity_failure || e.code() == ErrorCode::common_component) continue;
      throw;
    }
    bool usable = true;
    for (const auto& p : d.points) {
      if (!p.real) continue;
      if (p.multiplicity > 1 || p.point->vanishes(lf.line) || p.point->vanishes(lf.fv) || p.point->vanishes(B)) {
        usable = false;
        break;
      }
    }
    if (!usable) continue;
    auto wf = detail::winding_forms(T, C, B);
    std::vector<int> w(T.components.size(), 0);
    for (const auto& p : d.points) {
      if (!p.real) continue;
      auto loc = locate_point(T, lf, *p.point);
      // Signs are taken with the solve-chart normalization; the product has
      // odd total degree, so one factor of sign(w_T) moves it to w_T = 1.
      int s = static_cast<int>(p.point->sign_of(wf.fv)) * static_cast<int>(p.point->sign_of(wf.jac)) *
              static_cast<int>(p.point->sign_of(wf.B)) * static_cast<int>(p.point->sign_of(wf.line));
      if (s == 0) fail(ErrorCode::internal, "degenerate crossing in winding computation");
      w[static_cast<size_t>(loc.component)] += loc.dir * s;
    }
    return w;
  }
  fail(ErrorCode::genericity_failure, "no admissible crossing level for the winding computation");
}

struct HyperbolicityCertificate {
  bool hyperbolic = false;
  std::string reason;  // empty when hyperbolic
  ProjectionCenter center;
  PlaneForm A, B;
  std::optional<SeparationCertificate> pencil;
  std::vector<int> winding;
  std::vector<int> partition;
  std::vector<DivisorPoint> witness;  // points of E on X
};

/// X is hyperbolic with respect to E when the projection from E, i.e. the
/// pencil (a.v : b.v), is separating.
inline HyperbolicityCertificate check_hyperbolic(const EmbeddingMap& m, const ProjectionCenter& center,
                                                 const DivisorOptions& opt = {}) {
  if (center.a.size() != m.forms.size() || center.b.size() != m.forms.size())
    fail(ErrorCode::invalid_input, "center functionals must have " + std::to_string(m.forms.size()) + " entries");
  {
    bool dependent = true;
    for (size_t i = 0; i < center.a.size() && dependent; ++i)
      for (size_t j = i + 1; j < center.a.size() && dependent; ++j)
        dependent = center.a[i] * center.b[j] == center.a[j] * center.b[i];
    if (dependent) fail(ErrorCode::invalid_input, "center functionals are linearly dependent");
  }
  HyperbolicityCertificate c;
  c.center = center;
  c.A = apply_functional(m, center.a);
  c.B = apply_functional(m, center.b);
  if (c.A.is_zero() || c.B.is_zero() || c.A.proportional_to(c.B)) {
    c.reason = "center contains the image of the curve";
    return c;
  }
  Pencil p;
  try {
    p = make_pencil(m.topo, c.A, c.B, opt);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ambiguous_base_point && e.code() != ErrorCode::invalid_input) throw;
    c.reason = "center meets the curve";
    auto ds = intersect_many(m.topo->F, {c.A, c.B}, m.topo.get(), opt);
    c.witness = match_common_points(ds[0], ds[1], m.topo.get(), false).points;
    return c;
  }
  if (!p.base_point_free()) {
    c.reason = "center meets the curve";
    c.witness = p.base.points;
    return c;
  }
  c.pencil = check_separating(p);
  if (!c.pencil->separating) {
    c.reason = "projection is not separating: " + c.pencil->refutation->detail;
    return c;
  }
  DivisorOptions wopt = opt;
  wopt.prefer = p.D0.chart;
  c.winding = winding_numbers(*m.topo, c.A, c.B, wopt);
  c.hyperbolic = true;
  c.partition = c.pencil->partition;
  int total = 0;
  for (size_t i = 0; i < c.winding.size(); ++i) {
    if (std::abs(c.winding[i]) != c.partition[i]) fail(ErrorCode::internal, "winding number differs from the partition");
    total += std::abs(c.winding[i]);
  }
  if (total != m.topo->degree * c.A.degree()) fail(ErrorCode::internal, "winding numbers do not sum to the degree");
  return c;
}

struct LocusOptions {
  int grid = 0;        // grid x grid centers when > 0
  int random = 0;      // seeded random centers when > 0
  unsigned seed = 0;
  int threads = 1;
  DivisorOptions divisor;
};

struct LocusRecord {
  ProjectionCenter center;
  std::string verdict;  // hyperbolic, not_hyperbolic, error
  std::vector<int> partition;
  std::string witness;
};

struct LocusReport {
  std::vector<LocusRecord> records;
  std::vector<std::vector<int>> partitions;  // distinct, sorted
  bool disconnected = false;
  unsigned seed = 0;
  int grid = 0;
};

/// Grid centers a = (1-s) e_0 + s e_{m-1}, b = (1-t) e_1 + t e_m for
/// s, t in {0, 1/(K-1), ..., 1}; then seeded random integer centers.
inline std::vector<ProjectionCenter> locus_centers(size_t nforms, const LocusOptions& opt) {
  std::vector<ProjectionCenter> out;
  const size_t m = nforms - 1;
  for (int i = 0; i < opt.grid; ++i)
    for (int j = 0; j < opt.grid; ++j) {
      Rational s = opt.grid == 1 ? Rational(0) : Rational(i, opt.grid - 1), t = opt.grid == 1 ? Rational(0) : Rational(j, opt.grid - 1);
      s.canonicalize();
      t.canonicalize();
      ProjectionCenter c{std::vector<Rational>(nforms), std::vector<Rational>(nforms)};
      c.a[0] += 1 - s;
      c.a[m - 1] += s;
      c.b[1] += 1 - t;
      c.b[m] += t;
      out.push_back(std::move(c));
    }
  std::mt19937_64 rng(opt.seed);
  for (int i = 0; i < opt.random; ++i) {
    ProjectionCenter c{std::vector<Rational>(nforms), std::vector<Rational>(nforms)};
    for (auto* v : {&c.a, &c.b})
      for (auto& x : *v) x = Rational(static_cast<long>(rng() % 9) - 4);
    out.push_back(std::move(c));
  }
  return out;
}

inline LocusReport locus_scan(const EmbeddingMap& m, const LocusOptions& opt) {
  LocusReport rep;
  rep.seed = opt.seed;
  rep.grid = opt.grid;
  auto centers = locus_centers(m.forms.size(), opt);
  rep.records.resize(centers.size());
  auto work = [&](size_t i) {
    LocusRecord r;
    r.center = centers[i];
    try {
      auto c = check_hyperbolic(m, centers[i], opt.divisor);
      r.verdict = c.hyperbolic ? "hyperbolic" : "not_hyperbolic";
      r.partition = c.partition;
      r.witness = c.reason;
    } catch (const Error& e) {
      r.verdict = "error";
      r.witness = std::string(to_string(e.code())) + ": " + e.what();
    }
    rep.records[i] = std::move(r);
  };
  const int threads = std::max(1, std::min<int>(opt.threads, static_cast<int>(centers.size())));
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (size_t i; (i = next++) < centers.size();) work(i);
    });
  for (auto& th : pool) th.join();
  std::set<std::vector<int>> distinct;
  for (const auto& r : rep.records)
    if (r.verdict == "hyperbolic") distinct.insert(r.partition);
  rep.partitions.assign(distinct.begin(), distinct.end());
  rep.disconnected = rep.partitions.size() >= 2;
  return rep;
}

}  // namespace realsep
