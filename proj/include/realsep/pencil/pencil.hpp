#pragma once

#include <atomic>
#include <mutex>
#include <thread>

#include "realsep/divisor/divisor.hpp"

namespace realsep {

/// Pencil (G0 : G1) of forms of equal degree k on a smooth curve X = {F = 0}.
/// Both divisors are solved in one chart, and the base points on X are
/// matched and removed.
struct Pencil {
  std::shared_ptr<const CurveTopology> topo;
  PlaneForm G0, G1;
  int k = 0;
  Divisor D0, D1;
  BaseMatch base;

  const PlaneForm& F() const { return topo->F; }
  int residual_degree() const { return topo->degree * k - base.total(); }
  bool base_point_free() const { return base.factors.empty(); }
};

inline Pencil make_pencil(std::shared_ptr<const CurveTopology> topo, const PlaneForm& G0, const PlaneForm& G1,
                          const DivisorOptions& opt = {}) {
  if (!topo) fail(ErrorCode::invalid_input, "make_pencil: missing topology");
  if (G0.nvars() != 3 || G1.nvars() != 3) fail(ErrorCode::invalid_input, "pencil forms must be ternary");
  if (G0.is_zero() || G1.is_zero()) fail(ErrorCode::invalid_input, "pencil forms must be nonzero");
  if (G0.degree() != G1.degree()) fail(ErrorCode::invalid_input, "pencil forms must have equal degree");
  if (G0.degree() < 1) fail(ErrorCode::invalid_input, "pencil forms must have positive degree");
  if (G0.proportional_to(G1)) fail(ErrorCode::invalid_input, "pencil forms are proportional");
  Pencil p;
  p.topo = std::move(topo);
  p.G0 = G0;
  p.G1 = G1;
  p.k = G0.degree();
  auto ds = intersect_many(p.topo->F, {G0, G1}, p.topo.get(), opt);
  p.D0 = std::move(ds[0]);
  p.D1 = std::move(ds[1]);
  p.base = match_common_points(p.D0, p.D1, p.topo.get());
  if (p.residual_degree() == 0) fail(ErrorCode::invalid_input, "pencil has no moving part on the curve");
  return p;
}

/// A residual zero of G0 or G1, tagged by form.
struct TaggedZero {
  int form = 0;
  DivisorPoint point;
};

struct Refutation {
  std::string kind;  // non_real_zero, multiple_zero, empty_component, alternation
  std::string detail;
  int component = -1;
  int form = -1;
  std::array<cdouble, 3> approx{};
  std::optional<CurvePoint> point;
};

struct SeparationCertificate {
  bool separating = false;
  std::vector<int> partition;                    // separating only
  std::vector<std::vector<TaggedZero>> sequences;  // per component, cyclic order
  std::optional<Refutation> refutation;
  int curve_degree = 0, k = 0;
  int genus = 0, components = 0;
  int base_multiplicity = 0;
  bool parity_odd = false;  // r + g odd
};

namespace detail {

inline std::optional<Refutation> residual_defect(const Divisor& d, int form) {
  for (const auto& p : d.points) {
    if (!p.real || p.multiplicity > 1) {
      Refutation r;
      r.kind = p.real ? "multiple_zero" : "non_real_zero";
      r.form = form;
      r.component = p.component;
      r.approx = p.approx;
      r.point = p.point;
      r.detail = "residual zero of G" + std::to_string(form) +
                 (p.real ? " has multiplicity " + std::to_string(p.multiplicity) : std::string(" is not real"));
      return r;
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Certify or refute that the pencil is separating: the residual zeros of
/// G0 and G1 are real and simple, every component carries a zero, and the
/// zeros of G0 and G1 alternate along each component.
inline SeparationCertificate check_separating(const Pencil& p) {
  const CurveTopology& T = *p.topo;
  SeparationCertificate c;
  c.curve_degree = T.degree;
  c.k = p.k;
  c.genus = T.genus;
  c.components = static_cast<int>(T.components.size());
  c.base_multiplicity = p.base.total();
  c.parity_odd = (c.components + c.genus) % 2 == 1;
  auto refute = [&](Refutation r) {
    c.separating = false;
    c.partition.clear();
    c.refutation = std::move(r);
    return c;
  };
  if (auto r = detail::residual_defect(p.base.residual0, 0)) return refute(*r);
  auto prof0 = realness_profile(p.base.residual0, c.components);
  for (int i = 0; i < c.components; ++i)
    if (prof0.per_component[static_cast<size_t>(i)] == 0) {
      Refutation r;
      r.kind = "empty_component";
      r.component = i;
      r.form = 0;
      r.detail = "component " + std::to_string(i) + " carries no residual zero of G0";
      return refute(r);
    }
  if (auto r = detail::residual_defect(p.base.residual1, 1)) return refute(*r);
  c.sequences.resize(static_cast<size_t>(c.components));
  for (int i = 0; i < c.components; ++i) {
    std::vector<TaggedZero> zs;
    for (int form = 0; form < 2; ++form)
      for (const auto& z : (form == 0 ? p.base.residual0 : p.base.residual1).points)
        if (z.component == i) zs.push_back({form, z});
    std::vector<CurvePoint> pts;
    for (const auto& z : zs) pts.push_back(*z.point.point);
    auto order = cyclic_order(T, i, pts);
    auto& seq = c.sequences[static_cast<size_t>(i)];
    for (size_t j : order) seq.push_back(zs[j]);
    for (size_t j = 0; j < seq.size(); ++j) {
      const auto& a = seq[j];
      const auto& b = seq[(j + 1) % seq.size()];
      if (a.form == b.form) {
        Refutation r;
        r.kind = "alternation";
        r.component = i;
        r.form = a.form;
        r.approx = b.point.approx;
        r.point = b.point.point;
        r.detail = "two consecutive zeros of G" + std::to_string(a.form) + " on component " + std::to_string(i);
        return refute(r);
      }
    }
  }
  c.separating = true;
  c.partition = prof0.per_component;
  if (!c.parity_odd) fail(ErrorCode::internal, "separating certificate on a curve with r + g even");
  int sum = 0;
  for (int d : c.partition) sum += d;
  if (sum != p.residual_degree()) fail(ErrorCode::internal, "partition does not sum to the residual degree");
  return c;
}

inline std::vector<int> degree_partition(const SeparationCertificate& c) {
  if (!c.separating) fail(ErrorCode::not_separating, "degree_partition needs a separating certificate");
  return c.partition;
}

/// Residual divisor of the member lam*G0 + mu*G1 (base points removed).
inline Divisor member_residual(const Pencil& p, const Qsqrt& lam, const Qsqrt& mu, const DivisorOptions& opt = {}) {
  PlaneForm G = lam * p.G0 + mu * p.G1;
  if (mu.is_zero()) return p.base.residual0;
  if (lam.is_zero()) return p.base.residual1;
  // Fast path: the pencil chart; the base-point polynomial divides the
  // member's resultant exactly.
  PlaneForm Gt = p.D0.chart.to_chart(G);
  if (auto sd = detail::solve_in_chart(QBiPoly::dehomogenize(p.D0.chart.to_chart(p.F())), Gt)) {
    Divisor d;
    d.G = G;
    d.curve_degree = p.topo->degree;
    d.form_degree = p.k;
    d.chart = p.D0.chart;
    d.s0 = sd->s0;
    d.s1 = sd->s1;
    d.factors = squarefree_decomposition(sd->R.exact_div(p.base.product()));
    build_points(d, p.topo.get());
    return d;
  }
  auto ds = intersect_many(p.F(), {p.G0, G}, p.topo.get(), DivisorOptions{opt.seed, opt.max_shears, opt.line_bound, false, opt.prefer});
  return match_common_points(ds[0], ds[1], p.topo.get()).residual1;
}

struct MemberReport {
  Rational lambda, mu;
  int residual = 0;
  int real = 0;
  bool all_real = true;
  bool simple = true;
  bool flagged() const { return !all_real || !simple; }
};

struct OracleReport {
  std::vector<MemberReport> members;
  int flagged() const {
    int n = 0;
    for (const auto& m : members) n += m.flagged();
    return n;
  }
};

/// Grid on RP^1: (1 - t^2 : 2t) with t = tan(theta/2) rounded to 1/1024 and
/// theta_j = pi (j + 1/2) / N.
inline std::pair<Rational, Rational> oracle_member(int j, int N) {
  double theta = M_PI * (j + 0.5) / N;
  Rational t(static_cast<long>(std::llround(std::tan(theta / 2) * 1024)), 1024);
  t.canonicalize();
  Rational lam = 1 - t * t, mu = 2 * t;
  return {lam, mu};
}

/// Res_v(F, lam G0 + mu G1) in the pencil chart, written as
/// sum_j lam^j mu^(n-j) P_j(u): the resultant is homogeneous of degree n in
/// the coefficients of the second argument.
struct MemberFamily {
  std::vector<QPoly> P;
  Qsqrt c0, c1;  // leading v-coefficients of G0, G1 in the chart
  QPoly base;
};

inline MemberFamily member_family(const Pencil& p) {
  const Chart& chart = p.D0.chart;
  QBiPoly f = QBiPoly::dehomogenize(chart.to_chart(p.F()));
  PlaneForm g0 = chart.to_chart(p.G0), g1 = chart.to_chart(p.G1);
  const int n = f.degree_v();
  MemberFamily fam;
  fam.c0 = g0.coeff({0, p.k, 0});
  fam.c1 = g1.coeff({0, p.k, 0});
  fam.base = p.base.product();
  std::vector<Qsqrt> xs;
  std::vector<QPoly> rs;
  for (size_t i = 0; static_cast<int>(xs.size()) <= n; ++i) {
    Qsqrt x(Rational(detail::sample_point(i)));
    if ((fam.c0 + x * fam.c1).is_zero()) continue;
    xs.push_back(x);
    rs.push_back(resultant_in_v(f, QBiPoly::dehomogenize(g0 + x * g1)));
  }
  int top = 0;
  for (const auto& r : rs) top = std::max(top, r.degree());
  std::vector<std::vector<Qsqrt>> coeffs(static_cast<size_t>(n) + 1, std::vector<Qsqrt>(static_cast<size_t>(top) + 1));
  for (int e = 0; e <= top; ++e) {
    std::vector<Qsqrt> ys;
    for (const auto& r : rs) ys.push_back(r.coeff(e));
    QPoly q = interpolate(xs, ys);
    for (int j = 0; j <= n; ++j) coeffs[static_cast<size_t>(j)][static_cast<size_t>(e)] = q.coeff(n - j);
  }
  for (auto& c : coeffs) fam.P.push_back(QPoly(std::move(c)));
  return fam;
}

namespace detail {

/// True if q changes sign deg(q) times across rational separators placed
/// between approximate roots: then every root is real and simple. A false
/// answer is inconclusive.
inline bool all_roots_real_simple(const QPoly& q) {
  const int n = q.degree();
  if (n < 1) return true;
  std::vector<double> xs;
  for (auto z : approximate_roots(q)) xs.push_back(z.real());
  std::sort(xs.begin(), xs.end());
  Rational bound = q.root_bound();
  std::vector<Rational> cuts{-bound};
  for (size_t i = 0; i + 1 < xs.size(); ++i) {
    if (!(xs[i] < xs[i + 1])) return false;
    cuts.push_back(rational_from_double(0.5 * (xs[i] + xs[i + 1])));
  }
  cuts.push_back(bound);
  Sign prev = Sign::zero;
  int changes = 0;
  for (const auto& c : cuts) {
    Sign s = q.sign_at(c);
    if (s == Sign::zero) return false;
    if (prev != Sign::zero && s != prev) ++changes;
    prev = s;
  }
  return changes == n;
}

}  // namespace detail

inline MemberReport count_member(const Pencil& p, const MemberFamily& fam, const Rational& lam, const Rational& mu) {
  MemberReport m;
  m.lambda = lam;
  m.mu = mu;
  std::vector<SquarefreeFactor<Qsqrt>> factors;
  const int n = static_cast<int>(fam.P.size()) - 1;
  if (!(Qsqrt(lam) * fam.c0 + Qsqrt(mu) * fam.c1).is_zero()) {
    QPoly R;
    Rational lp = 1;
    for (int j = 0; j <= n; ++j) {
      Rational w = lp;
      for (int i = j; i < n; ++i) w *= mu;
      R += QPoly::constant(Qsqrt(w)) * fam.P[static_cast<size_t>(j)];
      lp *= lam;
    }
    if (R.degree() == p.topo->degree * p.k) {
      auto [q, r] = R.divmod(fam.base);
      if (r.is_zero() && detail::all_roots_real_simple(q)) {
        m.residual = m.real = q.degree();
        return m;
      }
      if (r.is_zero()) factors = squarefree_decomposition(q);
    }
  }
  if (factors.empty()) factors = member_residual(p, Qsqrt(lam), Qsqrt(mu)).factors;
  for (const auto& f : factors) {
    m.residual += f.factor.degree() * f.multiplicity;
    m.real += count_real_roots(f.factor) * f.multiplicity;
    if (f.multiplicity > 1) m.simple = false;
  }
  m.all_real = m.real == m.residual;
  return m;
}

/// Count real zeros of N pencil members (certified per member). Never the
/// authority for a verdict.
inline OracleReport sampling_oracle(const Pencil& p, int N, int threads = 1) {
  OracleReport rep;
  rep.members.resize(static_cast<size_t>(N));
  MemberFamily fam = member_family(p);
  auto work = [&](int j) {
    auto [lam, mu] = oracle_member(j, N);
    rep.members[static_cast<size_t>(j)] = count_member(p, fam, lam, mu);
  };
  threads = std::max(1, std::min(threads, N));
  if (threads == 1) {
    for (int j = 0; j < N; ++j) work(j);
    return rep;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int j; (j = next++) < N;) {
        try {
          work(j);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return rep;
}

}  // namespace realsep
