#pragma once

// Included from topology.hpp.

namespace realsep {

namespace detail {

/// Roots of a square-free p in (-inf, x]; x must not be a root.
inline int count_below(const QPoly& p, const Rational& x) {
  if (p.degree() < 1) return 0;
  SturmSequence<Qsqrt> st(p);
  return st.variations_at_neg_inf() - st.variations_at(x);
}

inline Rational pow2(long e) { return mul_2exp(Rational(1), e); }

/// Certify which pair of fiber points merges at a critical value, using a
/// box [a, b] x [wl, wh] around the fold whose top and bottom edges avoid
/// the curve and whose left and right edges see the pair on one side only.
inline void analyze_fold(const QBiPoly& f, const QPoly& D, const QPoly& s0, const QPoly& s1,
                         CriticalValue& cv, int left_count, int right_count) {
  if (std::abs(left_count - right_count) != 2)
    fail(ErrorCode::internal, "fiber count does not change by two at a critical value");
  cv.opens_right = right_count > left_count;
  for (long bits = 6; bits <= static_cast<long>(precision_cap() / 2); bits += 6) {
    Rational a, b;
    if (cv.iv.exact()) {
      a = cv.iv.lo - pow2(-bits);
      b = cv.iv.lo + pow2(-bits);
      if (D.sign_at(a) == Sign::zero || D.sign_at(b) == Sign::zero) continue;
      if (count_real_roots_in(D, a, b).count != 1) continue;
    } else {
      refine_interval_bits(D, cv.iv, static_cast<unsigned>(bits));
      if (cv.iv.exact()) continue;
      a = cv.iv.lo;
      b = cv.iv.hi;
    }
    const unsigned prec = static_cast<unsigned>(bits) + 16;
    Ball ub(a, b, prec);
    Ball s1b = s1.eval(ub);
    if (s1b.contains_zero()) continue;
    Ball v0 = -(s0.eval(ub) / s1b);
    Rational rho = pow2(-std::max<long>(1, bits / 3));
    Rational wl = v0.lo() - rho, wh = v0.hi() + rho;
    QPoly bottom = f.at_v(Qsqrt(wl)), top = f.at_v(Qsqrt(wh));
    if (bottom.is_zero() || top.is_zero()) continue;
    if (count_real_roots_in(bottom, a, b).count != 0 || count_real_roots_in(top, a, b).count != 0) continue;
    QPoly fa = f.at_u(Qsqrt(a)), fb = f.at_u(Qsqrt(b));
    int cl = count_real_roots_in(fa, wl, wh).count, cr = count_real_roots_in(fb, wl, wh).count;
    if (cv.opens_right ? !(cl == 0 && cr == 2) : !(cl == 2 && cr == 0)) continue;
    if (count_real_roots(fa) != left_count || count_real_roots(fb) != right_count)
      fail(ErrorCode::internal, "fold box edges disagree with the slab fibers");
    cv.merge_index = count_below(cv.opens_right ? fb : fa, wl);
    cv.box_u_lo = a;
    cv.box_u_hi = b;
    cv.box_v_lo = wl;
    cv.box_v_hi = wh;
    return;
  }
  fail(ErrorCode::undetermined, "could not certify the fold box at a critical value");
}

struct ArcEnd {
  enum Kind { pass, fold, infinity } kind = pass;
  int slab = 0, index = 0;  // partner arc
  int junction = -1;
};

struct ChartChoice {
  ChartEval eval;
  int line_real_points = 0;
};

/// Chart search: prefer a transversal line with exactly (n mod 2) real
/// points, so every oval is bounded in the chart; then shear until the
/// discriminant is square-free.
inline std::optional<ChartChoice> find_topology_chart(const PlaneForm& F, const TopologyOptions& opt,
                                                      QPoly& D) {
  const int n = F.degree();
  std::vector<std::pair<int, std::array<Rational, 3>>> ranked;
  for (const auto& line : candidate_lines(opt.line_bound)) {
    auto [p, q] = complement_axes(line);
    for (unsigned s = 0; s < opt.max_shears; ++s) {
      auto ce = admissible_chart(F, make_chart(line, p, q, shear_value(opt.seed + s)));
      if (!ce) continue;
      ranked.emplace_back(count_real_roots(ce->at_infinity), line);
      break;
    }
  }
  std::stable_sort(ranked.begin(), ranked.end(), [&](const auto& x, const auto& y) {
    bool gx = x.first == n % 2, gy = y.first == n % 2;
    if (gx != gy) return gx;
    return x.first < y.first;
  });
  for (const auto& [count, line] : ranked) {
    auto [p, q] = complement_axes(line);
    for (unsigned s = 0; s < opt.max_shears; ++s) {
      auto ce = admissible_chart(F, make_chart(line, p, q, shear_value(opt.seed + s)));
      if (!ce) continue;
      if (n == 1) {
        D = QPoly::constant(Qsqrt(1));
        return ChartChoice{*ce, count};
      }
      QPoly disc = resultant_in_v(ce->f, ce->f.d_dv());
      if (disc.is_zero() || !is_squarefree(disc)) continue;
      D = disc;
      return ChartChoice{*ce, count};
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Real topology of a smooth curve.
inline CurveTopology compute_topology(const PlaneForm& F, const TopologyOptions& opt = {}) {
  if (F.nvars() != 3) fail(ErrorCode::invalid_input, "curve must be a ternary form");
  if (F.is_zero() || F.degree() < 1) fail(ErrorCode::invalid_input, "curve must have degree >= 1");
  CurveTopology T;
  T.F = F;
  T.degree = F.degree();
  T.genus = genus_of_degree(T.degree);
  const int n = T.degree;

  QPoly D;
  auto choice = detail::find_topology_chart(F, opt, D);
  if (!choice) {
    SmoothnessReport sr = check_smooth(F, opt);
    if (!sr.smooth) fail(ErrorCode::singular_curve, sr.witness);
    fail(ErrorCode::genericity_failure, "no generic chart within the shear budget");
  }
  T.chart = choice->eval.chart;
  T.f = choice->eval.f;
  T.at_infinity = choice->eval.at_infinity;
  T.disc = D;
  T.slopes = isolate_real_roots(T.at_infinity);
  if (n >= 2) {
    auto sub = subresultant_in_v(T.f, T.f.d_dv(), 1);
    T.s0 = sub[0];
    T.s1 = sub[1];
  }

  // Critical values and slab samples.
  for (const auto& iv : isolate_real_roots(D)) T.critical.push_back({iv});
  const size_t m = T.critical.size();
  for (size_t k = 1; k < m; ++k) {
    auto& L = T.critical[k - 1].iv;
    auto& R = T.critical[k].iv;
    while (!(L.hi < R.lo)) {
      if (!L.exact()) refine_interval(D, L, L.width() / 2);
      if (!R.exact()) refine_interval(D, R, R.width() / 2);
    }
  }
  std::vector<Rational> samples;
  if (m == 0) {
    samples.emplace_back(0);
  } else {
    Integer lo;
    mpz_fdiv_q(lo.get_mpz_t(), T.critical.front().iv.lo.get_num_mpz_t(), T.critical.front().iv.lo.get_den_mpz_t());
    samples.emplace_back(lo - 1);
    for (size_t k = 1; k < m; ++k) samples.push_back(simplest_between(T.critical[k - 1].iv.hi, T.critical[k].iv.lo));
    Integer hi;
    mpz_cdiv_q(hi.get_mpz_t(), T.critical.back().iv.hi.get_num_mpz_t(), T.critical.back().iv.hi.get_den_mpz_t());
    samples.emplace_back(hi + 1);
  }
  for (const auto& q : samples) {
    Fiber fb{q, isolate_real_roots(T.f.at_u(Qsqrt(q)))};
    T.fibers.push_back(std::move(fb));
  }
  auto count = [&](size_t k) { return static_cast<int>(T.fibers[k].roots.size()); };
  if (count(0) != static_cast<int>(T.slopes.size()) || count(m) != static_cast<int>(T.slopes.size()))
    fail(ErrorCode::internal, "unbounded fibers disagree with the points at infinity");
  for (size_t k = 0; k < m; ++k) detail::analyze_fold(T.f, D, T.s0, T.s1, T.critical[k], count(k), count(k + 1));

  // Arc ends.
  const int M = static_cast<int>(m);
  std::vector<std::vector<detail::ArcEnd>> left(m + 1), right(m + 1);
  for (int k = 0; k <= M; ++k) {
    const int c = count(static_cast<size_t>(k));
    left[k].resize(static_cast<size_t>(c));
    right[k].resize(static_cast<size_t>(c));
    for (int i = 0; i < c; ++i) {
      auto& L = left[k][i];
      if (k == 0) {
        L = {detail::ArcEnd::infinity, M, c - 1 - i, M + (c - 1 - i)};
      } else {
        const auto& cv = T.critical[static_cast<size_t>(k - 1)];
        const int j = cv.merge_index;
        if (cv.opens_right) {
          if (i == j || i == j + 1) L = {detail::ArcEnd::fold, k, i == j ? j + 1 : j, k - 1};
          else L = {detail::ArcEnd::pass, k - 1, i < j ? i : i - 2, -1};
        } else {
          L = {detail::ArcEnd::pass, k - 1, i < j ? i : i + 2, -1};
        }
      }
      auto& R = right[k][i];
      if (k == M) {
        R = {detail::ArcEnd::infinity, 0, c - 1 - i, M + i};
      } else {
        const auto& cv = T.critical[static_cast<size_t>(k)];
        const int j = cv.merge_index;
        if (!cv.opens_right) {
          if (i == j || i == j + 1) R = {detail::ArcEnd::fold, k, i == j ? j + 1 : j, k};
          else R = {detail::ArcEnd::pass, k + 1, i < j ? i : i - 2, -1};
        } else {
          R = {detail::ArcEnd::pass, k + 1, i < j ? i : i + 2, -1};
        }
      }
    }
  }

  // Runs.
  T.run_of.assign(m + 1, {});
  for (size_t k = 0; k <= m; ++k) T.run_of[k].assign(static_cast<size_t>(count(k)), -1);
  for (int k = 0; k <= M; ++k)
    for (int i = 0; i < count(static_cast<size_t>(k)); ++i) {
      if (T.run_of[k][i] >= 0) continue;
      int sk = k, si = i;
      while (left[sk][si].kind == detail::ArcEnd::pass) {
        auto e = left[sk][si];
        sk = e.slab;
        si = e.index;
      }
      Run run;
      run.left = left[sk][si].junction;
      const int id = static_cast<int>(T.runs.size());
      while (true) {
        run.arcs.emplace_back(sk, si);
        T.run_of[sk][si] = id;
        auto e = right[sk][si];
        if (e.kind != detail::ArcEnd::pass) {
          run.right = e.junction;
          break;
        }
        sk = e.slab;
        si = e.index;
      }
      T.runs.push_back(std::move(run));
    }
  const int junction_count = M + static_cast<int>(T.slopes.size());
  T.junction_runs.assign(static_cast<size_t>(junction_count), {-1, -1});
  auto attach = [&](int j, int run) {
    auto& slot = T.junction_runs[static_cast<size_t>(j)];
    if (slot[0] < 0) slot[0] = run;
    else slot[1] = run;
  };
  for (int id = 0; id < static_cast<int>(T.runs.size()); ++id) {
    attach(T.runs[id].left, id);
    attach(T.runs[id].right, id);
  }
  for (auto& slot : T.junction_runs)
    if (slot[1] < 0) slot[1] = slot[0];

  // Components as cycles of runs.
  auto traverse = [&](TraversalStep start, Component& comp) {
    TraversalStep cur = start;
    comp.steps.clear();
    comp.junctions.clear();
    comp.infinity_crossings = 0;
    do {
      comp.steps.push_back(cur);
      const Run& run = T.runs[static_cast<size_t>(cur.run)];
      int j = cur.dir > 0 ? run.right : run.left;
      comp.junctions.push_back(j);
      const auto& slot = T.junction_runs[static_cast<size_t>(j)];
      int next = slot[0] == cur.run ? slot[1] : slot[0];
      if (T.junction_kind(j) == JunctionKind::fold) {
        cur = {next, -cur.dir};
      } else {
        ++comp.infinity_crossings;
        cur = {next, cur.dir};
      }
      if (comp.steps.size() > 4 * T.runs.size() + 4) fail(ErrorCode::internal, "traversal does not close");
    } while (!(cur.run == start.run && cur.dir == start.dir));
  };
  std::vector<Component> comps;
  std::vector<int> comp_of_run(T.runs.size(), -1);
  for (int id = 0; id < static_cast<int>(T.runs.size()); ++id) {
    if (comp_of_run[id] >= 0) continue;
    Component c;
    traverse({id, 1}, c);
    for (const auto& s : c.steps) comp_of_run[s.run] = static_cast<int>(comps.size());
    comps.push_back(std::move(c));
  }
  // Canonical start of each component.
  std::vector<std::pair<int, int>> first_arc(comps.size(), {INT32_MAX, INT32_MAX});
  std::vector<int> leftmost_fold(comps.size(), INT32_MAX);
  for (int k = 0; k <= M; ++k)
    for (int i = 0; i < count(static_cast<size_t>(k)); ++i) {
      int c = comp_of_run[T.run_of[k][i]];
      first_arc[c] = std::min(first_arc[c], {k, i});
    }
  for (int k = 0; k < M; ++k) {
    const auto& cv = T.critical[static_cast<size_t>(k)];
    if (!cv.opens_right) continue;
    int c = comp_of_run[T.run_of[k + 1][cv.merge_index]];
    leftmost_fold[c] = std::min(leftmost_fold[c], k);
  }
  for (size_t c = 0; c < comps.size(); ++c) {
    Component& comp = comps[c];
    comp.type = comp.infinity_crossings % 2 == 1 ? ComponentType::pseudoline : ComponentType::oval;
    TraversalStep start;
    if (comp.infinity_crossings == 0) {
      int k = leftmost_fold[c];
      start = {T.run_of[k + 1][T.critical[k].merge_index], 1};
    } else {
      start = {T.run_of[first_arc[c].first][first_arc[c].second], 1};
      T.all_ovals_bounded = T.all_ovals_bounded && comp.type == ComponentType::pseudoline;
    }
    traverse(start, comp);
  }
  {
    int pl = 0;
    for (const auto& c : comps) pl += c.type == ComponentType::pseudoline;
    if (pl != n % 2) fail(ErrorCode::internal, "pseudoline count contradicts the degree parity");
  }

  // Nesting by vertical-ray parity at a sample fiber.
  for (size_t a = 0; a < comps.size(); ++a) {
    Component& A = comps[a];
    if (A.type == ComponentType::pseudoline) {
      A.depth = 0;
      continue;
    }
    if (!T.all_ovals_bounded) {
      A.depth = -1;
      continue;
    }
    auto [k, i] = first_arc[a];
    int depth = 0;
    for (size_t b = 0; b < comps.size(); ++b) {
      if (b == a || comps[b].type == ComponentType::pseudoline) continue;
      int above = 0;
      for (int i2 = i + 1; i2 < count(static_cast<size_t>(k)); ++i2) above += comp_of_run[T.run_of[k][i2]] == static_cast<int>(b);
      depth += above % 2;
    }
    A.depth = depth;
  }

  // Canonical order: ovals innermost first, then by leftmost point; pseudoline last.
  std::vector<size_t> order(comps.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t x, size_t y) {
    const auto &cx = comps[x], &cy = comps[y];
    if (cx.type != cy.type) return cx.type == ComponentType::oval;
    if (cx.depth != cy.depth) return cx.depth > cy.depth;
    auto kx = std::make_pair(leftmost_fold[x], first_arc[x]), ky = std::make_pair(leftmost_fold[y], first_arc[y]);
    return kx < ky;
  });
  for (size_t pos = 0; pos < order.size(); ++pos) {
    T.components.push_back(std::move(comps[order[pos]]));
    for (const auto& s : T.components.back().steps) T.runs[static_cast<size_t>(s.run)].component = static_cast<int>(pos);
  }
  if (T.r() > T.genus + 1) fail(ErrorCode::internal, "Harnack bound violated");

  // Traced polylines: certified vertices at rational u in each slab.
  const Rational vtol = detail::pow2(-static_cast<long>(opt.polyline_bits));
  for (auto& cv : T.critical)
    if (!cv.iv.exact() && cv.iv.width() > detail::pow2(-24)) refine_interval_bits(D, cv.iv, 24);
  Rational span(4);
  if (m > 0) span = std::max(span, Rational((T.critical.back().iv.hi - T.critical.front().iv.lo) / 2));
  std::vector<std::vector<Rational>> slab_u(m + 1);
  for (size_t k = 0; k <= m; ++k) {
    Rational lo = k == 0 ? (m == 0 ? Rational(-span) : T.critical.front().iv.lo - span) : T.critical[k - 1].iv.hi;
    Rational hi = k == m ? (m == 0 ? span : T.critical.back().iv.hi + span) : T.critical[k].iv.lo;
    if (!(lo < hi)) continue;
    const int S = opt.samples_per_slab;
    for (int s = 0; s < S; ++s) {
      Rational u = lo + (hi - lo) * Rational(2 * s + 1, 2 * S);
      u = detail::floor_dyadic(u, 40);
      if (u > lo && u < hi) slab_u[k].push_back(u);
    }
  }
  std::vector<std::vector<std::vector<double>>> slab_v(m + 1);
  for (size_t k = 0; k <= m; ++k) {
    for (const auto& u : slab_u[k]) {
      QPoly fu = T.f.at_u(Qsqrt(u));
      auto rs = isolate_squarefree(fu);
      if (static_cast<int>(rs.size()) != count(k)) fail(ErrorCode::internal, "polyline fiber count mismatch");
      std::vector<double> vs;
      for (auto iv : rs) {
        refine_interval(fu, iv, vtol);
        vs.push_back(iv.mid().get_d());
      }
      slab_v[k].push_back(std::move(vs));
    }
  }
  auto to_xyz = [&](double u, double v) {
    std::array<double, 3> p{};
    for (int i = 0; i < 3; ++i) p[i] = T.chart.M[i][0].get_d() * u + T.chart.M[i][1].get_d() * v + T.chart.M[i][2].get_d();
    return p;
  };
  for (auto& comp : T.components) {
    for (size_t p = 0; p < comp.steps.size(); ++p) {
      const auto& st = comp.steps[p];
      const Run& run = T.runs[static_cast<size_t>(st.run)];
      std::vector<std::pair<int, int>> arcs = run.arcs;
      if (st.dir < 0) std::reverse(arcs.begin(), arcs.end());
      for (auto [k, i] : arcs) {
        const auto& us = slab_u[static_cast<size_t>(k)];
        for (size_t s = 0; s < us.size(); ++s) {
          size_t idx = st.dir > 0 ? s : us.size() - 1 - s;
          comp.polyline.push_back(to_xyz(us[idx].get_d(), slab_v[static_cast<size_t>(k)][idx][static_cast<size_t>(i)]));
        }
      }
      int j = comp.junctions[p];
      if (T.junction_kind(j) == JunctionKind::fold) {
        const auto& cv = T.critical[static_cast<size_t>(j)];
        Ball ub(cv.iv.lo, cv.iv.hi, 64);
        double v0 = (-(T.s0.eval(ub) / T.s1.eval(ub))).mid().get_d();
        comp.polyline.push_back(to_xyz(cv.iv.mid().get_d(), v0));
      }
    }
  }
  return T;
}

}  // namespace realsep
