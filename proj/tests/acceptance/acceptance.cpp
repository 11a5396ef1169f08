// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>

#include "fixtures.hpp"
#include "realsep/cli/app.hpp"

using namespace realsep;

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

/// Runs f and returns its wall time; failures inside f are recorded.
double timed(Check& c, const std::string& what, const std::function<void()>& f) {
  auto t0 = Clock::now();
  try {
    f();
  } catch (const std::exception& e) {
    c.failures.push_back(what + ": " + e.what());
  }
  return seconds_since(t0);
}

std::string tuple(const std::vector<int>& d) { return cli::tuple(d); }

PlaneForm random_form(std::mt19937_64& rng, int k, int range) {
  std::uniform_int_distribution<int> coef(-range, range);
  PlaneForm G(3, k);
  for (int a = 0; a <= k; ++a)
    for (int b = 0; a + b <= k; ++b) G.add_term({a, b, k - a - b}, Qsqrt(coef(rng)));
  return G;
}

ProjectionCenter center_from(const std::string& file) { return cli::load_center(fixtures::data("maps/" + file + ".txt")); }

EmbeddingMap map_from(const std::string& curve, const std::string& file) {
  return make_embedding(fixtures::topology(curve), parse_form_list(read_text_file(fixtures::data("maps/" + file + ".txt")), 3));
}

void criterion1(Check& c) {
  struct Case {
    const char* name;
    int r, g;
    std::vector<ComponentType> types;
    std::vector<int> depth;
  };
  const Case cases[] = {
      {"circle", 1, 0, {ComponentType::oval}, {0}},
      {"vinnikov", 2, 3, {ComponentType::oval, ComponentType::oval}, {1, 0}},
      {"elliptic", 2, 1, {ComponentType::oval, ComponentType::pseudoline}, {0, 0}},
  };
  for (const auto& x : cases) {
    double t = timed(c, x.name, [&] {
      auto T = compute_topology(fixtures::curve(x.name), {});
      c.expect(T.r() == x.r && T.genus == x.g, std::string(x.name) + ": r or g");
      for (int i = 0; i < T.r() && i < x.r; ++i) {
        c.expect(T.components[static_cast<size_t>(i)].type == x.types[static_cast<size_t>(i)], std::string(x.name) + ": type");
        if (x.types[static_cast<size_t>(i)] == ComponentType::oval)
          c.expect(T.components[static_cast<size_t>(i)].depth == x.depth[static_cast<size_t>(i)], std::string(x.name) + ": depth");
      }
    });
    c.expect(t < 5, std::string(x.name) + " took " + std::to_string(t) + " s");
  }
}

void criterion2(Check& c) {
  auto T = fixtures::topology("elliptic");
  c.expect(T->components[0].type == ComponentType::oval && T->components[1].type == ComponentType::pseudoline,
           "component 0 is the oval");
  const std::pair<const char*, std::vector<int>> cases[] = {{"elliptic_q", {4, 2}}, {"elliptic_p", {2, 4}}};
  for (const auto& [name, d] : cases) {
    double t = timed(c, name, [&, name = name, d = d] {
      auto s = check_separating(fixtures::pencil("elliptic", name));
      c.expect(s.separating && s.partition == d, std::string(name) + " gave " + tuple(s.partition));
    });
    c.expect(t < 10, std::string(name) + " took " + std::to_string(t) + " s");
  }
}

void criterion3(Check& c) {
  double t = timed(c, "combine", [&] {
    auto r = combine(fixtures::pencil("elliptic", "elliptic_q"), fixtures::pencil("elliptic", "elliptic_p"));
    c.expect(r.certificate.separating && r.certificate.partition == std::vector<int>{6, 6},
             "q + p gave " + tuple(r.certificate.partition));
  });
  c.expect(t < 30, "combine took " + std::to_string(t) + " s");
  timed(c, "circle powers", [&] {
    auto p = fixtures::pencil("circle", "circle_xy");
    Pencil acc = p;
    for (int k = 1; k <= 4; ++k) {
      if (k > 1) acc = combine(acc, p).pencil;
      auto s = check_separating(acc);
      c.expect(s.separating && s.partition == std::vector<int>{2 * k}, "circle power " + std::to_string(k));
    }
  });
}

void criterion4(Check& c) {
  timed(c, "hyperbolic", [&] {
    auto m = map_from("elliptic", "elliptic_map");
    for (const char* name : {"center_q", "center_p"}) {
      auto h = check_hyperbolic(m, center_from(name));
      int sum = 0;
      bool moduli = h.winding.size() == h.partition.size();
      for (size_t i = 0; moduli && i < h.winding.size(); ++i) {
        moduli = std::abs(h.winding[i]) == h.partition[i];
        sum += std::abs(h.winding[i]);
      }
      c.expect(h.hyperbolic && moduli && sum == 6, std::string(name) + ": w=" + tuple(h.winding));
    }
    LocusOptions o;
    o.grid = 16;
    o.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    auto centers = locus_centers(m.forms.size(), o);
    auto same = [](const ProjectionCenter& a, const ProjectionCenter& b) { return a.a == b.a && a.b == b.b; };
    for (const char* name : {"center_q", "center_p"}) {
      auto e = center_from(name);
      c.expect(std::any_of(centers.begin(), centers.end(), [&](const auto& x) { return same(x, e); }),
               std::string("grid contains ") + name);
    }
    auto rep = locus_scan(m, o);
    c.expect(rep.partitions.size() >= 2 && rep.disconnected, "locus not flagged disconnected");
  });
}

void criterion5(Check& c) {
  double t = timed(c, "vinnikov", [&] {
    auto m = map_from("vinnikov", "identity");
    int hyperbolic = 0;
    for (const char* name : {"center_x", "center_y", "center_z"}) {
      auto h = check_hyperbolic(m, center_from(name));
      if (h.hyperbolic) {
        ++hyperbolic;
        c.expect(h.partition == std::vector<int>{2, 2}, std::string(name) + " gave " + tuple(h.partition));
      }
    }
    c.expect(hyperbolic == 1, std::to_string(hyperbolic) + " coordinate points are hyperbolic");
    for (const char* name : {"vinnikov_surd_a", "vinnikov_surd_b"}) {
      auto p = fixtures::pencil("vinnikov", name);
      auto s = check_separating(p);
      auto rep = sampling_oracle(p, 1000, static_cast<int>(std::max(1u, std::thread::hardware_concurrency())));
      c.expect(s.separating == (rep.flagged() == 0), std::string(name) + ": oracle disagrees");
    }
  });
  c.expect(t < 60, "took " + std::to_string(t) + " s");
}

void criterion6(Check& c) {
  for (int n = 1; n <= 10; ++n)
    c.expect(mcurve_sep_membership(0, {n}) && mcurve_hyp_membership(0, {n}), "g=0");
  c.expect(mcurve_sep_membership(1, {1, 1}) && !mcurve_hyp_membership(1, {1, 1}), "(1,1)");
  c.expect(mcurve_sep_membership(1, {1, 2}) && mcurve_hyp_membership(1, {1, 2}), "(1,2)");
  c.expect(mcurve_hyp_membership(2, {2, 2, 2}), "(2,2,2)");
  for (auto d : std::vector<std::vector<int>>{{2, 1, 1}, {1, 2, 1}, {1, 1, 2}})
    c.expect(!mcurve_hyp_membership(2, d), tuple(d));
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; b <= 4; ++b)
      for (int e = 1; e <= 4; ++e) c.expect(mcurve_sep_membership(2, {a, b, e}), "Sep triple");
}

void criterion7(Check& c) {
  const char* curves[] = {"circle", "elliptic", "vinnikov"};
  timed(c, "bezout", [&] {
    std::mt19937_64 rng(1000);
    for (int trial = 0; trial < 1000; ++trial) {
      auto T = fixtures::topology(curves[trial % 3]);
      int k = 1 + (trial / 3) % 2;
      auto G = random_form(rng, k, 4);
      if (G.is_zero()) continue;
      try {
        DivisorOptions o;
        o.cross_check = false;
        auto d = intersect(T->F, G, T.get(), o);
        int sum = 0;
        for (const auto& p : d.points) sum += p.multiplicity;
        c.expect(d.total() == T->degree * k && sum == d.total(), "Bezout " + G.str(xyz_names()));
      } catch (const Error& e) {
        c.expect(e.code() == ErrorCode::common_component, e.what());
      }
    }
  });
  timed(c, "member invariance", [&] {
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> coef(-50, 50);
    std::vector<std::pair<Pencil, SeparationCertificate>> ps;
    for (auto [curve, name] : {std::pair{"circle", "circle_xy"}, {"elliptic", "elliptic_q"}, {"elliptic", "elliptic_p"},
                               {"vinnikov", "vinnikov_yz"}}) {
      auto p = fixtures::pencil(curve, name);
      auto s = check_separating(p);
      ps.emplace_back(std::move(p), std::move(s));
    }
    for (int trial = 0; trial < 1000; ++trial) {
      const auto& [p, s] = ps[static_cast<size_t>(trial) % ps.size()];
      Qsqrt lam(coef(rng)), mu(coef(rng));
      if (lam.is_zero() && mu.is_zero()) continue;
      auto prof = realness_profile(member_residual(p, lam, mu), s.components);
      c.expect(prof.all_real && prof.all_simple && prof.per_component == s.partition, "member invariance");
    }
  });
  timed(c, "parity", [&] {
    std::mt19937_64 rng(1000);
    for (int trial = 0, cases = 0; cases < 1000; ++trial) {
      auto T = fixtures::topology(curves[trial % 3]);
      int k = 1 + (trial / 3) % 2;
      auto g0 = random_form(rng, k, 3), g1 = random_form(rng, k, 3);
      if (g0.is_zero() || g1.is_zero() || g0.proportional_to(g1)) continue;
      ++cases;
      try {
        auto p = make_pencil(T, g0, g1);
        auto s = check_separating(p);
        if (!s.separating) continue;
        int sum = 0;
        bool positive = true;
        for (int d : s.partition) {
          sum += d;
          positive = positive && d >= 1;
        }
        c.expect((T->r() + T->genus) % 2 == 1 && positive && sum == p.residual_degree(), "parity");
      } catch (const Error& e) {
        c.expect(e.code() != ErrorCode::internal && e.code() != ErrorCode::undetermined, e.what());
      }
    }
  });
  timed(c, "oracle agreement", [&] {
    for (auto [curve, name] : {std::pair{"circle", "circle_xy"}, {"circle", "circle_tangent"}, {"elliptic", "elliptic_q"},
                               {"elliptic", "elliptic_p"}, {"vinnikov", "vinnikov_yz"}, {"vinnikov", "vinnikov_surd_a"},
                               {"vinnikov", "vinnikov_surd_b"}}) {
      auto p = fixtures::pencil(curve, name);
      auto s = check_separating(p);
      auto rep = sampling_oracle(p, 1000, static_cast<int>(std::max(1u, std::thread::hardware_concurrency())));
      c.expect(s.separating == (rep.flagged() == 0), std::string(name) + ": oracle disagrees");
    }
  });
  timed(c, "byte stability", [&] {
    auto run = [](const std::vector<std::string>& args) {
      std::vector<const char*> argv{"realsep"};
      for (const auto& a : args) argv.push_back(a.c_str());
      std::ostringstream out, err;
      cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
      return out.str();
    };
    auto d = fixtures::data;
    auto locus = [&](const char* t) {
      return run({"locus-scan", d("elliptic.poly"), d("maps/elliptic_map.txt"), "--grid", "4", "--random", "4", "--seed",
                  "3", "--threads", t, "--json", "-"});
    };
    auto pencil = [&](const char* t) {
      return run({"check-pencil", d("vinnikov.poly"), d("pencils/vinnikov_surd_a.txt"), "--oracle", "100", "--threads", t,
                  "--json", "-"});
    };
    auto a = locus("1"), b = locus("8");
    c.expect(!a.empty() && a == b, "locus JSON differs between 1 and 8 threads");
    a = pencil("1");
    b = pencil("8");
    c.expect(!a.empty() && a == b, "pencil JSON differs between 1 and 8 threads");
  });
}

}  // namespace

int main() {
  const std::pair<const char*, void (*)(Check&)> criteria[] = {
      {"topology fixtures", criterion1},       {"elliptic pencils", criterion2},
      {"semigroup closure", criterion3},       {"hyperbolicity and locus", criterion4},
      {"Vinnikov quartic", criterion5},         {"M-curve tables", criterion6},
      {"property suites", criterion7},
  };
  int failed = 0;
  for (size_t i = 0; i < std::size(criteria); ++i) {
    Check c;
    auto t0 = Clock::now();
    criteria[i].second(c);
    double t = seconds_since(t0);
    std::printf("criterion %zu: %s - %s (%.1f s)\n", i + 1, c.failures.empty() ? "PASS" : "FAIL", criteria[i].first, t);
    for (const auto& f : c.failures) std::printf("  %s\n", f.c_str());
    std::fflush(stdout);
    failed += !c.failures.empty();
  }
  return failed == 0 ? 0 : 1;
}
