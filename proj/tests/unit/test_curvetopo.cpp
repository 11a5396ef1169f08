#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

using namespace realsep;
using fixtures::form;

namespace {

CurvePoint point_on(const CurveTopology& T, const PlaneForm& line, int index) {
  auto d = intersect(T.F, line, nullptr);
  std::vector<CurvePoint> real;
  for (const auto& p : d.points)
    if (p.real) real.push_back(*p.point);
  return real.at(static_cast<size_t>(index));
}

}  // namespace

TEST(Topology, Circle) {
  auto T = fixtures::topology("circle");
  EXPECT_EQ(T->genus, 0);
  ASSERT_EQ(T->components.size(), 1u);
  EXPECT_EQ(T->components[0].type, ComponentType::oval);
  EXPECT_EQ(T->components[0].depth, 0);
  EXPECT_EQ(T->pseudoline_count(), 0);
}

TEST(Topology, EllipticOvalAndPseudoline) {
  auto T = fixtures::topology("elliptic");
  EXPECT_EQ(T->genus, 1);
  ASSERT_EQ(T->components.size(), 2u);
  EXPECT_EQ(T->components[0].type, ComponentType::oval);
  EXPECT_EQ(T->components[1].type, ComponentType::pseudoline);
}

TEST(Topology, VinnikovNestedOvals) {
  auto T = fixtures::topology("vinnikov");
  EXPECT_EQ(T->genus, 3);
  ASSERT_EQ(T->components.size(), 2u);
  EXPECT_EQ(T->components[0].type, ComponentType::oval);
  EXPECT_EQ(T->components[1].type, ComponentType::oval);
  // inner oval first
  EXPECT_EQ(T->components[0].depth, 1);
  EXPECT_EQ(T->components[1].depth, 0);
}

TEST(Topology, LinesAndFermatQuartic) {
  auto L = compute_topology(form("x + 2y"), {});
  ASSERT_EQ(L.components.size(), 1u);
  EXPECT_EQ(L.components[0].type, ComponentType::pseudoline);
  auto Q = compute_topology(form("x^4 + y^4 - z^4"), {});
  ASSERT_EQ(Q.components.size(), 1u);
  EXPECT_EQ(Q.components[0].type, ComponentType::oval);
}

TEST(Topology, SingularCurveRejected) {
  try {
    compute_topology(form("x^2 - z^2"), {});
    FAIL() << "expected singular_curve";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::singular_curve);
  }
  EXPECT_FALSE(check_smooth(form("y^2 z - x^3"), {}).smooth);
  EXPECT_TRUE(check_smooth(fixtures::curve("vinnikov"), {}).smooth);
}

TEST(Topology, SeedDoesNotChangeInvariants) {
  for (const char* name : {"circle", "elliptic", "vinnikov"}) {
    auto F = fixtures::curve(name);
    auto base = fixtures::topology(name);
    for (unsigned seed : {1u, 3u, 7u}) {
      TopologyOptions o;
      o.seed = seed;
      auto T = compute_topology(F, o);
      ASSERT_EQ(T.components.size(), base->components.size()) << name;
      for (size_t i = 0; i < T.components.size(); ++i) {
        EXPECT_EQ(T.components[i].type, base->components[i].type);
        EXPECT_EQ(T.components[i].depth, base->components[i].depth);
      }
    }
  }
}

TEST(Locate, EllipticComponents) {
  auto T = fixtures::topology("elliptic");
  // y = 0 meets X at x/z in {1, (-1 +- sqrt 5)/2}: the pseudoline at 1, the oval at the others
  auto d = intersect(T->F, form("y"), T.get());
  ASSERT_EQ(d.real_count(), 3);
  std::map<int, int> per;
  for (const auto& p : d.points) {
    double x = p.approx[0].real() / p.approx[2].real();
    EXPECT_EQ(p.component, std::abs(x - 1) < 1e-9 ? 1 : 0) << x;
  }
  // (0 : 1 : 1) lies on the oval (x = 0 inside its x-range)
  auto e = intersect(T->F, form("x"), T.get());
  for (const auto& p : e.points)
    if (p.real && std::abs(p.approx[2].real()) > 1e-9) EXPECT_EQ(p.component, 0);
}

TEST(Locate, CircleCyclicOrderIsMonotoneInAngle) {
  auto T = fixtures::topology("circle");
  auto d = intersect(T->F, form("x^4 - 6x^2 y^2 + y^4 + x y z^2"), T.get());
  std::vector<CurvePoint> pts;
  std::vector<double> angles;
  for (const auto& p : d.points) {
    if (!p.real) continue;
    pts.push_back(*p.point);
    angles.push_back(std::atan2(p.approx[1].real() / p.approx[2].real(), p.approx[0].real() / p.approx[2].real()));
  }
  ASSERT_GE(pts.size(), 4u);
  auto order = cyclic_order(*T, 0, pts);
  // consecutive angles advance in one rotational sense
  int ccw = 0, cw = 0;
  for (size_t i = 0; i < order.size(); ++i) {
    double a = angles[order[i]], b = angles[order[(i + 1) % order.size()]];
    double delta = std::remainder(b - a, 2 * M_PI);
    (delta > 0 ? ccw : cw)++;
  }
  EXPECT_TRUE(ccw == 0 || cw == 0) << ccw << " " << cw;
}

TEST(Locate, EllipticOvalOrderAlternatesXAndYZeros) {
  auto T = fixtures::topology("elliptic");
  auto dx = intersect(T->F, form("x"), T.get()), dy = intersect(T->F, form("y"), T.get());
  std::vector<CurvePoint> pts;
  std::vector<int> tag;
  for (int f = 0; f < 2; ++f)
    for (const auto& p : (f == 0 ? dx : dy).points)
      if (p.real && p.component == 0) {
        pts.push_back(*p.point);
        tag.push_back(f);
      }
  ASSERT_EQ(pts.size(), 4u);
  auto order = cyclic_order(*T, 0, pts);
  for (size_t i = 0; i < order.size(); ++i) EXPECT_NE(tag[order[i]], tag[order[(i + 1) % order.size()]]);
}

// Harnack: r <= g + 1, and a curve of odd degree has exactly one pseudoline.
TEST(Property, HarnackAndPseudolineParity) {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> coef(-3, 3);
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + trial % 3;
    PlaneForm F(3, n);
    for (int a = 0; a <= n; ++a)
      for (int b = 0; a + b <= n; ++b) F.add_term({a, b, n - a - b}, Qsqrt(coef(rng)));
    if (F.is_zero()) continue;
    try {
      auto T = compute_topology(F, {});
      EXPECT_LE(static_cast<int>(T.components.size()), T.genus + 1) << F.str(xyz_names());
      EXPECT_EQ(T.pseudoline_count(), n % 2) << F.str(xyz_names());
      ++checked;
    } catch (const Error& e) {
      EXPECT_TRUE(e.code() == ErrorCode::singular_curve) << e.what();
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Property, LineMeetsCurveInDegreeManyPointsWithParity) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-5, 5);
  for (const char* name : {"circle", "elliptic", "vinnikov"}) {
    auto T = fixtures::topology(name);
    for (int trial = 0; trial < 30; ++trial) {
      PlaneForm L = PlaneForm::linear({Qsqrt(Rational(coef(rng))), Qsqrt(Rational(coef(rng))), Qsqrt(Rational(coef(rng)))});
      if (L.is_zero()) continue;
      auto d = intersect(T->F, L, T.get());
      EXPECT_EQ(d.total(), T->degree);
      // a real line meets every pseudoline an odd number of times
      std::vector<int> per(T->components.size(), 0);
      for (const auto& p : d.points)
        if (p.real) per[static_cast<size_t>(p.component)] += p.multiplicity;
      for (size_t i = 0; i < per.size(); ++i)
        EXPECT_EQ(per[i] % 2, T->components[i].type == ComponentType::pseudoline ? 1 : 0);
    }
  }
}
