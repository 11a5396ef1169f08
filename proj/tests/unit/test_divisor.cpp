#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

using namespace realsep;
using fixtures::form;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::internal;
}

}  // namespace

TEST(Divisor, CircleMeetsXyInFourRealPoints) {
  auto T = fixtures::topology("circle");
  auto d = intersect(T->F, form("x y"), T.get());
  EXPECT_EQ(d.total(), 4);
  EXPECT_EQ(d.real_count(), 4);
  for (const auto& p : d.points) {
    EXPECT_TRUE(p.real);
    EXPECT_EQ(p.multiplicity, 1);
    EXPECT_EQ(p.component, 0);
  }
}

TEST(Divisor, CircleAndSphereMeetAtCircularPoints) {
  auto T = fixtures::topology("circle");
  auto d = intersect(T->F, form("x^2 + y^2 + z^2"), T.get());
  EXPECT_EQ(d.total(), 4);
  EXPECT_EQ(d.real_count(), 0);
  ASSERT_EQ(d.points.size(), 2u);
  for (const auto& p : d.points) {
    EXPECT_FALSE(p.real);
    EXPECT_EQ(p.multiplicity, 2);
    // (1 : +-i : 0)
    auto [x, y, z] = p.approx;
    EXPECT_LT(std::abs(z), 1e-8 * std::abs(x));
    EXPECT_NEAR(std::abs(y / x), 1.0, 1e-8);
    EXPECT_NEAR(std::abs((y / x).real()), 0.0, 1e-8);
  }
}

TEST(Divisor, TangentLineGivesDoublePoint) {
  auto T = fixtures::topology("circle");
  auto d = intersect(T->F, form("x - z"), T.get());
  ASSERT_EQ(d.points.size(), 1u);
  EXPECT_TRUE(d.points[0].real);
  EXPECT_EQ(d.points[0].multiplicity, 2);
  auto rp = realness_profile(d, 1);
  EXPECT_TRUE(rp.all_real);
  EXPECT_FALSE(rp.all_simple);
  EXPECT_EQ(rp.per_component[0], 2);
}

TEST(Divisor, InflectionTangentHasMultiplicityThree) {
  // the line at infinity meets the elliptic curve only at the flex (0:1:0)
  auto T = fixtures::topology("elliptic");
  auto d = intersect(T->F, form("z"), T.get());
  ASSERT_EQ(d.points.size(), 1u);
  EXPECT_EQ(d.points[0].multiplicity, 3);
  EXPECT_EQ(d.points[0].component, 1);
}

TEST(Divisor, CommonComponentRejected) {
  auto T = fixtures::topology("circle");
  EXPECT_EQ(code_of([&] { intersect(T->F, form("(x^2 + y^2 - z^2) (x + y)"), T.get()); }),
            ErrorCode::common_component);
}

TEST(Divisor, SecondChartAgrees) {
  auto T = fixtures::topology("vinnikov");
  DivisorOptions o;
  o.cross_check = true;
  auto d = intersect(T->F, form("x^2 - y z + 3 z^2"), T.get(), o);
  EXPECT_EQ(d.total(), 8);
}

TEST(BaseMatch, CircleTangentPencil) {
  // x and x - z share no point on the circle; x z and x (x - z) share the two points with x = 0
  auto T = fixtures::topology("circle");
  auto ds = intersect_many(T->F, {form("x z"), form("x^2 - x z")}, T.get());
  auto m = match_common_points(ds[0], ds[1], T.get());
  EXPECT_EQ(m.total(), 2);
  EXPECT_EQ(m.real_total(), 2);
  EXPECT_EQ(m.residual0.total(), 2);
  EXPECT_EQ(m.residual1.total(), 2);
  auto none = intersect_many(T->F, {form("x"), form("x - z")}, T.get());
  EXPECT_EQ(match_common_points(none[0], none[1], T.get()).total(), 0);
}

TEST(BaseMatch, UnequalMultiplicityRejected) {
  // y z vanishes simply at (1:0:1); (x - z) z doubly there
  auto T = fixtures::topology("circle");
  auto ds = intersect_many(T->F, {form("y z"), form("x z - z^2")}, T.get());
  EXPECT_EQ(code_of([&] { match_common_points(ds[0], ds[1], T.get()); }), ErrorCode::ambiguous_base_point);
}

// Bezout: every intersection with a random form has total multiplicity n k.
TEST(Property, BezoutTotals) {
  std::mt19937_64 rng(1000);
  std::uniform_int_distribution<int> coef(-4, 4);
  const char* curves[] = {"circle", "elliptic", "vinnikov"};
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    auto T = fixtures::topology(curves[trial % 3]);
    int k = 1 + (trial / 3) % 2;
    PlaneForm G(3, k);
    for (int a = 0; a <= k; ++a)
      for (int b = 0; a + b <= k; ++b) G.add_term({a, b, k - a - b}, Qsqrt(coef(rng)));
    if (G.is_zero()) continue;
    DivisorOptions o;
    o.cross_check = trial % 10 == 0;
    try {
      auto d = intersect(T->F, G, T.get(), o);
      ASSERT_EQ(d.total(), T->degree * k) << G.str(xyz_names());
      int sum = 0;
      for (const auto& p : d.points) sum += p.multiplicity;
      ASSERT_EQ(sum, T->degree * k);
      ++checked;
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::common_component) << e.what();
    }
  }
  EXPECT_GT(checked, 900);
}

TEST(Divisor, EllipticXyProfile) {
  auto T = fixtures::topology("elliptic");
  auto d = intersect(T->F, form("x y"), T.get());
  auto rp = realness_profile(d, T->r());
  EXPECT_TRUE(rp.all_real);
  EXPECT_TRUE(rp.all_simple);
  EXPECT_EQ(rp.per_component, (std::vector<int>{4, 2}));
}
