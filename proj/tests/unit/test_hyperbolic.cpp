#include <gtest/gtest.h>

#include "fixtures.hpp"

using namespace realsep;
using fixtures::form;

namespace {

EmbeddingMap map_from(const std::string& curve, const std::string& file) {
  auto forms = parse_form_list(read_text_file(fixtures::data("maps/" + file + ".txt")), 3);
  return make_embedding(fixtures::topology(curve), forms);
}

ProjectionCenter center(std::vector<long> a, std::vector<long> b) {
  ProjectionCenter c;
  for (long x : a) c.a.emplace_back(x);
  for (long x : b) c.b.emplace_back(x);
  return c;
}

}  // namespace

TEST(Winding, CircleAroundTheOrigin) {
  auto T = fixtures::topology("circle");
  auto w = winding_numbers(*T, form("x"), form("y"));
  EXPECT_EQ(w, std::vector<int>{-2});
  EXPECT_EQ(winding_numbers(*T, form("y"), form("x")), std::vector<int>{2});
}

TEST(Winding, AbsoluteValuesMatchThePartition) {
  auto T = fixtures::topology("elliptic");
  auto p = fixtures::pencil("elliptic", "elliptic_q");
  auto w = winding_numbers(*T, p.G0, p.G1);
  ASSERT_EQ(w.size(), 2u);
  EXPECT_EQ(std::abs(w[0]), 4);
  EXPECT_EQ(std::abs(w[1]), 2);
}

TEST(Embedding, Validation) {
  auto T = fixtures::topology("circle");
  auto code = [&](std::vector<PlaneForm> forms) {
    try {
      make_embedding(T, forms);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::internal;
  };
  EXPECT_EQ(code({form("x"), form("y")}), ErrorCode::invalid_input);
  EXPECT_EQ(code({form("x"), form("y"), form("z^2")}), ErrorCode::invalid_input);
  EXPECT_EQ(code({form("x"), form("2x"), form("3x")}), ErrorCode::invalid_input);
  // all three vanish at (1:0:1)
  EXPECT_EQ(code({form("y"), form("x - z"), form("x y - y z")}), ErrorCode::invalid_input);
}

TEST(Hyperbolic, EllipticCenters) {
  auto m = map_from("elliptic", "elliptic_map");
  auto q = check_hyperbolic(m, center({1, 0, 0, 0}, {0, 1, 0, 0}));
  EXPECT_TRUE(q.hyperbolic);
  EXPECT_EQ(q.partition, (std::vector<int>{4, 2}));
  EXPECT_EQ(q.winding, (std::vector<int>{4, 2}));
  auto p = check_hyperbolic(m, center({0, 0, 1, 0}, {0, 0, 0, 1}));
  EXPECT_TRUE(p.hyperbolic);
  EXPECT_EQ(p.partition, (std::vector<int>{2, 4}));
  EXPECT_EQ(p.winding, (std::vector<int>{2, 4}));
}

TEST(Hyperbolic, CircleCenters) {
  auto m = map_from("circle", "identity");
  auto inside = check_hyperbolic(m, center({1, 0, 0}, {0, 1, 0}));
  EXPECT_TRUE(inside.hyperbolic);
  EXPECT_EQ(inside.winding, std::vector<int>{-2});
  // (1:0:1) lies on the circle
  auto on = check_hyperbolic(m, center({1, 0, -1}, {0, 1, 0}));
  EXPECT_FALSE(on.hyperbolic);
  EXPECT_EQ(on.reason, "center meets the curve");
  EXPECT_EQ(on.witness.size(), 1u);
  // (2:0:1) lies outside
  auto out = check_hyperbolic(m, center({1, 0, -2}, {0, 1, 0}));
  EXPECT_FALSE(out.hyperbolic);
  ASSERT_TRUE(out.pencil);
  EXPECT_FALSE(out.pencil->separating);
}

TEST(Hyperbolic, VinnikovCoordinatePoints) {
  auto m = map_from("vinnikov", "identity");
  auto x = check_hyperbolic(m, center({0, 1, 0}, {0, 0, 1}));
  EXPECT_TRUE(x.hyperbolic);
  EXPECT_EQ(x.partition, (std::vector<int>{2, 2}));
  EXPECT_EQ(x.winding, (std::vector<int>{-2, -2}));
  EXPECT_FALSE(check_hyperbolic(m, center({1, 0, 0}, {0, 0, 1})).hyperbolic);
  EXPECT_FALSE(check_hyperbolic(m, center({1, 0, 0}, {0, 1, 0})).hyperbolic);
}

TEST(Hyperbolic, DegenerateCenters) {
  auto m = map_from("circle", "identity");
  EXPECT_THROW(check_hyperbolic(m, center({1, 0, 0}, {2, 0, 0})), Error);
  EXPECT_THROW(check_hyperbolic(m, center({1, 0}, {0, 1})), Error);
}

TEST(Locus, EllipticGridIsDisconnected) {
  auto m = map_from("elliptic", "elliptic_map");
  LocusOptions o;
  o.grid = 2;
  auto rep = locus_scan(m, o);
  ASSERT_EQ(rep.records.size(), 4u);
  EXPECT_TRUE(rep.disconnected);
  EXPECT_EQ(rep.partitions, (std::vector<std::vector<int>>{{2, 4}, {4, 2}}));
  EXPECT_EQ(rep.records.front().verdict, "hyperbolic");
  EXPECT_EQ(rep.records.back().verdict, "hyperbolic");
}

TEST(Locus, CentersAreSeededAndThreadIndependent) {
  LocusOptions o;
  o.grid = 2;
  o.random = 6;
  o.seed = 11;
  auto a = locus_centers(4, o), b = locus_centers(4, o);
  ASSERT_EQ(a.size(), 10u);
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].a, b[i].a);
    EXPECT_EQ(a[i].b, b[i].b);
  }
  auto m = map_from("elliptic", "elliptic_map");
  auto r1 = locus_scan(m, o);
  o.threads = 4;
  auto r4 = locus_scan(m, o);
  ASSERT_EQ(r1.records.size(), r4.records.size());
  for (size_t i = 0; i < r1.records.size(); ++i) {
    EXPECT_EQ(r1.records[i].verdict, r4.records[i].verdict);
    EXPECT_EQ(r1.records[i].partition, r4.records[i].partition);
    EXPECT_EQ(r1.records[i].witness, r4.records[i].witness);
  }
}
