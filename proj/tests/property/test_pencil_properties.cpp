#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"

using namespace realsep;

namespace {

PlaneForm random_form(std::mt19937_64& rng, int k) {
  std::uniform_int_distribution<int> coef(-3, 3);
  PlaneForm G(3, k);
  for (int a = 0; a <= k; ++a)
    for (int b = 0; a + b <= k; ++b) G.add_term({a, b, k - a - b}, Qsqrt(coef(rng)));
  return G;
}

}  // namespace

// Every member of a separating pencil has only real simple residual zeros,
// spread over the components exactly as the partition says.
TEST(PencilProperty, MembersOfSeparatingPencilsShareThePartition) {
  const std::pair<const char*, const char*> pencils[] = {
      {"circle", "circle_xy"}, {"elliptic", "elliptic_q"}, {"elliptic", "elliptic_p"}, {"vinnikov", "vinnikov_yz"}};
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<int> coef(-50, 50);
  int cases = 0;
  for (int trial = 0; cases < 1000; ++trial) {
    const auto& [curve, name] = pencils[trial % 4];
    static std::map<std::string, std::pair<Pencil, SeparationCertificate>> cache;
    auto it = cache.find(name);
    if (it == cache.end()) {
      auto p = fixtures::pencil(curve, name);
      auto c = check_separating(p);
      it = cache.emplace(name, std::make_pair(std::move(p), std::move(c))).first;
    }
    const auto& [p, c] = it->second;
    ASSERT_TRUE(c.separating);
    Qsqrt lam(coef(rng)), mu(coef(rng));
    if (lam.is_zero() && mu.is_zero()) continue;
    auto d = member_residual(p, lam, mu);
    auto prof = realness_profile(d, c.components);
    ASSERT_TRUE(prof.all_real && prof.all_simple) << name << " " << lam.str() << ":" << mu.str();
    ASSERT_EQ(prof.per_component, c.partition) << name;
    ++cases;
  }
}

// Random pencils: a separating verdict always comes with r + g odd, positive
// entries and the right total, and every refutation names a witness.
TEST(PencilProperty, RandomPencilVerdictsAreConsistent) {
  const char* curves[] = {"circle", "elliptic", "vinnikov"};
  std::mt19937_64 rng(1000);
  int separating = 0, cases = 0;
  for (int trial = 0; cases < 1000; ++trial) {
    auto T = fixtures::topology(curves[trial % 3]);
    int k = 1 + (trial / 3) % 2;
    PlaneForm g0 = random_form(rng, k), g1 = random_form(rng, k);
    if (g0.is_zero() || g1.is_zero() || g0.proportional_to(g1)) continue;
    try {
      auto p = make_pencil(T, g0, g1);
      auto c = check_separating(p);
      ++cases;
      if (!c.separating) {
        ASSERT_TRUE(c.refutation.has_value());
        continue;
      }
      ++separating;
      ASSERT_TRUE(c.parity_odd);
      ASSERT_EQ(c.partition.size(), T->components.size());
      int sum = 0;
      for (int d : c.partition) {
        ASSERT_GE(d, 1);
        sum += d;
      }
      ASSERT_EQ(sum, p.residual_degree());
    } catch (const Error& e) {
      ASSERT_TRUE(e.code() == ErrorCode::ambiguous_base_point || e.code() == ErrorCode::common_component ||
                  e.code() == ErrorCode::invalid_input)
          << e.what();
    }
  }
  EXPECT_GT(separating, 0);
}
