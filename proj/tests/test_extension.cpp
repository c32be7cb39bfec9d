#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "bottrig/extension.hpp"
#include "bottrig/harness.hpp"

using namespace bottrig;

namespace {

const BottTower kPoint = BottTower(0);
const BottTower kCP1 = BottTower::from_rows({{}});

HirzebruchBundleData over_cp1(std::int64_t c, std::int64_t a, std::int64_t y) {
  return {kCP1, ClassDeg2{c}, a, ClassDeg2{y}};
}

}  // namespace

TEST(ExtensionCondition, NegationFailsForEvenTwist) {
  const auto dec = extension_condition(over_cp1(1, 2, 0), FiberMatrix::row_major(-1, 0, 0, -1));
  EXPECT_FALSE(dec.extends());
  EXPECT_EQ(dec.kind, AutomorphismKind::Negation);
  EXPECT_EQ(dec.failed_condition, "requires y = -(a/2)c1(xi_{n+1})");
}

TEST(ExtensionCondition, CrossReflectionWithZeroCorrection) {
  const auto dec = extension_condition(over_cp1(2, 1, -1), FiberMatrix::row_major(1, 0, -2, -1));
  ASSERT_TRUE(dec.extends());
  EXPECT_EQ(dec.result->u1, ClassDeg2::zero(1));
  EXPECT_EQ(dec.result->u2, ClassDeg2::zero(1));
}

TEST(ExtensionCondition, RejectsNonAutomorphism) {
  EXPECT_THROW(extension_condition(over_cp1(0, 0, 0), FiberMatrix::row_major(1, 1, 0, 1)), PreconditionViolation);
}

TEST(ExtensionCondition, IdentityAlwaysExtends) {
  for (const auto& d : enumerate_bundle_data(1, 2)) {
    const auto dec = extension_condition(d, FiberMatrix::row_major(1, 0, 0, 1));
    ASSERT_TRUE(dec.extends());
    EXPECT_EQ(dec.result->graded_map(), GradedMap::identity(3));
  }
}

TEST(PredictedSet, GroupOrders) {
  EXPECT_EQ(predicted_automorphism_set(over_cp1(0, 0, 0)).size(), 8u);
  EXPECT_EQ(predicted_automorphism_set(over_cp1(1, 3, 0)).size(), 2u);
  EXPECT_EQ(predicted_automorphism_set({kPoint, ClassDeg2::zero(0), 5, ClassDeg2::zero(0)}).size(), 8u);
}

TEST(PredictedSet, OrderFourWhenSquaresDiffer) {
  // Base Sigma_1, c1 = x1, y = x2: c1^2 = 0 but y^2 = x1 x2.
  const HirzebruchBundleData d{BottTower::from_rows({{}, {1}}), ClassDeg2{1, 0}, 0, ClassDeg2{0, 1}};
  const auto set = predicted_automorphism_set(d);
  ASSERT_EQ(set.size(), 4u);
  std::set<std::array<std::int64_t, 4>> fibers;
  for (const auto& e : set) fibers.insert({e.fiber.p11, e.fiber.p12, e.fiber.p21, e.fiber.p22});
  EXPECT_EQ(fibers, (std::set<std::array<std::int64_t, 4>>{{1, 0, 0, 1}, {1, 0, 0, -1}, {-1, 0, 0, -1}, {-1, 0, 0, 1}}));
  EXPECT_TRUE(compare_with_oracle(d, default_oracle_box(0)).agree);
}

TEST(PredictedSet, ClosedUnderCompositionAndInverse) {
  for (const auto& d : enumerate_bundle_data(1, 2)) {
    std::vector<GradedMap> maps;
    for (const auto& e : predicted_automorphism_set(d)) maps.push_back(e.graded_map());
    std::sort(maps.begin(), maps.end());
    for (const auto& f : maps) {
      ASSERT_TRUE(std::binary_search(maps.begin(), maps.end(), inverse(f)));
      for (const auto& g : maps) ASSERT_TRUE(std::binary_search(maps.begin(), maps.end(), compose(f, g)));
    }
  }
}

TEST(PredictedSet, OneExtensionPerFiberMatrix) {
  for (const auto& d : enumerate_bundle_data(1, 2)) {
    std::set<std::array<std::int64_t, 4>> fibers;
    for (const auto& e : predicted_automorphism_set(d)) {
      ASSERT_TRUE(is_ring_iso(d.total(), d.total(), e.graded_map()));
      fibers.insert({e.fiber.p11, e.fiber.p12, e.fiber.p21, e.fiber.p22});
    }
    EXPECT_EQ(fibers.size(), predicted_automorphism_set(d).size());
  }
}

TEST(Oracle, AgreesOverPointAndCP1) {
  for (std::size_t h : {0u, 1u})
    for (const auto& d : enumerate_bundle_data(h, 3)) {
      const auto cmp = compare_with_oracle(d, default_oracle_box(d.a));
      ASSERT_TRUE(cmp.agree) << "c1 " << format_class(d.c1) << " a " << d.a << " y " << format_class(d.y);
      EXPECT_EQ(8 % cmp.predicted.size(), 0u);
    }
}

TEST(Oracle, AgreesOverHeightTwoBases) {
  for (const auto& d : enumerate_bundle_data(2, 1))
    ASSERT_TRUE(compare_with_oracle(d, default_oracle_box(d.a)).agree)
        << "c1 " << format_class(d.c1) << " a " << d.a << " y " << format_class(d.y);
}

TEST(Oracle, BackendsAgree) {
  for (const auto& d : enumerate_bundle_data(1, 1))
    EXPECT_EQ(enumerate_algebra_automorphisms(d, 5, Backend::Serial),
              enumerate_algebra_automorphisms(d, 5, Backend::OpenMP));
}

TEST(BundleData, TotalRoundTrip) {
  for (const auto& d : enumerate_bundle_data(1, 2)) {
    const BottTower t = d.total();
    EXPECT_EQ(t.height(), 3u);
    EXPECT_EQ(HirzebruchBundleData::from_total(t), d);
  }
  EXPECT_THROW((HirzebruchBundleData{kCP1, ClassDeg2{1, 0}, 0, ClassDeg2{0}}.validate()), PreconditionViolation);
}

TEST(ExtensionResult, MapRoundTrip) {
  const ExtensionResult r{FiberMatrix::row_major(1, 0, -2, -1), ClassDeg2{3}, ClassDeg2{-1}};
  EXPECT_EQ(ExtensionResult::from_map(r.graded_map(), 1), r);
}
