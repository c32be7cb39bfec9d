#include <gtest/gtest.h>

#include "bottrig/harness.hpp"
#include "bottrig/serialize.hpp"

using namespace bottrig;

namespace {

SearchConfig config(std::size_t h, std::int64_t bound, Backend backend = Backend::Serial) {
  SearchConfig c;
  c.base_height = h;
  c.coeff_bound = bound;
  c.backend = backend;
  return c;
}

Json without_time(Json j) {
  j.erase("wall_time_s");
  j["config"].erase("backend");
  j["config"].erase("jobs");
  return j;
}

}  // namespace

TEST(EnumerateTowers, Counts) {
  EXPECT_EQ(enumerate_towers(0, 3).size(), 1u);
  EXPECT_EQ(enumerate_towers(1, 3).size(), 1u);
  EXPECT_EQ(enumerate_towers(2, 1).size(), 3u);
  EXPECT_EQ(enumerate_towers(3, 1).size(), 27u);
  EXPECT_EQ(enumerate_towers(3, 2).size(), 125u);
  const auto t = enumerate_towers(3, 1);
  EXPECT_TRUE(std::is_sorted(t.begin(), t.end()));
}

TEST(EnumerateTowers, GuardsSize) { EXPECT_THROW(enumerate_towers(8, 3), PreconditionViolation); }

TEST(EnumerateBundleData, Counts) {
  EXPECT_EQ(enumerate_bundle_data(0, 3).size(), 7u);
  EXPECT_EQ(enumerate_bundle_data(1, 3).size(), 343u);
  EXPECT_EQ(enumerate_bundle_data(2, 1).size(), 3u * 9u * 3u * 9u);
}

TEST(SearchAlgebraIsos, Examples) {
  const BottTower cp1 = BottTower::from_rows({{}});
  const HirzebruchBundleData d{cp1, ClassDeg2{1}, 2, ClassDeg2{-1}};
  const auto self = search_algebra_isos(d, d, 5);
  EXPECT_TRUE(std::binary_search(self.begin(), self.end(), GradedMap::identity(3)));

  const BottTower point(0);
  EXPECT_TRUE(search_algebra_isos({point, ClassDeg2{}, 0, ClassDeg2{}}, {point, ClassDeg2{}, 1, ClassDeg2{}}, 8).empty());

  const HirzebruchBundleData y1{cp1, ClassDeg2{0}, 0, ClassDeg2{1}};
  const HirzebruchBundleData ym{cp1, ClassDeg2{0}, 0, ClassDeg2{-1}};
  EXPECT_FALSE(search_algebra_isos(y1, ym, 6).empty());
}

TEST(SearchConfig, Validation) {
  SearchConfig c;
  EXPECT_NO_THROW(c.validate());
  EXPECT_EQ(c.effective_matrix_bound(), 10);
  c.matrix_bound = 9;
  EXPECT_THROW(c.validate(), PreconditionViolation);
  c.matrix_bound = 12;
  EXPECT_EQ(c.effective_matrix_bound(), 12);
  c.coeff_bound = -1;
  EXPECT_THROW(c.validate(), PreconditionViolation);
}

TEST(VerifyExtensions, SmallSweepsPass) {
  for (std::size_t h : {0u, 1u}) {
    const RigidityReport r = verify_extensions(config(h, 2));
    EXPECT_TRUE(r.passed()) << to_json(r).dump(2);
    EXPECT_EQ(r.instances_scanned, h == 0 ? 5u : 125u);
    std::size_t total = 0;
    for (const auto& [order, count] : r.group_orders) {
      EXPECT_EQ(8 % order, 0u);
      total += count;
    }
    EXPECT_EQ(total, r.instances_scanned);
  }
}

TEST(VerifyMainTheorem, SmallSweepsPass) {
  const RigidityReport r0 = verify_main_theorem(config(0, 3));
  EXPECT_TRUE(r0.passed()) << to_json(r0).dump(2);
  EXPECT_GT(r0.isos_found, 0u);
  EXPECT_EQ(r0.certificates_emitted, r0.isos_found);
  EXPECT_EQ(r0.parity_violations, 0u);
  const RigidityReport r1 = verify_main_theorem(config(1, 1));
  EXPECT_TRUE(r1.passed()) << to_json(r1).dump(2);
}

TEST(Determinism, BackendsProduceIdenticalReports) {
  const Json s4s = without_time(to_json(verify_extensions(config(1, 2, Backend::Serial))));
  SearchConfig omp = config(1, 2, Backend::OpenMP);
  omp.jobs = 3;
  EXPECT_EQ(s4s, without_time(to_json(verify_extensions(omp))));
  const Json ms = without_time(to_json(verify_main_theorem(config(1, 1, Backend::Serial))));
  SearchConfig omp1 = config(1, 1, Backend::OpenMP);
  omp1.jobs = 2;
  EXPECT_EQ(ms, without_time(to_json(verify_main_theorem(omp1))));
}

TEST(Report, JsonRoundTrip) {
  const RigidityReport r = verify_extensions(config(1, 1));
  const Json j = to_json(r);
  EXPECT_EQ(to_json(report_from_json(j)), j);
}

TEST(Census, HirzebruchSurfacesSplitByParity) {
  SearchConfig c = config(2, 3);
  const CensusReport r = census(c);
  EXPECT_EQ(r.towers, 7u);
  ASSERT_EQ(r.classes.size(), 2u);
  // Enumeration starts at a = -3, so the odd class comes first.
  EXPECT_EQ(r.classes[0].size(), 4u);
  EXPECT_EQ(r.classes[1].size(), 3u);
}

TEST(Census, HeightThreeBackendsAgree) {
  const CensusReport s = census(config(3, 1, Backend::Serial));
  const CensusReport o = census(config(3, 1, Backend::OpenMP));
  EXPECT_EQ(s.classes, o.classes);
  std::size_t members = 0;
  for (const auto& cls : s.classes) members += cls.size();
  EXPECT_EQ(members, s.towers);
}
