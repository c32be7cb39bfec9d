#include <gtest/gtest.h>

#include <random>

#include "bottrig/iso_search.hpp"
#include "oracles.hpp"

using namespace bottrig;

namespace {

// Plain enumeration of every integer matrix in the box, fixed prefix
// included, filtered by is_ring_iso. Only usable for tiny problems.
std::vector<GradedMap> exhaustive(const IsoSearchProblem& p) {
  const std::size_t m = p.src.height();
  const std::size_t free = (m - p.fixed) * m;
  std::vector<std::int64_t> v(free, -p.box);
  std::vector<GradedMap> out;
  for (;;) {
    GradedMap g = GradedMap::identity(m);
    for (std::size_t j = p.fixed, k = 0; j < m; ++j)
      for (std::size_t i = 0; i < m; ++i) g.images[j][i] = v[k++];
    if (is_ring_iso(p.src, p.dst, g)) out.push_back(g);
    std::size_t i = free;
    while (i > 0 && v[i - 1] == p.box) v[--i] = -p.box;
    if (i == 0) break;
    ++v[i - 1];
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(IsoSearch, AgreesWithExhaustiveEnumeration) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const BottTower src = oracle::random_tower(rng, 2, 2);
    const BottTower dst = oracle::random_tower(rng, 2, 2);
    const IsoSearchProblem p{src, dst, 0, 2};
    ASSERT_EQ(search_isos_serial(p), exhaustive(p));
  }
  for (int trial = 0; trial < 20; ++trial) {
    BottTower src = oracle::random_tower(rng, 3, 1);
    const BottTower dst = BottTower::from_rows({src.row(0), src.row(1), oracle::random_tower(rng, 3, 1).row(2)});
    const IsoSearchProblem p{src, dst, 2, 2};
    ASSERT_EQ(search_isos_serial(p), exhaustive(p));
  }
}

TEST(IsoSearch, SerialAndOpenMPAgree) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 2;
    const BottTower src = oracle::random_tower(rng, n, 2);
    const BottTower dst = trial % 3 == 0 ? src : oracle::random_tower(rng, n, 2);
    const IsoSearchProblem p{src, dst, 0, 3};
    const auto serial = search_isos_serial(p);
    EXPECT_EQ(serial, search_isos_omp(p, 1));
    EXPECT_EQ(serial, search_isos_omp(p, 3));
  }
}

TEST(IsoSearch, FindAnyIsConsistent) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 60; ++trial) {
    const IsoSearchProblem p{oracle::random_tower(rng, 3, 1), oracle::random_tower(rng, 3, 1), 0, 3};
    const auto all = search_isos_serial(p);
    const auto any = find_any_iso(p);
    ASSERT_EQ(any.has_value(), !all.empty());
    if (any) {
      EXPECT_TRUE(std::binary_search(all.begin(), all.end(), *any));
    }
  }
}

TEST(IsoSearch, IdentityAlwaysFound) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const BottTower t = oracle::random_tower(rng, 3, 2);
    const auto all = search_isos_serial({t, t, 0, 2});
    EXPECT_TRUE(std::binary_search(all.begin(), all.end(), GradedMap::identity(3)));
  }
}

TEST(IsoSearch, AllFixedIsIdentityOnly) {
  const BottTower t = BottTower::from_rows({{}, {1}});
  EXPECT_EQ(search_isos_serial({t, t, 2, 3}), std::vector<GradedMap>{GradedMap::identity(2)});
  EXPECT_EQ(search_isos_omp({t, t, 2, 3}), std::vector<GradedMap>{GradedMap::identity(2)});
}

TEST(IsoSearch, RejectsBadProblems) {
  const BottTower a = BottTower::from_rows({{}, {1}});
  const BottTower b = BottTower::from_rows({{}, {2}});
  EXPECT_THROW(search_isos_serial({a, BottTower(3), 0, 1}), HeightMismatch);
  EXPECT_THROW(search_isos_serial({a, b, 2, 1}), PreconditionViolation);
  EXPECT_THROW(search_isos_serial({a, a, 0, -1}), PreconditionViolation);
  EXPECT_THROW(search_isos_omp({a, b, 2, 1}), PreconditionViolation);
}

TEST(IsoSearch, ParityObstructionForHirzebruchSurfaces) {
  for (std::int64_t a = -3; a <= 3; ++a)
    for (std::int64_t b = -3; b <= 3; ++b) {
      const auto isos = search_isos_serial({BottTower::from_rows({{}, {a}}), BottTower::from_rows({{}, {b}}), 0, 8});
      EXPECT_EQ(isos.empty(), (a - b) % 2 != 0) << a << " vs " << b;
    }
}
