#pragma once

// Exhaustive desk-scale sweeps: the extension ledger against the oracle,
// the bundle classifier against every iso found in a box, and a census of
// towers up to algebra isomorphism. Results never depend on the thread
// count: work is split by grid index and merged in index order.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bottrig/extension.hpp"
#include "bottrig/iso_search.hpp"
#include "bottrig/ring.hpp"

namespace bottrig {

struct SearchConfig {
  std::size_t base_height = 0;
  /// Box for tower entries, c1(xi_{n+1}), a and y.
  std::int64_t coeff_bound = 2;
  /// Box for iso images; 0 picks coeff_bound^2 + 6 (the oracle soundness rule).
  std::int64_t matrix_bound = 0;
  /// OpenMP threads; 0 uses the runtime default.
  int jobs = 0;
  Backend backend = Backend::OpenMP;

  /// Throws PreconditionViolation on negative bounds or a matrix box below
  /// coeff_bound^2 + 6.
  void validate() const;
  std::int64_t effective_matrix_bound() const;
};

struct Counterexample {
  std::string kind;
  std::string detail;

  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

struct RigidityReport {
  std::string suite;
  SearchConfig config;
  std::size_t instances_scanned = 0;
  std::size_t isos_found = 0;
  std::size_t certificates_emitted = 0;
  std::size_t parity_violations = 0;
  /// verify-s4 only: predicted group order -> instance count.
  std::map<std::size_t, std::size_t> group_orders;
  std::vector<Counterexample> counterexamples;
  double wall_time_s = 0;

  bool passed() const { return counterexamples.empty(); }
};

/// Height-n towers with entries in [-bound, bound], lexicographic in
/// (row 2, row 3, ...). Throws PreconditionViolation past 10^7 towers.
std::vector<BottTower> enumerate_towers(std::size_t n, std::int64_t bound);

/// Every bundle datum over every base of the given height, all entries in
/// [-bound, bound]; ordered by (base, c1, a, y).
std::vector<HirzebruchBundleData> enumerate_bundle_data(std::size_t base_height, std::int64_t bound);

/// Algebra isos H*(B_{n+2}(d1)) -> H*(B_{n+2}(d2)) fixing H^2(B_n) with
/// images in [-box, box]. Sorted.
std::vector<GradedMap> search_algebra_isos(const HirzebruchBundleData& d1, const HirzebruchBundleData& d2,
                                           std::int64_t box, Backend backend = Backend::Serial);

/// Ledger vs oracle over the config's box; oracle box a^2 + 6 per instance
/// unless matrix_bound is set.
RigidityReport verify_extensions(const SearchConfig& cfg);

/// Classifies every iso between every ordered pair of bundle data over a
/// common base and re-verifies each certificate.
RigidityReport verify_main_theorem(const SearchConfig& cfg);

struct CensusReport {
  std::size_t height = 0;
  std::int64_t coeff_bound = 0;
  std::int64_t matrix_bound = 0;
  std::size_t towers = 0;
  /// Classes in order of their first member; members in enumeration order.
  std::vector<std::vector<BottTower>> classes;
  double wall_time_s = 0;
};

/// Groups height-n towers (entries in [-coeff_bound, coeff_bound]) by
/// algebra isomorphism found within the matrix box. base_height is the
/// tower height here.
CensusReport census(const SearchConfig& cfg);

}  // namespace bottrig
