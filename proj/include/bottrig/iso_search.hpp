#pragma once

// Box-bounded search for graded ring isomorphisms between two towers of
// equal height that fix a prefix x_1..x_k of generators. Generators are
// assigned one at a time; a candidate image z_j must already satisfy
// z_j (z_j - image(alpha_j)) = 0 before the next generator is tried.
//
// Two implementations share this contract: a plain serial reference and an
// OpenMP kernel that splits the first free generator's candidate range
// across threads. Both return the same sorted list.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "bottrig/ring.hpp"

namespace bottrig {

enum class Backend { Serial, OpenMP };

struct IsoSearchProblem {
  BottTower src;
  BottTower dst;
  /// Generators 0..fixed-1 map to themselves.
  std::size_t fixed = 0;
  /// Every coordinate of every free image lies in [-box, box].
  std::int64_t box = 0;
};

std::vector<GradedMap> search_isos_serial(const IsoSearchProblem& problem);
std::vector<GradedMap> search_isos_omp(const IsoSearchProblem& problem, int threads = 0);

inline std::vector<GradedMap> search_isos(const IsoSearchProblem& problem, Backend backend, int threads = 0) {
  return backend == Backend::Serial ? search_isos_serial(problem) : search_isos_omp(problem, threads);
}

/// First iso in the serial search order, or nothing. Used where only
/// existence matters.
std::optional<GradedMap> find_any_iso(const IsoSearchProblem& problem);

/// Every 2x2 matrix with entries in [-bound, bound] that is a ring
/// automorphism of H*(Sigma_a), by direct enumeration (no pruning beyond
/// the determinant). Row-major (p11, p12, p21, p22), sorted.
std::vector<std::array<std::int64_t, 4>> brute_force_fiber_automorphisms(std::int64_t a, std::int64_t bound,
                                                                         Backend backend = Backend::Serial);

/// Number of OpenMP threads the kernels use when threads == 0.
int default_thread_count();

}  // namespace bottrig
