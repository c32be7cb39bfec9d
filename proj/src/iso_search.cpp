#include "bottrig/iso_search.hpp"

#include <algorithm>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bottrig/fiber.hpp"

namespace bottrig {

namespace {

void validate(const IsoSearchProblem& p) {
  if (p.src.height() != p.dst.height()) throw HeightMismatch("iso search needs towers of equal height");
  if (p.box > (std::int64_t{1} << 20)) throw PreconditionViolation("search box too large");
  if (p.fixed > p.src.height()) throw PreconditionViolation("more fixed generators than the tower has");
  if (p.box < 0) throw PreconditionViolation("negative search box");
  for (std::size_t j = 0; j < p.fixed; ++j)
    if (p.src.row(j) != p.dst.row(j)) throw PreconditionViolation("towers differ on the fixed base");
}

// Searches generators j..m-1 given images[0..j-1]; appends hits. Within a
// generator the coordinates are assigned in order, and every coefficient of
// z (z - w) in H^4 is checked as soon as both of its coordinates are known.
class Searcher {
 public:
  Searcher(const IsoSearchProblem& p, std::size_t limit = 0)
      : p_(p), kernel_(p.dst), m_(p.src.height()), limit_(limit) {}

  std::size_t height() const { return m_; }

  // w = image of alpha_j under the partial assignment.
  ClassDeg2 relation_target(std::size_t j, const std::vector<ClassDeg2>& images) const {
    ClassDeg2 w = ClassDeg2::zero(m_);
    for (std::size_t l = 0; l < j; ++l) {
      const std::int64_t a = p_.src.coeff(j, l);
      if (a == 0) continue;
      for (std::size_t i = 0; i < m_; ++i) w[i] = checked::fma(a, images[l][i], w[i]);
    }
    return w;
  }

  void descend(std::size_t j, std::vector<ClassDeg2>& images, std::vector<GradedMap>& out) const {
    if (done(out)) return;
    if (j == m_) {
      GradedMap g;
      g.target_height = m_;
      g.images = images;
      if (is_ring_iso(p_.src, p_.dst, g)) out.push_back(std::move(g));
      return;
    }
    Frame f{j, relation_target(j, images), ClassDeg2::zero(m_), ClassDeg2::zero(m_)};
    fill(f, 0, images, out);
  }

  // Number of leading coordinates of the first free generator that the
  // parallel kernel splits on.
  std::size_t split_depth() const { return std::min<std::size_t>(2, m_); }

  // Runs every candidate of generator j whose first split_depth()
  // coordinates are given by the mixed-radix index.
  void descend_from_prefix(std::size_t j, std::size_t index, std::vector<ClassDeg2>& images,
                           std::vector<GradedMap>& out) const {
    Frame f{j, relation_target(j, images), ClassDeg2::zero(m_), ClassDeg2::zero(m_)};
    const auto side = static_cast<std::size_t>(2 * p_.box + 1);
    const std::size_t depth = split_depth();
    for (std::size_t k = depth; k-- > 0;) {
      f.z[k] = static_cast<std::int64_t>(index % side) - p_.box;
      index /= side;
    }
    for (std::size_t k = 0; k < depth; ++k) {
      f.d[k] = checked::sub(f.z[k], f.w[k]);
      if (!consistent(f, k)) return;
    }
    fill(f, depth, images, out);
  }

  std::vector<ClassDeg2> fixed_prefix() const {
    std::vector<ClassDeg2> images(m_);
    for (std::size_t j = 0; j < p_.fixed; ++j) images[j] = ClassDeg2::basis(m_, j);
    return images;
  }

 private:
  struct Frame {
    std::size_t j;
    ClassDeg2 w;  // image of alpha_j
    ClassDeg2 z;  // candidate image of x_j
    ClassDeg2 d;  // z - w
  };

  // All coefficients of z*d on monomials x_i x_k with i <= k are zero.
  bool consistent(const Frame& f, std::size_t k) const {
    for (std::size_t i = 0; i < k; ++i)
      if (kernel_.pair_coefficient(i, k, f.z.coords(), f.d.coords()) != 0) return false;
    return true;
  }

  void fill(Frame& f, std::size_t k, std::vector<ClassDeg2>& images, std::vector<GradedMap>& out) const {
    if (k == m_) {
      images[f.j] = f.z;
      descend(f.j + 1, images, out);
      return;
    }
    for (std::int64_t v = -p_.box; v <= p_.box && !done(out); ++v) {
      f.z[k] = v;
      f.d[k] = checked::sub(v, f.w[k]);
      if (consistent(f, k)) fill(f, k + 1, images, out);
    }
  }

  bool done(const std::vector<GradedMap>& out) const { return limit_ != 0 && out.size() >= limit_; }

  const IsoSearchProblem& p_;
  QuadraticKernel kernel_;
  std::size_t m_;
  std::size_t limit_;
};

}  // namespace

int default_thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<GradedMap> search_isos_serial(const IsoSearchProblem& problem) {
  validate(problem);
  Searcher s(problem);
  std::vector<GradedMap> out;
  auto images = s.fixed_prefix();
  s.descend(problem.fixed, images, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<GradedMap> find_any_iso(const IsoSearchProblem& problem) {
  validate(problem);
  Searcher s(problem, 1);
  std::vector<GradedMap> out;
  auto images = s.fixed_prefix();
  s.descend(problem.fixed, images, out);
  if (out.empty()) return std::nullopt;
  return std::move(out.front());
}

std::vector<GradedMap> search_isos_omp(const IsoSearchProblem& problem, int threads) {
  validate(problem);
  const std::size_t m = problem.src.height();
  if (problem.fixed == m) return search_isos_serial(problem);
  Searcher s(problem);
  const std::size_t j0 = problem.fixed;
  const auto prefix = s.fixed_prefix();
  std::int64_t chunks = 1;
  for (std::size_t k = 0; k < s.split_depth(); ++k) chunks *= 2 * problem.box + 1;
  if (threads <= 0) threads = default_thread_count();

  // One result slot per chunk, concatenated in chunk order.
  std::vector<std::vector<GradedMap>> slots(static_cast<std::size_t>(chunks));
  std::exception_ptr failure;
#pragma omp parallel num_threads(threads)
  {
    auto images = prefix;
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t idx = 0; idx < chunks; ++idx) {
      try {
        s.descend_from_prefix(j0, static_cast<std::size_t>(idx), images, slots[static_cast<std::size_t>(idx)]);
      } catch (...) {
#pragma omp critical(bottrig_iso_failure)
        if (!failure) failure = std::current_exception();
      }
    }
  }
  std::vector<GradedMap> out;
  for (auto& slot : slots) out.insert(out.end(), std::make_move_iterator(slot.begin()), std::make_move_iterator(slot.end()));
  if (failure) std::rethrow_exception(failure);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::array<std::int64_t, 4>> brute_force_fiber_automorphisms(std::int64_t a, std::int64_t bound,
                                                                         Backend backend) {
  if (bound < 0) throw PreconditionViolation("negative bound");
  const BottTower sigma = hirzebruch_tower(a);
  const std::int64_t side = 2 * bound + 1;
  const std::int64_t total = side * side * side * side;
  std::vector<std::array<std::int64_t, 4>> out;
  std::exception_ptr failure;
  const bool parallel = backend == Backend::OpenMP;
#pragma omp parallel if (parallel)
  {
    std::vector<std::array<std::int64_t, 4>> local;
#pragma omp for schedule(static) nowait
    for (std::int64_t idx = 0; idx < total; ++idx) {
      std::int64_t r = idx;
      std::array<std::int64_t, 4> e{};
      for (int k = 3; k >= 0; --k) {
        e[static_cast<std::size_t>(k)] = r % side - bound;
        r /= side;
      }
      const std::int64_t det = e[0] * e[3] - e[1] * e[2];
      if (det != 1 && det != -1) continue;
      try {
        const GradedMap g = GradedMap::from_columns({{e[0], e[1]}, {e[2], e[3]}});
        if (is_ring_iso(sigma, sigma, g)) local.push_back(e);
      } catch (...) {
#pragma omp critical(bottrig_fiber_failure)
        if (!failure) failure = std::current_exception();
      }
    }
#pragma omp critical(bottrig_fiber_merge)
    out.insert(out.end(), local.begin(), local.end());
  }
  if (failure) std::rethrow_exception(failure);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace bottrig
