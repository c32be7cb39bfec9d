#include "bottrig/harness.hpp"

#include <chrono>
#include <exception>
#include <numeric>

#include "bottrig/classifier.hpp"

namespace bottrig {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string format_tower(const BottTower& t) {
  std::string s = "[";
  for (std::size_t j = 1; j < t.height(); ++j) {
    if (j > 1) s += "; ";
    for (std::size_t l = 0; l < j; ++l) {
      if (l) s += ",";
      s += std::to_string(t.coeff(j, l));
    }
  }
  return s + "]";
}

std::string format_data(const HirzebruchBundleData& d) {
  return "{base " + format_tower(d.base) + ", c1 " + format_class(d.c1) + ", a " + std::to_string(d.a) + ", y " +
         format_class(d.y) + "}";
}

std::string format_map(const GradedMap& m) {
  std::string s = "[";
  for (std::size_t j = 0; j < m.images.size(); ++j) {
    if (j) s += ", ";
    s += format_class(m.images[j]);
  }
  return s + "]";
}

// Odometer over [-bound, bound]^k; false once exhausted.
bool advance(std::vector<std::int64_t>& v, std::int64_t bound) {
  for (std::size_t i = v.size(); i-- > 0;) {
    if (v[i] < bound) {
      ++v[i];
      return true;
    }
    v[i] = -bound;
  }
  return false;
}

// Runs body(i) for i in [0, count) and returns the per-index results in
// index order, for either backend.
template <typename Slot, typename Body>
std::vector<Slot> sweep(std::size_t count, const SearchConfig& cfg, Body body) {
  std::vector<Slot> slots(count);
  if (cfg.backend == Backend::Serial) {
    for (std::size_t i = 0; i < count; ++i) slots[i] = body(i);
    return slots;
  }
  const int threads = cfg.jobs > 0 ? cfg.jobs : default_thread_count();
  std::exception_ptr failure;
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      slots[static_cast<std::size_t>(i)] = body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(bottrig_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return slots;
}

struct PairSlot {
  std::size_t isos = 0;
  std::size_t certificates = 0;
  std::size_t parity = 0;
  std::vector<Counterexample> counterexamples;
};

struct OracleSlot {
  std::size_t order = 0;
  std::vector<Counterexample> counterexamples;
};

}  // namespace

void SearchConfig::validate() const {
  if (coeff_bound < 0) throw PreconditionViolation("coeff_bound must be >= 0");
  if (matrix_bound < 0) throw PreconditionViolation("matrix_bound must be >= 0");
  if (jobs < 0) throw PreconditionViolation("jobs must be >= 0");
  if (coeff_bound > 1000) throw PreconditionViolation("coeff_bound too large");
  if (matrix_bound != 0 && matrix_bound < coeff_bound * coeff_bound + 6)
    throw PreconditionViolation("matrix_bound must be at least coeff_bound^2 + 6 = " +
                                std::to_string(coeff_bound * coeff_bound + 6));
}

std::int64_t SearchConfig::effective_matrix_bound() const {
  return matrix_bound != 0 ? matrix_bound : coeff_bound * coeff_bound + 6;
}

std::vector<BottTower> enumerate_towers(std::size_t n, std::int64_t bound) {
  if (bound < 0) throw PreconditionViolation("negative coefficient bound");
  if (n > kMaxHeight) throw PreconditionViolation("tower height exceeds " + std::to_string(kMaxHeight));
  const std::size_t entries = n * (n == 0 ? 0 : n - 1) / 2;
  double total = 1;
  for (std::size_t i = 0; i < entries; ++i) total *= static_cast<double>(2 * bound + 1);
  if (total > 1e7) throw PreconditionViolation("tower enumeration too large");

  std::vector<BottTower> out;
  std::vector<std::int64_t> flat(entries, -bound);
  do {
    std::vector<std::vector<std::int64_t>> rows(n);
    std::size_t k = 0;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < j; ++l) rows[j].push_back(flat[k++]);
    out.push_back(BottTower::from_rows(std::move(rows)));
  } while (advance(flat, bound));
  return out;
}

std::vector<HirzebruchBundleData> enumerate_bundle_data(std::size_t base_height, std::int64_t bound) {
  std::vector<HirzebruchBundleData> out;
  for (const auto& base : enumerate_towers(base_height, bound)) {
    std::vector<std::int64_t> c(base_height, -bound);
    do {
      for (std::int64_t a = -bound; a <= bound; ++a) {
        std::vector<std::int64_t> y(base_height, -bound);
        do {
          out.push_back({base, ClassDeg2(c), a, ClassDeg2(y)});
        } while (advance(y, bound));
      }
    } while (advance(c, bound));
  }
  return out;
}

std::vector<GradedMap> search_algebra_isos(const HirzebruchBundleData& d1, const HirzebruchBundleData& d2,
                                           std::int64_t box, Backend backend) {
  if (d1.base != d2.base) throw PreconditionViolation("bundles live over different bases");
  return search_isos({d1.total(), d2.total(), d1.base_height(), box}, backend);
}

RigidityReport verify_extensions(const SearchConfig& cfg) {
  cfg.validate();
  const auto t0 = Clock::now();
  const auto data = enumerate_bundle_data(cfg.base_height, cfg.coeff_bound);
  auto slots = sweep<OracleSlot>(data.size(), cfg, [&](std::size_t i) {
    OracleSlot slot;
    const auto& d = data[i];
    const std::int64_t box = cfg.matrix_bound != 0 ? cfg.matrix_bound : default_oracle_box(d.a);
    try {
      const OracleComparison cmp = compare_with_oracle(d, box, Backend::Serial);
      slot.order = cmp.predicted.size();
      if (!cmp.agree)
        slot.counterexamples.push_back({"oracle-disagreement", format_data(d) + ": predicted " +
                                                                   std::to_string(cmp.predicted.size()) +
                                                                   ", enumerated " +
                                                                   std::to_string(cmp.enumerated.size())});
      if (slot.order == 0 || 8 % slot.order != 0)
        slot.counterexamples.push_back(
            {"group-order", format_data(d) + ": order " + std::to_string(slot.order) + " does not divide 8"});
    } catch (const std::exception& e) {
      slot.counterexamples.push_back({"exception", format_data(d) + ": " + e.what()});
    }
    return slot;
  });

  RigidityReport r;
  r.suite = "verify-s4";
  r.config = cfg;
  r.instances_scanned = data.size();
  for (auto& s : slots) {
    r.isos_found += s.order;
    ++r.group_orders[s.order];
    for (auto& c : s.counterexamples) r.counterexamples.push_back(std::move(c));
  }
  r.wall_time_s = seconds_since(t0);
  return r;
}

RigidityReport verify_main_theorem(const SearchConfig& cfg) {
  cfg.validate();
  const auto t0 = Clock::now();
  const auto data = enumerate_bundle_data(cfg.base_height, cfg.coeff_bound);
  // Data sharing a base are contiguous; pair each datum with its block.
  std::vector<std::size_t> block_start(data.size());
  std::vector<std::size_t> block_end(data.size());
  for (std::size_t i = 0, start = 0; i < data.size(); ++i) {
    if (data[i].base != data[start].base) start = i;
    block_start[i] = start;
  }
  for (std::size_t i = data.size(), end = data.size(); i-- > 0;) {
    if (i + 1 < data.size() && data[i].base != data[i + 1].base) end = i + 1;
    block_end[i] = end;
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < data.size(); ++i)
    for (std::size_t j = block_start[i]; j < block_end[i]; ++j) pairs.emplace_back(i, j);

  const std::int64_t box = cfg.effective_matrix_bound();
  auto slots = sweep<PairSlot>(pairs.size(), cfg, [&](std::size_t k) {
    PairSlot slot;
    const auto& d1 = data[pairs[k].first];
    const auto& d2 = data[pairs[k].second];
    std::vector<GradedMap> isos;
    try {
      isos = search_algebra_isos(d1, d2, box);
    } catch (const std::exception& e) {
      slot.counterexamples.push_back({"exception", format_data(d1) + " -> " + format_data(d2) + ": " + e.what()});
      return slot;
    }
    slot.isos = isos.size();
    if (!isos.empty() && diffeo_type(d1.a) != diffeo_type(d2.a)) {
      ++slot.parity;
      slot.counterexamples.push_back({"parity", format_data(d1) + " -> " + format_data(d2) + " via " +
                                                    format_map(isos.front())});
    }
    for (const auto& iso : isos) {
      const std::string where = format_data(d1) + " -> " + format_data(d2) + " via " + format_map(iso);
      try {
        const IsoCertificate cert = bundles_isomorphic(d1, d2, iso);
        if (!verify_certificate(cert)) {
          slot.counterexamples.push_back({"invalid-certificate", where});
          continue;
        }
        ++slot.certificates;
      } catch (const InternalInconsistency& e) {
        slot.counterexamples.push_back({"internal-inconsistency", where + ": " + e.what()});
      } catch (const std::exception& e) {
        slot.counterexamples.push_back({"uncertified", where + ": " + e.what()});
      }
    }
    return slot;
  });

  RigidityReport r;
  r.suite = "verify-main";
  r.config = cfg;
  r.instances_scanned = pairs.size();
  for (auto& s : slots) {
    r.isos_found += s.isos;
    r.certificates_emitted += s.certificates;
    r.parity_violations += s.parity;
    for (auto& c : s.counterexamples) r.counterexamples.push_back(std::move(c));
  }
  r.wall_time_s = seconds_since(t0);
  return r;
}

CensusReport census(const SearchConfig& cfg) {
  cfg.validate();
  const auto t0 = Clock::now();
  const auto towers = enumerate_towers(cfg.base_height, cfg.coeff_bound);
  const std::int64_t box = cfg.effective_matrix_bound();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < towers.size(); ++i)
    for (std::size_t j = i + 1; j < towers.size(); ++j) pairs.emplace_back(i, j);

  const auto linked = sweep<char>(pairs.size(), cfg, [&](std::size_t k) -> char {
    return find_any_iso({towers[pairs[k].first], towers[pairs[k].second], 0, box}).has_value() ? 1 : 0;
  });

  std::vector<std::size_t> parent(towers.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (!linked[k]) continue;
    const std::size_t a = find(pairs[k].first);
    const std::size_t b = find(pairs[k].second);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }

  CensusReport r;
  r.height = cfg.base_height;
  r.coeff_bound = cfg.coeff_bound;
  r.matrix_bound = box;
  r.towers = towers.size();
  std::map<std::size_t, std::size_t> class_of_root;
  for (std::size_t i = 0; i < towers.size(); ++i) {
    const std::size_t root = find(i);
    auto [it, fresh] = class_of_root.try_emplace(root, r.classes.size());
    if (fresh) r.classes.emplace_back();
    r.classes[it->second].push_back(towers[i]);
  }
  r.wall_time_s = seconds_since(t0);
  return r;
}

}  // namespace bottrig
