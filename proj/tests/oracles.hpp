#pragma once

// Independent reference computations used to freeze expected values and to
// cross-check the library. Nothing here calls the code under test except
// for type conversions.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "bottrig/ring.hpp"

namespace oracle {

using Poly = std::map<std::vector<std::uint32_t>, std::int64_t>;

// Reduces x_j^2 -> alpha_j x_j, always picking the *lowest* repeated
// generator (the library reduces the highest first).
inline Poly reduce(const bottrig::BottTower& t, Poly p) {
  for (;;) {
    bool changed = false;
    Poly next;
    for (const auto& [e, c] : p) {
      std::size_t j = e.size();
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] >= 2) {
          j = i;
          break;
        }
      if (j == e.size()) {
        next[e] += c;
        continue;
      }
      changed = true;
      for (std::size_t l = 0; l < j; ++l) {
        const std::int64_t a = t.coeff(j, l);
        if (a == 0) continue;
        auto f = e;
        f[j] -= 1;
        f[l] += 1;
        next[f] += a * c;
      }
    }
    std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
    p = std::move(next);
    if (!changed) return p;
  }
}

inline Poly from_formal(const bottrig::FormalPolynomial& f) {
  Poly p;
  for (const auto& [e, c] : f.terms()) p[e] += c;
  return p;
}

inline Poly from_element(const bottrig::RingElement& e) {
  Poly p;
  for (const auto& [s, c] : e.terms()) {
    std::vector<std::uint32_t> ex(e.height(), 0);
    for (std::size_t i = 0; i < e.height(); ++i) ex[i] = (s >> i) & 1u;
    p[ex] += c;
  }
  return p;
}

inline bottrig::BottTower random_tower(std::mt19937_64& rng, std::size_t n, std::int64_t bound) {
  std::uniform_int_distribution<std::int64_t> d(-bound, bound);
  std::vector<std::vector<std::int64_t>> rows(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t l = 0; l < j; ++l) rows[j].push_back(d(rng));
  return bottrig::BottTower::from_rows(std::move(rows));
}

// Random normal-form element with a few terms of mixed degree.
inline bottrig::RingElement random_element(std::mt19937_64& rng, std::size_t n, std::int64_t bound,
                                           int max_terms = 4) {
  std::uniform_int_distribution<std::int64_t> coeff(-bound, bound);
  std::uniform_int_distribution<std::uint32_t> mono(0, n == 0 ? 0 : (1u << n) - 1);
  std::uniform_int_distribution<int> count(0, max_terms);
  bottrig::RingElement e(n);
  for (int k = count(rng); k > 0; --k) e.add_term(mono(rng), coeff(rng));
  return e;
}

// Random formal polynomial with exponents up to 3.
inline bottrig::FormalPolynomial random_formal(std::mt19937_64& rng, std::size_t n, std::int64_t bound,
                                               int max_terms = 4) {
  std::uniform_int_distribution<std::int64_t> coeff(-bound, bound);
  std::uniform_int_distribution<std::uint32_t> expo(0, 3);
  std::uniform_int_distribution<int> count(0, max_terms);
  bottrig::FormalPolynomial p(n);
  for (int k = count(rng); k > 0; --k) {
    std::vector<std::uint32_t> e(n);
    for (auto& x : e) x = expo(rng);
    p.add_term(e, coeff(rng));
  }
  return p;
}

}  // namespace oracle
