#pragma once

// Which automorphisms of the fiber H*(Sigma_a) extend to H*(B_n)-algebra
// automorphisms of H*(B_{n+2}), for a Sigma_a-bundle B_{n+2} -> B_n, with
// the closed-form correction terms u1, u2. Also the box-bounded brute-force
// oracle the closed forms are checked against.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bottrig/fiber.hpp"
#include "bottrig/iso_search.hpp"
#include "bottrig/ring.hpp"

namespace bottrig {

/// A Sigma_a-bundle over B_n: B_{n+1} = P(C + xi_{n+1}) with
/// c1(xi_{n+1}) = c1, and B_{n+2} = P(C + xi_{n+2}) with
/// c1(xi_{n+2}) = a x_{n+1} + y. Both c1 and y are classes over the base.
struct HirzebruchBundleData {
  BottTower base;
  ClassDeg2 c1;
  std::int64_t a = 0;
  ClassDeg2 y;

  std::size_t base_height() const { return base.height(); }
  /// Throws PreconditionViolation if c1 or y do not live on the base.
  void validate() const;
  /// B_{n+1}.
  BottTower intermediate() const;
  /// B_{n+2}: the base rows followed by (c1) and (y | a).
  BottTower total() const;
  /// c1(xi_{n+2}) as a class over B_{n+1}.
  ClassDeg2 top_twist() const;
  /// Inverse of total(): splits a tower of height >= 2 into base and data.
  static HirzebruchBundleData from_total(const BottTower& t);

  friend bool operator==(const HirzebruchBundleData&, const HirzebruchBundleData&) = default;
  friend auto operator<=>(const HirzebruchBundleData&, const HirzebruchBundleData&) = default;
};

/// phi(x_{n+1}) = p11 x_{n+1} + p21 x_{n+2} + u1,
/// phi(x_{n+2}) = p12 x_{n+1} + p22 x_{n+2} + u2, with x_1..x_n fixed.
struct ExtensionResult {
  FiberMatrix fiber;
  ClassDeg2 u1;
  ClassDeg2 u2;

  /// The map on H^2(B_{n+2}) (n = u1.size()).
  GradedMap graded_map() const;
  /// Reads fiber block and corrections from a map fixing x_1..x_n.
  static ExtensionResult from_map(const GradedMap& m, std::size_t n);

  friend bool operator==(const ExtensionResult&, const ExtensionResult&) = default;
  friend auto operator<=>(const ExtensionResult&, const ExtensionResult&) = default;
};

struct ExtensionDecision {
  AutomorphismKind kind = AutomorphismKind::Identity;
  std::optional<ExtensionResult> result;
  /// Human-readable failed condition when result is empty.
  std::string failed_condition;

  bool extends() const { return result.has_value(); }
};

/// Decides whether the fiber automorphism p extends, and if so returns the
/// unique extension. Throws PreconditionViolation if p is not one of
/// hirzebruch_automorphisms(data.a). Every returned extension has been
/// re-checked to be a ring automorphism fixing H^2(B_n).
ExtensionDecision extension_condition(const HirzebruchBundleData& data, const FiberMatrix& p);

/// Extensions of all fiber automorphisms that extend, in table order.
std::vector<ExtensionResult> predicted_automorphism_set(const HirzebruchBundleData& data);

/// Exhaustive search: every H^*(B_n)-algebra automorphism of H*(B_{n+2})
/// whose images of x_{n+1}, x_{n+2} have all coordinates in [-box, box].
/// Sorted.
std::vector<GradedMap> enumerate_algebra_automorphisms(const HirzebruchBundleData& data, std::int64_t box,
                                                       Backend backend = Backend::Serial);

/// Smallest oracle box used by the agreement checks: a^2 + 6.
std::int64_t default_oracle_box(std::int64_t a);

struct OracleComparison {
  HirzebruchBundleData data;
  std::int64_t box = 0;
  std::vector<GradedMap> predicted;
  std::vector<GradedMap> enumerated;
  bool agree = false;
};

/// Runs both sides and compares the sorted degree-2 matrices.
OracleComparison compare_with_oracle(const HirzebruchBundleData& data, std::int64_t box,
                                     Backend backend = Backend::Serial);

}  // namespace bottrig
