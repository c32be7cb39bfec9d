#pragma once

// The Hirzebruch surface Sigma_a = P(C + gamma^a) over CP^1, with
// H*(Sigma_a) = Z[x1, x2] / (x1^2, x2 (x2 - a x1)).

#include <array>
#include <compare>
#include <cstdint>
#include <string_view>
#include <vector>

#include "bottrig/ring.hpp"

namespace bottrig {

/// 2x2 integer matrix on (x1, x2) of the fiber; columns are images, so
/// x1 -> p11 x1 + p21 x2 and x2 -> p12 x1 + p22 x2.
struct FiberMatrix {
  std::int64_t p11 = 1, p12 = 0, p21 = 0, p22 = 1;

  static FiberMatrix identity() { return {}; }
  /// From four row-major entries.
  static FiberMatrix row_major(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) { return {a, b, c, d}; }

  std::int64_t det() const;
  bool upper_triangular() const { return p21 == 0; }
  /// Unimodular inverse.
  FiberMatrix inverse() const;
  ClassDeg2 image_of_x1() const { return {p11, p21}; }
  ClassDeg2 image_of_x2() const { return {p12, p22}; }
  GradedMap as_graded_map() const;

  friend FiberMatrix operator*(const FiberMatrix& a, const FiberMatrix& b);
  friend FiberMatrix operator-(const FiberMatrix& a);
  auto operator<=>(const FiberMatrix&) const = default;
};

/// Role of an automorphism of H*(Sigma_a) in the extension table. The
/// cross family is the non-upper-triangular coset: for even a it is
/// generated by (a/2, a^2/4-1; -1, -a/2), for odd a by (a, (a^2-1)/2; -2, -a).
enum class AutomorphismKind {
  Identity,                // I
  Reflection,              // (1 a; 0 -1)
  Negation,                // -I
  NegatedReflection,       // (-1 -a; 0 1) = -I * Reflection
  Cross,                   // N
  NegatedCross,            // -N
  CrossReflection,         // N * Reflection
  NegatedCrossReflection,  // -N * Reflection
};

std::string_view to_string(AutomorphismKind k);

struct FiberAutomorphism {
  FiberMatrix matrix;
  AutomorphismKind kind;
};

/// The 8 automorphisms of H*(Sigma_a), upper-triangular ones first, in
/// AutomorphismKind order.
std::vector<FiberAutomorphism> hirzebruch_automorphisms(std::int64_t a);

/// Kind of m within hirzebruch_automorphisms(a); throws PreconditionViolation
/// if m is not one of them.
AutomorphismKind classify_fiber_automorphism(std::int64_t a, const FiberMatrix& m);

enum class DiffeoType { Even, Odd };

std::string_view to_string(DiffeoType t);

/// Sigma_a is diffeomorphic to Sigma_0 for even a, to Sigma_1 for odd a.
DiffeoType diffeo_type(std::int64_t a);

/// The height-2 tower whose ring is H*(Sigma_a).
BottTower hirzebruch_tower(std::int64_t a);

/// Primitive z = alpha x1 + beta x2 with z^2 = 0, as (alpha, beta):
/// +-x1, and +-(x2 - (a/2) x1) for even a or +-(2 x2 - a x1) for odd a.
std::vector<ClassDeg2> primitive_square_zero(std::int64_t a);

/// Cohomology matrices of the explicit diffeomorphisms of Sigma_a, kept
/// as certificate labels.
namespace induced {
/// f* for a = +-1: x1 -> x1 - 2a x2, x2 -> -x2.
FiberMatrix f_star(std::int64_t a);
/// g1*: the fiber reflection (1 a; 0 -1).
FiberMatrix g1_star(std::int64_t a);
/// g2*: (-1 -a; 0 1).
FiberMatrix g2_star(std::int64_t a);
}  // namespace induced

}  // namespace bottrig
