#pragma once

// Certificates that two Hirzebruch surface bundles over B_n are isomorphic
// as bundles, built from a supplied H*(B_n)-algebra isomorphism.
//
// A certificate is a list of moves. Every move carries the tower it lives
// on and the classes it talks about, so verify_certificate can re-check it
// without any context. Geometric facts (tensoring does not change a
// projectivization, decomposables are determined by total Chern class, the
// upper-triangular realization, the S^1 reduction for a = +-1) are trusted
// at the tagged moves; all cohomological side conditions are recomputed.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bottrig/extension.hpp"
#include "bottrig/fiber.hpp"
#include "bottrig/ring.hpp"

namespace bottrig {

/// P(C + gamma^alpha) = P(gamma^c + gamma^{c+alpha}) over `stage`.
struct TensorTwist {
  BottTower stage;
  ClassDeg2 alpha;
  ClassDeg2 c;
};

/// gamma^u + gamma^v = C + gamma^target over `stage`: u + v = target and
/// u v = 0 in H^4(stage).
struct DecomposableSwap {
  BottTower stage;
  ClassDeg2 u;
  ClassDeg2 v;
  ClassDeg2 target;
};

/// An iso whose degree-2 matrix is upper triangular is realized by a
/// diffeomorphism.
struct UpperTriangularRealization {
  BottTower src;
  BottTower dst;
  GradedMap map;
};

/// c1(xi_{n+1}) even with square zero and y = -(a/2)c1(xi_{n+1}): the
/// bundle is B_n x Sigma_a. `transport` is the ring iso H*(B_{n+2}) ->
/// H*(B_n x Sigma_a); `fiber`, when present, is an automorphism of the
/// product carried by a diffeomorphism of Sigma_a.
struct TrivializationViaSquareZero {
  HirzebruchBundleData data;
  GradedMap transport;
  std::optional<FiberMatrix> fiber;
};

/// a = +-1 and y = -(a/2)c1(xi_{n+1}): the structure group reduces to S^1
/// and the automorphism is carried by an equivariant map of Sigma_a.
struct S1EquivariantFiberMap {
  HirzebruchBundleData data;
  ExtensionResult extension;
};

using Move = std::variant<TensorTwist, DecomposableSwap, UpperTriangularRealization, TrivializationViaSquareZero,
                          S1EquivariantFiberMap>;

struct CertificateStep {
  Move move;
  /// What the step establishes, in terms of the bundles involved.
  std::string claim;
};

std::string_view move_name(const Move& m);
/// The geometric fact a move relies on, for --explain output.
std::string_view move_citation(const Move& m);

enum class Conclusion { IsomorphicOverBase, NotDecidedIsomorphic };
std::string_view to_string(Conclusion c);

struct IsoCertificate {
  std::vector<CertificateStep> steps;
  Conclusion conclusion = Conclusion::NotDecidedIsomorphic;
};

/// 2c = eps*beta - alpha and c (c + alpha) = 0.
struct ProjIsoWitness {
  int epsilon = 1;
  ClassDeg2 c;
};

/// Sufficient criterion for P(C + gamma^alpha) = P(C + gamma^beta) over
/// `stage`; tries eps = +1 first.
std::optional<ProjIsoWitness> proj_iso_witness(const BottTower& stage, const ClassDeg2& alpha, const ClassDeg2& beta);

/// The TensorTwist / DecomposableSwap steps behind proj_iso_witness, or
/// nothing when the criterion fails.
std::optional<std::vector<CertificateStep>> proj_iso_over(const BottTower& stage, const ClassDeg2& alpha,
                                                          const ClassDeg2& beta);

/// Ring iso H*(stage + alpha) -> H*(stage + beta) matching a witness:
/// the new generator goes to eps X' - c.
GradedMap proj_iso_map(const BottTower& stage, const ProjIsoWitness& w);

/// Certificate that the automorphism `ext` of H*(B_{n+2}) is induced by a
/// bundle automorphism over B_n. Throws PreconditionViolation if ext is not
/// an automorphism fixing H^2(B_n), InternalInconsistency if a derived
/// condition fails.
IsoCertificate realize_automorphism(const HirzebruchBundleData& data, const ExtensionResult& ext);

/// Certificate that B_{n+2}(d1) and B_{n+2}(d2) are isomorphic over B_n,
/// given an algebra iso H*(B_{n+2}(d1)) -> H*(B_{n+2}(d2)) fixing H^2(B_n).
IsoCertificate bundles_isomorphic(const HirzebruchBundleData& d1, const HirzebruchBundleData& d2,
                                  const GradedMap& iso);

/// Empty when every step checks out, otherwise the first failure.
std::optional<std::string> check_step(const CertificateStep& step);
bool verify_certificate(const IsoCertificate& cert);

}  // namespace bottrig
