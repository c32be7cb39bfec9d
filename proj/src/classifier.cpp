#include "bottrig/classifier.hpp"

#include <cstdlib>

namespace bottrig {

namespace {

constexpr int kMaxDepth = 2;

bool product_vanishes(const BottTower& stage, const ClassDeg2& u, const ClassDeg2& v) {
  return mul(stage, u, v).is_zero();
}

// 2y = -a c, i.e. y = -(a/2) c1(xi_{n+1}).
bool y_condition(const HirzebruchBundleData& d) { return 2 * d.y == -(d.a * d.c1); }

// Extends a map on H^2 of a lower stage by fixing every generator above it.
GradedMap lift(const GradedMap& m, std::size_t h) {
  GradedMap r = GradedMap::identity(h);
  for (std::size_t j = 0; j < m.source_height(); ++j) r.images[j] = m.images[j].extended(h);
  return r;
}

HirzebruchBundleData trivial_model(const HirzebruchBundleData& d) {
  const std::size_t n = d.base_height();
  return {d.base, ClassDeg2::zero(n), d.a, ClassDeg2::zero(n)};
}

// H*(B_{n+2}) -> H*(B_n x Sigma_a) for data with c1 even, c1^2 = 0 and the
// y condition: x_{n+1} -> x_{n+1} + c1/2, x_{n+2} fixed.
GradedMap trivialization_map(const HirzebruchBundleData& d) {
  const std::size_t n = d.base_height();
  const ProjIsoWitness w{1, -*halve(d.c1)};
  return lift(proj_iso_map(d.base, w), n + 2);
}

std::string stage_name(std::size_t k) { return "B_" + std::to_string(k); }

std::string describe(const HirzebruchBundleData& d) {
  return "(c1 = " + format_class(d.c1) + ", a = " + std::to_string(d.a) + ", y = " + format_class(d.y) + ")";
}

void append(std::vector<CertificateStep>& out, std::vector<CertificateStep> more) {
  out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

std::vector<CertificateStep> require_proj_iso(const BottTower& stage, const ClassDeg2& alpha, const ClassDeg2& beta,
                                              const char* where) {
  auto steps = proj_iso_over(stage, alpha, beta);
  if (!steps)
    throw InternalInconsistency(std::string(where) + ": no decomposable matching for P(C + gamma^" +
                                format_class(alpha) + ") and P(C + gamma^" + format_class(beta) + ")");
  return std::move(*steps);
}

// Shared by the a = a' = 0 cases of both procedures: B_{n+2} is the fiber
// product of P(C + xi_{n+1}) and P(C + gamma^y), and a non-upper-triangular
// iso swaps the two factors.
IsoCertificate product_swap(const HirzebruchBundleData& d1, const HirzebruchBundleData& d2, const FiberMatrix& psi) {
  const bool swap = psi.p11 == 0 && psi.p22 == 0 && std::llabs(psi.p21) == 1 && std::llabs(psi.p12) == 1;
  if (!swap)
    throw PreconditionViolation("descent matrix does not exchange the primitive square-zero classes of Sigma_0");
  IsoCertificate cert;
  append(cert.steps, require_proj_iso(d1.base, d1.c1, d2.y, "fiber-product swap"));
  cert.steps.back().claim += "; first factor of the source matches second factor of the target";
  append(cert.steps, require_proj_iso(d1.base, d1.y, d2.c1, "fiber-product swap"));
  cert.steps.back().claim += "; second factor of the source matches first factor of the target";
  cert.conclusion = Conclusion::IsomorphicOverBase;
  return cert;
}

IsoCertificate upper_triangular(const BottTower& src, const BottTower& dst, const GradedMap& m) {
  IsoCertificate cert;
  cert.steps.push_back({UpperTriangularRealization{src, dst, m}, "degree-2 matrix is upper triangular"});
  cert.conclusion = Conclusion::IsomorphicOverBase;
  return cert;
}

// Even a != 0: P(C + gamma^{a x_{n+1} + y}) = P(C + gamma^y) over B_{n+1}.
struct EvenNormalization {
  HirzebruchBundleData reduced;
  GradedMap map;  // H*(B_{n+2}) -> H*(reduced B_{n+2})
  std::vector<CertificateStep> steps;
};

EvenNormalization normalize_even(const HirzebruchBundleData& d) {
  const std::size_t n = d.base_height();
  EvenNormalization out;
  out.reduced = {d.base, d.c1, 0, d.y};
  if (d.a == 0) {
    out.map = GradedMap::identity(n + 2);
    return out;
  }
  if (!y_condition(d)) throw InternalInconsistency("even fiber: y = -(a/2)c1(xi_{n+1}) fails " + describe(d));
  const BottTower mid = d.intermediate();
  const ClassDeg2 beta = d.y.extended(n + 1);
  const auto w = proj_iso_witness(mid, d.top_twist(), beta);
  if (!w) throw InternalInconsistency("even fiber: top twist does not reduce to y " + describe(d));
  out.map = proj_iso_map(mid, *w);
  out.steps = require_proj_iso(mid, d.top_twist(), beta, "even reduction");
  out.steps.back().claim += "; reduces " + describe(d) + " to a = 0 over " + stage_name(n + 1);
  return out;
}

IsoCertificate realize(const HirzebruchBundleData& data, const ExtensionResult& ext, int depth) {
  if (depth > kMaxDepth) throw InternalInconsistency("realization recursion exceeded its bound");
  data.validate();
  const std::size_t n = data.base_height();
  if (ext.u1.size() != n || ext.u2.size() != n) throw HeightMismatch("extension classes do not live on the base");
  const BottTower total = data.total();
  const GradedMap m = ext.graded_map();
  if (!is_ring_iso(total, total, m)) throw PreconditionViolation("not an automorphism of H*(B_{n+2})");
  if (ext.fiber.upper_triangular()) return upper_triangular(total, total, m);

  const std::int64_t a = data.a;
  if (a == 0) return product_swap(data, data, ext.fiber);

  if (a % 2 == 0) {
    EvenNormalization norm = normalize_even(data);
    const GradedMap moved = compose(norm.map, compose(m, inverse(norm.map)));
    IsoCertificate sub = realize(norm.reduced, ExtensionResult::from_map(moved, n), depth + 1);
    IsoCertificate cert;
    cert.steps = std::move(norm.steps);
    append(cert.steps, std::move(sub.steps));
    cert.conclusion = sub.conclusion;
    return cert;
  }

  if (!y_condition(data)) throw InternalInconsistency("odd fiber: y = -(a/2)c1(xi_{n+1}) fails " + describe(data));
  IsoCertificate cert;
  cert.conclusion = Conclusion::IsomorphicOverBase;
  if (a == 1 || a == -1) {
    cert.steps.push_back({S1EquivariantFiberMap{data, ext}, "structure group of " + describe(data) +
                                                                " reduces to S^1; fiber map is equivariant"});
    return cert;
  }
  if (!is_even(data.c1) || !product_vanishes(data.base, data.c1, data.c1))
    throw InternalInconsistency("odd fiber: c1(xi_{n+1}) must be even with square zero " + describe(data));
  const GradedMap t = trivialization_map(data);
  const ExtensionResult moved = ExtensionResult::from_map(compose(t, compose(m, inverse(t))), n);
  if (!moved.u1.is_zero() || !moved.u2.is_zero())
    throw InternalInconsistency("transported automorphism of the product bundle has correction terms");
  cert.steps.push_back({TrivializationViaSquareZero{data, t, moved.fiber},
                        describe(data) + " is B_n x Sigma_" + std::to_string(a) +
                            "; automorphism acts on the Sigma factor only"});
  return cert;
}

IsoCertificate classify(const HirzebruchBundleData& d1, const HirzebruchBundleData& d2, const GradedMap& iso,
                        int depth) {
  if (depth > kMaxDepth) throw InternalInconsistency("classification recursion exceeded its bound");
  d1.validate();
  d2.validate();
  if (d1.base != d2.base) throw PreconditionViolation("bundles live over different bases");
  const std::size_t n = d1.base_height();
  const BottTower t1 = d1.total();
  const BottTower t2 = d2.total();
  if (iso.source_height() != n + 2 || iso.target_height != n + 2) throw HeightMismatch("iso is not over B_{n+2}");
  if (!is_ring_iso(t1, t2, iso)) throw PreconditionViolation("supplied map is not a ring isomorphism");
  const ExtensionResult desc = ExtensionResult::from_map(iso, n);
  const FiberMatrix& psi = desc.fiber;
  if (psi.upper_triangular()) return upper_triangular(t1, t2, iso);

  const std::int64_t a = d1.a;
  const std::int64_t ap = d2.a;
  if (diffeo_type(a) != diffeo_type(ap))
    throw InternalInconsistency("ring iso between fibers Sigma_" + std::to_string(a) + " and Sigma_" +
                                std::to_string(ap));

  if (a == 0 && ap == 0) return product_swap(d1, d2, psi);

  if (a % 2 == 0) {
    EvenNormalization n1 = normalize_even(d1);
    EvenNormalization n2 = normalize_even(d2);
    const GradedMap moved = compose(n2.map, compose(iso, inverse(n1.map)));
    IsoCertificate sub = classify(n1.reduced, n2.reduced, moved, depth + 1);
    IsoCertificate cert;
    cert.steps = std::move(n1.steps);
    append(cert.steps, std::move(sub.steps));
    append(cert.steps, std::move(n2.steps));
    cert.conclusion = sub.conclusion;
    return cert;
  }

  // Both odd.
  if (!y_condition(d1) || !y_condition(d2))
    throw InternalInconsistency("odd fibers: y = -(a/2)c1(xi_{n+1}) fails on " + describe(d1) + " or " + describe(d2));
  const ClassDeg2& c = d1.c1;
  const ClassDeg2& cp = d2.c1;
  // psi(x1) = s1 (2 x2' - a' x1'), psi(2 x2 - a x1) = s2 x1'.
  const std::int64_t s1 = psi.p21 / 2;
  const std::int64_t s2 = checked::sub(checked::mul(2, psi.p12), checked::mul(a, psi.p11));
  const bool matched = (psi.p21 == 2 || psi.p21 == -2) && psi.p11 == checked::mul(-s1, ap) &&
                       checked::sub(checked::mul(2, psi.p22), checked::mul(a, psi.p21)) == 0 && (s2 == 1 || s2 == -1);
  if (!matched) throw PreconditionViolation("descent matrix does not match primitive square-zero classes");

  const std::int64_t aap = checked::mul(a, ap);
  const RingElement c_sq = mul(d1.base, c, c);
  const RingElement cp_sq = mul(d1.base, cp, cp);
  if (2 * desc.u1 != checked::mul(s1, ap) * cp + c)
    throw InternalInconsistency("odd fibers: v1 = (s1 a' c1' + c1)/2 fails");
  if (checked::mul(ap, ap) * cp_sq != c_sq) throw InternalInconsistency("odd fibers: a'^2 c1'^2 = c1^2 fails");
  if (4 * desc.u2 != checked::sub(checked::mul(s1, aap), s2) * cp)
    throw InternalInconsistency("odd fibers: v2 = ((s1 a a' - s2)/4) c1' fails");
  if (!(checked::sub(checked::mul(aap, aap), 1) * cp_sq).is_zero())
    throw InternalInconsistency("odd fibers: (a^2 a'^2 - 1) c1'^2 = 0 fails");

  IsoCertificate cert;
  cert.conclusion = Conclusion::IsomorphicOverBase;
  if (checked::mul(aap, aap) != 1) {
    for (const auto* d : {&d1, &d2}) {
      if (!is_even(d->c1) || !product_vanishes(d->base, d->c1, d->c1))
        throw InternalInconsistency("odd fibers: c1 must be even with square zero on " + describe(*d));
      cert.steps.push_back({TrivializationViaSquareZero{*d, trivialization_map(*d), std::nullopt},
                            describe(*d) + " is B_n x Sigma_" + std::to_string(d->a)});
    }
    const BottTower product_stage = d1.base.appended(ClassDeg2::zero(n));
    const ClassDeg2 x = ClassDeg2::basis(n + 1, n);
    append(cert.steps, require_proj_iso(product_stage, a * x, ap * x, "odd trivial models"));
    cert.steps.back().claim += "; Sigma_" + std::to_string(a) + " and Sigma_" + std::to_string(ap) + " factors agree";
    return cert;
  }

  if (c == cp) {
    append(cert.steps, require_proj_iso(d1.intermediate(), d1.top_twist(), d2.top_twist(), "odd fibers, equal c1"));
    cert.steps.back().claim += "; top stages agree over " + stage_name(n + 1);
    return cert;
  }

  // Pull d2's top stage back along B_{n+1}(c1) = B_{n+1}(c1') and recurse.
  const auto w = proj_iso_witness(d1.base, cp, c);
  if (!w) throw InternalInconsistency("odd fibers: first stages do not match although c1'^2 = c1^2");
  const GradedMap h = proj_iso_map(d1.base, *w);  // H*(B'_{n+1}) -> H*(B_{n+1})
  const ClassDeg2 pulled = h.apply(d2.top_twist());
  const HirzebruchBundleData dpp{d1.base, c, pulled[n], pulled.truncated(n)};
  const GradedMap g = lift(h, n + 2);
  if (!is_ring_iso(t2, dpp.total(), g)) throw InternalInconsistency("pull-back of the top stage is not a ring iso");
  IsoCertificate sub = classify(d1, dpp, compose(g, iso), depth + 1);
  cert.steps = std::move(sub.steps);
  auto first = require_proj_iso(d1.base, cp, c, "odd fibers, first stages");
  first.back().claim += "; " + describe(d2) + " is the pull-back " + describe(dpp);
  append(cert.steps, std::move(first));
  cert.conclusion = sub.conclusion;
  return cert;
}

}  // namespace

std::string_view move_name(const Move& m) {
  struct V {
    std::string_view operator()(const TensorTwist&) const { return "TensorTwist"; }
    std::string_view operator()(const DecomposableSwap&) const { return "DecomposableSwap"; }
    std::string_view operator()(const UpperTriangularRealization&) const { return "UpperTriangularRealization"; }
    std::string_view operator()(const TrivializationViaSquareZero&) const { return "TrivializationViaSquareZero"; }
    std::string_view operator()(const S1EquivariantFiberMap&) const { return "S1EquivariantFiberMap"; }
  };
  return std::visit(V{}, m);
}

std::string_view move_citation(const Move& m) {
  struct V {
    std::string_view operator()(const TensorTwist&) const {
      return "P(V) and P(L (x) V) are isomorphic as bundles for any line bundle L";
    }
    std::string_view operator()(const DecomposableSwap&) const {
      return "sums of line bundles over a Bott manifold are determined by their total Chern class";
    }
    std::string_view operator()(const UpperTriangularRealization&) const {
      return "a cohomology iso of Bott manifolds with upper-triangular matrix is induced by a diffeomorphism";
    }
    std::string_view operator()(const TrivializationViaSquareZero&) const {
      return "c1 even with vanishing square makes the first stage a product; Sigma_a is cohomologically rigid";
    }
    std::string_view operator()(const S1EquivariantFiberMap&) const {
      return "every automorphism of H*(Sigma_{+-1}) is induced by an S^1-equivariant diffeomorphism, which extends "
             "along an S^1 structure group";
    }
  };
  return std::visit(V{}, m);
}

std::string_view to_string(Conclusion c) {
  return c == Conclusion::IsomorphicOverBase ? "IsomorphicOverBase" : "NotDecidedIsomorphic";
}

std::optional<ProjIsoWitness> proj_iso_witness(const BottTower& stage, const ClassDeg2& alpha, const ClassDeg2& beta) {
  if (alpha.size() != stage.height() || beta.size() != stage.height())
    throw HeightMismatch("twisting classes must live on the stage");
  for (int eps : {1, -1}) {
    auto c = halve(eps * beta - alpha);
    if (c && product_vanishes(stage, *c, *c + alpha)) return ProjIsoWitness{eps, std::move(*c)};
  }
  return std::nullopt;
}

std::optional<std::vector<CertificateStep>> proj_iso_over(const BottTower& stage, const ClassDeg2& alpha,
                                                          const ClassDeg2& beta) {
  const auto w = proj_iso_witness(stage, alpha, beta);
  if (!w) return std::nullopt;
  const std::string over = " over " + stage_name(stage.height());
  const ClassDeg2 shifted = w->c + alpha;
  std::vector<CertificateStep> steps;
  steps.push_back({TensorTwist{stage, alpha, w->c}, "P(C + gamma^" + format_class(alpha) + ") = P(gamma^" +
                                                        format_class(w->c) + " + gamma^" + format_class(shifted) +
                                                        ")" + over});
  const ClassDeg2 target = w->epsilon * beta;
  steps.push_back({DecomposableSwap{stage, w->c, shifted, target},
                   "gamma^" + format_class(w->c) + " + gamma^" + format_class(shifted) + " = C + gamma^" +
                       format_class(target) + over});
  if (w->epsilon == -1) {
    const ClassDeg2 zero = ClassDeg2::zero(stage.height());
    steps.push_back({TensorTwist{stage, target, beta}, "P(C + gamma^" + format_class(target) + ") = P(gamma^" +
                                                           format_class(beta) + " + C)" + over});
    steps.push_back({DecomposableSwap{stage, beta, zero, beta},
                     "gamma^" + format_class(beta) + " + C = C + gamma^" + format_class(beta) + over});
  }
  return steps;
}

GradedMap proj_iso_map(const BottTower& stage, const ProjIsoWitness& w) {
  const std::size_t k = stage.height();
  if (w.c.size() != k) throw HeightMismatch("witness class does not live on the stage");
  GradedMap m = GradedMap::identity(k + 1);
  ClassDeg2 top = (-w.c).extended(k + 1);
  top[k] = w.epsilon;
  m.images[k] = std::move(top);
  return m;
}

IsoCertificate realize_automorphism(const HirzebruchBundleData& data, const ExtensionResult& ext) {
  return realize(data, ext, 0);
}

IsoCertificate bundles_isomorphic(const HirzebruchBundleData& d1, const HirzebruchBundleData& d2,
                                  const GradedMap& iso) {
  return classify(d1, d2, iso, 0);
}

std::optional<std::string> check_step(const CertificateStep& step) {
  struct V {
    std::optional<std::string> operator()(const TensorTwist& s) const {
      if (s.alpha.size() != s.stage.height() || s.c.size() != s.stage.height()) return "classes off the stage";
      return std::nullopt;
    }
    std::optional<std::string> operator()(const DecomposableSwap& s) const {
      const std::size_t k = s.stage.height();
      if (s.u.size() != k || s.v.size() != k || s.target.size() != k) return "classes off the stage";
      if (s.u + s.v != s.target) return "first Chern classes differ";
      if (!product_vanishes(s.stage, s.u, s.v)) return "second Chern class u v is nonzero";
      return std::nullopt;
    }
    std::optional<std::string> operator()(const UpperTriangularRealization& s) const {
      if (!is_ring_iso(s.src, s.dst, s.map)) return "map is not a ring isomorphism";
      for (std::size_t j = 0; j < s.map.source_height(); ++j)
        for (std::size_t i = j + 1; i < s.map.target_height; ++i)
          if (s.map.images[j][i] != 0) return "matrix is not upper triangular";
      return std::nullopt;
    }
    std::optional<std::string> operator()(const TrivializationViaSquareZero& s) const {
      const HirzebruchBundleData& d = s.data;
      d.validate();
      if (!is_even(d.c1)) return "c1(xi_{n+1}) is not even";
      if (!product_vanishes(d.base, d.c1, d.c1)) return "c1(xi_{n+1})^2 is nonzero";
      if (!y_condition(d)) return "y != -(a/2)c1(xi_{n+1})";
      const BottTower product = trivial_model(d).total();
      if (!is_ring_iso(d.total(), product, s.transport)) return "transport is not a ring isomorphism";
      if (s.fiber) {
        const ExtensionResult e{*s.fiber, ClassDeg2::zero(d.base_height()), ClassDeg2::zero(d.base_height())};
        if (!is_ring_iso(product, product, e.graded_map())) return "fiber matrix is not an automorphism of Sigma_a";
      }
      return std::nullopt;
    }
    std::optional<std::string> operator()(const S1EquivariantFiberMap& s) const {
      const HirzebruchBundleData& d = s.data;
      d.validate();
      if (d.a != 1 && d.a != -1) return "S^1 reduction needs a = +-1";
      if (!y_condition(d)) return "y != -(a/2)c1(xi_{n+1})";
      if (s.extension.u1.size() != d.base_height() || s.extension.u2.size() != d.base_height())
        return "extension classes off the base";
      const BottTower t = d.total();
      if (!is_ring_iso(t, t, s.extension.graded_map())) return "extension is not an automorphism";
      return std::nullopt;
    }
  };
  try {
    return std::visit(V{}, step.move);
  } catch (const std::exception& e) {
    return std::string("check raised: ") + e.what();
  }
}

bool verify_certificate(const IsoCertificate& cert) {
  if (cert.conclusion != Conclusion::IsomorphicOverBase) return false;
  for (const auto& s : cert.steps)
    if (check_step(s)) return false;
  return true;
}

}  // namespace bottrig
