#include "bottrig/fiber.hpp"

#include <numeric>

namespace bottrig {

std::int64_t FiberMatrix::det() const { return checked::sub(checked::mul(p11, p22), checked::mul(p12, p21)); }

FiberMatrix FiberMatrix::inverse() const {
  const std::int64_t d = det();
  if (d != 1 && d != -1) throw PreconditionViolation("inverse of a non-unimodular fiber matrix");
  return {checked::mul(d, p22), checked::mul(d, checked::neg(p12)), checked::mul(d, checked::neg(p21)),
          checked::mul(d, p11)};
}

GradedMap FiberMatrix::as_graded_map() const { return GradedMap::from_columns({{p11, p12}, {p21, p22}}); }

FiberMatrix operator*(const FiberMatrix& a, const FiberMatrix& b) {
  using checked::add;
  using checked::mul;
  return {add(mul(a.p11, b.p11), mul(a.p12, b.p21)), add(mul(a.p11, b.p12), mul(a.p12, b.p22)),
          add(mul(a.p21, b.p11), mul(a.p22, b.p21)), add(mul(a.p21, b.p12), mul(a.p22, b.p22))};
}

FiberMatrix operator-(const FiberMatrix& a) {
  return {checked::neg(a.p11), checked::neg(a.p12), checked::neg(a.p21), checked::neg(a.p22)};
}

std::string_view to_string(AutomorphismKind k) {
  switch (k) {
    case AutomorphismKind::Identity: return "identity";
    case AutomorphismKind::Reflection: return "reflection";
    case AutomorphismKind::Negation: return "negation";
    case AutomorphismKind::NegatedReflection: return "negated-reflection";
    case AutomorphismKind::Cross: return "cross";
    case AutomorphismKind::NegatedCross: return "negated-cross";
    case AutomorphismKind::CrossReflection: return "cross-reflection";
    case AutomorphismKind::NegatedCrossReflection: return "negated-cross-reflection";
  }
  return "?";
}

std::string_view to_string(DiffeoType t) { return t == DiffeoType::Even ? "even (Sigma_0 = CP1 x CP1)" : "odd (Sigma_1)"; }

DiffeoType diffeo_type(std::int64_t a) { return a % 2 == 0 ? DiffeoType::Even : DiffeoType::Odd; }

namespace {

FiberMatrix cross_generator(std::int64_t a) {
  using checked::mul;
  using checked::sub;
  if (a % 2 == 0) {
    const std::int64_t h = a / 2;
    return {h, sub(mul(h, h), 1), -1, checked::neg(h)};
  }
  return {a, sub(mul(a, a), 1) / 2, -2, checked::neg(a)};
}

}  // namespace

std::vector<FiberAutomorphism> hirzebruch_automorphisms(std::int64_t a) {
  const FiberMatrix id = FiberMatrix::identity();
  const FiberMatrix refl = induced::g1_star(a);
  const FiberMatrix cross = cross_generator(a);
  return {
      {id, AutomorphismKind::Identity},
      {refl, AutomorphismKind::Reflection},
      {-id, AutomorphismKind::Negation},
      {-id * refl, AutomorphismKind::NegatedReflection},
      {cross, AutomorphismKind::Cross},
      {-cross, AutomorphismKind::NegatedCross},
      {cross * refl, AutomorphismKind::CrossReflection},
      {-cross * refl, AutomorphismKind::NegatedCrossReflection},
  };
}

AutomorphismKind classify_fiber_automorphism(std::int64_t a, const FiberMatrix& m) {
  for (const auto& f : hirzebruch_automorphisms(a))
    if (f.matrix == m) return f.kind;
  throw PreconditionViolation("matrix is not an automorphism of H*(Sigma_" + std::to_string(a) + ")");
}

BottTower hirzebruch_tower(std::int64_t a) { return BottTower::from_rows({{}, {a}}); }

std::vector<ClassDeg2> primitive_square_zero(std::int64_t a) {
  if (a % 2 == 0) {
    const std::int64_t h = a / 2;
    return {{1, 0}, {-1, 0}, {checked::neg(h), 1}, {h, -1}};
  }
  return {{1, 0}, {-1, 0}, {checked::neg(a), 2}, {a, -2}};
}

namespace induced {

FiberMatrix f_star(std::int64_t a) {
  if (a != 1 && a != -1) throw PreconditionViolation("f* is only defined for a = +-1");
  return {1, 0, checked::mul(-2, a), -1};
}

FiberMatrix g1_star(std::int64_t a) { return {1, a, 0, -1}; }

FiberMatrix g2_star(std::int64_t a) { return {-1, checked::neg(a), 0, 1}; }

}  // namespace induced

}  // namespace bottrig
