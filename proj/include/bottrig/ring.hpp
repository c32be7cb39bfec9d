#pragma once

// Exact arithmetic in H*(B_n) = Z[x_1..x_n] / (x_j^2 - alpha_j x_j),
// alpha_j = sum_{l<j} a[j][l] x_l. Generators are 0-based in this API;
// the JSON formats use 1-based indices.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <string>
#include <string_view>
#include <vector>

#include "bottrig/checked.hpp"

namespace bottrig {

/// Largest supported tower height (monomials are 32-bit subsets).
inline constexpr std::size_t kMaxHeight = 30;

/// Element of H^2(B_n) in the basis x_1..x_n.
class ClassDeg2 {
 public:
  ClassDeg2() = default;
  explicit ClassDeg2(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}
  ClassDeg2(std::initializer_list<std::int64_t> coords) : coords_(coords) {}

  static ClassDeg2 zero(std::size_t n) { return ClassDeg2(std::vector<std::int64_t>(n, 0)); }
  static ClassDeg2 basis(std::size_t n, std::size_t j);

  std::size_t size() const { return coords_.size(); }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  std::int64_t& operator[](std::size_t i) { return coords_[i]; }
  std::span<const std::int64_t> coords() const { return coords_; }
  const std::vector<std::int64_t>& vec() const { return coords_; }

  bool is_zero() const;
  /// Zero-pads to length n (n >= size()).
  ClassDeg2 extended(std::size_t n) const;
  /// First n coordinates.
  ClassDeg2 truncated(std::size_t n) const;

  friend ClassDeg2 operator+(const ClassDeg2& a, const ClassDeg2& b);
  friend ClassDeg2 operator-(const ClassDeg2& a, const ClassDeg2& b);
  friend ClassDeg2 operator-(const ClassDeg2& a);
  friend ClassDeg2 operator*(std::int64_t s, const ClassDeg2& a);

  auto operator<=>(const ClassDeg2&) const = default;

 private:
  std::vector<std::int64_t> coords_;
};

/// c/2 when every coordinate is even, otherwise absent.
std::optional<ClassDeg2> halve(const ClassDeg2& c);
/// c/d when d divides every coordinate.
std::optional<ClassDeg2> divide_exact(const ClassDeg2& c, std::int64_t d);
bool is_even(const ClassDeg2& c);

/// "2x1 - x3" style rendering with 1-based generator names; "0" for zero.
std::string format_class(const ClassDeg2& c, std::string_view var = "x");

/// Strictly lower-triangular integer data a[j][l] (l < j) of a Bott tower.
class BottTower {
 public:
  /// The point (height 0).
  BottTower() = default;
  /// Height n with all twisting classes zero, i.e. (CP^1)^n.
  explicit BottTower(std::size_t n);
  /// rows[j] holds a[j][0..j-1]; row j must have exactly j entries.
  static BottTower from_rows(std::vector<std::vector<std::int64_t>> rows);

  std::size_t height() const { return rows_.size(); }
  std::int64_t coeff(std::size_t j, std::size_t l) const { return rows_[j][l]; }
  const std::vector<std::int64_t>& row(std::size_t j) const { return rows_[j]; }
  /// alpha_j as a class of length height().
  ClassDeg2 alpha(std::size_t j) const;

  /// Appends a stage whose twisting class is alpha (length height()).
  BottTower appended(const ClassDeg2& alpha) const;
  BottTower truncated(std::size_t k) const;

  friend bool operator==(const BottTower&, const BottTower&) = default;
  friend auto operator<=>(const BottTower&, const BottTower&) = default;

 private:
  std::vector<std::vector<std::int64_t>> rows_;
};

/// Square-free monomial as a subset of generators: bit j set <=> x_j divides.
using Monomial = std::uint32_t;

inline int monomial_degree(Monomial s) { return 2 * __builtin_popcount(s); }

/// Element of H*(B_n) in canonical square-free normal form. No stored
/// coefficient is zero.
class RingElement {
 public:
  using Terms = std::map<Monomial, std::int64_t>;

  explicit RingElement(std::size_t height = 0) : height_(height) {}

  static RingElement constant(std::size_t height, std::int64_t c);
  static RingElement generator(std::size_t height, std::size_t j);
  static RingElement from_class(const ClassDeg2& c);
  /// Builds from raw (monomial, coefficient) pairs, dropping zeros and
  /// merging duplicates. Monomials must fit the height.
  static RingElement from_terms(std::size_t height, std::span<const std::pair<Monomial, std::int64_t>> terms);

  std::size_t height() const { return height_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::int64_t coefficient(Monomial s) const;
  bool is_homogeneous() const;

  /// Adds c * s. Keeps the normal-form invariant (no zero coefficients).
  void add_term(Monomial s, std::int64_t c);

  friend RingElement operator+(const RingElement& a, const RingElement& b);
  friend RingElement operator-(const RingElement& a, const RingElement& b);
  friend RingElement operator*(std::int64_t s, const RingElement& a);

  friend bool operator==(const RingElement&, const RingElement&) = default;

 private:
  std::size_t height_ = 0;
  Terms terms_;
};

/// Formal (unreduced) integer polynomial in x_1..x_n; monomials are
/// exponent vectors.
class FormalPolynomial {
 public:
  using Exponents = std::vector<std::uint32_t>;
  using Terms = std::map<Exponents, std::int64_t>;

  explicit FormalPolynomial(std::size_t nvars = 0) : nvars_(nvars) {}

  static FormalPolynomial constant(std::size_t nvars, std::int64_t c);
  static FormalPolynomial variable(std::size_t nvars, std::size_t j);
  static FormalPolynomial from_element(const RingElement& e);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  void add_term(const Exponents& e, std::int64_t c);

  friend FormalPolynomial operator+(const FormalPolynomial& a, const FormalPolynomial& b);
  friend FormalPolynomial operator-(const FormalPolynomial& a, const FormalPolynomial& b);
  friend FormalPolynomial operator*(const FormalPolynomial& a, const FormalPolynomial& b);
  friend FormalPolynomial operator*(std::int64_t s, const FormalPolynomial& a);

 private:
  std::size_t nvars_;
  Terms terms_;
};

/// Canonical normal form, reducing the highest repeated generator first.
RingElement normalize(const BottTower& tower, const FormalPolynomial& expr);

RingElement mul(const BottTower& tower, const RingElement& a, const RingElement& b);
/// Product of two degree-2 classes.
RingElement mul(const BottTower& tower, const ClassDeg2& a, const ClassDeg2& b);

/// Candidate graded map H*(src) -> H*(dst): images[j] is the image of x_j,
/// a class over dst. As a matrix, the images are the columns.
struct GradedMap {
  std::size_t target_height = 0;
  std::vector<ClassDeg2> images;

  std::size_t source_height() const { return images.size(); }
  /// Identity on H*(B_n).
  static GradedMap identity(std::size_t n);
  /// Builds from a square matrix whose columns are images.
  static GradedMap from_columns(const std::vector<std::vector<std::int64_t>>& rows);
  /// Row-major matrix whose columns are the images.
  std::vector<std::vector<std::int64_t>> matrix() const;
  /// Linear action on a degree-2 class of the source.
  ClassDeg2 apply(const ClassDeg2& c) const;

  friend bool operator==(const GradedMap&, const GradedMap&) = default;
  friend auto operator<=>(const GradedMap&, const GradedMap&) = default;
};

RingElement apply_graded_map(const BottTower& src, const BottTower& dst, const GradedMap& m, const RingElement& e);

/// True iff the degree-2 matrix is unimodular and every defining relation
/// x_j (x_j - alpha_j) of src maps to zero in dst.
bool is_ring_iso(const BottTower& src, const BottTower& dst, const GradedMap& m);

/// after o before.
GradedMap compose(const GradedMap& after, const GradedMap& before);
/// Inverse of a map with unimodular square matrix.
GradedMap inverse(const GradedMap& m);

/// Exact determinant (fraction-free elimination).
std::int64_t determinant(const std::vector<std::vector<std::int64_t>>& m);

/// Degree-4 products of degree-2 classes. Since x_k^2 = sum_{l<k} a[k][l] x_l x_k,
/// the coefficient of x_i x_j (i < j) in z*w is
///   z_i w_j + z_j w_i + a[j][i] z_j w_j,
/// which involves only coordinates i and j.
class QuadraticKernel {
 public:
  explicit QuadraticKernel(const BottTower& tower);

  std::size_t height() const { return n_; }
  std::size_t dim4() const { return pairs_.size(); }
  std::int64_t pair_coefficient(std::size_t i, std::size_t j, std::span<const std::int64_t> z,
                                std::span<const std::int64_t> w) const {
    return checked::add(checked::add(checked::mul(z[i], w[j]), checked::mul(z[j], w[i])),
                        checked::mul(coeff_[j * n_ + i], checked::mul(z[j], w[j])));
  }
  /// Dense coordinates of z*w in H^4 (basis: monomial(k) for k < dim4()).
  void product(std::span<const std::int64_t> z, std::span<const std::int64_t> w, std::span<std::int64_t> out) const;
  bool product_is_zero(std::span<const std::int64_t> z, std::span<const std::int64_t> w) const;
  Monomial monomial(std::size_t index) const { return pairs_[index]; }

 private:
  std::size_t n_;
  std::vector<std::int64_t> coeff_;  // coeff_[j*n + i] = a[j][i] for i < j
  std::vector<Monomial> pairs_;      // sorted as Monomial values
};

}  // namespace bottrig
