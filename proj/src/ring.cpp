#include "bottrig/ring.hpp"

#include <algorithm>
#include <cassert>
#include <string>

namespace bottrig {

namespace {

void require_same_size(const ClassDeg2& a, const ClassDeg2& b) {
  if (a.size() != b.size())
    throw HeightMismatch("degree-2 classes of lengths " + std::to_string(a.size()) + " and " +
                         std::to_string(b.size()));
}

void require_height(const BottTower& t, std::size_t h, const char* what) {
  if (t.height() != h)
    throw HeightMismatch(std::string(what) + ": tower height " + std::to_string(t.height()) + " vs element height " +
                         std::to_string(h));
}

}  // namespace

// ---------------------------------------------------------------- ClassDeg2

ClassDeg2 ClassDeg2::basis(std::size_t n, std::size_t j) {
  ClassDeg2 c = zero(n);
  c[j] = 1;
  return c;
}

bool ClassDeg2::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](std::int64_t v) { return v == 0; });
}

ClassDeg2 ClassDeg2::extended(std::size_t n) const {
  if (n < coords_.size()) throw HeightMismatch("cannot extend a class to a shorter length");
  ClassDeg2 c = *this;
  c.coords_.resize(n, 0);
  return c;
}

ClassDeg2 ClassDeg2::truncated(std::size_t n) const {
  if (n > coords_.size()) throw HeightMismatch("cannot truncate a class to a longer length");
  return ClassDeg2(std::vector<std::int64_t>(coords_.begin(), coords_.begin() + static_cast<std::ptrdiff_t>(n)));
}

ClassDeg2 operator+(const ClassDeg2& a, const ClassDeg2& b) {
  require_same_size(a, b);
  ClassDeg2 r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = checked::add(a[i], b[i]);
  return r;
}

ClassDeg2 operator-(const ClassDeg2& a, const ClassDeg2& b) {
  require_same_size(a, b);
  ClassDeg2 r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = checked::sub(a[i], b[i]);
  return r;
}

ClassDeg2 operator-(const ClassDeg2& a) {
  ClassDeg2 r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = checked::neg(a[i]);
  return r;
}

ClassDeg2 operator*(std::int64_t s, const ClassDeg2& a) {
  ClassDeg2 r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = checked::mul(s, a[i]);
  return r;
}

std::optional<ClassDeg2> divide_exact(const ClassDeg2& c, std::int64_t d) {
  if (d == 0) throw PreconditionViolation("division of a class by zero");
  ClassDeg2 r = c;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (c[i] % d != 0) return std::nullopt;
    r[i] = c[i] / d;
  }
  return r;
}

std::optional<ClassDeg2> halve(const ClassDeg2& c) { return divide_exact(c, 2); }

bool is_even(const ClassDeg2& c) { return halve(c).has_value(); }

std::string format_class(const ClassDeg2& c, std::string_view var) {
  std::string out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const std::int64_t v = c[i];
    if (v == 0) continue;
    if (out.empty()) {
      if (v < 0) out += "-";
    } else {
      out += v < 0 ? " - " : " + ";
    }
    const std::uint64_t mag = v < 0 ? 0 - static_cast<std::uint64_t>(v) : static_cast<std::uint64_t>(v);
    if (mag != 1) out += std::to_string(mag);
    out += var;
    out += std::to_string(i + 1);
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------- BottTower

BottTower::BottTower(std::size_t n) {
  if (n > kMaxHeight) throw PreconditionViolation("tower height exceeds " + std::to_string(kMaxHeight));
  rows_.reserve(n);
  for (std::size_t j = 0; j < n; ++j) rows_.emplace_back(j, 0);
}

BottTower BottTower::from_rows(std::vector<std::vector<std::int64_t>> rows) {
  if (rows.size() > kMaxHeight) throw PreconditionViolation("tower height exceeds " + std::to_string(kMaxHeight));
  for (std::size_t j = 0; j < rows.size(); ++j) {
    if (rows[j].size() != j)
      throw PreconditionViolation("tower row " + std::to_string(j + 1) + " must have " + std::to_string(j) +
                                  " entries (strictly lower triangular)");
  }
  BottTower t;
  t.rows_ = std::move(rows);
  return t;
}

ClassDeg2 BottTower::alpha(std::size_t j) const { return ClassDeg2(rows_[j]).extended(height()); }

BottTower BottTower::appended(const ClassDeg2& alpha) const {
  if (alpha.size() != height()) throw HeightMismatch("twisting class must live on the current top stage");
  auto rows = rows_;
  rows.push_back(alpha.vec());
  return from_rows(std::move(rows));
}

BottTower BottTower::truncated(std::size_t k) const {
  if (k > height()) throw HeightMismatch("cannot truncate a tower upwards");
  return from_rows(std::vector<std::vector<std::int64_t>>(rows_.begin(), rows_.begin() + static_cast<std::ptrdiff_t>(k)));
}

// -------------------------------------------------------------- RingElement

RingElement RingElement::constant(std::size_t height, std::int64_t c) {
  RingElement e(height);
  e.add_term(0, c);
  return e;
}

RingElement RingElement::generator(std::size_t height, std::size_t j) {
  RingElement e(height);
  e.add_term(Monomial{1} << j, 1);
  return e;
}

RingElement RingElement::from_class(const ClassDeg2& c) {
  RingElement e(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) e.add_term(Monomial{1} << j, c[j]);
  return e;
}

RingElement RingElement::from_terms(std::size_t height, std::span<const std::pair<Monomial, std::int64_t>> terms) {
  RingElement e(height);
  for (const auto& [s, c] : terms) {
    if (height < 32 && (s >> height) != 0) throw HeightMismatch("monomial uses a generator beyond the tower height");
    e.add_term(s, c);
  }
  return e;
}

std::int64_t RingElement::coefficient(Monomial s) const {
  auto it = terms_.find(s);
  return it == terms_.end() ? 0 : it->second;
}

bool RingElement::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = monomial_degree(terms_.begin()->first);
  return std::all_of(terms_.begin(), terms_.end(), [d](const auto& t) { return monomial_degree(t.first) == d; });
}

void RingElement::add_term(Monomial s, std::int64_t c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(s, c);
  if (!inserted) {
    it->second = checked::add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

RingElement operator+(const RingElement& a, const RingElement& b) {
  if (a.height() != b.height()) throw HeightMismatch("sum of elements over different towers");
  RingElement r = a;
  for (const auto& [s, c] : b.terms()) r.add_term(s, c);
  return r;
}

RingElement operator-(const RingElement& a, const RingElement& b) {
  if (a.height() != b.height()) throw HeightMismatch("difference of elements over different towers");
  RingElement r = a;
  for (const auto& [s, c] : b.terms()) r.add_term(s, checked::neg(c));
  return r;
}

RingElement operator*(std::int64_t k, const RingElement& a) {
  RingElement r(a.height());
  for (const auto& [s, c] : a.terms()) r.add_term(s, checked::mul(k, c));
  return r;
}

// --------------------------------------------------------- FormalPolynomial

FormalPolynomial FormalPolynomial::constant(std::size_t nvars, std::int64_t c) {
  FormalPolynomial p(nvars);
  p.add_term(Exponents(nvars, 0), c);
  return p;
}

FormalPolynomial FormalPolynomial::variable(std::size_t nvars, std::size_t j) {
  FormalPolynomial p(nvars);
  Exponents e(nvars, 0);
  e[j] = 1;
  p.add_term(e, 1);
  return p;
}

FormalPolynomial FormalPolynomial::from_element(const RingElement& e) {
  FormalPolynomial p(e.height());
  for (const auto& [s, c] : e.terms()) {
    Exponents ex(e.height(), 0);
    for (std::size_t j = 0; j < e.height(); ++j) ex[j] = (s >> j) & 1u;
    p.add_term(ex, c);
  }
  return p;
}

void FormalPolynomial::add_term(const Exponents& e, std::int64_t c) {
  if (e.size() != nvars_) throw HeightMismatch("exponent vector length differs from variable count");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second = checked::add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

FormalPolynomial operator+(const FormalPolynomial& a, const FormalPolynomial& b) {
  if (a.nvars() != b.nvars()) throw HeightMismatch("sum of polynomials in different variable sets");
  FormalPolynomial r = a;
  for (const auto& [e, c] : b.terms()) r.add_term(e, c);
  return r;
}

FormalPolynomial operator-(const FormalPolynomial& a, const FormalPolynomial& b) { return a + (-1) * b; }

FormalPolynomial operator*(std::int64_t s, const FormalPolynomial& a) {
  FormalPolynomial r(a.nvars());
  for (const auto& [e, c] : a.terms()) r.add_term(e, checked::mul(s, c));
  return r;
}

FormalPolynomial operator*(const FormalPolynomial& a, const FormalPolynomial& b) {
  if (a.nvars() != b.nvars()) throw HeightMismatch("product of polynomials in different variable sets");
  FormalPolynomial r(a.nvars());
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      FormalPolynomial::Exponents e(a.nvars());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, checked::mul(ca, cb));
    }
  }
  return r;
}

// ------------------------------------------------------------ normalization

namespace {

RingElement normalize_highest_first(const BottTower& tower, const FormalPolynomial& expr) {
  const std::size_t n = tower.height();
  RingElement out(n);
  std::vector<std::pair<FormalPolynomial::Exponents, std::int64_t>> work(expr.terms().begin(), expr.terms().end());
  while (!work.empty()) {
    auto [e, c] = std::move(work.back());
    work.pop_back();
    std::size_t j = n;
    for (std::size_t k = n; k-- > 0;) {
      if (e[k] >= 2) {
        j = k;
        break;
      }
    }
    if (j == n) {
      Monomial s = 0;
      for (std::size_t k = 0; k < n; ++k)
        if (e[k]) s |= Monomial{1} << k;
      out.add_term(s, c);
      continue;
    }
    // x_j^2 -> sum_{l<j} a[j][l] x_l x_j
    e[j] -= 1;
    for (std::size_t l = 0; l < j; ++l) {
      const std::int64_t a = tower.coeff(j, l);
      if (a == 0) continue;
      auto e2 = e;
      e2[l] += 1;
      work.emplace_back(std::move(e2), checked::mul(c, a));
    }
  }
  return out;
}

// Adds coeff * (s * x_j) into out. When x_j already divides s the square is
// rewritten via alpha_j, which only involves generators below j.
void accumulate_times_generator(const BottTower& tower, Monomial s, std::size_t j, std::int64_t coeff,
                                RingElement& out) {
  const Monomial bit = Monomial{1} << j;
  if (!(s & bit)) {
    out.add_term(s | bit, coeff);
    return;
  }
  for (std::size_t l = 0; l < j; ++l) {
    const std::int64_t a = tower.coeff(j, l);
    if (a != 0) accumulate_times_generator(tower, s, l, checked::mul(coeff, a), out);
  }
}

RingElement times_generator(const BottTower& tower, const RingElement& e, std::size_t j) {
  RingElement out(e.height());
  for (const auto& [s, c] : e.terms()) accumulate_times_generator(tower, s, j, c, out);
  return out;
}

}  // namespace

RingElement normalize(const BottTower& tower, const FormalPolynomial& expr) {
  if (expr.nvars() != tower.height()) throw HeightMismatch("polynomial variables differ from tower height");
  RingElement r = normalize_highest_first(tower, expr);
#ifndef NDEBUG
  assert(normalize_highest_first(tower, FormalPolynomial::from_element(r)) == r);
#endif
  return r;
}

RingElement mul(const BottTower& tower, const RingElement& a, const RingElement& b) {
  require_height(tower, a.height(), "mul");
  require_height(tower, b.height(), "mul");
  RingElement result(tower.height());
  for (const auto& [t, ct] : b.terms()) {
    RingElement partial = ct * a;
    for (std::size_t j = 0; j < tower.height(); ++j)
      if (t & (Monomial{1} << j)) partial = times_generator(tower, partial, j);
    result = result + partial;
  }
  return result;
}

RingElement mul(const BottTower& tower, const ClassDeg2& a, const ClassDeg2& b) {
  return mul(tower, RingElement::from_class(a), RingElement::from_class(b));
}

// --------------------------------------------------------------- GradedMap

GradedMap GradedMap::identity(std::size_t n) {
  GradedMap m;
  m.target_height = n;
  for (std::size_t j = 0; j < n; ++j) m.images.push_back(ClassDeg2::basis(n, j));
  return m;
}

GradedMap GradedMap::from_columns(const std::vector<std::vector<std::int64_t>>& rows) {
  GradedMap m;
  m.target_height = rows.size();
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (const auto& r : rows)
    if (r.size() != cols) throw PreconditionViolation("ragged matrix");
  for (std::size_t j = 0; j < cols; ++j) {
    ClassDeg2 c = ClassDeg2::zero(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) c[i] = rows[i][j];
    m.images.push_back(std::move(c));
  }
  return m;
}

std::vector<std::vector<std::int64_t>> GradedMap::matrix() const {
  std::vector<std::vector<std::int64_t>> rows(target_height, std::vector<std::int64_t>(images.size(), 0));
  for (std::size_t j = 0; j < images.size(); ++j)
    for (std::size_t i = 0; i < target_height; ++i) rows[i][j] = images[j][i];
  return rows;
}

ClassDeg2 GradedMap::apply(const ClassDeg2& c) const {
  if (c.size() != images.size()) throw HeightMismatch("class length differs from map source height");
  ClassDeg2 r = ClassDeg2::zero(target_height);
  for (std::size_t j = 0; j < images.size(); ++j)
    if (c[j] != 0) r = r + c[j] * images[j];
  return r;
}

namespace {

void require_well_formed(const GradedMap& m) {
  for (const auto& im : m.images)
    if (im.size() != m.target_height) throw HeightMismatch("map image has wrong length");
}

}  // namespace

RingElement apply_graded_map(const BottTower& src, const BottTower& dst, const GradedMap& m, const RingElement& e) {
  require_well_formed(m);
  require_height(src, e.height(), "apply_graded_map");
  if (m.source_height() != src.height() || m.target_height != dst.height())
    throw HeightMismatch("graded map does not match the supplied towers");
  std::vector<RingElement> gen_images;
  gen_images.reserve(src.height());
  for (const auto& im : m.images) gen_images.push_back(RingElement::from_class(im));
  RingElement result(dst.height());
  for (const auto& [s, c] : e.terms()) {
    RingElement term = RingElement::constant(dst.height(), c);
    for (std::size_t j = 0; j < src.height() && !term.is_zero(); ++j)
      if (s & (Monomial{1} << j)) term = mul(dst, term, gen_images[j]);
    result = result + term;
  }
  return result;
}

std::int64_t determinant(const std::vector<std::vector<std::int64_t>>& m) {
  const std::size_t n = m.size();
  for (const auto& r : m)
    if (r.size() != n) throw PreconditionViolation("determinant of a non-square matrix");
  if (n == 0) return 1;
  // Bareiss elimination; each division below is exact.
  std::vector<std::vector<__int128>> a(n, std::vector<__int128>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
  __int128 prev = 1;
  int sign = 1;
  constexpr __int128 kLimit = (static_cast<__int128>(1) << 100);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        if (a[i][j] > kLimit || a[i][j] < -kLimit) throw OverflowError("determinant intermediate too large");
      }
    }
    prev = a[k][k];
  }
  __int128 d = a[n - 1][n - 1] * sign;
  if (d > INT64_MAX || d < INT64_MIN) throw OverflowError("determinant exceeds int64");
  return static_cast<std::int64_t>(d);
}

bool is_ring_iso(const BottTower& src, const BottTower& dst, const GradedMap& m) {
  require_well_formed(m);
  if (src.height() != dst.height()) throw HeightMismatch("is_ring_iso needs towers of equal height");
  if (m.source_height() != src.height() || m.target_height != dst.height())
    throw HeightMismatch("graded map does not match the supplied towers");
  const std::int64_t det = determinant(m.matrix());
  if (det != 1 && det != -1) return false;
  for (std::size_t j = 0; j < src.height(); ++j) {
    const ClassDeg2 z = m.images[j];
    const ClassDeg2 w = m.apply(src.alpha(j));
    if (!mul(dst, z, z - w).is_zero()) return false;
  }
  return true;
}

GradedMap compose(const GradedMap& after, const GradedMap& before) {
  if (before.target_height != after.source_height()) throw HeightMismatch("maps are not composable");
  GradedMap r;
  r.target_height = after.target_height;
  for (const auto& im : before.images) r.images.push_back(after.apply(im));
  return r;
}

GradedMap inverse(const GradedMap& m) {
  const std::size_t n = m.source_height();
  if (m.target_height != n) throw PreconditionViolation("inverse of a non-square map");
  const auto a = m.matrix();
  const std::int64_t det = determinant(a);
  if (det != 1 && det != -1) throw PreconditionViolation("inverse of a non-unimodular map");
  // adj(A)[i][j] = (-1)^{i+j} det(A with row j and column i removed)
  std::vector<std::vector<std::int64_t>> inv(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::vector<std::int64_t>> minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<std::int64_t> row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != i) row.push_back(a[r][c]);
        minor.push_back(std::move(row));
      }
      std::int64_t cof = determinant(minor);
      if ((i + j) % 2) cof = checked::neg(cof);
      inv[i][j] = checked::mul(cof, det);
    }
  }
  return GradedMap::from_columns(inv);
}

// ---------------------------------------------------------- QuadraticKernel

QuadraticKernel::QuadraticKernel(const BottTower& tower) : n_(tower.height()), coeff_(n_ * n_, 0) {
  for (std::size_t j = 0; j < n_; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      coeff_[j * n_ + i] = tower.coeff(j, i);
      pairs_.push_back((Monomial{1} << i) | (Monomial{1} << j));
    }
  std::sort(pairs_.begin(), pairs_.end());
}

void QuadraticKernel::product(std::span<const std::int64_t> z, std::span<const std::int64_t> w,
                              std::span<std::int64_t> out) const {
  for (std::size_t k = 0; k < pairs_.size(); ++k) {
    const Monomial s = pairs_[k];
    const auto i = static_cast<std::size_t>(__builtin_ctz(s));
    const auto j = static_cast<std::size_t>(31 - __builtin_clz(s));
    out[k] = pair_coefficient(i, j, z, w);
  }
}

bool QuadraticKernel::product_is_zero(std::span<const std::int64_t> z, std::span<const std::int64_t> w) const {
  for (std::size_t j = 0; j < n_; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (pair_coefficient(i, j, z, w) != 0) return false;
  return true;
}

}  // namespace bottrig
