#pragma once

// Laurent polynomials in one formal variable over GF(2^k), stored as
// (offset, coefficients). Every operation normalizes so that, for a nonzero
// polynomial, the lowest and highest stored coefficients are nonzero.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cycdec/errors.hpp"
#include "cycdec/field.hpp"

namespace cycdec {

class Poly {
 public:
  Poly() = default;

  static Poly constant(Elem c) { return from_coeffs({c}, 0); }
  static Poly monomial(Elem c, int exponent) { return from_coeffs({c}, exponent); }

  /// coeffs[i] is the coefficient of t^(offset + i).
  static Poly from_coeffs(std::vector<Elem> coeffs, int offset = 0) {
    Poly p;
    p.coeffs_ = std::move(coeffs);
    p.offset_ = offset;
    p.normalize();
    return p;
  }

  [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
  [[nodiscard]] bool is_constant() const { return is_zero() || (offset_ == 0 && coeffs_.size() == 1); }
  /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
  [[nodiscard]] int low() const { return offset_; }
  /// Highest exponent with a nonzero coefficient (0 for the zero polynomial).
  [[nodiscard]] int high() const { return is_zero() ? 0 : offset_ + static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] const std::vector<Elem>& coeffs() const { return coeffs_; }

  [[nodiscard]] Elem coeff(int exponent) const {
    const long i = static_cast<long>(exponent) - offset_;
    if (i < 0 || i >= static_cast<long>(coeffs_.size())) return kZero;
    return coeffs_[static_cast<std::size_t>(i)];
  }

  /// Nonzero (exponent, coefficient) pairs, ascending.
  [[nodiscard]] std::vector<std::pair<int, Elem>> terms() const {
    std::vector<std::pair<int, Elem>> out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (!coeffs_[i].is_zero()) out.emplace_back(offset_ + static_cast<int>(i), coeffs_[i]);
    return out;
  }

  /// Multiplication by t^by.
  [[nodiscard]] Poly shifted(int by) const {
    Poly p = *this;
    if (!p.is_zero()) p.offset_ += by;
    return p;
  }

  friend bool operator==(const Poly&, const Poly&) = default;

  friend Poly operator+(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const int lo = std::min(a.low(), b.low());
    const int hi = std::max(a.high(), b.high());
    std::vector<Elem> c(static_cast<std::size_t>(hi - lo + 1));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) c[a.offset_ - lo + i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) c[b.offset_ - lo + i] += b.coeffs_[i];
    return from_coeffs(std::move(c), lo);
  }

 private:
  void normalize() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
    if (lead > 0) {
      coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
      offset_ += static_cast<int>(lead);
    }
    if (coeffs_.empty()) offset_ = 0;
  }

  int offset_ = 0;
  std::vector<Elem> coeffs_;
};

inline Poly mul(const Field& f, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<Elem> c(x.size() + y.size() - 1);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < y.size(); ++j) c[i + j] += f.mul(x[i], y[j]);
  }
  return Poly::from_coeffs(std::move(c), a.low() + b.low());
}

/// p(x). Negative exponents require x != 0.
inline Elem evaluate(const Field& f, const Poly& p, Elem x) {
  if (p.is_zero()) return kZero;
  Elem acc = kZero;
  const auto& c = p.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = f.mul(acc, x) + c[i];
  return f.mul(acc, f.power(x, p.low()));
}

/// Square root in GF(2^k)[t, 1/t]: exists iff every nonzero term has an even
/// exponent, and is then unique (coefficient-wise Frobenius inverse).
inline std::optional<Poly> try_sqrt(const Field& f, const Poly& p) {
  if (p.is_zero()) return Poly{};
  std::vector<Elem> half;
  for (const auto& [e, c] : p.terms()) {
    if (e % 2 != 0) return std::nullopt;
  }
  if (p.low() % 2 != 0) return std::nullopt;
  const int lo = p.low() / 2;
  half.resize(static_cast<std::size_t>((p.high() - p.low()) / 2 + 1));
  for (const auto& [e, c] : p.terms()) half[static_cast<std::size_t>(e / 2 - lo)] = f.sqrt(c);
  return Poly::from_coeffs(std::move(half), lo);
}

/// The unique polynomial of degree < |points| through all points (Newton form,
/// expanded to the monomial basis).
inline Poly interpolate(const Field& f, std::span<const std::pair<Elem, Elem>> points) {
  const std::size_t n = points.size();
  if (n == 0) throw InputError("interpolation needs at least one point");
  if (f.bits() < 64 && n > (std::uint64_t{1} << f.bits()))
    throw InputError("field too small: " + std::to_string(n) + " points in GF(2^" +
                     std::to_string(f.bits()) + ")");
  std::vector<std::uint64_t> xs;
  xs.reserve(n);
  for (const auto& [x, y] : points) xs.push_back(x.bits);
  std::sort(xs.begin(), xs.end());
  if (std::adjacent_find(xs.begin(), xs.end()) != xs.end())
    throw InputError("interpolation points have duplicate x-coordinates");

  std::vector<Elem> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = points[i].second;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i)
      c[i] = f.div(c[i] + c[i - 1], points[i].first + points[i - j].first);

  std::vector<Elem> p{c[n - 1]};
  for (std::size_t i = n - 1; i-- > 0;) {
    const Elem xi = points[i].first;
    std::vector<Elem> next(p.size() + 1);
    for (std::size_t k = 0; k < p.size(); ++k) {
      next[k + 1] += p[k];
      next[k] += f.mul(xi, p[k]);
    }
    next[0] += c[i];
    p = std::move(next);
  }
  return Poly::from_coeffs(std::move(p), 0);
}

}  // namespace cycdec
