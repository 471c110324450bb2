#pragma once

// Exact arithmetic in GF(2^k), 1 <= k <= 64.
//
// Elements are bit patterns of polynomial residues modulo a fixed irreducible
// polynomial of degree k. Addition is XOR; multiplication is carry-less
// multiplication followed by folding reduction. A PCLMULQDQ fast path is used
// when the CPU has it; it is bit-identical to the portable shift-and-XOR path.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define CYCDEC_HAVE_X86 1
#endif

#include "cycdec/errors.hpp"

namespace cycdec {

/// Polynomial over GF(2): bit i is the coefficient of x^i. Degree <= 127.
using Poly2 = unsigned __int128;

namespace gf2 {

inline int degree(Poly2 p) {
  const auto hi = static_cast<std::uint64_t>(p >> 64);
  const auto lo = static_cast<std::uint64_t>(p);
  if (hi != 0) return 127 - std::countl_zero(hi);
  if (lo != 0) return 63 - std::countl_zero(lo);
  return -1;
}

inline Poly2 clmul_portable(std::uint64_t a, std::uint64_t b) {
  Poly2 r = 0;
  while (b != 0) {
    r ^= static_cast<Poly2>(a) << std::countr_zero(b);
    b &= b - 1;
  }
  return r;
}

#ifdef CYCDEC_HAVE_X86
__attribute__((target("pclmul,sse2"))) inline Poly2 clmul_hardware(std::uint64_t a,
                                                                   std::uint64_t b) {
  const __m128i p = _mm_clmulepi64_si128(_mm_cvtsi64_si128(static_cast<long long>(a)),
                                         _mm_cvtsi64_si128(static_cast<long long>(b)), 0);
  const auto lo = static_cast<std::uint64_t>(_mm_cvtsi128_si64(p));
  const auto hi = static_cast<std::uint64_t>(_mm_cvtsi128_si64(_mm_unpackhi_epi64(p, p)));
  return (static_cast<Poly2>(hi) << 64) | lo;
}

inline bool hardware_clmul_available() {
  static const bool available = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("pclmul") != 0;
  }();
  return available;
}
#else
inline Poly2 clmul_hardware(std::uint64_t a, std::uint64_t b) { return clmul_portable(a, b); }
inline bool hardware_clmul_available() { return false; }
#endif

/// Remainder of a modulo m (m != 0), by long division.
inline Poly2 mod(Poly2 a, Poly2 m) {
  const int dm = degree(m);
  for (int da = degree(a); da >= dm; da = degree(a)) a ^= m << (da - dm);
  return a;
}

inline Poly2 gcd(Poly2 a, Poly2 b) {
  while (b != 0) {
    a = mod(a, b);
    std::swap(a, b);
  }
  return a;
}

/// a*b mod m for a, b already reduced and deg m <= 64.
inline Poly2 mulmod(Poly2 a, Poly2 b, Poly2 m) {
  return mod(clmul_portable(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b)), m);
}

/// Degree of the smallest irreducible factor of f (equal to deg f iff f is
/// irreducible). Distinct-degree scan: gcd(x^(2^d) - x, f) is nontrivial for
/// the first time at the least degree d of an irreducible factor.
inline int smallest_factor_degree(Poly2 f) {
  const int k = degree(f);
  if (k <= 0) throw InputError("polynomial of degree < 1 has no irreducible factor");
  const Poly2 x = 2;
  Poly2 h = mod(x, f);
  for (int d = 1; d <= k / 2; ++d) {
    h = mulmod(h, h, f);
    if (degree(gcd(h ^ mod(x, f), f)) > 0) return d;
  }
  return k;
}

}  // namespace gf2

namespace detail {

inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  for (; e != 0; e >>= 1) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
  }
  return r;
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s && composite; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

// Pollard rho with Floyd cycle detection; n must be composite and odd.
inline std::uint64_t pollard_rho(std::uint64_t n) {
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t v) { return (mulmod64(v, v, n) + c) % n; };
    std::uint64_t x = 2, y = 2, d = 1;
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

inline void factor_into(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
      factor_into(n, out);
      return;
    }
  }
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  const std::uint64_t d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

/// Distinct prime factors of n, ascending.
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  factor_into(n, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

/// Element of GF(2^k). Carries no context: multiplication goes through a Field.
struct Elem {
  std::uint64_t bits = 0;

  constexpr Elem() = default;
  constexpr explicit Elem(std::uint64_t b) : bits(b) {}

  [[nodiscard]] constexpr bool is_zero() const { return bits == 0; }

  friend constexpr bool operator==(Elem, Elem) = default;
  friend constexpr Elem operator+(Elem a, Elem b) { return Elem{a.bits ^ b.bits}; }
  constexpr Elem& operator+=(Elem o) {
    bits ^= o.bits;
    return *this;
  }
};

inline constexpr Elem kZero{0};
inline constexpr Elem kOne{1};

/// Built-in modulus for width k. Entries for k in {3, 8, 16, 32, 64} come from
/// a fixed table; other widths use the first irreducible trinomial or
/// pentanomial found by search. Nothing here is trusted: Field verifies.
inline Poly2 default_modulus(int k) {
  const Poly2 top = static_cast<Poly2>(1) << k;
  switch (k) {
    case 3: return 0b1011;
    case 8: return 0x11B;
    case 16: return 0x1002B;
    case 32: return (static_cast<Poly2>(1) << 32) | 0x8D;
    case 64: return (static_cast<Poly2>(1) << 64) | 0x1B;
    default: break;
  }
  if (k == 1) return 0b11;
  for (int a = 1; a < k; ++a) {
    const Poly2 f = top | (static_cast<Poly2>(1) << a) | 1;
    if (gf2::smallest_factor_degree(f) == k) return f;
  }
  for (int a = 3; a < k; ++a)
    for (int b = 2; b < a; ++b)
      for (int c = 1; c < b; ++c) {
        const Poly2 f = top | (static_cast<Poly2>(1) << a) | (static_cast<Poly2>(1) << b) |
                        (static_cast<Poly2>(1) << c) | 1;
        if (gf2::smallest_factor_degree(f) == k) return f;
      }
  throw InputError("no low-weight irreducible modulus found for k = " + std::to_string(k));
}

/// GF(2^k) context. Immutable after construction; share freely across threads.
class Field {
 public:
  explicit Field(int k) : Field(k, checked_default(k)) {}

  Field(int k, Poly2 modulus) : k_(k), modulus_(modulus) {
    if (k < 1 || k > 64) throw InputError("unsupported field width k = " + std::to_string(k));
    if (gf2::degree(modulus) != k)
      throw InputError("modulus degree " + std::to_string(gf2::degree(modulus)) +
                       " does not match k = " + std::to_string(k));
    const int factor = gf2::smallest_factor_degree(modulus);
    if (factor != k)
      throw InputError("modulus is reducible: it has an irreducible factor of degree " +
                       std::to_string(factor));
    mask_ = k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
    low_ = static_cast<std::uint64_t>(modulus & mask_);
    hardware_ = gf2::hardware_clmul_available();
    generator_ = find_generator();
  }

  [[nodiscard]] int bits() const { return k_; }
  [[nodiscard]] Poly2 modulus() const { return modulus_; }
  [[nodiscard]] std::uint64_t mask() const { return mask_; }
  /// |GF(2^k)^*| = 2^k - 1.
  [[nodiscard]] std::uint64_t group_order() const { return mask_; }
  /// A generator of the multiplicative group, chosen as the least bit pattern
  /// whose order is 2^k - 1.
  [[nodiscard]] Elem generator() const { return generator_; }
  [[nodiscard]] bool uses_hardware_multiply() const { return hardware_; }

  [[nodiscard]] bool contains(Elem a) const { return (a.bits & ~mask_) == 0; }

  [[nodiscard]] Elem from_bits(std::uint64_t bits) const {
    if ((bits & ~mask_) != 0) throw InputError("bit pattern exceeds field width");
    return Elem{bits};
  }

  [[nodiscard]] Elem mul(Elem a, Elem b) const {
    return hardware_ ? mul_hardware(a, b) : mul_portable(a, b);
  }

  [[nodiscard]] Elem mul_portable(Elem a, Elem b) const {
    Poly2 p = gf2::clmul_portable(a.bits, b.bits);
    for (Poly2 hi = p >> k_; hi != 0; hi = p >> k_)
      p = (p & mask_) ^ gf2::clmul_portable(low_, static_cast<std::uint64_t>(hi));
    return Elem{static_cast<std::uint64_t>(p)};
  }

  [[nodiscard]] Elem mul_hardware(Elem a, Elem b) const {
    Poly2 p = gf2::clmul_hardware(a.bits, b.bits);
    for (Poly2 hi = p >> k_; hi != 0; hi = p >> k_)
      p = (p & mask_) ^ gf2::clmul_hardware(static_cast<std::uint64_t>(hi), low_);
    return Elem{static_cast<std::uint64_t>(p)};
  }

  [[nodiscard]] Elem square(Elem a) const { return mul(a, a); }

  [[nodiscard]] Elem pow(Elem a, std::uint64_t e) const {
    Elem r = kOne;
    for (; e != 0; e >>= 1) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
    }
    return r;
  }

  /// a^e for any integer e; negative exponents invert first.
  [[nodiscard]] Elem power(Elem a, std::int64_t e) const {
    if (e >= 0) return pow(a, static_cast<std::uint64_t>(e));
    return pow(inv(a), static_cast<std::uint64_t>(-(e + 1)) + 1);
  }

  [[nodiscard]] Elem inv(Elem a) const {
    if (a.is_zero()) throw DivisionByZero();
    return pow(a, group_order() - 1);
  }

  [[nodiscard]] Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  /// Unique square root: the inverse Frobenius map a -> a^(2^(k-1)).
  [[nodiscard]] Elem sqrt(Elem a) const {
    for (int i = 1; i < k_; ++i) a = mul(a, a);
    return a;
  }

  template <class Rng>
  [[nodiscard]] Elem random(Rng& rng) const {
    return Elem{static_cast<std::uint64_t>(rng()) & mask_};
  }

  template <class Rng>
  [[nodiscard]] Elem random_nonzero(Rng& rng) const {
    for (;;) {
      const Elem e = random(rng);
      if (!e.is_zero()) return e;
    }
  }

  /// Lowercase hex of the bit pattern, "0x" prefixed.
  [[nodiscard]] static std::string hex(Elem a) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(a.bits));
    return buf;
  }

  friend bool operator==(const Field& a, const Field& b) {
    return a.k_ == b.k_ && a.modulus_ == b.modulus_;
  }

 private:
  static Poly2 checked_default(int k) {
    if (k < 1 || k > 64) throw InputError("unsupported field width k = " + std::to_string(k));
    return default_modulus(k);
  }

  Elem find_generator() const {
    const std::uint64_t order = group_order();
    if (order == 1) return kOne;
    const auto primes = detail::prime_factors(order);
    for (std::uint64_t c = 2; c <= mask_; ++c) {
      bool full = true;
      for (std::uint64_t p : primes) {
        if (pow(Elem{c}, order / p) == kOne) {
          full = false;
          break;
        }
      }
      if (full) return Elem{c};
    }
    throw InternalError("multiplicative group has no generator");
  }

  int k_;
  Poly2 modulus_;
  std::uint64_t mask_ = 0;
  std::uint64_t low_ = 0;
  bool hardware_ = false;
  Elem generator_{};
};

/// Checked construction of a field context. Without a modulus the built-in
/// candidate for k is used (and still verified).
inline Field make_field(int k, std::optional<Poly2> modulus = std::nullopt) {
  return modulus ? Field(k, *modulus) : Field(k);
}

}  // namespace cycdec
