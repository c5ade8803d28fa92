#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <ostream>

namespace apn {

/// Unsigned 128-bit integer with overflow-checked arithmetic.
///
/// Every operation that could leave the representable range throws instead
/// of wrapping. Division and remainder by zero throw std::invalid_argument.
/// The width is wide enough for every quantity this library manipulates at
/// search scale (u up to ~2^63, so u^2, sigma(u^2) and all cross products
/// of abundancy comparisons stay in range).
class Nat {
 public:
  using rep = unsigned __int128;

  constexpr Nat() = default;
  constexpr Nat(std::uint64_t value) : v_(value) {}  // NOLINT: implicit by design

  static constexpr Nat from_raw(rep value) {
    Nat n;
    n.v_ = value;
    return n;
  }

  constexpr rep raw() const { return v_; }

  constexpr bool is_zero() const { return v_ == 0; }

  constexpr bool fits_u64() const {
    return v_ <= std::numeric_limits<std::uint64_t>::max();
  }

  constexpr std::uint64_t as_u64() const {
    if (!fits_u64()) throw std::overflow_error("Nat: value exceeds 64 bits");
    return static_cast<std::uint64_t>(v_);
  }

  friend constexpr Nat operator+(Nat a, Nat b) {
    rep r = a.v_ + b.v_;
    if (r < a.v_) throw std::overflow_error("Nat: addition overflow");
    return from_raw(r);
  }

  friend constexpr Nat operator-(Nat a, Nat b) {
    if (a.v_ < b.v_) throw std::underflow_error("Nat: subtraction below zero");
    return from_raw(a.v_ - b.v_);
  }

  friend constexpr Nat operator*(Nat a, Nat b) {
    if (a.v_ != 0 && b.v_ != 0) {
      rep r = a.v_ * b.v_;
      if (r / a.v_ != b.v_) throw std::overflow_error("Nat: multiplication overflow");
      return from_raw(r);
    }
    return from_raw(0);
  }

  friend constexpr Nat operator/(Nat a, Nat b) {
    if (b.v_ == 0) throw std::invalid_argument("Nat: division by zero");
    return from_raw(a.v_ / b.v_);
  }

  friend constexpr Nat operator%(Nat a, Nat b) {
    if (b.v_ == 0) throw std::invalid_argument("Nat: remainder by zero");
    return from_raw(a.v_ % b.v_);
  }

  constexpr Nat& operator+=(Nat o) { return *this = *this + o; }
  constexpr Nat& operator-=(Nat o) { return *this = *this - o; }
  constexpr Nat& operator*=(Nat o) { return *this = *this * o; }
  constexpr Nat& operator/=(Nat o) { return *this = *this / o; }

  friend constexpr bool operator==(Nat a, Nat b) { return a.v_ == b.v_; }
  friend constexpr std::strong_ordering operator<=>(Nat a, Nat b) {
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (a.v_ > b.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// Checked base^exp.
  static constexpr Nat pow(Nat base, unsigned exp) {
    Nat result = 1;
    Nat m = base;
    while (exp != 0) {
      if (exp & 1u) result *= m;
      exp >>= 1u;
      if (exp != 0) m *= m;
    }
    return result;
  }

  /// 2^exp; exp up to 127.
  static constexpr Nat two_pow(unsigned exp) {
    if (exp >= 128) throw std::overflow_error("Nat: 2^exp exceeds 128 bits");
    return from_raw(rep(1) << exp);
  }

  static Nat parse(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("Nat: empty numeral");
    Nat n = 0;
    for (char c : text) {
      if (c < '0' || c > '9')
        throw std::invalid_argument("Nat: invalid digit in numeral");
      n = n * Nat(10) + Nat(static_cast<std::uint64_t>(c - '0'));
    }
    return n;
  }

 private:
  rep v_ = 0;
};

inline std::string to_string(Nat n) {
  if (n.is_zero()) return "0";
  std::string digits;
  Nat::rep v = n.raw();
  while (v != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<unsigned>(v % 10)));
    v /= 10;
  }
  return {digits.rbegin(), digits.rend()};
}

inline std::ostream& operator<<(std::ostream& os, Nat n) {
  return os << to_string(n);
}

/// Floor of the square root.
inline constexpr Nat isqrt(Nat n) {
  if (n.raw() < 2) return n;
  // Newton iteration with a one-past-the-root seed.
  Nat::rep x = n.raw();
  Nat::rep guess = x;
  // start from a power of two above sqrt(x)
  Nat::rep bit = 1;
  while (bit * bit < x && (bit << 1) != 0) bit <<= 1;
  guess = bit;
  for (;;) {
    Nat::rep next = (guess + x / guess) / 2;
    if (next >= guess) break;
    guess = next;
  }
  return Nat::from_raw(guess);
}

/// True when n is a perfect square; root receives isqrt(n) either way.
inline constexpr bool is_perfect_square(Nat n, Nat& root) {
  root = isqrt(n);
  return root * root == n;
}

}  // namespace apn
