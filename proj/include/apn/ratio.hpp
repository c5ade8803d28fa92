#pragma once

#include <compare>
#include <numeric>
#include <stdexcept>
#include <string>

#include "apn/nat.hpp"

namespace apn {

namespace detail {

inline constexpr Nat gcd_nat(Nat a, Nat b) {
  // Fast path: hardware 64-bit Euclid whenever both operands fit.
  if (a.fits_u64() && b.fits_u64())
    return Nat(std::gcd(a.as_u64(), b.as_u64()));
  Nat::rep x = a.raw(), y = b.raw();
  while (y != 0) {
    Nat::rep t = x % y;
    x = y;
    y = t;
  }
  return Nat::from_raw(x);
}

}  // namespace detail

/// Exact nonnegative rational, kept in lowest terms.
///
/// All comparisons cross-multiply in checked 128-bit arithmetic; nothing in
/// this class ever rounds. Subtraction requires a nonnegative result.
class ExactRatio {
 public:
  ExactRatio() : num_(0), den_(1) {}
  explicit ExactRatio(Nat whole) : num_(whole), den_(1) {}
  ExactRatio(Nat numerator, Nat denominator) : num_(numerator), den_(denominator) {
    if (den_.is_zero()) throw std::invalid_argument("ExactRatio: zero denominator");
    reduce();
  }

  Nat num() const { return num_; }
  Nat den() const { return den_; }

  bool is_integral() const { return den_ == Nat(1); }

  friend bool operator==(const ExactRatio& a, const ExactRatio& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  friend std::strong_ordering operator<=>(const ExactRatio& a, const ExactRatio& b) {
    return (a.num_ * b.den_) <=> (b.num_ * a.den_);
  }

  friend ExactRatio operator+(const ExactRatio& a, const ExactRatio& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }

  friend ExactRatio operator-(const ExactRatio& a, const ExactRatio& b) {
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
  }

  friend ExactRatio operator*(const ExactRatio& a, const ExactRatio& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }

  /// "p/q", or plain "p" when integral.
  std::string str() const {
    if (is_integral()) return to_string(num_);
    return to_string(num_) + "/" + to_string(den_);
  }

 private:
  void reduce() {
    if (num_.is_zero()) {
      den_ = 1;
      return;
    }
    Nat g = detail::gcd_nat(num_, den_);
    num_ /= g;
    den_ /= g;
  }

  Nat num_;
  Nat den_;
};

/// Smallest odd integer strictly greater than q.
inline Nat next_odd_above(const ExactRatio& q) {
  // floor(q) + 1 is the least integer > q whether or not q is integral.
  Nat above = q.num() / q.den() + Nat(1);
  if ((above % Nat(2)).is_zero()) above += Nat(1);
  return above;
}

}  // namespace apn
