#pragma once

#include <stdexcept>
#include <string>

#include "apn/arith.hpp"
#include "apn/nat.hpp"
#include "apn/ratio.hpp"

namespace apn {

/// sigma, deficiency and abundancy of one integer, bundled for reporting.
/// deficiency D(n) = 2n - sigma(n) is negative for abundant n, so it is
/// carried as sign + magnitude.
struct DeficiencyReport {
  Nat n;
  Nat sigma_n;
  bool deficiency_negative = false;  // true iff sigma(n) > 2n
  Nat deficiency_magnitude;          // |2n - sigma(n)|
  ExactRatio abundancy;              // sigma(n)/n in lowest terms

  bool is_deficient() const {
    return !deficiency_negative && !deficiency_magnitude.is_zero();
  }
  bool is_perfect() const { return deficiency_magnitude.is_zero(); }
  bool is_abundant() const { return deficiency_negative; }

  std::string deficiency_str() const {
    return (deficiency_negative ? "-" : "") + to_string(deficiency_magnitude);
  }
};

inline DeficiencyReport deficiency_report(Nat n, Nat sigma_n) {
  DeficiencyReport r;
  r.n = n;
  r.sigma_n = sigma_n;
  Nat twice = Nat(2) * n;
  if (sigma_n > twice) {
    r.deficiency_negative = true;
    r.deficiency_magnitude = sigma_n - twice;
  } else {
    r.deficiency_magnitude = twice - sigma_n;
  }
  r.abundancy = ExactRatio(sigma_n, n);
  return r;
}

inline DeficiencyReport deficiency_report(Nat n) {
  if (n.is_zero()) throw std::invalid_argument("deficiency_report: n must be >= 1");
  return deficiency_report(n, sigma(n));
}

/// Direct definition: sigma(n) = 2n - 1.
inline bool is_almost_perfect_direct(Nat n, Nat sigma_n) {
  return sigma_n == Nat(2) * n - Nat(1);
}

inline bool is_almost_perfect_direct(Nat n) {
  return is_almost_perfect_direct(n, sigma(n));
}

/// Abundancy-index characterization of almost perfect numbers:
///   2n/(n+1) <= I(n) < (2n+1)/(n+1).
/// Evaluated with exact rationals; equivalent to the direct definition.
inline bool is_almost_perfect_criterion(Nat n, Nat sigma_n) {
  ExactRatio index = abundancy(n, sigma_n);
  ExactRatio lower(Nat(2) * n, n + Nat(1));
  ExactRatio upper(Nat(2) * n + Nat(1), n + Nat(1));
  return lower <= index && index < upper;
}

inline bool is_almost_perfect_criterion(Nat n) {
  return is_almost_perfect_criterion(n, sigma(n));
}

/// Abundancy-index characterization of deficient numbers:
///   2n/(n+D) <= I(n) < (2n+D)/(n+D)   with D = 2n - sigma(n) >= 1.
/// Perfect and abundant inputs (D <= 0) short-circuit to false; the sandwich
/// is only stated for positive deficiency.
inline bool is_deficient_criterion(Nat n, Nat sigma_n) {
  Nat twice = Nat(2) * n;
  if (sigma_n >= twice) return false;
  Nat d = twice - sigma_n;
  ExactRatio index = abundancy(n, sigma_n);
  ExactRatio lower(twice, n + d);
  ExactRatio upper(twice + d, n + d);
  return lower <= index && index < upper;
}

inline bool is_deficient_criterion(Nat n) {
  return is_deficient_criterion(n, sigma(n));
}

/// The deficiency c that sigma(b^2) = 2b^2 - c would take if 2^r * b^2 were
/// almost perfect:  c = b^2 - (b^2 - 1)/(2^(r+1) - 1), as an exact rational.
/// Integrality is not assumed; it holds only for a genuine candidate.
inline ExactRatio deficiency_c(unsigned r, Nat b) {
  if (r < 1) throw std::invalid_argument("deficiency_c: r must be >= 1");
  if (b.is_zero() || (b % Nat(2)).is_zero())
    throw std::invalid_argument("deficiency_c: b must be odd and >= 1");
  Nat b2 = b * b;
  Nat mersenne = Nat::two_pow(r + 1) - Nat(1);
  // b^2 - (b^2-1)/m = (m*b^2 - b^2 + 1)/m
  return {mersenne * b2 - (b2 - Nat(1)), mersenne};
}

/// Lower bound (2b^2 + 1)/3 for that deficiency.
inline ExactRatio c_lower_bound(Nat b) {
  if (b.is_zero()) throw std::invalid_argument("c_lower_bound: b must be >= 1");
  return {Nat(2) * b * b + Nat(1), Nat(3)};
}

}  // namespace apn
