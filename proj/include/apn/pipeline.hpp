#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "apn/arith.hpp"
#include "apn/criteria.hpp"
#include "apn/nat.hpp"
#include "apn/ratio.hpp"

namespace apn {

// Constraint names as they appear in verdicts and hit records. Each names a
// necessary condition that 2^r * b^2 almost perfect would impose on b.
inline constexpr std::string_view kCheckRUpperBound = "r-upper-bound";      // 2^(r+1) < b
inline constexpr std::string_view kCheckSigmaChain = "sigma-chain";         // ratio chain over sigma(2^r), sigma(b)
inline constexpr std::string_view kCheckAbundancyFloor = "abundancy-floor"; // (2b-1)/(2b-2) < I(b^2)
inline constexpr std::string_view kCheckAbundancyWindow = "abundancy-window";  // r-conditional window on I(b^2)
inline constexpr std::string_view kCheckDeficiencyFloor = "deficiency-floor";  // 2b^2 - sigma(b^2) >= (2b^2+1)/3
inline constexpr std::string_view kCheckSolitaryGcd = "solitary-gcd";       // gcd(b^2, sigma(b^2)) = 1

struct BoundCheck {
  std::string_view name;
  bool pass = false;

  friend bool operator==(const BoundCheck&, const BoundCheck&) = default;
};

/// Everything the gauntlet learned about one odd base b.
struct CandidateVerdict {
  Nat b;
  bool admissible = false;        // odd, composite, 3 does not divide b, b >= 35
  Nat sigma_b2;                   // sigma(b^2)
  bool divisibility_holds = false;  // (sigma(b^2) - b^2) | (b^2 - 1)
  std::optional<Nat> quotient;      // (b^2-1)/(sigma(b^2)-b^2) when it divides
  std::optional<unsigned> determined_r;  // r with quotient + 1 = 2^(r+1), r >= 1
  std::vector<BoundCheck> bound_checks;
  bool is_full_candidate = false;

  bool all_bounds_pass() const {
    for (const auto& c : bound_checks)
      if (!c.pass) return false;
    return true;
  }

  std::vector<std::string_view> failed_checks() const {
    std::vector<std::string_view> out;
    for (const auto& c : bound_checks)
      if (!c.pass) out.push_back(c.name);
    return out;
  }
};

/// Enumeration-level admissibility: b odd, composite, coprime to 3, and at
/// least 5*7 = 35 (the smallest odd composite clearing both excluded primes).
inline bool admissible(Nat b) {
  if (b < Nat(35)) return false;
  if ((b % Nat(2)).is_zero()) return false;
  if ((b % Nat(3)).is_zero()) return false;
  return !is_prime(b);
}

inline bool admissible(const Factorization& fb, Nat b) {
  if (b < Nat(35)) return false;
  if ((b % Nat(2)).is_zero()) return false;
  if ((b % Nat(3)).is_zero()) return false;
  return fb.size() > 1 || fb.front().exponent > 1;
}

namespace detail {

// quotient + 1 = 2^(r+1) with r >= 1, if such r exists.
inline std::optional<unsigned> r_from_quotient(Nat quotient) {
  auto k = as_power_of_two(quotient + Nat(1));
  if (!k || *k < 2) return std::nullopt;
  return *k - 1;
}

}  // namespace detail

/// The exponent r forced by b, when one exists: 2^(r+1) - 1 must equal
/// sigma(b^2)/(sigma(b^2) - b^2) rearranged as
/// 2^(r+1) = 1 + (b^2 - 1)/(sigma(b^2) - b^2), which in particular requires
/// (sigma(b^2) - b^2) | (b^2 - 1). At most one r exists per b.
inline std::optional<unsigned> determine_r(const Factorization& fb, Nat b) {
  if (b <= Nat(1)) return std::nullopt;
  Nat b2 = b * b;
  Nat s2 = sigma_of_square(fb);
  Nat d = s2 - b2;  // positive for every b > 1
  if (!((b2 - Nat(1)) % d).is_zero()) return std::nullopt;
  return detail::r_from_quotient((b2 - Nat(1)) / d);
}

inline std::optional<unsigned> determine_r(Nat b) {
  if (b <= Nat(1)) return std::nullopt;
  return determine_r(factorize(b), b);
}

/// gcd(b^2, sigma(b^2)) = 1, the sufficient condition for b^2 solitary.
inline bool check_solitary_gcd(const Factorization& fb, Nat b) {
  Nat b2 = b * b;
  return gcd(b2, sigma_of_square(fb)) == Nat(1);
}

inline bool check_solitary_gcd(Nat b) {
  if (b <= Nat(1)) throw std::invalid_argument("check_solitary_gcd: b must be > 1");
  return check_solitary_gcd(factorize(b), b);
}

/// The r-dependent inequality gauntlet. Every inequality is evaluated with
/// exact rationals (the r bound as the integer comparison 2^(r+1) < b) and
/// nothing short-circuits, so a failing candidate still reports every check.
inline std::vector<BoundCheck> check_bounds(const Factorization& fb, Nat b, unsigned r) {
  if (r < 1) throw std::invalid_argument("check_bounds: r must be >= 1");
  std::vector<BoundCheck> out;
  Nat b2 = b * b;
  Nat sigma_b = sigma(fb);
  Nat sigma_b2 = sigma_of_square(fb);
  Nat sigma_2r = Nat::two_pow(r + 1) - Nat(1);
  Nat two_r = Nat::two_pow(r);

  // r < log2(b) - 1, taken in integers as 2^(r+1) < b.
  out.push_back({kCheckRUpperBound, Nat::two_pow(r + 1) < b});

  // sigma(2^r)/b < 1 < sigma(b)/b < 4/3 < 3/2 <= sigma(2^r)/2^r < 2 < sigma(b)/2^r
  {
    ExactRatio s2r_over_b(sigma_2r, b);
    ExactRatio ib(sigma_b, b);
    ExactRatio s2r_over_2r(sigma_2r, two_r);
    ExactRatio sb_over_2r(sigma_b, two_r);
    ExactRatio one(Nat(1));
    ExactRatio two(Nat(2));
    ExactRatio four_thirds(Nat(4), Nat(3));
    ExactRatio three_halves(Nat(3), Nat(2));
    bool chain = s2r_over_b < one && one < ib && ib < four_thirds &&
                 four_thirds < three_halves && three_halves <= s2r_over_2r &&
                 s2r_over_2r < two && two < sb_over_2r;
    out.push_back({kCheckSigmaChain, chain});
  }

  // (2b - 1)/(2b - 2) < I(b^2)
  {
    ExactRatio floor_bound(Nat(2) * b - Nat(1), Nat(2) * b - Nat(2));
    out.push_back({kCheckAbundancyFloor, floor_bound < ExactRatio(sigma_b2, b2)});
  }

  // r = 1 forces 8/7 < I(b^2) < 4/3 (hence 3 does not divide b);
  // r > 1 forces I(b^2) < 8/7 (hence 7 does not divide b).
  {
    ExactRatio ib2(sigma_b2, b2);
    ExactRatio eight_sevenths(Nat(8), Nat(7));
    bool pass;
    if (r == 1) {
      pass = eight_sevenths < ib2 && ib2 < ExactRatio(Nat(4), Nat(3)) &&
             !(b % Nat(3)).is_zero();
    } else {
      pass = ib2 < eight_sevenths && !(b % Nat(7)).is_zero();
    }
    out.push_back({kCheckAbundancyWindow, pass});
  }

  return out;
}

inline std::vector<BoundCheck> check_bounds(Nat b, unsigned r) {
  return check_bounds(factorize(b), b, r);
}

namespace detail {

// 2b^2 - sigma(b^2) >= (2b^2 + 1)/3, failing outright when b^2 is not
// deficient (the left side would be <= 0).
inline bool deficiency_floor_holds(Nat b, Nat sigma_b2) {
  Nat b2 = b * b;
  Nat twice = Nat(2) * b2;
  if (sigma_b2 >= twice) return false;
  return ExactRatio(twice - sigma_b2) >= c_lower_bound(b);
}

}  // namespace detail

/// Runs the whole gauntlet for one base b (any b >= 1; inadmissible bases
/// still get full diagnostics). A full candidate must clear admissibility,
/// the divisibility constraint, the forced power-of-two quotient, every
/// bound check, and finally the direct test on 2^r * b^2 itself.
inline CandidateVerdict evaluate_candidate(const Factorization& fb, Nat b) {
  CandidateVerdict v;
  v.b = b;
  v.admissible = admissible(fb, b);
  v.sigma_b2 = sigma_of_square(fb);
  Nat b2 = b * b;

  if (b > Nat(1)) {
    Nat d = v.sigma_b2 - b2;
    if (((b2 - Nat(1)) % d).is_zero()) {
      v.divisibility_holds = true;
      v.quotient = (b2 - Nat(1)) / d;
      v.determined_r = detail::r_from_quotient(*v.quotient);
    }
  }
  // b = 1 leaves sigma(b^2) - b^2 = 0 with no usable quotient; the powers
  // of two 2^k live outside this pipeline entirely.

  if (v.determined_r) {
    v.bound_checks = check_bounds(fb, b, *v.determined_r);
  } else if (b > Nat(1)) {
    // Without a forced r only the r-free constraints can be judged.
    ExactRatio ib2(v.sigma_b2, b2);
    ExactRatio floor_bound(Nat(2) * b - Nat(1), Nat(2) * b - Nat(2));
    v.bound_checks.push_back({kCheckAbundancyFloor, floor_bound < ib2});
  }
  if (b > Nat(1)) {
    v.bound_checks.push_back(
        {kCheckDeficiencyFloor, detail::deficiency_floor_holds(b, v.sigma_b2)});
    v.bound_checks.push_back({kCheckSolitaryGcd, check_solitary_gcd(fb, b)});
  }

  v.is_full_candidate = v.admissible && v.divisibility_holds &&
                        v.determined_r.has_value() && v.all_bounds_pass();
  if (v.is_full_candidate) {
    // Final arbiter: 2^r * b^2 must itself be almost perfect.
    Nat m = Nat::two_pow(*v.determined_r) * b2;
    Nat sigma_m = (Nat::two_pow(*v.determined_r + 1) - Nat(1)) * v.sigma_b2;
    v.is_full_candidate = is_almost_perfect_direct(m, sigma_m);
  }
  return v;
}

inline CandidateVerdict evaluate_candidate(Nat b) {
  if (b.is_zero()) throw std::invalid_argument("evaluate_candidate: b must be >= 1");
  return evaluate_candidate(factorize(b), b);
}

}  // namespace apn
