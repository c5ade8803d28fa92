#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "apn/nat.hpp"
#include "apn/ratio.hpp"

namespace apn {

/// One prime power p^e of a factorization.
struct PrimePower {
  Nat prime;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime-power decomposition, primes strictly increasing. 1 factors as {}.
using Factorization = std::vector<PrimePower>;

inline Nat value_of(const Factorization& f) {
  Nat n = 1;
  for (const auto& pp : f) n *= Nat::pow(pp.prime, pp.exponent);
  return n;
}

inline std::string to_string(const Factorization& f) {
  if (f.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i != 0) out += " * ";
    out += to_string(f[i].prime);
    if (f[i].exponent != 1) out += "^" + std::to_string(f[i].exponent);
  }
  return out;
}

namespace detail {

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1u) result = mulmod_u64(result, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1u;
  }
  return result;
}

// Deterministic Miller-Rabin for the full 64-bit range.
// The witness set {2,...,37} is known exhaustive below 3.3e24 > 2^64.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1u) == 0) {
    d >>= 1u;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                          23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// Pollard rho (Brent variant) for composite odd n with no tiny factors.
// Deterministic: polynomial offsets are tried in a fixed order.
inline std::uint64_t pollard_rho_u64(std::uint64_t n) {
  if ((n & 1u) == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    auto step = [n, c](std::uint64_t x) {
      std::uint64_t t = mulmod_u64(x, x, n);
      t += c;  // c << n, but guard the wrap near 2^64 anyway
      if (t < c || t >= n) t -= n;
      return t;
    };
    std::uint64_t x = 2, y = 2, d = 1;
    std::uint64_t saved_x = x, saved_y = y;
    int lam = 1;
    while (d == 1) {
      // batch gcds: accumulate |x - y| products
      std::uint64_t prod = 1;
      saved_x = x;
      saved_y = y;
      for (int i = 0; i < lam && d == 1; ++i) {
        x = step(x);
        y = step(step(y));
        std::uint64_t diff = x > y ? x - y : y - x;
        if (diff == 0) {
          d = 0;  // cycle without factor; retry with next c
          break;
        }
        prod = mulmod_u64(prod, diff, n);
      }
      if (d == 1) d = std::gcd(prod, n);
      if (lam < (1 << 16)) lam *= 2;
    }
    if (d == 0) continue;
    if (d != n) return d;
    // batched gcd overshot: replay one step at a time
    x = saved_x;
    y = saved_y;
    d = 1;
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      std::uint64_t diff = x > y ? x - y : y - x;
      if (diff == 0) break;
      d = std::gcd(diff, n);
    }
    if (d != 1 && d != n) return d;
  }
}

inline void factorize_u64_into(std::uint64_t n, std::uint64_t trial_bound,
                               std::vector<std::pair<std::uint64_t, unsigned>>& out) {
  trial_bound = std::min<std::uint64_t>(trial_bound, 0xFFFFFFFFull);
  for (std::uint64_t p : {2ull, 3ull, 5ull}) {
    if (n % p == 0) {
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  }
  // wheel over 6k±1
  for (std::uint64_t p = 7; p <= trial_bound && p * p <= n; p += 6) {
    for (std::uint64_t q : {p, p + 4}) {
      if (n % q == 0) {
        unsigned e = 0;
        while (n % q == 0) {
          n /= q;
          ++e;
        }
        out.emplace_back(q, e);
      }
    }
  }
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.emplace_back(n, 1);
    return;
  }
  std::uint64_t d = pollard_rho_u64(n);
  factorize_u64_into(d, trial_bound, out);
  factorize_u64_into(n / d, trial_bound, out);
}

}  // namespace detail

inline constexpr std::uint64_t kDefaultTrialBound = 1u << 16;

/// Deterministic primality. Supported for values below 2^64.
inline bool is_prime(Nat n) {
  if (!n.fits_u64())
    throw std::domain_error("is_prime: value exceeds the supported 64-bit width");
  return detail::is_prime_u64(n.as_u64());
}

/// Prime-power decomposition of n >= 1. Deterministic; trial division up to
/// trial_bound, then Miller-Rabin / Pollard rho on what remains.
/// Supported for values below 2^64; bulk ranges should use the sieve instead.
inline Factorization factorize(Nat n, std::uint64_t trial_bound = kDefaultTrialBound) {
  if (n.is_zero()) throw std::invalid_argument("factorize: n must be >= 1");
  if (!n.fits_u64())
    throw std::domain_error("factorize: value exceeds the supported 64-bit width");
  std::vector<std::pair<std::uint64_t, unsigned>> raw;
  detail::factorize_u64_into(n.as_u64(), trial_bound, raw);
  std::sort(raw.begin(), raw.end());
  Factorization out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!out.empty() && out.back().prime == Nat(raw[i].first))
      out.back().exponent += raw[i].second;
    else
      out.push_back({Nat(raw[i].first), raw[i].second});
  }
  return out;
}

/// sigma(p^e) = (p^(e+1) - 1) / (p - 1).
inline Nat sigma_prime_power(Nat p, unsigned e) {
  return (Nat::pow(p, e + 1) - Nat(1)) / (p - Nat(1));
}

/// Sum of divisors, multiplicative over the factorization.
inline Nat sigma(const Factorization& f) {
  Nat s = 1;
  for (const auto& pp : f) s *= sigma_prime_power(pp.prime, pp.exponent);
  return s;
}

inline Nat sigma(Nat n) {
  if (n.is_zero()) throw std::invalid_argument("sigma: n must be >= 1");
  return sigma(factorize(n));
}

/// sigma(n^2) from the factorization of n. Avoids ever factoring n^2.
inline Nat sigma_of_square(const Factorization& f) {
  Nat s = 1;
  for (const auto& pp : f) s *= sigma_prime_power(pp.prime, 2 * pp.exponent);
  return s;
}

/// Number of distinct prime factors.
inline unsigned omega(const Factorization& f) {
  return static_cast<unsigned>(f.size());
}

inline unsigned omega(Nat n) {
  if (n.is_zero()) throw std::invalid_argument("omega: n must be >= 1");
  return omega(factorize(n));
}

/// Greatest common divisor; rejects gcd(0, 0).
inline Nat gcd(Nat a, Nat b) {
  if (a.is_zero() && b.is_zero())
    throw std::invalid_argument("gcd: gcd(0, 0) is undefined");
  return detail::gcd_nat(a, b);
}

/// Exponent k with n = 2^k, when n is a power of two.
inline std::optional<unsigned> as_power_of_two(Nat n) {
  if (n.is_zero()) throw std::invalid_argument("as_power_of_two: n must be >= 1");
  Nat::rep v = n.raw();
  if ((v & (v - 1)) != 0) return std::nullopt;
  unsigned k = 0;
  while ((v >>= 1) != 0) ++k;
  return k;
}

/// Abundancy index I(n) = sigma(n)/n as an exact rational.
inline ExactRatio abundancy(Nat n, Nat sigma_n) { return {sigma_n, n}; }

inline ExactRatio abundancy(Nat n) { return abundancy(n, sigma(n)); }

}  // namespace apn
