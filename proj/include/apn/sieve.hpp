#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "apn/arith.hpp"
#include "apn/nat.hpp"

namespace apn {

// Ranges above this would overflow the 64-bit divisor sums the sieve uses
// internally (sigma(n) < 16n far beyond this point).
inline constexpr std::uint64_t kSieveDomainMax = std::uint64_t(1) << 40;

// Hard cap on a single segment. Callers chunk long ranges.
inline constexpr std::uint64_t kSegmentHardCap = std::uint64_t(1) << 26;

namespace detail {

inline std::uint64_t isqrt_u64(std::uint64_t n) {
  if (n < 2) return n;
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

/// Odd-only Eratosthenes listing every prime <= bound.
inline std::vector<std::uint32_t> primes_up_to(std::uint32_t bound) {
  std::vector<std::uint32_t> primes;
  if (bound < 2) return primes;
  primes.push_back(2);
  std::vector<bool> composite((bound - 1) / 2 + 1, false);  // index i -> 2i+1
  for (std::uint64_t i = 1; 2 * i + 1 <= bound; ++i) {
    if (composite[i]) continue;
    std::uint64_t p = 2 * i + 1;
    primes.push_back(static_cast<std::uint32_t>(p));
    for (std::uint64_t j = p * p; j <= bound; j += 2 * p) composite[(j - 1) / 2] = true;
  }
  return primes;
}

}  // namespace detail

/// Dense sigma(n) for every n in one [lo, hi] block, computed by walking
/// divisor pairs (f, n/f) with f <= sqrt(hi). Matches sigma() pointwise.
class SieveSegment {
 public:
  SieveSegment(std::uint64_t lo, std::uint64_t hi) : lo_(lo), hi_(hi) {
    if (lo == 0 || lo > hi) throw std::invalid_argument("SieveSegment: need 1 <= lo <= hi");
    if (hi > kSieveDomainMax) throw std::domain_error("SieveSegment: range above 2^40");
    if (hi - lo + 1 > kSegmentHardCap) throw std::invalid_argument("SieveSegment: segment too long");
    std::uint64_t n = hi - lo + 1;
    sums_.assign(n, 0);
    std::uint64_t root = detail::isqrt_u64(hi);
    for (std::uint64_t f = 1; f <= root; ++f) {
      // first multiple of f in range with cofactor >= f
      std::uint64_t k = (lo + f - 1) / f;
      if (k < f) k = f;
      for (std::uint64_t m = k * f; m <= hi; m += f, ++k) {
        sums_[m - lo] += f;
        if (k != f) sums_[m - lo] += k;
      }
    }
  }

  std::uint64_t lo() const { return lo_; }
  std::uint64_t hi() const { return hi_; }

  std::uint64_t sigma_at(std::uint64_t n) const {
    if (n < lo_ || n > hi_) throw std::out_of_range("SieveSegment: n outside segment");
    return sums_[n - lo_];
  }

  const std::vector<std::uint64_t>& values() const { return sums_; }

 private:
  std::uint64_t lo_;
  std::uint64_t hi_;
  std::vector<std::uint64_t> sums_;
};

/// Full factorizations for every n in one [lo, hi] block: every prime
/// <= sqrt(hi) is divided out of a cofactor table, whatever survives is a
/// prime above sqrt(hi). Factor order per position is increasing.
class FactorSegment {
 public:
  FactorSegment(std::uint64_t lo, std::uint64_t hi) : lo_(lo), hi_(hi) {
    if (lo == 0 || lo > hi) throw std::invalid_argument("FactorSegment: need 1 <= lo <= hi");
    if (hi > (std::uint64_t(1) << 62)) throw std::domain_error("FactorSegment: range too large");
    if (hi - lo + 1 > kSegmentHardCap) throw std::invalid_argument("FactorSegment: segment too long");
    const std::uint64_t n = hi - lo + 1;
    cofactor_.resize(n);
    for (std::uint64_t i = 0; i < n; ++i) cofactor_[i] = lo + i;

    struct Entry {
      std::uint32_t idx;
      std::uint32_t prime;
      std::uint32_t exp;
    };
    std::vector<Entry> entries;
    auto primes = detail::primes_up_to(
        static_cast<std::uint32_t>(detail::isqrt_u64(hi)));
    for (std::uint32_t p : primes) {
      std::uint64_t first = ((lo + p - 1) / p) * p;
      for (std::uint64_t m = first; m <= hi; m += p) {
        std::uint64_t& c = cofactor_[m - lo];
        std::uint32_t e = 0;
        while (c % p == 0) {
          c /= p;
          ++e;
        }
        entries.push_back({static_cast<std::uint32_t>(m - lo), p, e});
      }
    }

    // counting sort by position keeps the increasing-prime order per slot
    std::vector<std::uint32_t> counts(n + 1, 0);
    for (const auto& e : entries) ++counts[e.idx + 1];
    for (std::uint64_t i = 0; i < n; ++i) counts[i + 1] += counts[i];
    offsets_ = counts;
    pool_.resize(entries.size());
    std::vector<std::uint32_t> cursor(counts.begin(), counts.end() - 1);
    for (const auto& e : entries) pool_[cursor[e.idx]++] = {e.prime, e.exp};
  }

  std::uint64_t lo() const { return lo_; }
  std::uint64_t hi() const { return hi_; }

  /// Calls fn(n, const Factorization&) for every n in [lo, hi] in order.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    Factorization scratch;
    for (std::uint64_t i = 0; i <= hi_ - lo_; ++i) {
      fill_factors(i, scratch);
      fn(lo_ + i, static_cast<const Factorization&>(scratch));
    }
  }

  Factorization at(std::uint64_t n) const {
    if (n < lo_ || n > hi_) throw std::out_of_range("FactorSegment: n outside segment");
    Factorization f;
    fill_factors(n - lo_, f);
    return f;
  }

 private:
  void fill_factors(std::uint64_t i, Factorization& out) const {
    out.clear();
    for (std::uint32_t j = offsets_[i]; j < offsets_[i + 1]; ++j)
      out.push_back({Nat(std::uint64_t(pool_[j].first)), pool_[j].second});
    if (cofactor_[i] > 1) out.push_back({Nat(cofactor_[i]), 1});
  }

  std::uint64_t lo_;
  std::uint64_t hi_;
  std::vector<std::uint64_t> cofactor_;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pool_;  // (prime, exp)
};

/// Convenience single-segment sigma sieve matching the module-level sigma().
inline SieveSegment sieve_sigma_segment(std::uint64_t lo, std::uint64_t hi) {
  return {lo, hi};
}

/// Splits [lo, hi] into at most `parts` contiguous, disjoint, nonempty
/// subranges covering it exactly; earlier parts get the remainder. Asking
/// for more parts than integers yields one part per integer.
inline std::vector<std::pair<Nat, Nat>> partition_range(Nat lo, Nat hi, std::uint64_t parts) {
  if (parts == 0) throw std::invalid_argument("partition_range: parts must be >= 1");
  if (lo > hi) throw std::invalid_argument("partition_range: lo > hi");
  Nat count = hi - lo + Nat(1);
  Nat nparts = Nat(parts) < count ? Nat(parts) : count;
  Nat base = count / nparts;
  Nat rem = count % nparts;
  std::vector<std::pair<Nat, Nat>> out;
  Nat start = lo;
  for (Nat i = 0; i < nparts; i += Nat(1)) {
    Nat len = base + (i < rem ? Nat(1) : Nat(0));
    Nat end = start + len - Nat(1);
    out.emplace_back(start, end);
    start = end + Nat(1);
  }
  return out;
}

}  // namespace apn
