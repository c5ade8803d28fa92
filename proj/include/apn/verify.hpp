#pragma once

#include <cstdint>
#include <vector>

#include "apn/criteria.hpp"
#include "apn/nat.hpp"
#include "apn/sieve.hpp"

namespace apn {

/// Outcome of the exhaustive criterion-vs-definition sweep.
struct CriteriaVerification {
  std::uint64_t limit = 0;
  std::uint64_t checked = 0;
  std::uint64_t almost_perfect_mismatches = 0;
  std::uint64_t deficient_mismatches = 0;
  std::vector<std::uint64_t> mismatch_samples;      // first few offenders
  std::vector<std::uint64_t> almost_perfect_found;  // all n <= limit with sigma(n) = 2n-1

  bool clean() const {
    return almost_perfect_mismatches == 0 && deficient_mismatches == 0;
  }
};

/// For every n <= limit, checks that both abundancy-index sandwiches agree
/// with the definitions they characterize: sigma(n) = 2n - 1 for the almost
/// perfect criterion and sigma(n) < 2n for the deficiency criterion.
/// Collects every almost perfect value seen along the way.
inline CriteriaVerification verify_criteria(std::uint64_t limit,
                                            std::uint64_t segment_size = std::uint64_t(1) << 20) {
  if (limit < 1) throw std::invalid_argument("verify_criteria: limit must be >= 1");
  CriteriaVerification result;
  result.limit = limit;
  for (std::uint64_t lo = 1; lo <= limit; ) {
    std::uint64_t hi = std::min(limit, lo + segment_size - 1);
    SieveSegment seg(lo, hi);
    for (std::uint64_t n = lo; n <= hi; ++n) {
      std::uint64_t s = seg.sigma_at(n);
      ++result.checked;
      bool direct_ap = is_almost_perfect_direct(Nat(n), Nat(s));
      bool criterion_ap = is_almost_perfect_criterion(Nat(n), Nat(s));
      bool direct_def = s < 2 * n;
      bool criterion_def = is_deficient_criterion(Nat(n), Nat(s));
      if (direct_ap != criterion_ap) {
        ++result.almost_perfect_mismatches;
        if (result.mismatch_samples.size() < 16) result.mismatch_samples.push_back(n);
      }
      if (direct_def != criterion_def) {
        ++result.deficient_mismatches;
        if (result.mismatch_samples.size() < 16) result.mismatch_samples.push_back(n);
      }
      if (direct_ap) result.almost_perfect_found.push_back(n);
    }
    if (hi == limit) break;
    lo = hi + 1;
  }
  return result;
}

}  // namespace apn
