#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "apn/arith.hpp"
#include "apn/nat.hpp"
#include "apn/pipeline.hpp"
#include "apn/sieve.hpp"

namespace apn {

// First 62 terms of OEIS A059046 (n such that sigma(n) - n divides n - 1),
// used by the --verify-paper cross-check.
inline constexpr std::array<std::uint32_t, 62> kA059046KnownPrefix = {
    2,   3,   4,   5,   7,   8,   9,   11,  13,  16,  17,  19,  23,
    25,  27,  29,  31,  32,  37,  41,  43,  47,  49,  53,  59,  61,
    64,  67,  71,  73,  77,  79,  81,  83,  89,  97,  101, 103, 107,
    109, 113, 121, 125, 127, 128, 131, 137, 139, 149, 151, 157, 163,
    167, 169, 173, 179, 181, 191, 193, 197, 199, 211};

inline constexpr std::uint32_t kA059046KnownPrefixLimit = 211;

enum class HitKind { a059046_member, near_miss, candidate };

inline std::string_view hit_kind_name(HitKind k) {
  switch (k) {
    case HitKind::a059046_member: return "A059046";
    case HitKind::near_miss: return "NEARMISS";
    case HitKind::candidate: return "CANDIDATE";
  }
  return "?";
}

/// One line of the hit stream. For scan kinds `n` is the odd base b and
/// `sigma_n` is sigma(b^2); for membership rows they are n and sigma(n).
struct HitRecord {
  HitKind kind = HitKind::a059046_member;
  Nat n;
  Nat sigma_n;
  std::optional<Nat> quotient;
  std::optional<unsigned> r;
  std::vector<std::string_view> failed_checks;
};

/// Tab-separated, dash for absent fields:
///   kind  n  sigma  quotient-or-dash  r-or-dash  failed-checks-csv-or-dash
inline std::string render_hit(const HitRecord& h) {
  std::string line;
  line += hit_kind_name(h.kind);
  line += '\t';
  line += to_string(h.n);
  line += '\t';
  line += to_string(h.sigma_n);
  line += '\t';
  line += h.quotient ? to_string(*h.quotient) : "-";
  line += '\t';
  line += h.r ? std::to_string(*h.r) : "-";
  line += '\t';
  if (h.failed_checks.empty()) {
    line += '-';
  } else {
    for (std::size_t i = 0; i < h.failed_checks.size(); ++i) {
      if (i != 0) line += ',';
      line += h.failed_checks[i];
    }
  }
  return line;
}

// ---------------------------------------------------------------------------
// A059046 generation

/// One sequence member n in [2, limit] with (sigma(n) - n) | (n - 1).
struct A059046Term {
  std::uint64_t n = 0;
  std::uint64_t sigma_n = 0;
  std::uint64_t quotient = 0;               // (n - 1)/(sigma(n) - n)
  std::uint64_t ordinal = 0;                // 0-based position in the stream
  std::optional<std::uint64_t> odd_square_root;  // u when n = u^2, u odd
  std::optional<unsigned> root_omega;            // omega(u) for such terms
};

inline HitRecord to_record(const A059046Term& t) {
  HitRecord h;
  h.kind = HitKind::a059046_member;
  h.n = Nat(t.n);
  h.sigma_n = Nat(t.sigma_n);
  h.quotient = Nat(t.quotient);
  h.r = detail::r_from_quotient(Nat(t.quotient));
  return h;
}

/// Walks one sieved block and reports each member to `fn`.
template <typename Fn>
void a059046_segment(std::uint64_t lo, std::uint64_t hi, Fn&& fn) {
  SieveSegment seg(lo, hi);
  for (std::uint64_t n = std::max<std::uint64_t>(lo, 2); n <= hi; ++n) {
    std::uint64_t s = seg.sigma_at(n);
    std::uint64_t d = s - n;  // >= 1 for n >= 2
    if ((n - 1) % d != 0) continue;
    A059046Term t;
    t.n = n;
    t.sigma_n = s;
    t.quotient = (n - 1) / d;
    Nat root;
    if (is_perfect_square(Nat(n), root) && !(root % Nat(2)).is_zero()) {
      t.odd_square_root = root.as_u64();
      t.root_omega = omega(root);
    }
    fn(t);
  }
}

/// Streams every member of the sequence in [2, limit] in increasing order,
/// with ordinals attached. n = 1 is excluded: sigma(1) - 1 = 0 and the
/// defining quotient does not exist, matching the published sequence which
/// starts at 2.
template <typename Fn>
void generate_a059046(std::uint64_t limit, Fn&& fn,
                      std::uint64_t segment_size = std::uint64_t(1) << 20) {
  if (limit < 2) throw std::invalid_argument("generate_a059046: limit must be >= 2");
  if (segment_size == 0) throw std::invalid_argument("generate_a059046: zero segment");
  std::uint64_t emitted = 0;
  for (std::uint64_t lo = 2; lo <= limit; ) {
    std::uint64_t hi = std::min(limit, lo + segment_size - 1);
    a059046_segment(lo, hi, [&](const A059046Term& t) {
      A059046Term numbered = t;
      numbered.ordinal = emitted++;
      fn(numbered);
    });
    lo = hi + 1;
  }
}

// ---------------------------------------------------------------------------
// Odd-square scan

/// A base u whose divisibility constraint held, plus everything else the
/// gauntlet determined about it.
struct ScanHit {
  Nat u;
  CandidateVerdict verdict;
  std::uint64_t emitted_at = 0;  // ordinal within the merged hit stream
};

struct ScanCounters {
  std::uint64_t evaluated = 0;    // wheel-admissible u actually examined
  std::uint64_t near_misses = 0;  // divisibility held, candidacy failed later
  std::uint64_t candidates = 0;   // full candidates (headline event)
  std::optional<Nat> best_near_miss;  // largest near-miss base so far

  void absorb(const ScanCounters& o) {
    evaluated += o.evaluated;
    near_misses += o.near_misses;
    candidates += o.candidates;
    if (o.best_near_miss &&
        (!best_near_miss || *best_near_miss < *o.best_near_miss))
      best_near_miss = o.best_near_miss;
  }
};

/// First enumerable base at or after `lo`: odd, coprime to 3, at least 35.
inline std::uint64_t normalize_scan_lo(std::uint64_t lo) {
  std::uint64_t u = std::max<std::uint64_t>(lo, 35);
  if (u % 2 == 0) ++u;
  while (u % 3 == 0) u += 2;
  return u;
}

inline HitRecord to_record(const CandidateVerdict& v) {
  HitRecord h;
  h.kind = v.is_full_candidate ? HitKind::candidate : HitKind::near_miss;
  h.n = v.b;
  h.sigma_n = v.sigma_b2;
  h.quotient = v.quotient;
  h.r = v.determined_r;
  h.failed_checks = v.failed_checks();
  return h;
}

/// Scans one block of bases: odd u coprime to 3 with omega(u) >= 2, each run
/// through the full gauntlet. `fn` fires only for divisibility hits, in
/// increasing order of u. The 7-exclusion for r > 1 is applied inside the
/// bound checks rather than here, since r is unknown until sigma(b^2) exists.
template <typename Fn>
ScanCounters scan_segment(std::uint64_t lo, std::uint64_t hi, Fn&& fn) {
  ScanCounters counters;
  if (hi < 35) return counters;
  std::uint64_t start = normalize_scan_lo(lo);
  if (start > hi) return counters;
  FactorSegment seg(start, hi);
  seg.for_each([&](std::uint64_t u, const Factorization& f) {
    if (u % 2 == 0 || u % 3 == 0) return;
    if (omega(f) < 2) return;
    ++counters.evaluated;
    CandidateVerdict v = evaluate_candidate(f, Nat(u));
    if (!v.divisibility_holds) return;
    if (v.is_full_candidate) {
      ++counters.candidates;
    } else {
      ++counters.near_misses;
      counters.best_near_miss = Nat(u);
    }
    fn(v);
  });
  return counters;
}

/// Single-threaded whole-range scan; fn(const ScanHit&) fires per
/// divisibility hit, in increasing u order with stream ordinals attached.
/// The parallel driver in runner.hpp provides the checkpointed, partitioned
/// version of the same stream.
template <typename Fn>
ScanCounters scan_odd_squares(std::uint64_t u_lo, std::uint64_t u_hi, Fn&& fn,
                              std::uint64_t segment_size = std::uint64_t(1) << 20) {
  if (u_lo > u_hi) throw std::invalid_argument("scan_odd_squares: u_lo > u_hi");
  if (segment_size == 0) throw std::invalid_argument("scan_odd_squares: zero segment");
  ScanCounters counters;
  std::uint64_t emitted = 0;
  auto deliver = [&](const CandidateVerdict& v) {
    ScanHit hit;
    hit.u = v.b;
    hit.verdict = v;
    hit.emitted_at = emitted++;
    fn(hit);
  };
  for (std::uint64_t lo = u_lo; lo <= u_hi; ) {
    std::uint64_t hi = std::min(u_hi, lo + segment_size - 1);
    counters.absorb(scan_segment(lo, hi, deliver));
    if (hi == u_hi) break;
    lo = hi + 1;
  }
  return counters;
}

}  // namespace apn
