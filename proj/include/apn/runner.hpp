#pragma once

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "apn/checkpoint.hpp"
#include "apn/nat.hpp"
#include "apn/search.hpp"
#include "apn/sieve.hpp"

namespace apn {

/// Where rendered hit lines go. Resume needs the sink to rewind to the
/// exact prefix the checkpoint vouches for, discarding any partial tail.
class HitSink {
 public:
  virtual ~HitSink() = default;
  virtual void append_line(const std::string& line) = 0;
  virtual void flush() = 0;
  /// Keep only the first `lines` lines; returns them. Throws if the sink
  /// cannot rewind (e.g. a terminal) or holds fewer lines than claimed.
  virtual std::vector<std::string> truncate_to(std::uint64_t lines) = 0;
};

class StreamHitSink final : public HitSink {
 public:
  explicit StreamHitSink(std::ostream& out) : out_(out) {}
  void append_line(const std::string& line) override { out_ << line << '\n'; }
  void flush() override { out_.flush(); }
  std::vector<std::string> truncate_to(std::uint64_t) override {
    throw std::runtime_error("resume requires a regular output file, not a stream");
  }

 private:
  std::ostream& out_;
};

class FileHitSink final : public HitSink {
 public:
  explicit FileHitSink(std::filesystem::path path, bool truncate_now = true)
      : path_(std::move(path)) {
    if (truncate_now) {
      out_.open(path_, std::ios::binary | std::ios::trunc);
      ensure_open();
    }
  }

  void append_line(const std::string& line) override {
    out_ << line << '\n';
    if (!out_) throw std::runtime_error("hit file: write failed: " + path_.string());
  }

  void flush() override { out_.flush(); }

  std::vector<std::string> truncate_to(std::uint64_t lines) override {
    if (out_.is_open()) out_.close();
    std::vector<std::string> kept;
    {
      std::ifstream in(path_, std::ios::binary);
      std::string line;
      while (kept.size() < lines && std::getline(in, line)) kept.push_back(line);
      if (kept.size() < lines)
        throw std::runtime_error("hit file shorter than checkpoint claims: " + path_.string());
    }
    out_.open(path_, std::ios::binary | std::ios::trunc);
    ensure_open();
    for (const auto& l : kept) out_ << l << '\n';
    out_.flush();
    return kept;
  }

 private:
  void ensure_open() {
    if (!out_) throw std::runtime_error("hit file: cannot open " + path_.string());
  }

  std::filesystem::path path_;
  std::ofstream out_;
};

struct RunOptions {
  unsigned jobs = 1;
  std::uint64_t segment_size = std::uint64_t(1) << 20;
  std::optional<std::filesystem::path> checkpoint_path;
  bool resume = false;
  std::uint64_t max_segments = 0;  // 0 = run to completion; else stop early
};

struct RunSummary {
  TaskKind task = TaskKind::odd_square_scan;
  Nat lo;
  Nat hi;
  bool complete = false;
  std::uint64_t hits = 0;
  std::uint64_t evaluated = 0;
  // scan counters
  std::uint64_t near_misses = 0;
  std::uint64_t candidates = 0;
  std::optional<Nat> best_near_miss;
  // sequence counters
  std::uint64_t terms = 0;
  std::uint64_t odd_square_terms = 0;
  std::uint64_t odd_square_omega2_terms = 0;
};

namespace detail {

struct SegmentOutcome {
  std::vector<std::string> lines;
  ScanCounters scan;
  std::uint64_t terms = 0;
  std::uint64_t odd_square_terms = 0;
  std::uint64_t odd_square_omega2_terms = 0;
};

inline SegmentOutcome eval_task_segment(TaskKind task, std::uint64_t lo, std::uint64_t hi) {
  SegmentOutcome out;
  if (task == TaskKind::a059046) {
    a059046_segment(lo, hi, [&](const A059046Term& t) {
      ++out.terms;
      if (t.odd_square_root) {
        ++out.odd_square_terms;
        if (t.root_omega && *t.root_omega >= 2) ++out.odd_square_omega2_terms;
      }
      out.lines.push_back(render_hit(to_record(t)));
    });
    std::uint64_t first = std::max<std::uint64_t>(lo, 2);
    out.scan.evaluated = hi >= first ? hi - first + 1 : 0;
  } else {
    out.scan = scan_segment(lo, hi, [&](const CandidateVerdict& v) {
      out.lines.push_back(render_hit(to_record(v)));
    });
  }
  return out;
}

// Counters for an already-flushed prefix are rebuilt from its lines, so a
// resumed run reports exactly what an uninterrupted one would.
inline void recover_counters(TaskKind task, const std::vector<std::string>& lines,
                             RunSummary& summary) {
  for (const auto& line : lines) {
    std::size_t tab1 = line.find('\t');
    std::size_t tab2 = line.find('\t', tab1 + 1);
    if (tab1 == std::string::npos || tab2 == std::string::npos)
      throw std::runtime_error("hit file: malformed line: " + line);
    std::string_view kind(line.data(), tab1);
    Nat n = Nat::parse(line.substr(tab1 + 1, tab2 - tab1 - 1));
    if (task == TaskKind::a059046) {
      if (kind != hit_kind_name(HitKind::a059046_member))
        throw std::runtime_error("hit file: unexpected record kind: " + line);
      ++summary.terms;
      Nat root;
      if (is_perfect_square(n, root) && !(root % Nat(2)).is_zero()) {
        ++summary.odd_square_terms;
        if (omega(root) >= 2) ++summary.odd_square_omega2_terms;
      }
    } else {
      if (kind == hit_kind_name(HitKind::candidate)) {
        ++summary.candidates;
      } else if (kind == hit_kind_name(HitKind::near_miss)) {
        ++summary.near_misses;
        summary.best_near_miss = n;  // lines are in increasing order
      } else {
        throw std::runtime_error("hit file: unexpected record kind: " + line);
      }
    }
  }
}

}  // namespace detail

/// Runs one task over [lo, hi]: the range is cut into segments no longer
/// than segment_size, a pool of `jobs` workers evaluates them, and results
/// are merged strictly in range order. The checkpoint (when configured) only
/// ever describes a fully flushed prefix: hit lines are flushed before the
/// checkpoint that covers them is renamed into place, so a kill at any point
/// leaves a resumable pair of files.
inline RunSummary run_task(TaskKind task, Nat lo, Nat hi, const RunOptions& opt,
                           HitSink& sink) {
  if (lo > hi) throw std::invalid_argument("run_task: lo > hi");
  if (opt.segment_size < (std::uint64_t(1) << 10))
    throw std::invalid_argument("run_task: segment_size must be >= 1024");
  if (opt.jobs < 1) throw std::invalid_argument("run_task: jobs must be >= 1");

  RunSummary summary;
  summary.task = task;
  summary.lo = lo;
  summary.hi = hi;

  Nat next = lo;
  if (opt.resume) {
    if (!opt.checkpoint_path)
      throw std::invalid_argument("run_task: resume requires a checkpoint path");
    auto ckpt = load_checkpoint(*opt.checkpoint_path);
    if (!ckpt)
      throw std::runtime_error("run_task: no checkpoint to resume at " +
                               opt.checkpoint_path->string());
    if (ckpt->task != task || ckpt->range_lo != lo || ckpt->range_hi != hi)
      throw std::runtime_error("run_task: checkpoint does not match this task/range");
    next = ckpt->next;
    summary.hits = ckpt->hits;
    summary.evaluated = ckpt->evaluated;
    detail::recover_counters(task, sink.truncate_to(ckpt->hits), summary);
  }

  auto write_checkpoint = [&](Nat next_value) {
    if (!opt.checkpoint_path) return;
    Checkpoint c;
    c.task = task;
    c.range_lo = lo;
    c.range_hi = hi;
    c.next = next_value;
    c.hits = summary.hits;
    c.evaluated = summary.evaluated;
    c.best_near_miss = summary.best_near_miss;
    save_checkpoint(c, *opt.checkpoint_path);
  };

  if (next == hi + Nat(1)) {
    summary.complete = true;
    write_checkpoint(next);
    return summary;
  }
  // Establish a clean initial state before any work, so a kill during the
  // first segment still leaves a coherent checkpoint/output pair.
  write_checkpoint(next);

  // Segments over what remains. Segment boundaries never influence results,
  // so a resume may re-partition freely.
  Nat remaining = hi - next + Nat(1);
  Nat nparts = (remaining + Nat(opt.segment_size) - Nat(1)) / Nat(opt.segment_size);
  auto segments = partition_range(next, hi, nparts.as_u64());

  std::uint64_t to_run = segments.size();
  if (opt.max_segments != 0 && opt.max_segments < to_run) to_run = opt.max_segments;

  struct Slot {
    bool ready = false;
    detail::SegmentOutcome outcome;
    std::exception_ptr error;
  };
  std::vector<Slot> slots(to_run);
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::uint64_t> next_index{0};
  std::atomic<bool> abort{false};

  auto worker = [&]() {
    for (;;) {
      std::uint64_t i = next_index.fetch_add(1);
      if (i >= to_run || abort.load()) return;
      Slot result;
      try {
        result.outcome = detail::eval_task_segment(task, segments[i].first.as_u64(),
                                                   segments[i].second.as_u64());
      } catch (...) {
        result.error = std::current_exception();
        abort.store(true);
      }
      {
        std::lock_guard lk(mu);
        slots[i].outcome = std::move(result.outcome);
        slots[i].error = result.error;
        slots[i].ready = true;
      }
      cv.notify_all();
    }
  };

  unsigned nthreads = static_cast<unsigned>(
      std::min<std::uint64_t>(opt.jobs, to_run));
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);

  std::exception_ptr failure;
  try {
    for (std::uint64_t i = 0; i < to_run && !failure; ++i) {
      std::unique_lock lk(mu);
      cv.wait(lk, [&] { return slots[i].ready; });
      if (slots[i].error) {
        failure = slots[i].error;
        break;
      }
      detail::SegmentOutcome outcome = std::move(slots[i].outcome);
      lk.unlock();

      for (const auto& line : outcome.lines) sink.append_line(line);
      sink.flush();
      summary.hits += outcome.lines.size();
      summary.evaluated += outcome.scan.evaluated;
      summary.near_misses += outcome.scan.near_misses;
      summary.candidates += outcome.scan.candidates;
      if (outcome.scan.best_near_miss) summary.best_near_miss = outcome.scan.best_near_miss;
      summary.terms += outcome.terms;
      summary.odd_square_terms += outcome.odd_square_terms;
      summary.odd_square_omega2_terms += outcome.odd_square_omega2_terms;

      write_checkpoint(segments[i].second + Nat(1));
    }
  } catch (...) {
    failure = std::current_exception();
  }

  abort.store(failure != nullptr);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  summary.complete = (to_run == segments.size());
  return summary;
}

}  // namespace apn
