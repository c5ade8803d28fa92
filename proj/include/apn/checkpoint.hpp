#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "apn/nat.hpp"

namespace apn {

enum class TaskKind { a059046, odd_square_scan };

inline std::string_view task_name(TaskKind t) {
  return t == TaskKind::a059046 ? "a059046" : "odd-square-scan";
}

inline TaskKind parse_task(std::string_view name) {
  if (name == "a059046") return TaskKind::a059046;
  if (name == "odd-square-scan") return TaskKind::odd_square_scan;
  throw std::runtime_error("checkpoint: unknown task '" + std::string(name) + "'");
}

/// Resumable state of a range task. `next` is the first unprocessed integer;
/// everything below it has been evaluated and its hits flushed, so resuming
/// from a checkpoint reproduces the uninterrupted output byte for byte.
struct Checkpoint {
  int version = 1;
  TaskKind task = TaskKind::odd_square_scan;
  Nat range_lo;
  Nat range_hi;
  Nat next;                    // range_lo <= next <= range_hi + 1
  std::uint64_t hits = 0;      // records flushed so far
  std::uint64_t evaluated = 0; // integers that passed the enumeration filter
  std::optional<Nat> best_near_miss;

  bool complete() const { return next == range_hi + Nat(1); }
};

inline std::string serialize(const Checkpoint& c) {
  std::ostringstream out;
  out << "version=" << c.version << '\n'
      << "task=" << task_name(c.task) << '\n'
      << "range_lo=" << c.range_lo << '\n'
      << "range_hi=" << c.range_hi << '\n'
      << "next=" << c.next << '\n'
      << "hits=" << c.hits << '\n'
      << "evaluated=" << c.evaluated << '\n';
  if (c.best_near_miss) out << "best=" << *c.best_near_miss << '\n';
  return out.str();
}

inline Checkpoint parse_checkpoint(std::string_view text) {
  std::map<std::string, std::string, std::less<>> kv;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw std::runtime_error("checkpoint: malformed line '" + std::string(line) + "'");
    kv.emplace(std::string(line.substr(0, eq)), std::string(line.substr(eq + 1)));
  }
  auto need = [&](std::string_view key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end())
      throw std::runtime_error("checkpoint: missing key '" + std::string(key) + "'");
    return it->second;
  };
  Checkpoint c;
  c.version = std::stoi(need("version"));
  if (c.version != 1) throw std::runtime_error("checkpoint: unsupported version");
  c.task = parse_task(need("task"));
  c.range_lo = Nat::parse(need("range_lo"));
  c.range_hi = Nat::parse(need("range_hi"));
  c.next = Nat::parse(need("next"));
  c.hits = std::stoull(need("hits"));
  if (auto it = kv.find("evaluated"); it != kv.end()) c.evaluated = std::stoull(it->second);
  if (auto it = kv.find("best"); it != kv.end()) c.best_near_miss = Nat::parse(it->second);
  if (c.next < c.range_lo || c.next > c.range_hi + Nat(1))
    throw std::runtime_error("checkpoint: next outside [range_lo, range_hi + 1]");
  return c;
}

/// Write-new-then-rename, so an interrupted save never clobbers the old file.
inline void save_checkpoint(const Checkpoint& c, const std::filesystem::path& path) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("checkpoint: cannot open " + tmp.string());
    out << serialize(c);
    out.flush();
    if (!out) throw std::runtime_error("checkpoint: write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline std::optional<Checkpoint> load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_checkpoint(buf.str());
}

}  // namespace apn
