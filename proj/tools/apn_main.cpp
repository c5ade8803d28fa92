// apn: almost-perfect-number toolkit.
//
// Subcommands:
//   inspect          print sigma/deficiency/abundancy facts for one integer
//   verify-criteria  exhaustively check the abundancy-index criteria
//   a059046          stream OEIS A059046 and optionally cross-check the
//                    published prefix
//   search           scan odd square bases for even-almost-perfect
//                    counterexamples
//
// Exit codes: 0 clean, 1 verification mismatch, 2 usage/input error,
// 3 full counterexample candidate found.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "apn/apn.hpp"

namespace {

constexpr int kExitClean = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCandidateFound = 3;

unsigned default_jobs() {
  if (const char* env = std::getenv("APN_JOBS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v >= 1 && v <= 4096) return static_cast<unsigned>(v);
    std::cerr << "warning: ignoring invalid APN_JOBS='" << env << "'\n";
  }
  return 1;
}

apn::Nat parse_nat_arg(const std::string& text, const char* what) {
  try {
    return apn::Nat::parse(text);
  } catch (const std::exception&) {
    throw CLI::ValidationError(std::string(what) + ": expected a nonnegative integer, got '" +
                               text + "'");
  }
}

void print_verdict(std::ostream& out, const apn::CandidateVerdict& v) {
  out << "candidate.b = " << v.b << '\n';
  out << "candidate.admissible = " << (v.admissible ? "true" : "false") << '\n';
  out << "candidate.sigma_b2 = " << v.sigma_b2 << '\n';
  out << "candidate.divisibility_holds = " << (v.divisibility_holds ? "true" : "false")
      << '\n';
  out << "candidate.quotient = " << (v.quotient ? apn::to_string(*v.quotient) : "-") << '\n';
  out << "candidate.r = " << (v.determined_r ? std::to_string(*v.determined_r) : "-") << '\n';
  for (const auto& check : v.bound_checks)
    out << "candidate.check." << check.name << " = " << (check.pass ? "pass" : "fail")
        << '\n';
  out << "candidate.full = " << (v.is_full_candidate ? "true" : "false") << '\n';
}

int cmd_inspect(const std::string& number) {
  apn::Nat n = parse_nat_arg(number, "inspect");
  if (n.is_zero()) throw CLI::ValidationError("inspect: n must be >= 1");
  apn::Factorization f = apn::factorize(n);
  apn::Nat sigma_n = apn::sigma(f);
  auto report = apn::deficiency_report(n, sigma_n);

  std::cout << "n = " << n << '\n';
  std::cout << "factorization = " << apn::to_string(f) << '\n';
  std::cout << "omega = " << apn::omega(f) << '\n';
  std::cout << "sigma = " << sigma_n << '\n';
  std::cout << "deficiency = " << report.deficiency_str() << '\n';
  std::cout << "abundancy = " << report.abundancy.str() << '\n';
  std::cout << "almost_perfect.direct = "
            << (apn::is_almost_perfect_direct(n, sigma_n) ? "true" : "false") << '\n';
  std::cout << "almost_perfect.criterion = "
            << (apn::is_almost_perfect_criterion(n, sigma_n) ? "true" : "false") << '\n';
  std::cout << "deficient.direct = " << (sigma_n < apn::Nat(2) * n ? "true" : "false")
            << '\n';
  std::cout << "deficient.criterion = "
            << (apn::is_deficient_criterion(n, sigma_n) ? "true" : "false") << '\n';

  apn::Nat root;
  if (n > apn::Nat(1) && apn::is_perfect_square(n, root) &&
      !(root % apn::Nat(2)).is_zero()) {
    std::cout << "odd_square_base = " << root << '\n';
    print_verdict(std::cout, apn::evaluate_candidate(root));
  }
  return kExitClean;
}

int cmd_verify_criteria(const std::string& limit_text, std::uint64_t segment_size) {
  apn::Nat limit = parse_nat_arg(limit_text, "--limit");
  if (limit.is_zero()) throw CLI::ValidationError("verify-criteria: limit must be >= 1");
  auto result = apn::verify_criteria(limit.as_u64(), segment_size);

  for (std::uint64_t n : result.mismatch_samples)
    std::cout << "MISMATCH\t" << n << '\n';
  std::cerr << "verify-criteria: checked " << result.checked << " integers up to "
            << result.limit << '\n';
  std::cerr << "verify-criteria: almost-perfect sandwich mismatches = "
            << result.almost_perfect_mismatches << '\n';
  std::cerr << "verify-criteria: deficiency sandwich mismatches = "
            << result.deficient_mismatches << '\n';
  std::cerr << "verify-criteria: " << (result.clean() ? "0 discrepancies" : "DISCREPANCIES FOUND")
            << '\n';

  std::cerr << "verify-criteria: almost perfect values found:";
  for (std::uint64_t n : result.almost_perfect_found) std::cerr << ' ' << n;
  std::cerr << '\n';
  return result.clean() ? kExitClean : kExitMismatch;
}

struct OutputTarget {
  std::unique_ptr<apn::FileHitSink> file;
  std::unique_ptr<apn::StreamHitSink> stream;
  apn::HitSink& sink() { return file ? static_cast<apn::HitSink&>(*file) : *stream; }
};

OutputTarget make_output(const std::optional<std::string>& path, bool resume) {
  OutputTarget out;
  if (path) {
    out.file = std::make_unique<apn::FileHitSink>(*path, /*truncate_now=*/!resume);
  } else {
    out.stream = std::make_unique<apn::StreamHitSink>(std::cout);
  }
  return out;
}

int cmd_a059046(const std::string& limit_text, bool verify_paper, bool bfile,
                const std::optional<std::string>& output_path,
                const std::optional<std::string>& checkpoint_path, bool resume,
                unsigned jobs, std::uint64_t segment_size) {
  apn::Nat limit = parse_nat_arg(limit_text, "--limit");
  if (limit < apn::Nat(2)) throw CLI::ValidationError("a059046: limit must be >= 2");
  if (verify_paper && limit < apn::Nat(apn::kA059046KnownPrefixLimit))
    throw CLI::ValidationError("a059046: --verify-paper needs --limit >= 211");
  if (resume && (!checkpoint_path || !output_path))
    throw CLI::ValidationError("a059046: --resume needs --checkpoint and --output");

  apn::RunOptions opt;
  opt.jobs = jobs;
  opt.segment_size = segment_size;
  opt.resume = resume;
  if (checkpoint_path) opt.checkpoint_path = *checkpoint_path;

  apn::RunSummary summary;
  if (bfile) {
    // b-file lines replace the tab-separated hit records
    class BFileSink final : public apn::HitSink {
     public:
      BFileSink(apn::HitSink& inner, std::uint64_t index) : inner_(inner), index_(index) {}
      void append_line(const std::string& line) override {
        // line is a rendered record; re-emit as "<index> <term>"
        std::size_t tab1 = line.find('\t');
        std::size_t tab2 = line.find('\t', tab1 + 1);
        inner_.append_line(std::to_string(++index_) + " " +
                           line.substr(tab1 + 1, tab2 - tab1 - 1));
      }
      void flush() override { inner_.flush(); }
      std::vector<std::string> truncate_to(std::uint64_t) override {
        throw std::runtime_error("b-file output does not support resume");
      }

     private:
      apn::HitSink& inner_;
      std::uint64_t index_;
    };
    if (resume) throw CLI::ValidationError("a059046: --bfile cannot be combined with --resume");
    OutputTarget target = make_output(output_path, false);
    BFileSink sink(target.sink(), 0);
    summary = apn::run_task(apn::TaskKind::a059046, apn::Nat(2), limit, opt, sink);
  } else {
    OutputTarget target = make_output(output_path, resume);
    summary = apn::run_task(apn::TaskKind::a059046, apn::Nat(2), limit, opt, target.sink());
  }

  std::cerr << "a059046: " << (summary.complete ? "complete" : "stopped early")
            << ", limit " << limit << ", terms " << summary.terms << ", odd squares "
            << summary.odd_square_terms << ", odd squares with omega(u)>=2: "
            << summary.odd_square_omega2_terms << '\n';

  if (verify_paper) {
    // the published reference only covers terms up to 211
    std::vector<std::uint64_t> terms;
    apn::generate_a059046(apn::kA059046KnownPrefixLimit,
                          [&](const apn::A059046Term& t) { terms.push_back(t.n); });
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < apn::kA059046KnownPrefix.size(); ++i) {
      if (i >= terms.size() || terms[i] != apn::kA059046KnownPrefix[i]) {
        ++mismatches;
        std::cerr << "a059046: prefix mismatch at index " << i + 1 << '\n';
      }
    }
    if (terms.size() != apn::kA059046KnownPrefix.size()) {
      ++mismatches;
      std::cerr << "a059046: expected " << apn::kA059046KnownPrefix.size()
                << " terms up to " << apn::kA059046KnownPrefixLimit << ", generated "
                << terms.size() << '\n';
    }
    if (mismatches != 0) {
      std::cerr << "a059046: published-prefix verification FAILED\n";
      return kExitMismatch;
    }
    std::cerr << "a059046: first " << apn::kA059046KnownPrefix.size()
              << " terms match the published sequence\n";
  }
  return kExitClean;
}

int cmd_search(const std::string& lo_text, const std::string& hi_text,
               const std::optional<std::string>& output_path,
               const std::optional<std::string>& checkpoint_path, bool resume,
               unsigned jobs, std::uint64_t segment_size, std::uint64_t stop_after) {
  apn::Nat lo_raw = parse_nat_arg(lo_text, "--u-min");
  apn::Nat hi = parse_nat_arg(hi_text, "--u-max");
  if (!lo_raw.fits_u64() || !hi.fits_u64())
    throw CLI::ValidationError("search: range exceeds the supported width");
  std::uint64_t lo = apn::normalize_scan_lo(lo_raw.as_u64());
  if (lo != lo_raw.as_u64())
    std::cerr << "search: u-min adjusted to " << lo << " (wheel normalization)\n";
  if (apn::Nat(lo) > hi) throw CLI::ValidationError("search: empty range after normalization");
  if (resume && (!checkpoint_path || !output_path))
    throw CLI::ValidationError("search: --resume needs --checkpoint and --output");

  apn::RunOptions opt;
  opt.jobs = jobs;
  opt.segment_size = segment_size;
  opt.resume = resume;
  opt.max_segments = stop_after;
  if (checkpoint_path) opt.checkpoint_path = *checkpoint_path;

  OutputTarget target = make_output(output_path, resume);
  apn::RunSummary summary = apn::run_task(apn::TaskKind::odd_square_scan, apn::Nat(lo), hi,
                                          opt, target.sink());

  std::cerr << "search: " << (summary.complete ? "complete" : "stopped early, resumable")
            << ", range [" << lo << ", " << hi << "]\n";
  std::cerr << "search: evaluated " << summary.evaluated << ", near misses "
            << summary.near_misses << ", full candidates " << summary.candidates << '\n';
  if (summary.best_near_miss)
    std::cerr << "search: largest near miss " << *summary.best_near_miss << '\n';
  if (summary.candidates != 0) {
    std::cerr << "search: FULL CANDIDATE FOUND -- check the hit stream\n";
    return kExitCandidateFound;
  }
  return kExitClean;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"almost-perfect-number toolkit: criteria, A059046, odd-square scan"};
  app.require_subcommand(1);

  // inspect
  std::string inspect_n;
  auto* inspect = app.add_subcommand("inspect", "report sigma/deficiency facts for one n");
  inspect->add_option("n", inspect_n, "integer to inspect (>= 1)")->required();

  // verify-criteria
  std::string verify_limit;
  std::uint64_t verify_segment = std::uint64_t(1) << 20;
  auto* verify = app.add_subcommand("verify-criteria",
                                    "check both abundancy criteria against definitions");
  verify->add_option("--limit", verify_limit, "verify all n <= limit")->required();
  verify->add_option("--segment-size", verify_segment, "sieve segment length")
      ->check(CLI::Range(std::uint64_t(1024), std::uint64_t(1) << 26));

  // a059046
  std::string seq_limit;
  bool seq_verify = false, seq_bfile = false, seq_resume = false;
  std::optional<std::string> seq_output, seq_checkpoint;
  unsigned seq_jobs = default_jobs();
  std::uint64_t seq_segment = std::uint64_t(1) << 20;
  auto* seq = app.add_subcommand("a059046", "generate the sequence up to a limit");
  seq->add_option("--limit", seq_limit, "largest n to test")->required();
  seq->add_flag("--verify-paper", seq_verify, "compare the first 62 terms to the published list");
  seq->add_flag("--bfile", seq_bfile, "emit OEIS b-file lines instead of hit records");
  seq->add_option("--output,-o", seq_output, "write records to this file (default stdout)");
  seq->add_option("--checkpoint", seq_checkpoint, "checkpoint file path");
  seq->add_flag("--resume", seq_resume, "resume from the checkpoint");
  seq->add_option("--jobs,-j", seq_jobs, "worker threads")->check(CLI::Range(1u, 4096u));
  seq->add_option("--segment-size", seq_segment, "sieve segment length")
      ->check(CLI::Range(std::uint64_t(1024), std::uint64_t(1) << 26));

  // search
  std::string search_lo, search_hi;
  bool search_resume = false;
  std::optional<std::string> search_output, search_checkpoint;
  unsigned search_jobs = default_jobs();
  std::uint64_t search_segment = std::uint64_t(1) << 20;
  std::uint64_t search_stop_after = 0;
  auto* search = app.add_subcommand("search", "scan odd square bases u^2 for counterexamples");
  search->add_option("--u-min", search_lo, "first base u")->required();
  search->add_option("--u-max", search_hi, "last base u")->required();
  search->add_option("--output,-o", search_output, "write hit records to this file");
  search->add_option("--checkpoint", search_checkpoint, "checkpoint file path");
  search->add_flag("--resume", search_resume, "resume from the checkpoint");
  search->add_option("--jobs,-j", search_jobs, "worker threads")->check(CLI::Range(1u, 4096u));
  search->add_option("--segment-size", search_segment, "scan segment length")
      ->check(CLI::Range(std::uint64_t(1024), std::uint64_t(1) << 26));
  search->add_option("--stop-after-segments", search_stop_after,
                     "checkpoint and stop after this many segments (0 = run to completion)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitClean : kExitUsage;
  }

  try {
    if (*inspect) return cmd_inspect(inspect_n);
    if (*verify) return cmd_verify_criteria(verify_limit, verify_segment);
    if (*seq)
      return cmd_a059046(seq_limit, seq_verify, seq_bfile, seq_output, seq_checkpoint,
                         seq_resume, seq_jobs, seq_segment);
    if (*search)
      return cmd_search(search_lo, search_hi, search_output, search_checkpoint,
                        search_resume, search_jobs, search_segment, search_stop_after);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
