// End-to-end checks of the command-line contract: exit codes, record
// formats, normalization notes. Needs the binary path in APN_CLI (ctest
// sets it); cases no-op with a warning when run without it.

#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string shell_quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) {
    if (c == '\'')
      q += "'\\''";
    else
      q += c;
  }
  q += "'";
  return q;
}

const char* cli_path() {
  const char* p = std::getenv("APN_CLI");
  return (p && *p) ? p : nullptr;
}

fs::path scratch_dir() {
  fs::path p = fs::temp_directory_path() / ("apn-cli-test-" + std::to_string(::getpid()));
  fs::create_directories(p);
  return p;
}

CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  static fs::path dir = scratch_dir();
  fs::path out = dir / "out.tmp";
  fs::path err = dir / "err.tmp";
  std::string cmd = env_prefix + shell_quote(cli_path()) + " " + args + " > " +
                    shell_quote(out.string()) + " 2> " + shell_quote(err.string());
  int status = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

#define REQUIRE_CLI()                                             \
  if (!cli_path()) {                                              \
    MESSAGE("APN_CLI not set; skipping CLI contract test");       \
    return;                                                       \
  }

}  // namespace

TEST_CASE("cli: usage errors exit with code 2") {
  REQUIRE_CLI();
  CHECK(run_cli("inspect 0").exit_code == 2);
  CHECK(run_cli("inspect notanumber").exit_code == 2);
  CHECK(run_cli("inspect").exit_code == 2);
  CHECK(run_cli("verify-criteria --limit 0").exit_code == 2);
  CHECK(run_cli("a059046 --limit 1").exit_code == 2);
  CHECK(run_cli("a059046 --limit 210 --verify-paper").exit_code == 2);
  CHECK(run_cli("search --u-min 50 --u-max 40").exit_code == 2);
  CHECK(run_cli("search --u-min 35 --u-max 99 --resume").exit_code == 2);
  CHECK(run_cli("bogus-subcommand").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
  // value beyond the supported factorization width
  CHECK(run_cli("inspect 18446744073709551616").exit_code == 2);
}

TEST_CASE("cli: inspect is exact and machine-friendly") {
  REQUIRE_CLI();
  CliResult r = run_cli("inspect 16");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("almost_perfect.direct = true") != std::string::npos);
  CHECK(r.out.find("almost_perfect.criterion = true") != std::string::npos);
  CHECK(r.out.find("abundancy = 31/16") != std::string::npos);

  // abundant: deficiency rendered as a negative exact integer
  CliResult ab = run_cli("inspect 12");
  CHECK(ab.out.find("deficiency = -4") != std::string::npos);

  CliResult sq = run_cli("inspect 1225");
  CHECK(sq.out.find("odd_square_base = 35") != std::string::npos);
  CHECK(sq.out.find("candidate.divisibility_holds = false") != std::string::npos);
}

TEST_CASE("cli: verify-criteria smallest run") {
  REQUIRE_CLI();
  CliResult r = run_cli("verify-criteria --limit 1");
  CHECK(r.exit_code == 0);
  CHECK(r.err.find("checked 1 integers") != std::string::npos);
  CHECK(r.err.find("0 discrepancies") != std::string::npos);
}

TEST_CASE("cli: a059046 term stream basics") {
  REQUIRE_CLI();
  CliResult two = run_cli("a059046 --limit 2");
  CHECK(two.exit_code == 0);
  CHECK(two.out == "A059046\t2\t3\t1\t-\t-\n");

  // byte-identical across invocations
  CliResult a = run_cli("a059046 --limit 211");
  CliResult b = run_cli("a059046 --limit 211");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("A059046\t211\t") != std::string::npos);
}

TEST_CASE("cli: a059046 b-file export") {
  REQUIRE_CLI();
  CliResult r = run_cli("a059046 --limit 211 --bfile");
  CHECK(r.exit_code == 0);
  CHECK(r.out.substr(0, 8) == "1 2\n2 3\n");
  // last line is "62 211"
  auto pos = r.out.rfind("62 211\n");
  CHECK(pos != std::string::npos);
  CHECK(pos + 7 == r.out.size());
}

TEST_CASE("cli: search normalizes u-min onto the wheel and reports it") {
  REQUIRE_CLI();
  CliResult r = run_cli("search --u-min 36 --u-max 5000");
  CHECK(r.exit_code == 0);
  CHECK(r.err.find("u-min adjusted to 37 (wheel normalization)") != std::string::npos);
  CHECK(r.err.find("full candidates 0") != std::string::npos);
}

TEST_CASE("cli: candidate in the hit stream drives exit code 3") {
  REQUIRE_CLI();
  // A hand-made checkpoint/hit pair standing in for the discovery event:
  // resuming a completed range recovers the CANDIDATE record and the scan
  // must report it through its exit code.
  fs::path dir = scratch_dir();
  fs::path hits = dir / "candidate-hits.txt";
  fs::path ckpt = dir / "candidate.ckpt";
  {
    std::ofstream h(hits, std::ios::binary | std::ios::trunc);
    h << "CANDIDATE\t99\t1234\t7\t2\t-\n";
    std::ofstream c(ckpt, std::ios::binary | std::ios::trunc);
    c << "version=1\ntask=odd-square-scan\nrange_lo=35\nrange_hi=99\nnext=100\n"
         "hits=1\nevaluated=20\n";
  }
  CliResult r = run_cli("search --u-min 35 --u-max 99 --resume --checkpoint " +
                        shell_quote(ckpt.string()) + " --output " +
                        shell_quote(hits.string()));
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("FULL CANDIDATE FOUND") != std::string::npos);
}

TEST_CASE("cli: APN_JOBS env var sets the default worker count") {
  REQUIRE_CLI();
  CliResult good = run_cli("search --u-min 35 --u-max 5000", "APN_JOBS=3 ");
  CHECK(good.exit_code == 0);
  CliResult bad = run_cli("search --u-min 35 --u-max 5000", "APN_JOBS=banana ");
  CHECK(bad.exit_code == 0);
  CHECK(bad.err.find("ignoring invalid APN_JOBS") != std::string::npos);
}

TEST_CASE("cli: human summary on stderr, records on stdout") {
  REQUIRE_CLI();
  CliResult r = run_cli("search --u-min 35 --u-max 2000");
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());  // no divisibility hits down here
  CHECK(r.err.find("evaluated") != std::string::npos);
}
