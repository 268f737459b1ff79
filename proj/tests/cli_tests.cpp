// End-to-end checks of the command-line binary through a shell.  argv[1] is
// the path to the binary; everything runs inside a scratch directory under
// the system temp path.  Each case checks the exit code and greps output
// files for pinned substrings.  Exit code: number of failed cases.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int g_failures = 0;

int run(const std::string& cmd) {
  int rc = std::system(cmd.c_str());
  if (rc == -1) return -1;
  if (WIFEXITED(rc)) return WEXITSTATUS(rc);
  return -1;
}

void expect(bool ok, const std::string& what) {
  std::printf("%s: %s\n", ok ? "ok" : "FAIL", what.c_str());
  if (!ok) ++g_failures;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

std::size_t count_lines(const std::string& text) {
  std::size_t lines = 0;
  for (char ch : text) lines += ch == '\n' ? 1 : 0;
  return lines;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: cli_tests <path-to-binary>\n");
    return 2;
  }
  const std::string bin = argv[1];
  const fs::path dir = fs::temp_directory_path() / "contexture_cli_tests";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string d = dir.string();

  // --- family report: the N = 2 member, with pinned search node count.
  expect(run(bin + " family --N 2 > " + d + "/family2.json") == 0,
         "family --N 2 exits 0");
  std::string family2 = slurp(dir / "family2.json");
  expect(contains(family2, "\"strongly_contextual\": true"),
         "family report says strongly contextual");
  expect(contains(family2, "\"nodes_explored\": 78"),
         "family search explored 78 nodes");
  expect(contains(family2, "\"cf\": 1.0"), "family cf is 1");

  // Odd N is a usage error.
  expect(run(bin + " family --N 3 2> " + d + "/family3.err") == 2,
         "family --N 3 exits 2");

  // --- gen-model + check on a GHZ model: strongly contextual, cf 1.
  expect(run(bin + " gen-model --family ghz --n 3 --sites 'X,Y;X,Y;X,Y'"
                   " --out " + d + "/ghz.model.json > /dev/null") == 0,
         "gen-model ghz exits 0");
  expect(run(bin + " check " + d + "/ghz.model.json > " + d +
             "/ghz.report.json") == 0,
         "check ghz model exits 0");
  std::string ghz_report = slurp(dir / "ghz.report.json");
  expect(contains(ghz_report, "\"strongly_contextual\": true"),
         "ghz check reports strong contextuality");
  expect(contains(ghz_report, "\"cf\": 1.0"), "ghz cf is 1");

  // --- gen-model + check on the Bell-optimal model: cf = sqrt(2) - 1.
  expect(run(bin + " gen-model --family bipartite --delta 0.7853981633974483"
                   " --sites 'X,Y;(1.5707963267948966,0.7853981633974483),"
                   "(1.5707963267948966,-0.7853981633974483)'"
                   " --out " + d + "/bell.model.json > /dev/null") == 0,
         "gen-model bipartite exits 0");
  expect(run(bin + " check " + d + "/bell.model.json > " + d +
             "/bell.report.json") == 0,
         "check bell model exits 0");
  std::string bell_report = slurp(dir / "bell.report.json");
  expect(contains(bell_report, "\"strongly_contextual\": false"),
         "bell check reports not strongly contextual");
  expect(contains(bell_report, "0.414213562373"),
         "bell cf rounds to sqrt(2)-1");

  // --- malformed input is a usage error, not a crash.
  {
    std::ofstream bad(dir / "bad.json");
    bad << "{ this is not json";
  }
  expect(run(bin + " check " + d + "/bad.json 2> " + d + "/bad.err") == 2,
         "check on malformed json exits 2");

  // Site count must match the state's qubit count.
  expect(run(bin + " gen-model --family ghz --n 3 --sites 'X;X' --out " + d +
             "/mismatch.json 2> /dev/null") == 2,
         "gen-model with wrong site count exits 2");

  // --- verify-theorem: each property check exits 0 when the property holds.
  expect(run(bin + " verify-theorem --theorem bipartite --delta 0.4"
                   " --grid 6 > /dev/null") == 0,
         "verify-theorem bipartite exits 0");
  expect(run(bin + " verify-theorem --theorem w --a 0.2 --b 0.3 --c 0.4"
                   " --grid 6 > /dev/null") == 0,
         "verify-theorem w exits 0");
  expect(run(bin + " verify-theorem --theorem ghz-n --n 3 --grid 5"
                   " > /dev/null") == 0,
         "verify-theorem ghz-n exits 0");
  expect(run(bin + " verify-theorem --theorem balanced --samples 5"
                   " --seed 1 > /dev/null") == 0,
         "verify-theorem balanced (sampled) exits 0");
  expect(run(bin + " verify-theorem --theorem prop-lambda"
                   " --lambda 0.6,0.6,0.6 --grid 8 > /dev/null") == 0,
         "verify-theorem prop-lambda exits 0");

  // The balanced point itself violates the no-cancellation property: exit 1.
  expect(run(bin + " verify-theorem --theorem balanced"
                   " --delta 0.7853981633974483 --lambda 0,0,0 --Phi 0"
                   " > " + d + "/balanced.json") == 1,
         "verify-theorem balanced at delta=pi/4 exits 1");

  // An angle-sum below the threshold is a usage error for prop-lambda.
  expect(run(bin + " verify-theorem --theorem prop-lambda"
                   " --lambda 0.1,0.1,0.1 2> /dev/null") == 2,
         "verify-theorem prop-lambda with small angles exits 2");

  // --- entropy-curve CSV shape.
  expect(run(bin + " entropy-curve --samples 5 --out " + d + "/curve.csv"
                   " > /dev/null") == 0,
         "entropy-curve exits 0");
  std::string curve = slurp(dir / "curve.csv");
  expect(count_lines(curve) == 6, "curve has header + 5 rows");
  expect(contains(curve, "lambda,entropy_bits"), "curve has the CSV header");
  expect(contains(curve, "0,1"), "curve starts at one bit");

  // --- bare invocation and help.
  expect(run(bin + " 2> /dev/null") == 2, "no subcommand exits 2");
  expect(run(bin + " --help > /dev/null") == 0, "--help exits 0");

  if (g_failures == 0) {
    std::printf("all cli cases passed\n");
  } else {
    std::printf("%d cli cases FAILED\n", g_failures);
  }
  return g_failures;
}
