#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

namespace {

// Binary under test: ASMTW_CLI env override, else ./asmtw (ctest runs in
// the build directory).
std::string cli_path() {
  const char* env = std::getenv("ASMTW_CLI");
  return env ? env : "./asmtw";
}

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  RunResult r;
  std::string cmd = cli_path() + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

}  // namespace

TEST_CASE("cli: count emits the ASM number") {
  auto r = run("count --n 7");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out == "218348\n");
}

TEST_CASE("cli: gap emits the exact rational") {
  auto r = run("gap --n 2 --s 2");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.find("\"gap\":\"1/7\"") != std::string::npos);
  auto r1 = run("gap --n 2 --s 1");
  REQUIRE(r1.out.find("\"gap\":\"5/7\"") != std::string::npos);
}

TEST_CASE("cli: law emits the exact max-T table") {
  auto r = run("law --n 2");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.find("\"1/7\"") != std::string::npos);
  REQUIRE(r.out.find("\"4/7\"") != std::string::npos);
  REQUIRE(r.out.find("\"2/7\"") != std::string::npos);
  auto rc = run("law --n 2 --format csv");
  REQUIRE(rc.exit_code == 0);
  REQUIRE(rc.out.find("t,probability") != std::string::npos);
}

TEST_CASE("cli: tw-goe approaches 1 at large s") {
  auto r = run("tw-goe --s 8");
  REQUIRE(r.exit_code == 0);
  auto pos = r.out.find("\"value\":");
  REQUIRE(pos != std::string::npos);
  double v = std::atof(r.out.c_str() + pos + 8);
  REQUIRE(std::abs(v - 1.0) < 1e-6);
}

TEST_CASE("cli: tw-goe-table emits the requested rows") {
  auto r = run("tw-goe-table --from 0 --to 1 --step 0.5 --nodes 12");
  REQUIRE(r.exit_code == 0);
  REQUIRE(count_lines(r.out) == 5);  // comment + header + 3 rows
  REQUIRE(r.out.find("s,value,error") != std::string::npos);
}

TEST_CASE("cli: enumerate streams NDJSON") {
  auto r = run("enumerate --n 3 --what asm");
  REQUIRE(r.exit_code == 0);
  REQUIRE(count_lines(r.out) == 7);
  auto g = run("enumerate --n 3 --what gog");
  REQUIRE(count_lines(g.out) == 42);
}

TEST_CASE("cli: biject round-trips an ASM from stdin") {
  std::string cmd = "printf '{\"n\":3,\"entries\":[0,1,0,1,-1,1,0,1,0]}' | " +
                    cli_path() + " biject 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), got);
  REQUIRE(WEXITSTATUS(pclose(p)) == 0);
  REQUIRE(out.find("\"x_gog\":") != std::string::npos);
  REQUIRE(out.find("\"pcsm\"") != std::string::npos);
  REQUIRE(out.find("\"top_path\"") != std::string::npos);
}

TEST_CASE("cli: kasteleyn-check reports the Pfaffian") {
  auto r = run("kasteleyn-check --n 2");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.find("\"pfaffian\":\"-7/1\"") != std::string::npos);
  REQUIRE(r.out.find("\"pfaffian_matches_count\":true") != std::string::npos);
  REQUIRE(r.out.find("\"inverse_exact\":true") != std::string::npos);
}

TEST_CASE("cli: saddle report carries both saddle points") {
  auto r = run("saddle --a 0.2");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.find("\"w_plus\"") != std::string::npos);
  REQUIRE(r.out.find("\"exponent\"") != std::string::npos);
}

TEST_CASE("cli: limit-shape emits the curve CSV") {
  auto r = run("limit-shape --points 5");
  REQUIRE(r.exit_code == 0);
  REQUIRE(count_lines(r.out) == 7);  // comment + header + 5 points
}

TEST_CASE("cli: sample output is deterministic given the seed") {
  std::string args = "sample --n 5 --count 3 --sweeps 10 --seed 42";
  auto a = run(args);
  auto b = run(args);
  REQUIRE(a.exit_code == 0);
  REQUIRE(a.out == b.out);
  REQUIRE(count_lines(a.out) == 3);
  auto c = run(args + " --stats");
  REQUIRE(c.out.find("\"max_t\":") != std::string::npos);
  auto d = run("sample --n 5 --count 3 --sweeps 10 --seed 43");
  REQUIRE(d.out != a.out);
}

TEST_CASE("cli: max-law reports a KS statistic") {
  auto r = run("max-law --n 4 --count 40 --sweeps 2 --seed 9");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.out.find("\"ks_to_f1\":") != std::string::npos);
  auto r2 = run("max-law --n 4 --count 40 --sweeps 2 --seed 9");
  REQUIRE(r2.out == r.out);
}

TEST_CASE("cli: usage errors exit with status 2") {
  REQUIRE(run("no-such-command").exit_code == 2);
  REQUIRE(run("count").exit_code == 2);          // missing --n
  REQUIRE(run("count --n 0").exit_code == 2);    // invalid value
  REQUIRE(run("enumerate --n 3 --what nope").exit_code == 2);
  REQUIRE(run("converge --i 5 --j 1 --nmax 100").exit_code == 2);
  REQUIRE(run("--help").exit_code == 0);
}
