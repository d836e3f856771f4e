#include "illume/randomized.hpp"

#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out.good());
  out << text;
}

std::string temp_path(const std::string& tag) {
  static int counter = 0;
  return (fs::temp_directory_path() /
          ("illume_cli_" + std::to_string(::getpid()) + "_" + tag + "_" +
           std::to_string(counter++)))
      .string();
}

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const char* exe = std::getenv("ILLUME_CLI");
  REQUIRE_MESSAGE(exe != nullptr, "ILLUME_CLI must point at the built tool");
  const std::string capture = temp_path("cap");
  const std::string cmd = "'" + std::string(exe) + "' " + args + " >'" + capture + "' 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(capture);
  fs::remove(capture);
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("cli norm prints the exact gauge") {
  RunResult r = run_cli("norm --body 'ell1:3' --x '1/4 -1/8 1/8'");
  CHECK(r.code == 0);
  CHECK(r.out == "1/2\n");
  RunResult lp = run_cli("norm --body 'lp(2):3' --x '3 4 0'");
  CHECK(lp.code == 0);
  CHECK(lp.out == "5\n");
}

TEST_CASE("cli distance reports the strategy line") {
  RunResult r = run_cli("distance --body 'cube_cap_l1(2):3'");
  CHECK(r.code == 0);
  CHECK(r.out == "distance=3/2 strategy=NearT1 pair_condition=false is_cube=false\n");
  RunResult c = run_cli("distance --body 'cube:4'");
  CHECK(c.code == 0);
  CHECK(contains(c.out, "distance=1 strategy=Cube"));
  CHECK(contains(c.out, "is_cube=true"));
}

TEST_CASE("cli vertices writes a counted file") {
  const std::string path = temp_path("verts");
  RunResult r = run_cli("vertices --body 'topk(2):3' --out '" + path + "'");
  CHECK(r.code == 0);
  CHECK(r.out == "vertices=14\n");
  const std::string text = slurp(path);
  CHECK(text.rfind("# vertices: n=3 count=14\n", 0) == 0);
  fs::remove(path);
  RunResult direct = run_cli("vertices --body 'ell1:3'");
  CHECK(direct.code == 0);
  CHECK(contains(direct.out, "# vertices: n=3 count=6"));
}

TEST_CASE("cli illuminate certifies and reports uncovered points") {
  RunResult ok = run_cli("illuminate --body 'cube_cap_l1(2):3'");
  CHECK(ok.code == 0);
  CHECK(contains(ok.out, "strategy=NearT1"));
  CHECK(contains(ok.out, "distinct=7"));
  CHECK(contains(ok.out, "status=certified"));
  CHECK(contains(ok.out, "budget_met=true"));

  RunResult bad = run_cli("illuminate --body 'ell1:3' --directions T2");
  CHECK(bad.code == 1);
  CHECK(contains(bad.out, "status=uncovered"));
  int uncovered = 0;
  std::istringstream in(bad.out);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind("uncovered ", 0) == 0) ++uncovered;
  CHECK(uncovered == 4);

  RunResult corners = run_cli("illuminate --body 'cube:3' --directions CubeCorners");
  CHECK(corners.code == 0);
  CHECK(contains(corners.out, "budget_met=false"));
}

TEST_CASE("cli illuminate certificates are reproducible and verifiable") {
  const std::string c1 = temp_path("cert"), c2 = temp_path("cert");
  RunResult a = run_cli("illuminate --body 'ell1:4' --seed 42 --out-cert '" + c1 + "'");
  CHECK(a.code == 0);
  CHECK(contains(a.out, "distinct=8"));
  RunResult b = run_cli("illuminate --body 'ell1:4' --seed 42 --out-cert '" + c2 + "'");
  CHECK(b.code == 0);
  CHECK(slurp(c1) == slurp(c2));

  RunResult v = run_cli("illuminate --verify '" + c1 + "'");
  CHECK(v.code == 0);
  CHECK(v.out == "verify=ok\n");

  std::string tampered = slurp(c1);
  const auto pos = tampered.find("\"certified\"");
  REQUIRE(pos != std::string::npos);
  tampered.replace(pos, 11, "\"uncovered\"");
  spit(c2, tampered);
  RunResult t = run_cli("illuminate --verify '" + c2 + "'");
  CHECK(t.code == 1);
  CHECK(contains(t.out, "verify=failed"));
  fs::remove(c1);
  fs::remove(c2);
}

TEST_CASE("cli min-ill finds the square bound on the rotated square") {
  RunResult r = run_cli("min-ill --body 'ell1:2' --pool tilted");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("min_directions=4\n", 0) == 0);
}

TEST_CASE("cli audit is clean on a suite body") {
  // exit code 0 is the violations==0 gate
  RunResult r = run_cli("audit --body 'ell1:3' --samples 500");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("body,", 0) == 0);
}

TEST_CASE("cli simulate prints the probability line and threshold scan") {
  RunResult q = run_cli("simulate --n 6 --k 2");
  CHECK(q.code == 0);
  CHECK(contains(q.out, "# q=1/20 stirling=8/6561 final=8/6561 chain_holds=1"));

  RunResult th = run_cli("simulate --threshold --n-min 2 --n-max 200");
  CHECK(th.code == 0);
  CHECK(contains(th.out, "# minimal_n0 46"));
}

TEST_CASE("cli simulate dump round trips through the parser") {
  RunResult d = run_cli("simulate --n 6 --k 2 --dump --count 5 --seed 9");
  CHECK(d.code == 0);
  illume::RandomSetRealization r = illume::parse_realization(d.out);
  CHECK(r.n == 6);
  CHECK(r.k == 2);
  CHECK(r.seed == 9);
  CHECK(r.trials.size() == 5);
  CHECK(illume::dump_realization(r) == d.out);
}

TEST_CASE("cli rejects malformed input with exit 2") {
  RunResult r = run_cli("norm --body 'frob:3' --x '1 1 1'");
  CHECK(r.code == 2);
  CHECK(contains(r.out, "error:"));
  RunResult s = run_cli("simulate");
  CHECK(s.code == 2);
}
