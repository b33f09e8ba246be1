#include <doctest.h>

#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct CliResult {
  int exit_code;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  std::string cmd = std::string(GEOM_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("cli: info prints dim and index, exit codes per contract") {
  auto res = run_cli("info --preset sphere --param r=1");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("dim=2 index=0") != std::string::npos);

  auto resw = run_cli("info --preset schwarzschild --param M=1");
  CHECK(resw.exit_code == 0);
  CHECK(resw.out.find("index=1") != std::string::npos);

  auto bad = run_cli("info --preset no_such_preset");
  CHECK(bad.exit_code == 2);

  auto missing = run_cli("info --spec /nonexistent/path.json");
  CHECK(missing.exit_code == 2);
}

TEST_CASE("cli: compute emits JSON with documented values") {
  auto res = run_cli("compute scalar --preset sphere --param r=1 --point 1.0,0.3");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("\"scalar\":2") != std::string::npos);

  auto grad = run_cli("compute grad --preset hyperbolic_halfplane --f x --point 0,2");
  CHECK(grad.exit_code == 0);
  CHECK(grad.out.find("\"grad\":[4,0]") != std::string::npos);

  // out-of-domain point is an input error
  auto outside = run_cli("compute scalar --preset sphere --param r=1 --point 0.0,0.0");
  CHECK(outside.exit_code == 2);
}

TEST_CASE("cli: geodesic CSV carries the termination comment and reproduces") {
  const std::string cmd =
      "geodesic --preset sphere --param r=1 --point 1.5707963267948966,0 "
      "--velocity 0,1 --t0 0 --t1 1 --dt 0.1";
  auto res = run_cli(cmd);
  CHECK(res.exit_code == 0);
  CHECK(res.out.substr(0, 14) == "t,x1,x2,v1,v2\n");
  CHECK(res.out.find("# termination=completed") != std::string::npos);
  auto again = run_cli(cmd);
  CHECK(again.out == res.out);
}

TEST_CASE("cli: malformed command lines exit 2, never crash") {
  CHECK(run_cli("nonsense").exit_code == 2);
  CHECK(run_cli("compute").exit_code == 2);                 // missing required args
  CHECK(run_cli("compute scalar --preset sphere --point abc").exit_code == 2);
  CHECK(run_cli("compute scalar --point 1,1").exit_code == 2);  // no spec source
  CHECK(run_cli("verify --preset sphere --spec /tmp/x.json --samples 1").exit_code == 2);
}

TEST_CASE("cli: transport reports inner products before and after") {
  auto res = run_cli(
      "transport --preset semi_euclidean --dim 2 --index 0 --curve \"t;t\" "
      "--vector 1,2 --t0 0 --t1 1 --dt 0.01");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("\"input\":[1,2]") != std::string::npos);
  CHECK(res.out.find("\"output\":[1,2]") != std::string::npos);  // flat: echoed
  CHECK(res.out.find("\"inner_before\":5") != std::string::npos);

  // curve that exits the chart is a numerical failure, not an input error
  auto escape = run_cli(
      "transport --preset sphere --param r=1 --curve \"t;0\" "
      "--vector 1,0 --t0 1 --t1 3.2 --dt 0.01");
  CHECK(escape.exit_code == 1);
}
