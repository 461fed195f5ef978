#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "omrel/json_io.hpp"

using namespace omrel;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(OMREL_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

json run_json(const std::string& args, int expected_code) {
  Run r = run("--json " + args);
  CHECK(r.code == expected_code);
  return json::parse(r.out);
}

}  // namespace

TEST_CASE("prove") {
  auto j = run_json("prove '(1&x);(1&y) = 1 & x & y' --axioms base", 0);
  CHECK(j["verdict"] == "proved");
  CHECK(j["trace"]["steps"].size() >= 1);
  j = run_json("prove '1 & x;y = 1 & y;x' --axioms integral", 0);
  CHECK(j["trace"]["steps"].size() == 1);
  j = run_json("prove '1 & x;y = 1 & y;x' --axioms base --depth 6", 2);
  CHECK(j["verdict"] == "unknown");
  // the emitted trace replays on its own
  j = run_json("prove '1 & x;y <= x;(1 & y;x);y' --axioms integral --depth 10", 0);
  auto trace = trace_from_json(j["trace"]);
  CHECK(replay(trace, parse_equation("1 & x;y <= x;(1 & y;x);y"), AxiomSet::Integral));
}

TEST_CASE("refute") {
  auto j = run_json("refute 'x;y & 1 = (x&1);(y&1)' --mode rel-integral", 0);
  CHECK(j["verdict"] == "refuted");
  auto rep = report_from_json(j["counterexample"]);
  CHECK(rep.verify());
  CHECK(is_integral_model(std::get<RelModel>(rep.model)) == Tri::True);
  CHECK(run_json("refute 'x;y & 1 = (x&1);(y&1)' --mode lang", 2)["verdict"] == "unknown");
  CHECK(run_json("refute '1 & x;y <= x;(1 & y;x);y' --mode rel", 2)["verdict"] == "unknown");
  CHECK(run("refute 'x = y' --mode bogus").code == 1);
}

TEST_CASE("decide") {
  CHECK(run_json("decide 'x & y <= x'", 0)["verdict"] == "valid");
  auto j = run_json("decide 'x;y <= x'", 0);
  CHECK(j["verdict"] == "invalid");
  CHECK(j["countermodel"]["model"]["base"] == 3);
  CHECK(run_json("decide 'x;(y+z) <= x;y + x;z'", 0)["verdict"] == "valid");
}

TEST_CASE("saturate") {
  auto j = run_json("saturate --theta 'x;y' --refute x --steps 5", 0);
  CHECK(j["verdict"] == "refuted");
  CHECK(report_from_json(j["counterexample"]).verify());
  j = run_json("saturate --theta 'x;y' --steps 3 --check-invariants", 0);
  CHECK(j["verdict"] == "ok");
  for (const auto& rep : j["invariants"]) {
    for (const auto& c : rep["conditions"]) CHECK(c["status"] != "violated");
  }
  CHECK(run("saturate --theta 0").code == 1);
  CHECK(run("saturate --theta x --refute x --steps 3").code == 2);
}

TEST_CASE("graph, reduce and errors") {
  auto j = run_json("graph 'x;y'", 0);
  CHECK(j["nodes"] == 3);
  CHECK(run("graph 'x;y' --dot").out.find("digraph") != std::string::npos);
  CHECK(run("graph 'x + y'").code == 1);
  j = run_json("reduce 'x;(y+z)'", 0);
  CHECK(j["parts"] == json::array({"x;y", "x;z"}));
  CHECK(run("prove 'x = ('").code == 1);
  CHECK(run("nonsense").code == 1);
}

TEST_CASE("identical inputs give identical output") {
  auto a = run("--json --seed 9 refute 'x;y <= y;x' --mode rel-integral");
  auto b = run("--json --seed 9 refute 'x;y <= y;x' --mode rel-integral");
  CHECK(a.out == b.out);
}

TEST_CASE("timeout") {
  auto r = run("--json --timeout 0.2 selftest --suite axioms");
  CHECK(r.code == 2);
  CHECK(json::parse(r.out)["reason"] == "timeout");
}

TEST_CASE("selftest suite") {
  auto j = run_json("selftest --suite integrality --suite refutation", 0);
  CHECK(j["suites"].size() == 2);
}
