#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(KNOTFLOW_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool contains(const std::string& s, const std::string& what) { return s.find(what) != std::string::npos; }

const std::string kData = KNOTFLOW_DATA;

}  // namespace

TEST_CASE("pleat classify on the four-homoclinic example") {
  const auto r = run("pleat classify " + kData + "/four_homoclinic.pleat");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "classification=UniversalByThm43"));
  CHECK(contains(r.out, "kappa="));
  CHECK(contains(r.out, "verified=yes"));
}

TEST_CASE("horseshoe twist") {
  const auto r = run("invariants horseshoe --word y");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "twist=+1\n"));
  CHECK(contains(r.out, "alexander=1\n"));
  CHECK(contains(r.out, "genus_lower_bound=0\n"));
}

TEST_CASE("lorenz has no certificate") {
  const auto r = run("universal-check lorenz --max-period 10");
  CHECK(r.code == 1);
  CHECK(contains(r.out, "no certificate found"));
  CHECK(run("universal-check universal-v --max-period 8").code == 0);
}

TEST_CASE("input errors exit with 2") {
  CHECK(run("invariants lorenz --word q").code == 2);
  CHECK(run("orbits no-such-template").code == 2);
  CHECK(run("orbits lorenz --max-period zero").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("ode orbit --word 9").code == 2);
  const std::string bad = "bad_pleat.txt";
  std::ofstream(bad) << "pleat n=3 order=1,2,3 sides=RL tau=0,2,1 carrier=unknot\n";
  CHECK(run("pleat build " + bad).code == 2);
}

TEST_CASE("other subcommands") {
  const auto o = run("orbits lorenz --max-period 3 --tsv");
  CHECK(o.code == 0);
  CHECK(contains(o.out, "word\tperiod\ttwist\talexander\n"));
  CHECK(contains(o.out, "orbits=5"));
  const auto b = run("pleat build " + kData + "/eight_strip.pleat");
  CHECK(b.code == 0);
  CHECK(contains(b.out, "branchline p"));
  const auto c = run("pleat classify " + kData + "/eight_strip.pleat --twist -2");
  CHECK(c.code == 0);
  CHECK(contains(c.out, "twist_kappa_prime=-2"));
  const auto svg = "render_test.svg";
  const auto rd = run(std::string("render lorenz --orbits x.y,x.x.y --svg ") + svg);
  CHECK(rd.code == 0);
  std::ifstream in(svg);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(contains(ss.str(), "<svg"));
}

TEST_CASE("ode subcommands") {
  const auto s = run("ode shift-check --k-max 2");
  CHECK(s.code == 0);
  CHECK(contains(s.out, "coverings_failed=0"));
  CHECK(run("ode shift-check --lambda -0.01 --k-max 1").code == 1);
  const auto m = run("ode ms-check --lambda -0.01 --samples 100 --seed 9");
  CHECK(m.code == 0);
  CHECK(contains(m.out, "seed=9"));
  const auto o = run("ode orbit --word 1,3");
  CHECK(o.code == 0);
  CHECK(contains(o.out, "\tyes\n"));
  const auto cfg = "ode_test.cfg";
  std::ofstream(cfg) << "lambda=0.02\nk_max=1\n";
  const auto c = run(std::string("ode shift-check --config ") + cfg);
  CHECK(c.code == 0);
  CHECK(contains(c.out, "lambda=0.02"));
}

TEST_CASE("output is byte-identical across runs and job counts") {
  const auto a = run("universal-check universal-v --max-period 8");
  const auto b = run("--jobs 3 universal-check universal-v --max-period 8");
  CHECK(a.out == b.out);
  const auto m1 = run("ode ms-check --lambda -0.01 --samples 50");
  const auto m2 = run("ode ms-check --lambda -0.01 --samples 50");
  CHECK(m1.out == m2.out);
  CHECK(run("--jobs 2 ode shift-check --k-max 2").out == run("ode shift-check --k-max 2").out);
}
