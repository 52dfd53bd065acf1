#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string bin() {
  const char *b = std::getenv("PARCUT_BIN");
  return b ? b : "./build/parcut";
}

int run(const std::string &args, const std::string &out_file) {
  std::string cmd = bin() + " " + args + " > " + out_file + " 2> " + out_file + ".err";
  int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

}  // namespace

TEST_CASE("cli generates and solves") {
  REQUIRE(run("gen --type dumbbell --args 5 --args 5 --out /tmp/parcut_d.graph", "/tmp/parcut_g") == 0);
  SUBCASE("oracle sparsest") {
    REQUIRE(run("oracle --mode sparsest /tmp/parcut_d.graph", "/tmp/parcut_o") == 0);
    std::string out = slurp("/tmp/parcut_o");
    CHECK(out.find("\"optimum\": \"1/5\"") != std::string::npos);
  }
  SUBCASE("oracle on P4") {
    REQUIRE(run("gen --type path --args 4 --out /tmp/parcut_p4.graph", "/tmp/parcut_g2") == 0);
    REQUIRE(run("oracle --mode sparsest /tmp/parcut_p4.graph", "/tmp/parcut_o2") == 0);
    CHECK(slurp("/tmp/parcut_o2").find("\"optimum\": \"1/2\"") != std::string::npos);
  }
  SUBCASE("sse finds the bridge and exits 0") {
    REQUIRE(run("sse --phi 1/4 --s 5 /tmp/parcut_d.graph", "/tmp/parcut_s") == 0);
    std::string out = slurp("/tmp/parcut_s");
    CHECK(out.find("\"status\": \"found\"") != std::string::npos);
    CHECK(out.find("\"boundary\": 1") != std::string::npos);
  }
}

TEST_CASE("cli determinism: identical inputs give byte-identical JSON") {
  REQUIRE(run("gen --type planted --args 14 --p 0.6 --q 0.1 --seed 5 --out /tmp/parcut_pl.graph",
              "/tmp/parcut_g3") == 0);
  REQUIRE(run("sse --phi 1/2 --s 7 --seed 42 --out /tmp/parcut_r1.json /tmp/parcut_pl.graph",
              "/tmp/parcut_log1") == 0);
  REQUIRE(run("sse --phi 1/2 --s 7 --seed 42 --out /tmp/parcut_r2.json /tmp/parcut_pl.graph",
              "/tmp/parcut_log2") == 0);
  std::string a = slurp("/tmp/parcut_r1.json"), b = slurp("/tmp/parcut_r2.json");
  REQUIRE(!a.empty());
  CHECK(a == b);

  REQUIRE(run("sparsest-cut --seed 7 --out /tmp/parcut_r3.json /tmp/parcut_d.graph",
              "/tmp/parcut_log3") == 0);
  REQUIRE(run("sparsest-cut --seed 7 --out /tmp/parcut_r4.json /tmp/parcut_d.graph",
              "/tmp/parcut_log4") == 0);
  CHECK(slurp("/tmp/parcut_r3.json") == slurp("/tmp/parcut_r4.json"));
}

TEST_CASE("cli error paths") {
  SUBCASE("malformed graph exits 1 with a line number") {
    write_file("/tmp/parcut_bad.graph", "3 2\n0 1\n0 9\n");
    CHECK(run("oracle --mode sparsest /tmp/parcut_bad.graph", "/tmp/parcut_b1") == 1);
    std::string err = slurp("/tmp/parcut_b1.err");
    CHECK(err.find("line 3") != std::string::npos);
  }
  SUBCASE("missing file exits 1") {
    CHECK(run("oracle --mode sparsest /tmp/parcut_missing_file.graph", "/tmp/parcut_b2") == 1);
  }
  SUBCASE("no-such-set exits 2") {
    REQUIRE(run("gen --type complete --args 6 --out /tmp/parcut_k6.graph", "/tmp/parcut_g4") == 0);
    CHECK(run("vertex-sparsest /tmp/parcut_k6.graph", "/tmp/parcut_b3") == 2);
  }
}

TEST_CASE("cli verify flag annotates results") {
  REQUIRE(run("sse --phi 1/4 --s 5 --verify --out /tmp/parcut_v.json /tmp/parcut_d.graph",
              "/tmp/parcut_log5") == 0);
  std::string out = slurp("/tmp/parcut_v.json");
  CHECK(out.find("\"verification\"") != std::string::npos);
  CHECK(out.find("\"consistent\": true") != std::string::npos);
}

TEST_CASE("cli game trace") {
  REQUIRE(run("game --phi 1/2 --s 4 --out /tmp/parcut_gm.json /tmp/parcut_d.graph",
              "/tmp/parcut_log6") == 0);
  std::string out = slurp("/tmp/parcut_gm.json");
  CHECK(out.find("\"trace\"") != std::string::npos);
}
