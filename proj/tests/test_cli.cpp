#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gbs/factors.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

struct ScratchDir {
  fs::path path;
  ScratchDir() {
    path = fs::temp_directory_path() / ("gbs_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~ScratchDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

fs::path scratch() {
  static ScratchDir dir;
  return dir.path;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write(const std::string& name, const std::string& text) {
  fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

// stdout only; stderr goes to a side file
Run run(const std::string& args) {
  fs::path out = scratch() / "stdout.txt";
  std::string cmd = std::string("\"") + GBS_CLI_PATH + "\" " + args + " >\"" +
                    out.string() + "\" 2>\"" + (scratch() / "stderr.txt").string() + "\"";
  int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  return r;
}

std::string data(const char* name) { return std::string(GBS_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("validate and tl") {
  auto v = run("validate " + data("bs24.gbs"));
  CHECK(v.code == 0);
  CHECK(v.out == "ok 1 vertices 1 edges NonElementary\n");

  auto bs12 = run("validate " + data("bs12.gbs"));
  CHECK(bs12.code == 0);
  CHECK(bs12.out.find("SolvableBS") != std::string::npos);

  auto words = write("tl.words", "v^3\ne\ne v ~e v\n");
  auto t = run("tl " + data("bs24.gbs") + " " + words.string());
  CHECK(t.code == 0);
  CHECK(t.out == "0\n1\n2\n");
}

TEST_CASE("check-simple") {
  auto moves = scratch() / "moves.log";
  auto r = run("check-simple " + data("bs24.gbs") + " " + data("bs24.words") +
               " --moves " + moves.string());
  CHECK(r.code == 0);
  REQUIRE(r.out.rfind("SIMPLE\n", 0) == 0);
  auto parsed = gbs::parse_result(r.out);
  REQUIRE(parsed.factors.size() == 1);
  CHECK(parsed.factors[0].document.graph.edge_count() == 2);
  std::string log = slurp(moves);
  CHECK(log.find("SUBDIVIDE") != std::string::npos);
  CHECK(log.find("ISO") != std::string::npos);

  auto n = run("check-simple " + data("bs12.gbs") + " " + data("stable.words"));
  CHECK(n.code == 0);
  CHECK(n.out.rfind("NOTSIMPLE\n", 0) == 0);

  // the output file option works after the subcommand too
  auto target = scratch() / "result.txt";
  auto o = run("check-simple " + data("bs12.gbs") + " " + data("stable.words") + " -o " +
               target.string());
  CHECK(o.code == 0);
  CHECK(o.out.empty());
  CHECK(slurp(target) == n.out);
}

TEST_CASE("whitehead, complexity and minimal-factors") {
  auto dot = scratch() / "wh.dot";
  auto w = run("whitehead " + data("bs24.gbs") + " " + data("bs24.words") +
               " --vertex v --dot " + dot.string());
  CHECK(w.code == 0);
  CHECK(w.out.rfind("whitehead v\n", 0) == 0);
  CHECK(w.out.find("node ~e:3") != std::string::npos);
  CHECK(slurp(dot).rfind("graph", 0) == 0);

  auto c = run("complexity " + data("bs24.gbs"));
  CHECK(c.code == 0);
  CHECK(c.out == "(1,1,2)\n");

  auto m = run("minimal-factors " + data("bs24.gbs") + " " + data("bs24.words"));
  CHECK(m.code == 0);
  CHECK(m.out.rfind("SYSTEM proper\n", 0) == 0);
  auto mi = run("minimal-factors " + data("bs12.gbs") + " " + data("stable.words"));
  CHECK(mi.out.rfind("SYSTEM improper\n", 0) == 0);
}

TEST_CASE("exit codes") {
  CHECK(run("validate " + (scratch() / "missing.gbs").string()).code == 2);
  auto bad = write("bad.gbs", "gbs v1\nvertex v\nedge e v v 0 2\nbasepoint v\n");
  CHECK(run("validate " + bad.string()).code == 2);
  auto elliptic = write("elliptic.words", "v^3\n");
  CHECK(run("check-simple " + data("bs24.gbs") + " " + elliptic.string()).code == 1);
  auto garbage = write("garbage.words", "e q\n");
  CHECK(run("tl " + data("bs24.gbs") + " " + garbage.string()).code == 2);
  CHECK(run("").code != 0);
  CHECK(run("frobnicate").code != 0);
}
