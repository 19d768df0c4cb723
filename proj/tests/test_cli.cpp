#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef MUKANREN_CLI_PATH
#error "MUKANREN_CLI_PATH must be defined"
#endif
#ifndef MUKANREN_PROGRAMS_DIR
#error "MUKANREN_PROGRAMS_DIR must be defined"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

RunResult run_cli(const std::string& args) {
  std::string out_path = std::string(MUKANREN_CLI_PATH) + ".out.tmp";
  std::string err_path = std::string(MUKANREN_CLI_PATH) + ".err.tmp";
  std::string command = std::string(MUKANREN_CLI_PATH) + " " + args + " >" + out_path +
                        " 2>" + err_path;
  int status = std::system(command.c_str());
  RunResult result;
#if defined(_WIN32)
  result.exit_code = status;
#else
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#endif
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return result;
}

std::string program(const char* name) {
  return std::string(MUKANREN_PROGRAMS_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("cli: nrev prints the reversed list") {
  RunResult r = run_cli("run " + program("nrev.mk") + " --take 1");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "(c b a)\n");
}

TEST_CASE("cli: contradiction programs report no answers with success status") {
  RunResult b = run_cli("run " + program("booleano-contra.mk"));
  CHECK(b.exit_code == 0);
  CHECK(b.out == "no answers\n");

  RunResult l = run_cli("run " + program("listo-contra.mk"));
  CHECK(l.exit_code == 0);
  CHECK(l.out == "no answers\n");
}

TEST_CASE("cli: --stores prints the raw store after each answer") {
  RunResult r = run_cli("run " + program("composite.mk") + " --stores");
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "a\n"
        "((== . ((a . 0))) (=/= . ((c . 0) (0 . b))) (absento . ((b 0))) (symbolo . (0)) "
        "(not-pairo . (0)) (booleano) (listo) . 1)\n");
}

TEST_CASE("cli: interleaving alternates between competing relations") {
  RunResult r = run_cli("run " + program("interleave.mk") + " --take 4");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "five\nsix\nfive\nsix\n");
}

TEST_CASE("cli: a missing file exits with status 1") {
  RunResult r = run_cli("run no-such-file.mk");
  CHECK(r.exit_code == 1);
  CHECK(r.out.empty());
  CHECK(r.err.find("cannot read") != std::string::npos);
}

TEST_CASE("cli: a parse error exits with status 1 and a position") {
  std::string bad = std::string(MUKANREN_CLI_PATH) + ".bad.mk";
  {
    std::ofstream out(bad);
    out << "(run 1 (q) (== 5 q))\n";
  }
  RunResult r = run_cli("run " + bad);
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("1:") != std::string::npos);
  std::remove(bad.c_str());
}

TEST_CASE("cli: a diverging program times out with status 2") {
  RunResult r = run_cli("run " + program("loop.mk") + " --timeout 0.3");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("timed out") != std::string::npos);
}

TEST_CASE("cli: partial answers are flushed before a timeout exit") {
  RunResult r = run_cli("run " + program("interleave.mk") + " --all --timeout 0.3");
  CHECK(r.exit_code == 2);
  CHECK(r.out.find("five\n") != std::string::npos);
  CHECK(r.out.find("six\n") != std::string::npos);
}

TEST_CASE("cli: the equality-only system rejects constraint operators") {
  RunResult r = run_cli("run " + program("composite.mk") + " --system equality-only");
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("unknown operator") != std::string::npos);

  std::string ok = std::string(MUKANREN_CLI_PATH) + ".eq.mk";
  {
    std::ofstream out(ok);
    out << "(run 1 (q) (== q '(a b)))\n";
  }
  RunResult eq = run_cli("run " + ok + " --system equality-only");
  CHECK(eq.exit_code == 0);
  CHECK(eq.out == "(a b)\n");
  std::remove(ok.c_str());
}

TEST_CASE("cli: --help exits successfully and conflicting flags do not") {
  RunResult help = run_cli("--help");
  CHECK(help.exit_code == 0);
  CHECK(help.out.find("run") != std::string::npos);

  RunResult conflict = run_cli("run " + program("nrev.mk") + " --take 1 --all");
  CHECK(conflict.exit_code == 1);
}

TEST_CASE("cli: identical invocations produce identical bytes") {
  RunResult a = run_cli("run " + program("composite.mk") + " --stores");
  RunResult b = run_cli("run " + program("composite.mk") + " --stores");
  CHECK(a.exit_code == b.exit_code);
  CHECK(a.out == b.out);
}
