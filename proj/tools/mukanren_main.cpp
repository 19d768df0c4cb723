// Command-line runner for .mk programs.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "mukanren/mukanren.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitTimeout = 2;

std::optional<std::string> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void print_answer(const mukanren::Answer& answer, bool with_store) {
  using namespace mukanren;
  if (answer.readbacks.size() == 1) {
    std::cout << term_to_string(answer.readbacks[0]) << '\n';
  } else {
    std::cout << '(';
    for (std::size_t i = 0; i < answer.readbacks.size(); ++i) {
      if (i > 0) std::cout << ' ';
      std::cout << term_to_string(answer.readbacks[i]);
    }
    std::cout << ")\n";
  }
  if (with_store) std::cout << store_to_string(answer.state) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mukanren - a constraint logic programming engine"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Evaluate the queries of a program file");
  std::string file;
  run->add_option("file", file, "Program file (.mk)")->required();
  std::optional<std::size_t> take_count;
  auto* take_opt = run->add_option("--take", take_count, "Answers per query, overriding counts");
  bool take_all = false;
  auto* all_opt = run->add_flag("--all", take_all, "Take every answer of every query");
  take_opt->excludes(all_opt);
  double timeout_seconds = 10.0;
  run->add_option("--timeout", timeout_seconds, "Wall-clock budget in seconds (default 10)");
  bool show_stores = false;
  run->add_flag("--stores", show_stores, "Print each answer's constraint store");
  std::string system_name = "standard";
  run->add_option("--system", system_name, "Constraint system: standard or equality-only")
      ->check(CLI::IsMember({"standard", "equality-only"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  std::optional<std::string> source = slurp(file);
  if (!source) {
    std::cerr << "error: cannot read " << file << '\n';
    return kExitError;
  }

  mukanren::ConstraintSystem sys = system_name == "standard"
                                       ? mukanren::standard_system()
                                       : mukanren::equality_only_system();

  mukanren::EvalOptions options;
  options.count_override = take_count;
  options.take_all = take_all;
  options.deadline =
      std::chrono::steady_clock::now() +
      std::chrono::duration_cast<std::chrono::steady_clock::duration>(
          std::chrono::duration<double>(timeout_seconds));

  try {
    mukanren::ast::Program program = mukanren::parse_program(*source, sys);
    auto results = mukanren::eval_program(program, sys, options);

    bool timed_out = false;
    for (const mukanren::QueryResult& result : results) {
      if (result.answers.empty() && !result.timed_out) {
        std::cout << "no answers\n";
      } else {
        for (const mukanren::Answer& answer : result.answers)
          print_answer(answer, show_stores);
      }
      timed_out = timed_out || result.timed_out;
    }
    std::cout.flush();
    if (timed_out) {
      std::cerr << "error: timed out after " << timeout_seconds << "s\n";
      return kExitTimeout;
    }
    return kExitOk;
  } catch (const mukanren::ParseError& e) {
    std::cerr << "error: " << file << ":" << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}
