#include <omp.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "weylstrip/cli.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read config " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::string stem_of(const std::string& out_path) {
  if (out_path.empty()) return "";
  const std::size_t dot = out_path.rfind('.');
  const std::size_t slash = out_path.find_last_of("/\\");
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return out_path;
  return out_path.substr(0, dot);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weylstrip: Weyl pseudodifferential calculus on exponentially weighted spaces"};
  app.require_subcommand(1);

  const char* names[] = {"growth-pair", "hs-norm",   "apply",  "semigroup-check",
                         "moyal-check", "eig-check", "region", "norm-bound"};

  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 12345;
  int threads = 0;
  for (const char* name : names) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "run configuration (JSON)")->required();
    sub->add_option("--seed", seed, "seed for randomized estimators");
    sub->add_option("--out", out_path, "report path (side artifacts share its stem)");
    sub->add_option("--threads", threads, "OpenMP thread count");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  if (const char* env = std::getenv("WEYLSTRIP_THREADS"); env && *env)
    threads = std::atoi(env);  // env overrides --threads
  if (threads > 0) omp_set_num_threads(threads);

  try {
    const auto result = weylstrip::cli::run_command(command, read_file(config_path), seed,
                                                    stem_of(out_path));
    if (out_path.empty()) {
      std::cout << result.report;
    } else {
      std::ofstream os(out_path, std::ios::binary);
      if (!os) throw std::runtime_error("cannot write " + out_path);
      os << result.report;
    }
    return result.pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "weylstrip: " << e.what() << "\n";
    return 2;
  }
}
