#include <cstdio>
#include <string>
#include <vector>

#include "gaugefiber/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const gaugefiber::CliResult r = gaugefiber::run_cli(args);
  if (!r.out.empty()) std::fputs(r.out.c_str(), stdout);
  if (!r.err.empty()) std::fputs(r.err.c_str(), stderr);
  return r.code;
}
