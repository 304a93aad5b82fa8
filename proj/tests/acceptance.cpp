// Runs every acceptance criterion at the default configuration, or at the
// configuration file given as the only argument.

#include "forge/suite.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
  forge::RunConfig config;
  if (argc > 1) {
    std::ifstream in(argv[1]);
    if (!in) {
      std::cerr << "cannot read " << argv[1] << "\n";
      return 2;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    config = forge::parse_config(ss.str());
  }
  int failed = 0;
  for (int id = 1; id <= forge::kCriterionCount; ++id) {
    const auto r = forge::run_criterion(id, config);
    std::printf("%s %d %s: %s (%.2fs)\n", r.pass ? "PASS" : "FAIL", r.id, r.key.c_str(), r.summary.c_str(),
                r.seconds);
    std::fflush(stdout);
    failed += !r.pass;
  }
  std::printf("%d/%d criteria pass\n", forge::kCriterionCount - failed, forge::kCriterionCount);
  return failed == 0 ? 0 : 1;
}
