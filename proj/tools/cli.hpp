#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qfodc::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUndecided = 2, kConfigError = 3 };

struct RunConfig {
  std::string verb;
  std::string series = "sl";
  int n = 2;
  std::string corep = "u";
  std::string zeta = "1";
  std::string corep2 = "u";
  std::string zeta2;  // defaults to zeta
  int degree = 3;
  int start_degree = 2;
  int window = 2;
  int d_max = 6;
  int z = 1;
  std::vector<int> k;
  int bound = 2;
  unsigned seed = 1;
  int pairs = 20;
  std::string from_central;
  std::string format = "json";
  std::string claim;
  std::string out;
};

// args excludes the program name. Reports go to out (or --out), diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qfodc::cli
