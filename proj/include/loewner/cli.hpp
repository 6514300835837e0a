#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace loewner::cli {

enum ExitCode : int { kOk = 0, kFailed = 1, kUsage = 2, kNumerical = 3 };

/// Everything a run depends on; serialized into the "config" field of every
/// JSON report.
struct RunConfig {
  std::string command;
  std::string fn;
  std::string interval;
  bool closed_left = false;
  int order = 2;
  std::string property;
  std::string kind;
  int grid = 257;
  int nodesets = 200;
  std::uint64_t seed = 42;
  long samples = 10000;
  double alpha = 1.0;
  std::optional<double> at;
  std::vector<double> nodes;
  std::optional<double> base;
  std::optional<int> digits;  // unset: binary64 screening
  int certify_digits = 60;
  double epsilon = 0.1;
  std::string input;
  std::string id;
  bool all = false;
  std::string curves_dir;
  std::string json_path;
  std::string format = "text";
};

/// Runs one command line. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace loewner::cli
