#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "gowerk/tolerances.hpp"

namespace gowerk::repro {

inline constexpr const char* kSection5 = "section5";
inline constexpr const char* kSection6 = "section6";
inline constexpr const char* kProperties = "properties";

struct Options {
  // Tolerance for comparisons against one-decimal published matrices.
  double print_tol = 0.05;
  double eps_psd = kEpsPsd;
  // Empty means every section.
  std::set<std::string> only;
  std::uint64_t seed = 20240611;
  unsigned threads = 1;
};

struct Check {
  std::string id;
  std::string section;
  bool pass = false;
  std::string detail;
};

/// Runs the worked examples and the randomized property suites and returns
/// one entry per check. Throws InvalidArgument for unknown section names.
std::vector<Check> run(const Options& options);

bool all_pass(const std::vector<Check>& checks);

}  // namespace gowerk::repro
