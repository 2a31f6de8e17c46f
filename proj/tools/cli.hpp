#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace snaplab::cli {

inline constexpr std::string_view kVersion = "0.3.0";

// Executes one verb. Exit codes: 0 success (including Obstructed and
// NonUnique results), 1 domain error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

// Flag grammar printed on usage errors.
std::string grammar();

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

std::vector<std::string> suite_names();

// Runs one experiment bundle, or every bundle for "all". Throws UnknownSuite.
std::vector<SuiteResult> reproduce(std::string_view suite, std::uint64_t seed);

}  // namespace snaplab::cli
