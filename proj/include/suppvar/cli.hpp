#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "suppvar/variety.hpp"

namespace suppvar {

enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitBadInput = 2, kExitCapExceeded = 3 };

enum class OutputFormat { Json, Dot, Text };

struct RunConfig {
  std::vector<std::uint32_t> primes{3, 101, 32003};
  int samples_per_prime = 200;
  std::uint64_t seed = 1;
  int rank_cap_n = kDefaultRankCapN;
  std::size_t cycle_cap = kDefaultCycleCap;
  OutputFormat format = OutputFormat::Json;
  bool full_fiber = false;
  int jobs = 1;
};

// Throws BadParameters on a non-prime or samples < 1.
void validate_config(const RunConfig& c);
ClassifyConfig classify_config(const RunConfig& c);

// Environment overrides use this prefix: SUPPVAR_PRIMES, SUPPVAR_SAMPLES, SUPPVAR_SEED,
// SUPPVAR_RANK_CAP, SUPPVAR_CYCLE_CAP, SUPPVAR_FORMAT, SUPPVAR_FULL_FIBER, SUPPVAR_JOBS.
inline constexpr const char* kEnvPrefix = "SUPPVAR_";

// args excludes the program name. Input is read from `in` unless --in is given; output goes to
// `out` unless --out is given. Diagnostics go to `err`.
int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

// JSON: the versioned report, one line. Text: "<verdict> <variety>" plus certificate kinds.
std::string serialize_report(const VarietyReport& r, OutputFormat format);

// Runs job(k) for k in [0, count) on `jobs` threads; results are returned in index order.
std::vector<std::string> run_ordered(std::size_t count, int jobs, const std::function<std::string(std::size_t)>& job);

struct TheoremRow {
  std::string name;
  std::string expected;
  std::string got;
  std::string verdict;
  int disagreements = 0;
  bool pass = false;
};

// Parses "3..10", "6", or "3,5,7".
std::vector<int> parse_range(const std::string& s);

// which: "A", "B", "DBWT", "Delta".
std::vector<TheoremRow> verify_theorem(const std::string& which, const std::vector<int>& n_range,
                                       const std::vector<int>& a_range, const std::vector<int>& b_range,
                                       const RunConfig& cfg);

}  // namespace suppvar
