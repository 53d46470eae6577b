// Command-line front end. Every subcommand writes one report envelope
// {tool-version, subcommand, config, results} as JSON, or as CSV preceded by
// "# key: value" header lines.
//
// Exit codes: 0 success, 1 validation error (bad arguments, malformed JSON,
// non-bijective cocycles, exceeded limits), 2 I/O error.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "odo/io.hpp"

namespace odo::cli {

inline constexpr const char* kToolVersion = "odo 1.0.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;

struct RunConfig {
  std::string subcommand;
  unsigned base = 2;
  unsigned level_cap = 24;
  std::uint64_t seed = 1;
  std::uint64_t samples = 100000;
  std::size_t budget = 32;
  std::string out;  ///< empty: standard output
  std::string format = "json";

  std::vector<std::string> inputs;  ///< elements or sets: file paths or inline JSON

  // metric
  std::string kind = "d1";
  double p = 1.0;
  // decompose
  std::string what = "all";
  unsigned parts = 0;
  std::optional<unsigned> depth;
  // tower
  std::vector<std::uint32_t> perm;
  // construct, recover, check-schedule
  std::vector<std::string> primes;
  std::vector<std::string> levels;
  std::size_t target = 0;
  bool paper = false;
  std::size_t count = 3;
  std::vector<std::string> deltas;
  std::vector<std::string> epsilons;
  // distortion
  std::vector<unsigned> m_values;
  std::optional<std::uint64_t> width;
  // concentration, zn-embed
  std::size_t n = 0;
  std::string metric = "l1";
  std::string functional = "dist-to-identity";
  bool exact = false;
  std::vector<std::int64_t> exponents;
};

/// Subcommand names in usage order.
const std::vector<std::string>& subcommands();
std::string usage();

/// Runs one subcommand. Reports go to `out` (or the --out file), diagnostics
/// to `err`.
int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv (including the program name) and dispatches.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

/// The results object alone, without envelope or output handling.
Json results(const RunConfig& config);

/// Envelope config block for a run.
Json config_json(const RunConfig& config);

}  // namespace odo::cli
