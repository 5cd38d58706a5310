#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "svfie/problems.hpp"
#include "svfie/solver.hpp"

namespace svfie::cli {

inline constexpr const char* kVersion = "0.1.0";

enum class Command { Solve, MonteCarlo, Converge, Compare, Bound };
enum class Format { Csv, Json };

enum ExitCode : int { kOk = 0, kUsage = 1, kNumerical = 2 };

// Bad flags, unknown problems, non-dyadic m and similar caller mistakes.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Command command = Command::Solve;
  std::string problem = "example1";
  std::vector<std::size_t> m{32};  // one entry, or a doubling sequence for converge
  std::uint64_t master_seed = 0;
  std::size_t n_paths = 1000;
  std::vector<double> probes{0.1, 0.3, 0.5, 0.7, 0.9};
  Format format = Format::Csv;
  std::optional<std::string> out;
  Method method = Method::Walsh;

  // bound only; unset fields fall back to the problem's constants, then 0.
  std::optional<double> C, L, L1, L2, rho, rho1, rho2, sigma, alpha, beta, h;
};

/// Parses "32", "8,16,32" or "8..128" (doubling from the first to the last).
std::vector<std::size_t> parse_m_spec(const std::string& spec);

/// Parses a comma-separated list of probe times in [0, 1).
std::vector<double> parse_probes(const std::string& spec);

/// Fixed 10-significant-digit formatting used by every report.
std::string format_number(double x);

/// Runs one subcommand, writing the report to `out` and diagnostics to `err`.
/// Returns an ExitCode.
int run(const RunConfig& config, const ProblemRegistry& registry, std::ostream& out,
        std::ostream& err);

/// argv entry point: parses flags, resolves --out, and calls run().
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
               const ProblemRegistry& registry = ProblemRegistry::builtin());

}  // namespace svfie::cli
