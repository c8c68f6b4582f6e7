#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nagao {

struct RunConfig {
  std::filesystem::path family;
  std::uint64_t t_max = 0;
  std::vector<std::uint64_t> checkpoints;  // empty: ten even steps up to t_max
  unsigned jobs = 1;
  std::filesystem::path out_dir = ".";
  bool resume = false;
  std::vector<double> s_list;  // empty: 1 + 2^-k, k = 2..6
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitLedgerMismatch = 2;

/// Parses "100,1000,5000" or "step:500" into an ascending grid ending at or below t_max.
std::vector<std::uint64_t> parse_checkpoints(const std::string& text, std::uint64_t t_max);
std::vector<double> parse_s_list(const std::string& text);

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_series(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_residue(const RunConfig& config, std::ostream& out, std::ostream& err);
/// Exhaustive cross-checks for every good p <= 23 (or t_max when smaller); exit 1 on any failure.
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

/// `nagao run|series|residue|verify --family FILE --tmax N [--jobs N] [--resume]
///  [--out DIR] [--checkpoints LIST] [--s-list LIST]`
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Output file stem for a family name: characters outside [A-Za-z0-9_-] become '_'.
std::string output_stem(const std::string& family_name);

}  // namespace nagao
