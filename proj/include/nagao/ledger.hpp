#pragma once

#include <filesystem>
#include <span>
#include <string>

#include "nagao/nagao_series.hpp"

namespace nagao {

/// Writes `content` to a sibling temporary file and renames it over `path`.
void atomic_write(const std::filesystem::path& path, const std::string& content);

/// Per-prime ledger: family_hash,p,A_p_num,A_p_den,a_p_B,skipped,reason
std::string format_ledger(const NagaoSeries& series);
void write_ledger(const std::filesystem::path& path, const NagaoSeries& series);
/// Throws ValidationError on malformed rows, mixed family hashes or non-ascending primes.
NagaoSeries parse_ledger(const std::string& text);
NagaoSeries read_ledger(const std::filesystem::path& path);

/// T,S_T,n_primes,n_skipped with S_T printed round-trip exact.
std::string format_series_csv(std::span<const SeriesPoint> points);
/// s,estimate,T
std::string format_residue_csv(std::span<const ResiduePoint> points);

}  // namespace nagao
