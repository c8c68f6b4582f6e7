#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nagao/family.hpp"
#include "nagao/prime_field.hpp"

namespace nagao {

/// Exact rational with 64-bit parts, kept in lowest terms with a positive denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  static Rational integer(std::int64_t v) { return {v, 1}; }
  double to_double() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }

  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend bool operator==(const Rational&, const Rational&) = default;
};

/// One prime's contribution: A_p, a_p(B) and A*_p = A_p - a_p(B).
struct PrimeEntry {
  std::uint32_t p = 0;
  Rational A;
  std::int64_t a_B = 0;
  Rational A_star;
  bool skipped = false;
  std::string reason;

  friend bool operator==(const PrimeEntry&, const PrimeEntry&) = default;
};

/// Per-prime averages for one family, ascending in p, bad primes omitted.
struct NagaoSeries {
  std::string family_hash;
  std::vector<PrimeEntry> entries;

  std::uint32_t last_prime() const noexcept { return entries.empty() ? 0 : entries.back().p; }
};

/// A_p = (1/p) * sum of a_p over all fibers of P^1(F_p). Throws SkippedPrime when a
/// fiber is unsupported, BadPrime when p is in S.
Rational average_trace(const FamilyModel& model, const FieldCtx& ctx);

/// a_p(B) = sum over trace curves of p + 1 - #C(F_p). Throws SkippedPrime for a
/// prime of bad reduction of some trace curve.
std::int64_t trace_correction(const FamilyModel& model, const FieldCtx& ctx);

/// A*_p = A_p - a_p(B).
Rational reduced_average_trace(const FamilyModel& model, const FieldCtx& ctx);

/// A'_p = (1/#P^1(F_p)) * sum of a_p, i.e. A_p * p / (p + 1).
Rational variant_average(const FamilyModel& model, const FieldCtx& ctx);

/// Full ledger entry for a good prime; never throws for unsupported fibers, which
/// become a skipped entry.
PrimeEntry compute_prime_entry(const FamilyModel& model, std::uint32_t p);

/// Good primes (not in S) in [lo, hi].
std::vector<std::uint32_t> good_primes(const FamilyModel& model, std::uint32_t lo, std::uint32_t hi);

/// Computes entries for `primes` with `jobs` workers and hands them to `sink`
/// strictly in the order given, from the calling thread.
void build_entries(const FamilyModel& model, std::span<const std::uint32_t> primes, unsigned jobs,
                   const std::function<void(const PrimeEntry&)>& sink);

/// Every good prime up to t_max.
NagaoSeries compute_series(const FamilyModel& model, std::uint32_t t_max, unsigned jobs);

struct SeriesPoint {
  std::uint64_t T = 0;
  double S = 0.0;
  std::size_t n_primes = 0;
  std::size_t n_skipped = 0;
};

/// S(T) = (1/T) * sum over p <= T of -A*_p log p, at each checkpoint. Summation
/// runs in ascending p; skipped primes contribute zero. Throws DomainError for T < 3.
std::vector<SeriesPoint> cesaro_series(const NagaoSeries& series, std::span<const std::uint64_t> checkpoints);

struct ResiduePoint {
  double s = 0.0;
  double estimate = 0.0;
  std::uint64_t T = 0;
};

/// (s - 1) * D(s) with D(s) = sum over p <= T of -A*_p log p / p^s. Throws DomainError
/// when some s <= 1.
std::vector<ResiduePoint> dirichlet_residue(const NagaoSeries& series, std::uint64_t T,
                                            std::span<const double> s_list);

/// s_k = 1 + 2^-k for k = 2..6.
std::vector<double> default_s_list();

}  // namespace nagao
