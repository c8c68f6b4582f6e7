#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace nagao {

using residue_t = std::uint32_t;

/// Arithmetic context for F_p, p an odd prime, with a full Legendre-symbol table.
///
/// The table holds one byte per residue and is rebuilt for every prime. It is
/// immutable after construction and may be shared read-only between threads.
class FieldCtx {
 public:
  std::uint32_t p() const noexcept { return p_; }

  /// Legendre symbol without a range check; `a` must already be reduced.
  int chi(residue_t a) const noexcept { return chi_[a]; }
  std::span<const std::int8_t> chi_table() const noexcept { return chi_; }

  residue_t reduce(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<residue_t>(r < 0 ? r + p_ : r);
  }
  residue_t add(residue_t a, residue_t b) const noexcept {
    residue_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  residue_t sub(residue_t a, residue_t b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  residue_t neg(residue_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
  residue_t mul(residue_t a, residue_t b) const noexcept {
    return static_cast<residue_t>(static_cast<std::uint64_t>(a) * b % p_);
  }
  residue_t pow(residue_t a, std::uint64_t e) const noexcept;
  /// Inverse of a nonzero residue (Fermat).
  residue_t inv(residue_t a) const noexcept { return pow(a, p_ - 2); }

 private:
  friend FieldCtx make_field(std::int64_t p);
  FieldCtx(std::uint32_t p, std::vector<std::int8_t> chi) : p_(p), chi_(std::move(chi)) {}

  std::uint32_t p_;
  std::vector<std::int8_t> chi_;
};

/// Trial-division primality; adequate for the p <= 10^6 range the engine targets.
bool is_prime(std::uint64_t n) noexcept;

/// Builds the context for an odd prime. Throws EvenOrSmall for p < 3, NotPrime otherwise.
FieldCtx make_field(std::int64_t p);

/// Checked Legendre symbol: 0, +1 or -1. Throws OutOfRange unless 0 <= a < p.
int quadratic_character(const FieldCtx& ctx, std::int64_t a);

/// All primes in [lo, hi], ascending (segmented sieve).
std::vector<std::uint32_t> primes_in_range(std::uint64_t lo, std::uint64_t hi);

/// Horner evaluation of an ascending-degree polynomial with reduced coefficients.
residue_t eval_poly(const FieldCtx& ctx, std::span<const residue_t> coeffs, residue_t x);

}  // namespace nagao
