#include "nagao/prime_field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nagao/error.hpp"

namespace nagao {

residue_t FieldCtx::pow(residue_t a, std::uint64_t e) const noexcept {
  std::uint64_t base = a % p_;
  std::uint64_t acc = 1 % p_;
  while (e != 0) {
    if (e & 1U) acc = acc * base % p_;
    base = base * base % p_;
    e >>= 1U;
  }
  return static_cast<residue_t>(acc);
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldCtx make_field(std::int64_t p) {
  if (p < 3) throw EvenOrSmall("field characteristic must be an odd prime, got " + std::to_string(p));
  if (p > static_cast<std::int64_t>(UINT32_MAX / 2) || !is_prime(static_cast<std::uint64_t>(p))) {
    throw NotPrime(std::to_string(p) + " is not a supported prime");
  }
  const auto q = static_cast<std::uint32_t>(p);
  std::vector<std::int8_t> chi(q, -1);
  chi[0] = 0;
  // squares of 1..(p-1)/2 already cover every nonzero square
  for (std::uint64_t a = 1; a <= (q - 1) / 2; ++a) chi[a * a % q] = 1;
  return FieldCtx(q, std::move(chi));
}

int quadratic_character(const FieldCtx& ctx, std::int64_t a) {
  if (a < 0 || a >= static_cast<std::int64_t>(ctx.p())) {
    throw OutOfRange("residue " + std::to_string(a) + " outside [0, " + std::to_string(ctx.p()) + ")");
  }
  return ctx.chi(static_cast<residue_t>(a));
}

std::vector<std::uint32_t> primes_in_range(std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) throw BadRange("empty range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  if (lo < 2) throw BadRange("lower bound must be at least 2");
  if (hi > UINT32_MAX) throw BadRange("upper bound exceeds 32 bits");

  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(hi))) + 1;
  std::vector<std::uint32_t> base;
  {
    std::vector<bool> composite(root + 1, false);
    for (std::uint64_t i = 2; i <= root; ++i) {
      if (composite[i]) continue;
      base.push_back(static_cast<std::uint32_t>(i));
      for (std::uint64_t j = i * i; j <= root; j += i) composite[j] = true;
    }
  }

  std::vector<std::uint32_t> out;
  constexpr std::uint64_t kSegment = 1U << 16;
  std::vector<bool> composite(kSegment);
  for (std::uint64_t seg_lo = lo; seg_lo <= hi; seg_lo += kSegment) {
    const std::uint64_t seg_hi = std::min(hi, seg_lo + kSegment - 1);
    std::fill(composite.begin(), composite.end(), false);
    for (std::uint64_t q : base) {
      if (q * q > seg_hi) break;
      std::uint64_t start = std::max(q * q, (seg_lo + q - 1) / q * q);
      for (std::uint64_t j = start; j <= seg_hi; j += q) composite[j - seg_lo] = true;
    }
    for (std::uint64_t n = seg_lo; n <= seg_hi; ++n) {
      if (!composite[n - seg_lo]) out.push_back(static_cast<std::uint32_t>(n));
    }
  }
  return out;
}

residue_t eval_poly(const FieldCtx& ctx, std::span<const residue_t> coeffs, residue_t x) {
  if (x >= ctx.p()) throw OutOfRange("evaluation point not reduced");
  residue_t acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    if (*it >= ctx.p()) throw OutOfRange("coefficient not reduced");
    acc = ctx.add(ctx.mul(acc, x), *it);
  }
  return acc;
}

}  // namespace nagao
