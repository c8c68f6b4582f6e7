#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "nagao/family.hpp"
#include "nagao/prime_field.hpp"

namespace nagao {

/// Point count, rational-component count and Frobenius trace of one fiber,
/// tied together by N = 1 - a + p*m.
struct FiberTraceRecord {
  FiberPoint c;
  std::uint64_t N = 0;
  std::uint32_t m = 1;
  std::int64_t a = 0;
  bool singular = false;
};

struct Unsupported {
  std::uint32_t p = 0;
  FiberPoint c;
  FiberClass fiber_class = FiberClass::square_fiber;
};

using ComponentCount = std::variant<std::uint32_t, Unsupported>;

/// Affine solutions of the fiber equations over F_p.
std::uint64_t count_affine(const FieldCtx& ctx, const FiberModel& fiber);

/// Points added by the smooth completion. Throws DegenerateDegree when some
/// cover has lost x-degree at this fiber.
std::uint32_t points_at_infinity(const FieldCtx& ctx, const FiberModel& fiber);

/// m_c for the plane model, or Unsupported for fibers whose surface model may differ.
ComponentCount component_count(const FieldCtx& ctx, const FiberModel& fiber);

/// Points on the smooth model of the normalization of a singular hyperelliptic
/// fiber y^2 = lead * s^2 * odd, namely w^2 = lead * odd.
std::uint64_t normalization_count(const FieldCtx& ctx, const FiberModel& fiber);

/// The record for one fiber. Returns nullopt only for c = infinity under the skip
/// rule. Throws BadPrime, or UnsupportedFiber when no override covers the fiber.
std::optional<FiberTraceRecord> fiber_trace(const FieldCtx& ctx, const FamilyModel& model, FiberPoint c);

/// All fiber records for one prime, in the order c = 0..p-1, then infinity.
struct PrimeFibers {
  std::vector<FiberTraceRecord> records;
  std::optional<Unsupported> unsupported;  // set when the prime must be dropped
  bool infinity_skipped = false;
};

/// Bulk kernel: affine counts for every finite c by finite differences in t,
/// O(p^2) character lookups. The caller guarantees p is good.
PrimeFibers trace_all_fibers(const FieldCtx& ctx, const FamilyModel& model);

}  // namespace nagao
