#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nagao/bivar_poly.hpp"
#include "nagao/fiber_config.hpp"
#include "nagao/integer_poly.hpp"
#include "nagao/poly_modp.hpp"
#include "nagao/prime_field.hpp"

namespace nagao {

enum class FamilyKind { hyperelliptic, multicover, constant };

struct InfinityRule {
  enum class Kind { trace_zero, affine_plus, skip };
  Kind kind = Kind::trace_zero;
  unsigned nu = 0;  // affine_plus: points added to every finite fiber
  unsigned m = 1;   // affine_plus: component count recorded for the fiber at infinity
  friend bool operator==(const InfinityRule&, const InfinityRule&) = default;
};

/// Constant part of the Jacobian, as a product of Jacobians of curves y^2 = G_i(x).
struct TraceSpec {
  std::vector<BivarPoly> curves;
  bool trivial() const noexcept { return curves.empty(); }
  friend bool operator==(const TraceSpec&, const TraceSpec&) = default;
};

/// Fiber classes the plane-model engine will not count on its own.
enum class FiberClass { degree_drop, square_fiber, multicover_singular };

std::string_view to_string(FiberClass c);

/// User assertion for an unsupported fiber class: m components, and N equal to
/// the affine count plus `points_at_infinity`.
struct FiberOverride {
  FiberClass fiber_class = FiberClass::square_fiber;
  unsigned m = 1;
  unsigned points_at_infinity = 0;
  friend bool operator==(const FiberOverride&, const FiberOverride&) = default;
};

struct FamilySpec {
  std::string name;
  FamilyKind kind = FamilyKind::hyperelliptic;
  std::vector<BivarPoly> polys;
  int genus = 0;
  TraceSpec trace;
  InfinityRule infinity;
  std::set<std::uint32_t> extra_bad_primes;
  std::vector<FiberOverride> overrides;
  std::optional<FiberConfiguration> fiber_config;

  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

/// Parses and validates a family file. Throws ParseError (with line/column) or
/// ValidationError.
FamilySpec parse_family(std::string_view text);
FamilySpec load_family(const std::filesystem::path& path);

/// Canonical family-file text; parse_family(render_family(s)) == s.
std::string render_family(const FamilySpec& spec);

/// 64-bit FNV-1a of the canonical rendering, as 16 hex digits.
std::string family_hash(const FamilySpec& spec);

/// Arithmetic genus of y^2 = f with deg f = d.
int hyperelliptic_genus(int d) noexcept;

/// A validated family with its characteristic-zero discriminant data.
class FamilyModel {
 public:
  explicit FamilyModel(FamilySpec spec);

  const FamilySpec& spec() const noexcept { return spec_; }
  const std::string& hash() const noexcept { return hash_; }

  /// F for one-cover kinds, F1*F2 for multicover: the polynomial whose repeated
  /// roots in x mark singular fibers.
  const BivarPoly& fiber_polynomial() const noexcept { return fiber_poly_; }
  /// Res_x(H, dH/dx) in Z[t].
  const zpoly::ZPoly& discriminant() const noexcept { return discriminant_; }

  /// Reason p belongs to the bad set S, or nullopt when p is good.
  std::optional<std::string> bad_reason(std::uint32_t p) const;
  bool is_bad(std::uint32_t p) const { return bad_reason(p).has_value(); }

  /// True when p divides the discriminant or leading coefficient of some trace curve.
  bool is_bad_trace_prime(std::uint32_t p) const;

  /// Family coefficients reduced mod p: per poly, per x-degree, an ascending
  /// polynomial in t.
  std::vector<modp::BiPoly> reduce(const FieldCtx& ctx) const;

 private:
  FamilySpec spec_;
  std::string hash_;
  BivarPoly fiber_poly_;
  zpoly::ZPoly discriminant_;
  int discriminant_roots_ = 0;
  std::vector<zpoly::BigInt> trace_discriminants_;
};

/// Every bad prime up to `scan_bound`, together with the declared extra primes.
std::set<std::uint32_t> bad_primes(const FamilyModel& model, std::uint32_t scan_bound);

/// A point of P^1(F_p).
struct FiberPoint {
  bool at_infinity = false;
  residue_t c = 0;

  static FiberPoint finite(residue_t c) { return {false, c}; }
  static FiberPoint infinity() { return {true, 0}; }
  friend bool operator==(const FiberPoint&, const FiberPoint&) = default;
};

/// The specialized fiber: the univariate polynomial(s) F_i(x, c) mod p.
struct FiberModel {
  FiberPoint point;
  FamilyKind kind = FamilyKind::hyperelliptic;
  std::uint32_t p = 0;
  std::vector<modp::Poly> polys;    // empty for the infinity marker
  std::vector<int> generic_degrees;  // x-degree of each family poly
  std::optional<unsigned> declared_points_at_infinity;
};

/// Throws BadPrime when p is in S.
FiberModel fiber_at(const FamilyModel& model, const FieldCtx& ctx, FiberPoint c);

/// Specialization without the bad-prime check, from coefficients already reduced by
/// FamilyModel::reduce.
FiberModel specialize(const FamilyModel& model, const FieldCtx& ctx,
                      const std::vector<modp::BiPoly>& reduced, FiberPoint c);

/// True when some F_i(x, c) drops x-degree, or the fiber polynomial has a repeated root.
bool is_singular_fiber(const FieldCtx& ctx, const FiberModel& fiber);

/// The finite c in F_p whose fiber is singular, ascending. Throws BadPrime.
std::vector<residue_t> discriminant_locus(const FamilyModel& model, const FieldCtx& ctx);

}  // namespace nagao
