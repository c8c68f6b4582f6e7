#include "nagao/fiber_trace.hpp"

#include <algorithm>

#include "nagao/error.hpp"

namespace nagao {

namespace {

bool degree_dropped(const FiberModel& fiber) {
  for (std::size_t i = 0; i < fiber.polys.size(); ++i) {
    if (modp::degree(fiber.polys[i]) != fiber.generic_degrees[i]) return true;
  }
  return false;
}

// Points at infinity of the smooth model of y^2 = f.
std::uint32_t hyperelliptic_infinity(const FieldCtx& ctx, const modp::Poly& f) {
  if (modp::degree(f) % 2 == 1) return 1;
  return static_cast<std::uint32_t>(1 + ctx.chi(modp::leading(f)));
}

const FiberOverride* find_override(const FamilySpec& spec, FiberClass c) {
  for (const auto& o : spec.overrides) {
    if (o.fiber_class == c) return &o;
  }
  return nullptr;
}

// A constant family X = C0 x P^1 has C0 itself above infinity; `finite` is any finite record.
FiberTraceRecord infinity_record(const FieldCtx& ctx, const FamilyModel& model, const FiberTraceRecord& finite) {
  const InfinityRule& rule = model.spec().infinity;
  FiberTraceRecord r;
  if (model.spec().kind == FamilyKind::constant) {
    r = finite;
    r.c = FiberPoint::infinity();
    return r;
  }
  r.c = FiberPoint::infinity();
  r.m = rule.kind == InfinityRule::Kind::affine_plus ? rule.m : 1;
  r.a = 0;
  r.N = 1 + static_cast<std::uint64_t>(ctx.p()) * r.m;
  return r;
}

// Completes a finite fiber record from its affine count.
std::optional<FiberTraceRecord> finish_record(const FieldCtx& ctx, const FamilyModel& model, const FiberModel& fiber,
                                              std::uint64_t affine, Unsupported* unsupported) {
  FiberTraceRecord r;
  r.c = fiber.point;
  r.singular = is_singular_fiber(ctx, fiber);
  const auto count = component_count(ctx, fiber);
  if (const auto* m = std::get_if<std::uint32_t>(&count)) {
    r.m = *m;
    r.N = affine + points_at_infinity(ctx, fiber);
  } else {
    const auto& u = std::get<Unsupported>(count);
    const FiberOverride* o = find_override(model.spec(), u.fiber_class);
    if (o == nullptr) {
      if (unsupported != nullptr) *unsupported = u;
      return std::nullopt;
    }
    r.m = o->m;
    r.N = affine + o->points_at_infinity;
  }
  r.a = 1 + static_cast<std::int64_t>(ctx.p()) * r.m - static_cast<std::int64_t>(r.N);
  return r;
}

}  // namespace

std::uint64_t count_affine(const FieldCtx& ctx, const FiberModel& fiber) {
  if (fiber.point.at_infinity) throw DomainError("count_affine needs a finite fiber");
  const std::uint32_t p = ctx.p();
  if (fiber.kind == FamilyKind::multicover) {
    const auto& f1 = fiber.polys.at(0);
    const auto& f2 = fiber.polys.at(1);
    std::uint64_t total = 0;
    for (residue_t x = 0; x < p; ++x) {
      total += static_cast<std::uint64_t>((1 + ctx.chi(modp::evaluate(ctx, f1, x))) *
                                          (1 + ctx.chi(modp::evaluate(ctx, f2, x))));
    }
    return total;
  }
  std::int64_t total = p;
  for (residue_t x = 0; x < p; ++x) total += ctx.chi(modp::evaluate(ctx, fiber.polys.at(0), x));
  return static_cast<std::uint64_t>(total);
}

std::uint32_t points_at_infinity(const FieldCtx& ctx, const FiberModel& fiber) {
  if (fiber.point.at_infinity) throw DomainError("points_at_infinity needs a finite fiber");
  if (degree_dropped(fiber)) {
    throw DegenerateDegree("fiber at c=" + std::to_string(fiber.point.c) + " loses x-degree mod " +
                           std::to_string(ctx.p()));
  }
  if (fiber.declared_points_at_infinity) return *fiber.declared_points_at_infinity;
  if (fiber.kind == FamilyKind::multicover) {
    throw ValidationError("multicover fibers need a declared affine_plus count");
  }
  return hyperelliptic_infinity(ctx, fiber.polys.at(0));
}

ComponentCount component_count(const FieldCtx& ctx, const FiberModel& fiber) {
  if (fiber.point.at_infinity) throw DomainError("component_count needs a finite fiber");
  if (degree_dropped(fiber)) return Unsupported{ctx.p(), fiber.point, FiberClass::degree_drop};
  if (!is_singular_fiber(ctx, fiber)) return std::uint32_t{1};
  if (fiber.kind == FamilyKind::multicover) return Unsupported{ctx.p(), fiber.point, FiberClass::multicover_singular};
  const auto split = modp::split_square(ctx, fiber.polys.at(0));
  if (modp::degree(split.odd) <= 0) return Unsupported{ctx.p(), fiber.point, FiberClass::square_fiber};
  // y^2 = s^2 * odd with odd nonconstant: the plane curve stays irreducible
  return std::uint32_t{1};
}

std::uint64_t normalization_count(const FieldCtx& ctx, const FiberModel& fiber) {
  if (fiber.kind == FamilyKind::multicover || fiber.point.at_infinity) {
    throw DomainError("normalization_count applies to finite hyperelliptic fibers");
  }
  const auto split = modp::split_square(ctx, fiber.polys.at(0));
  const modp::Poly g = modp::scale(ctx, split.odd, split.lead);
  std::int64_t total = ctx.p();
  for (residue_t x = 0; x < ctx.p(); ++x) total += ctx.chi(modp::evaluate(ctx, g, x));
  return static_cast<std::uint64_t>(total) + hyperelliptic_infinity(ctx, g);
}

std::optional<FiberTraceRecord> fiber_trace(const FieldCtx& ctx, const FamilyModel& model, FiberPoint c) {
  const FiberModel fiber = fiber_at(model, ctx, c);
  if (c.at_infinity) {
    if (model.spec().infinity.kind == InfinityRule::Kind::skip) return std::nullopt;
    FiberTraceRecord finite;
    if (model.spec().kind == FamilyKind::constant) finite = *fiber_trace(ctx, model, FiberPoint::finite(0));
    return infinity_record(ctx, model, finite);
  }
  Unsupported u;
  auto rec = finish_record(ctx, model, fiber, count_affine(ctx, fiber), &u);
  if (!rec) throw UnsupportedFiber(u.p, u.c.c, std::string(to_string(u.fiber_class)));
  return rec;
}

namespace {

// Values F(x, c) for all x, advanced c -> c+1 by forward differences in t.
class FiberValueStepper {
 public:
  FiberValueStepper(const FieldCtx& ctx, const modp::BiPoly& reduced) : ctx_(ctx) {
    const std::uint32_t p = ctx.p();
    int dt = 0;
    for (const auto& c : reduced) dt = std::max(dt, modp::degree(c));
    order_ = static_cast<std::size_t>(dt) + 1;
    // Forward differences need dt+1 distinct sample points.
    direct_ = order_ > p;
    if (direct_) {
      reduced_ = reduced;
      values_.assign(p, 0);
      load_direct(0);
      return;
    }
    diffs_.assign(order_, std::vector<residue_t>(p, 0));
    std::vector<residue_t> samples(order_);
    for (residue_t x = 0; x < p; ++x) {
      for (std::size_t k = 0; k < order_; ++k) {
        residue_t acc = 0;
        for (auto it = reduced.rbegin(); it != reduced.rend(); ++it) {
          acc = ctx.add(ctx.mul(acc, x), modp::evaluate(ctx, *it, static_cast<residue_t>(k)));
        }
        samples[k] = acc;
      }
      // Newton forward differences at c = 0
      for (std::size_t level = 0; level < order_; ++level) {
        diffs_[level][x] = samples[0];
        for (std::size_t k = 0; k + 1 < order_ - level; ++k) samples[k] = ctx.sub(samples[k + 1], samples[k]);
      }
    }
  }

  /// Values at the current c.
  const std::vector<residue_t>& values() const { return direct_ ? values_ : diffs_[0]; }

  void advance() {
    ++c_;
    if (direct_) {
      if (c_ < ctx_.p()) load_direct(c_);
      return;
    }
    const std::uint32_t p = ctx_.p();
    for (std::size_t level = 0; level + 1 < order_; ++level) {
      residue_t* dst = diffs_[level].data();
      const residue_t* src = diffs_[level + 1].data();
      for (std::uint32_t x = 0; x < p; ++x) {
        const residue_t s = dst[x] + src[x];
        dst[x] = s >= p ? s - p : s;
      }
    }
  }

 private:
  void load_direct(residue_t c) {
    for (residue_t x = 0; x < ctx_.p(); ++x) {
      residue_t acc = 0;
      for (auto it = reduced_.rbegin(); it != reduced_.rend(); ++it) {
        acc = ctx_.add(ctx_.mul(acc, x), modp::evaluate(ctx_, *it, c));
      }
      values_[x] = acc;
    }
  }

  const FieldCtx& ctx_;
  std::size_t order_ = 1;
  bool direct_ = false;
  residue_t c_ = 0;
  std::vector<std::vector<residue_t>> diffs_;
  modp::BiPoly reduced_;
  std::vector<residue_t> values_;
};

std::int64_t chi_sum(const std::int8_t* chi, const std::vector<residue_t>& v) {
  std::int64_t s = 0;
  for (residue_t x : v) s += chi[x];
  return s;
}

std::int64_t chi_product_sum(const std::int8_t* chi, const std::vector<residue_t>& v1,
                             const std::vector<residue_t>& v2) {
  std::int64_t s = 0;
  const std::size_t n = v1.size();
  for (std::size_t x = 0; x < n; ++x) {
    const int a = chi[v1[x]];
    const int b = chi[v2[x]];
    s += (1 + a) * (1 + b);
  }
  return s;
}

}  // namespace

PrimeFibers trace_all_fibers(const FieldCtx& ctx, const FamilyModel& model) {
  const std::uint32_t p = ctx.p();
  const auto reduced = model.reduce(ctx);
  const std::int8_t* chi = ctx.chi_table().data();
  const bool multicover = model.spec().kind == FamilyKind::multicover;

  bool t_free = true;
  for (const auto& f : model.spec().polys) t_free = t_free && f.deg_t() <= 0;

  std::vector<std::uint64_t> affine(p, 0);
  if (t_free) {
    // every finite fiber is the same curve
    FiberValueStepper s0(ctx, reduced[0]);
    std::uint64_t n = 0;
    if (multicover) {
      FiberValueStepper s1(ctx, reduced[1]);
      n = static_cast<std::uint64_t>(chi_product_sum(chi, s0.values(), s1.values()));
    } else {
      n = static_cast<std::uint64_t>(static_cast<std::int64_t>(p) + chi_sum(chi, s0.values()));
    }
    std::fill(affine.begin(), affine.end(), n);
  } else if (multicover) {
    FiberValueStepper s0(ctx, reduced[0]);
    FiberValueStepper s1(ctx, reduced[1]);
    for (residue_t c = 0; c < p; ++c) {
      affine[c] = static_cast<std::uint64_t>(chi_product_sum(chi, s0.values(), s1.values()));
      s0.advance();
      s1.advance();
    }
  } else {
    FiberValueStepper s0(ctx, reduced[0]);
    for (residue_t c = 0; c < p; ++c) {
      affine[c] = static_cast<std::uint64_t>(static_cast<std::int64_t>(p) + chi_sum(chi, s0.values()));
      s0.advance();
    }
  }

  PrimeFibers out;
  out.records.reserve(p + 1);
  for (residue_t c = 0; c < p; ++c) {
    if (t_free && c > 0) {
      out.records.push_back(out.records.front());
      out.records.back().c = FiberPoint::finite(c);
      continue;
    }
    const FiberModel fiber = specialize(model, ctx, reduced, FiberPoint::finite(c));
    Unsupported u;
    auto rec = finish_record(ctx, model, fiber, affine[c], &u);
    if (!rec) {
      out.unsupported = u;
      return out;
    }
    out.records.push_back(*rec);
  }
  if (model.spec().infinity.kind == InfinityRule::Kind::skip) {
    out.infinity_skipped = true;
  } else {
    out.records.push_back(infinity_record(ctx, model, out.records.front()));
  }
  return out;
}

}  // namespace nagao
