#include "nagao/poly_modp.hpp"

#include <algorithm>
#include <cassert>

namespace nagao::modp {

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const Poly& f) noexcept { return static_cast<int>(f.size()) - 1; }

residue_t leading(const Poly& f) noexcept { return f.empty() ? 0 : f.back(); }

Poly add(const FieldCtx& ctx, const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    residue_t x = i < a.size() ? a[i] : 0;
    residue_t y = i < b.size() ? b[i] : 0;
    out[i] = ctx.add(x, y);
  }
  trim(out);
  return out;
}

Poly sub(const FieldCtx& ctx, const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    residue_t x = i < a.size() ? a[i] : 0;
    residue_t y = i < b.size() ? b[i] : 0;
    out[i] = ctx.sub(x, y);
  }
  trim(out);
  return out;
}

Poly mul(const FieldCtx& ctx, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = ctx.add(out[i + j], ctx.mul(a[i], b[j]));
  }
  trim(out);
  return out;
}

Poly scale(const FieldCtx& ctx, const Poly& a, residue_t k) {
  Poly out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = ctx.mul(a[i], k);
  trim(out);
  return out;
}

Poly derivative(const FieldCtx& ctx, const Poly& f) {
  if (f.size() <= 1) return {};
  Poly out(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i) out[i - 1] = ctx.mul(f[i], ctx.reduce(static_cast<std::int64_t>(i)));
  trim(out);
  return out;
}

Poly make_monic(const FieldCtx& ctx, const Poly& f) {
  if (f.empty()) return {};
  return scale(ctx, f, ctx.inv(f.back()));
}

std::pair<Poly, Poly> divmod(const FieldCtx& ctx, const Poly& a, const Poly& b) {
  assert(!b.empty());
  Poly r = a;
  trim(r);
  if (r.size() < b.size()) return {Poly{}, r};
  Poly q(r.size() - b.size() + 1, 0);
  const residue_t inv_lead = ctx.inv(b.back());
  for (std::size_t k = q.size(); k-- > 0;) {
    const residue_t coef = ctx.mul(r[k + b.size() - 1], inv_lead);
    q[k] = coef;
    if (coef == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[k + j] = ctx.sub(r[k + j], ctx.mul(coef, b[j]));
  }
  trim(q);
  trim(r);
  return {q, r};
}

Poly gcd(const FieldCtx& ctx, Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = divmod(ctx, a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(ctx, a);
}

residue_t evaluate(const FieldCtx& ctx, const Poly& f, residue_t x) noexcept {
  residue_t acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = ctx.add(ctx.mul(acc, x), *it);
  return acc;
}

bool is_squarefree(const FieldCtx& ctx, const Poly& f) {
  if (f.empty()) return false;
  return degree(gcd(ctx, f, derivative(ctx, f))) == 0;
}

namespace {

// g(x) = f(x^p) has every exponent divisible by p; over F_p its p-th root is f.
Poly pth_root(const FieldCtx& ctx, const Poly& g) {
  Poly out;
  for (std::size_t i = 0; i < g.size(); i += ctx.p()) out.push_back(g[i]);
  trim(out);
  return out;
}

void factor_into(const FieldCtx& ctx, const Poly& f, unsigned weight,
                 std::vector<std::pair<Poly, unsigned>>& out) {
  if (degree(f) <= 0) return;
  Poly c = gcd(ctx, f, derivative(ctx, f));
  Poly w = divmod(ctx, make_monic(ctx, f), c).first;
  unsigned i = 1;
  while (degree(w) > 0) {
    Poly y = gcd(ctx, w, c);
    Poly z = divmod(ctx, w, y).first;
    if (degree(z) > 0) out.emplace_back(make_monic(ctx, z), i * weight);
    ++i;
    w = std::move(y);
    c = divmod(ctx, c, w).first;
  }
  if (degree(c) > 0) factor_into(ctx, pth_root(ctx, c), weight * ctx.p(), out);
}

}  // namespace

std::vector<std::pair<Poly, unsigned>> squarefree_factorization(const FieldCtx& ctx, const Poly& f) {
  std::vector<std::pair<Poly, unsigned>> out;
  factor_into(ctx, f, 1, out);
  return out;
}

SquareSplit split_square(const FieldCtx& ctx, const Poly& f) {
  SquareSplit out;
  out.lead = leading(f);
  out.root = Poly{1};
  out.odd = Poly{1};
  for (const auto& [factor, mult] : squarefree_factorization(ctx, f)) {
    for (unsigned k = 0; k < mult / 2; ++k) out.root = mul(ctx, out.root, factor);
    if (mult % 2 == 1) out.odd = mul(ctx, out.odd, factor);
  }
  return out;
}

namespace {

// Arithmetic on polynomials in x over the Euclidean domain F_p[t].

void trim_bi(BiPoly& h) {
  for (auto& c : h) trim(c);
  while (!h.empty() && h.back().empty()) h.pop_back();
}

int degree_x(const BiPoly& h) { return static_cast<int>(h.size()) - 1; }

BiPoly derivative_x(const FieldCtx& ctx, const BiPoly& h) {
  BiPoly out;
  for (std::size_t i = 1; i < h.size(); ++i) out.push_back(scale(ctx, h[i], ctx.reduce(static_cast<std::int64_t>(i))));
  trim_bi(out);
  return out;
}

// lc(b)^(deg a - deg b + 1) * a mod b
BiPoly pseudo_remainder(const FieldCtx& ctx, BiPoly a, const BiPoly& b) {
  const int db = degree_x(b);
  const Poly& lb = b.back();
  int pending = degree_x(a) - db + 1;
  while (degree_x(a) >= db && !a.empty()) {
    const Poly la = a.back();
    const std::size_t shift = a.size() - b.size();
    for (auto& c : a) c = mul(ctx, c, lb);
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = sub(ctx, a[shift + j], mul(ctx, la, b[j]));
    trim_bi(a);
    --pending;
  }
  for (; pending > 0; --pending) {
    for (auto& c : a) c = mul(ctx, c, lb);
  }
  trim_bi(a);
  return a;
}

BiPoly primitive_part(const FieldCtx& ctx, BiPoly h) {
  Poly content;
  for (const auto& c : h) content = gcd(ctx, content, c);
  if (degree(content) <= 0) return h;
  for (auto& c : h) c = divmod(ctx, c, content).first;
  return h;
}

}  // namespace

bool squarefree_over_function_field(const FieldCtx& ctx, BiPoly h) {
  trim_bi(h);
  if (h.empty()) return false;
  BiPoly a = primitive_part(ctx, h);
  BiPoly b = derivative_x(ctx, a);
  if (b.empty()) return degree_x(a) == 0;
  b = primitive_part(ctx, b);
  while (!b.empty()) {
    BiPoly r = primitive_part(ctx, pseudo_remainder(ctx, a, b));
    a = std::move(b);
    b = std::move(r);
  }
  return degree_x(a) == 0;
}

}  // namespace nagao::modp
