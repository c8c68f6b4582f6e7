#pragma once

#include <utility>
#include <vector>

#include "nagao/prime_field.hpp"

/// Dense polynomial arithmetic over F_p and over F_p[t].
namespace nagao::modp {

/// Ascending coefficients, trimmed: the zero polynomial is the empty vector.
using Poly = std::vector<residue_t>;

/// Polynomial in x whose coefficients are polynomials in t (index = x-degree).
using BiPoly = std::vector<Poly>;

void trim(Poly& f);
int degree(const Poly& f) noexcept;
residue_t leading(const Poly& f) noexcept;

Poly add(const FieldCtx& ctx, const Poly& a, const Poly& b);
Poly sub(const FieldCtx& ctx, const Poly& a, const Poly& b);
Poly mul(const FieldCtx& ctx, const Poly& a, const Poly& b);
Poly scale(const FieldCtx& ctx, const Poly& a, residue_t k);
Poly derivative(const FieldCtx& ctx, const Poly& f);
Poly make_monic(const FieldCtx& ctx, const Poly& f);
std::pair<Poly, Poly> divmod(const FieldCtx& ctx, const Poly& a, const Poly& b);
/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const FieldCtx& ctx, Poly a, Poly b);
residue_t evaluate(const FieldCtx& ctx, const Poly& f, residue_t x) noexcept;

bool is_squarefree(const FieldCtx& ctx, const Poly& f);

/// Monic squarefree factors with their multiplicities (Yun, with p-th roots).
std::vector<std::pair<Poly, unsigned>> squarefree_factorization(const FieldCtx& ctx, const Poly& f);

/// f = lead * root^2 * odd, with `root` and `odd` monic and `odd` squarefree.
struct SquareSplit {
  residue_t lead = 0;
  Poly root;
  Poly odd;
};
SquareSplit split_square(const FieldCtx& ctx, const Poly& f);

/// True when H(x, t) has no repeated factor in x over F_p(t), i.e. gcd(H, dH/dx) is
/// constant in x. Computed exactly with a primitive remainder sequence over F_p[t].
bool squarefree_over_function_field(const FieldCtx& ctx, BiPoly h);

}  // namespace nagao::modp
