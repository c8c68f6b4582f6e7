#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "nagao/bivar_poly.hpp"

/// Exact arithmetic over Z[t] for the generic (characteristic zero) data of a family.
namespace nagao::zpoly {

using BigInt = boost::multiprecision::cpp_int;
/// Ascending coefficients, trimmed.
using ZPoly = std::vector<BigInt>;

/// Determinant of a square integer matrix (fraction-free Bareiss elimination).
BigInt determinant(std::vector<std::vector<BigInt>> m);

/// Res(a, b) for univariate integer polynomials taken with formal degrees
/// `deg_a`, `deg_b` (coefficients beyond the true degree read as zero).
BigInt resultant(const std::vector<BigInt>& a, int deg_a, const std::vector<BigInt>& b, int deg_b);

/// Res_x(H, dH/dx) as a polynomial in t, with H taken at its generic x-degree.
/// Zero exactly when H has a repeated factor in x over Q(t).
ZPoly discriminant_in_t(const BivarPoly& h);

/// Number of distinct complex roots of a nonzero polynomial: deg f - deg gcd(f, f').
int distinct_root_count(const ZPoly& f);

/// Residue of an integer modulo a (small) positive modulus.
std::uint32_t mod_small(const BigInt& v, std::uint32_t p);

}  // namespace nagao::zpoly
