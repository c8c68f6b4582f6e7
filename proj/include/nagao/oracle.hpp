#pragma once

#include <cstdint>
#include <vector>

#include "nagao/bivar_poly.hpp"
#include "nagao/family.hpp"

/// Brute-force reference computations. Everything here works from the integer
/// coefficients by direct enumeration and shares no code path with the kernel.
namespace nagao::oracle {

bool is_prime(std::uint64_t n);
std::vector<std::uint32_t> primes_up_to(std::uint32_t n);

/// Legendre symbol by enumerating squares.
int legendre(std::int64_t a, std::uint32_t p);

/// F(x, c) mod p straight from the integer terms.
std::uint32_t eval_mod(const BivarPoly& f, std::uint32_t p, std::uint32_t x, std::uint32_t c);

/// Number of (x, y) or (x, y, z) in F_p with y^2 = F(x,c) [and z^2 = F2(x,c)].
std::uint64_t affine_solutions(const FamilySpec& spec, std::uint32_t p, std::uint32_t c);

/// p + 1 - #C(F_p) for the smooth model of y^2 = g(x), by enumeration.
std::int64_t curve_trace(const BivarPoly& g, std::uint32_t p);

/// Singular points of the affine plane curve y^2 = f(x) over F_p and the points of
/// the normalization lying over them.
struct SingularPoints {
  std::uint32_t rational_nodes = 0;
  std::uint32_t points_above = 0;
};
SingularPoints hyperelliptic_singular_points(const BivarPoly& f, std::uint32_t p, std::uint32_t c);

/// Chebyshev theta(T) = sum of log p over p <= T.
double chebyshev_theta(std::uint32_t T);

}  // namespace nagao::oracle
