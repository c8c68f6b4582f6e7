#include "nagao/oracle.hpp"

#include <cmath>

namespace nagao::oracle {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t k = 2; k <= n; ++k) {
    if (is_prime(k)) out.push_back(k);
  }
  return out;
}

namespace {

std::uint32_t square_roots(std::uint32_t v, std::uint32_t p) {
  std::uint32_t n = 0;
  for (std::uint64_t y = 0; y < p; ++y) {
    if (y * y % p == v) ++n;
  }
  return n;
}

std::uint32_t reduce(std::int64_t v, std::uint32_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

// coefficients of f(x, c) mod p, ascending in x
std::vector<std::uint32_t> specialize(const BivarPoly& f, std::uint32_t p, std::uint32_t c) {
  std::vector<std::uint32_t> out(std::max(f.deg_x(), 0) + 1, 0);
  for (const auto& [key, coef] : f.terms()) {
    std::uint64_t term = reduce(coef, p);
    for (int i = 0; i < key.second; ++i) term = term * c % p;
    out[key.first] = static_cast<std::uint32_t>((out[key.first] + term) % p);
  }
  return out;
}

}  // namespace

int legendre(std::int64_t a, std::uint32_t p) {
  const std::uint32_t r = reduce(a, p);
  if (r == 0) return 0;
  return square_roots(r, p) == 2 ? 1 : -1;
}

std::uint32_t eval_mod(const BivarPoly& f, std::uint32_t p, std::uint32_t x, std::uint32_t c) {
  std::uint64_t acc = 0;
  for (const auto& [key, coef] : f.terms()) {
    std::uint64_t term = reduce(coef, p);
    for (int i = 0; i < key.first; ++i) term = term * x % p;
    for (int i = 0; i < key.second; ++i) term = term * c % p;
    acc = (acc + term) % p;
  }
  return static_cast<std::uint32_t>(acc);
}

std::uint64_t affine_solutions(const FamilySpec& spec, std::uint32_t p, std::uint32_t c) {
  std::uint64_t n = 0;
  for (std::uint64_t x = 0; x < p; ++x) {
    const auto v1 = eval_mod(spec.polys[0], p, static_cast<std::uint32_t>(x), c);
    if (spec.kind != FamilyKind::multicover) {
      for (std::uint64_t y = 0; y < p; ++y) n += (y * y % p == v1) ? 1 : 0;
      continue;
    }
    const auto v2 = eval_mod(spec.polys[1], p, static_cast<std::uint32_t>(x), c);
    for (std::uint64_t y = 0; y < p; ++y) {
      for (std::uint64_t z = 0; z < p; ++z) n += (y * y % p == v1 && z * z % p == v2) ? 1 : 0;
    }
  }
  return n;
}

std::int64_t curve_trace(const BivarPoly& g, std::uint32_t p) {
  const auto f = specialize(g, p, 0);
  std::uint64_t points = 0;
  for (std::uint32_t x = 0; x < p; ++x) {
    for (std::uint64_t y = 0; y < p; ++y) points += (y * y % p == eval_mod(g, p, x, 0)) ? 1 : 0;
  }
  const int d = g.deg_x();
  // one branch at infinity for odd degree, otherwise the square roots of the leading coefficient
  points += (d % 2 == 1) ? 1 : square_roots(f[d], p);
  return static_cast<std::int64_t>(p) + 1 - static_cast<std::int64_t>(points);
}

SingularPoints hyperelliptic_singular_points(const BivarPoly& poly, std::uint32_t p, std::uint32_t c) {
  SingularPoints out;
  const auto f = specialize(poly, p, c);
  for (std::uint32_t x0 = 0; x0 < p; ++x0) {
    // multiplicity of x0 as a root, by repeated synthetic division
    std::vector<std::uint32_t> h = f;
    while (h.size() > 1 && h.back() == 0) h.pop_back();
    unsigned k = 0;
    for (;;) {
      if (h.size() <= 1 && (h.empty() || h[0] == 0)) break;
      std::uint64_t rem = 0;
      std::vector<std::uint32_t> q(h.size() > 1 ? h.size() - 1 : 0, 0);
      for (std::size_t i = h.size(); i-- > 0;) {
        rem = (rem * x0 + h[i]) % p;
        if (i > 0) q[i - 1] = static_cast<std::uint32_t>(rem);
      }
      if (rem != 0) break;
      ++k;
      h = q;
    }
    if (k < 2) continue;
    ++out.rational_nodes;
    if (k % 2 == 1) {
      out.points_above += 1;
      continue;
    }
    std::uint64_t hv = 0;
    for (std::size_t i = h.size(); i-- > 0;) hv = (hv * x0 + h[i]) % p;
    out.points_above += square_roots(static_cast<std::uint32_t>(hv), p);
  }
  return out;
}

double chebyshev_theta(std::uint32_t T) {
  std::vector<bool> composite(T + 1, false);
  double theta = 0.0;
  for (std::uint64_t i = 2; i <= T; ++i) {
    if (composite[i]) continue;
    theta += std::log(static_cast<double>(i));
    for (std::uint64_t j = i * i; j <= T; j += i) composite[j] = true;
  }
  return theta;
}

}  // namespace nagao::oracle
