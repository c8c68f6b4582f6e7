#include "nagao/integer_poly.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace nagao::zpoly {

using Rational = boost::multiprecision::cpp_rational;
using QPoly = std::vector<Rational>;

BigInt determinant(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

BigInt resultant(const std::vector<BigInt>& a, int deg_a, const std::vector<BigInt>& b, int deg_b) {
  const int n = deg_a + deg_b;
  if (n == 0) return 1;
  auto at = [](const std::vector<BigInt>& f, int i) -> BigInt {
    return i >= 0 && i < static_cast<int>(f.size()) ? f[i] : BigInt(0);
  };
  std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n, 0));
  // rows: deg_b shifted copies of a, then deg_a shifted copies of b (descending powers)
  for (int r = 0; r < deg_b; ++r) {
    for (int j = 0; j <= deg_a; ++j) m[r][r + j] = at(a, deg_a - j);
  }
  for (int r = 0; r < deg_a; ++r) {
    for (int j = 0; j <= deg_b; ++j) m[deg_b + r][r + j] = at(b, deg_b - j);
  }
  return determinant(std::move(m));
}

namespace {

void trim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

void trim(QPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

QPoly qrem(QPoly a, const QPoly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const Rational k = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= k * b[j];
    a.pop_back();
    trim(a);
  }
  return a;
}

}  // namespace

ZPoly discriminant_in_t(const BivarPoly& h) {
  const int n = h.deg_x();
  const int e = std::max(h.deg_t(), 0);
  if (n <= 0) return {};
  // deg_t Res(H, H_x) <= e*(n-1) + (e)*n
  const int points = e * (2 * n - 1) + 1;

  std::vector<Rational> xs;
  std::vector<Rational> values;
  for (int k = 0; k < points; ++k) {
    std::vector<BigInt> f(n + 1, 0);
    for (const auto& [key, c] : h.terms()) {
      BigInt tp = 1;
      for (int i = 0; i < key.second; ++i) tp *= k;
      f[key.first] += c * tp;
    }
    std::vector<BigInt> df(n, 0);
    for (int i = 1; i <= n; ++i) df[i - 1] = f[i] * i;
    xs.emplace_back(k);
    values.emplace_back(resultant(f, n, df, n - 1));
  }

  // Newton divided differences, then expand to monomial form.
  std::vector<Rational> coef = values;
  for (int j = 1; j < points; ++j) {
    for (int i = points - 1; i >= j; --i) coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j]);
  }
  QPoly acc;
  for (int i = points - 1; i >= 0; --i) {
    // acc = acc * (t - xs[i]) + coef[i]
    QPoly next(acc.size() + 1, 0);
    for (std::size_t j = 0; j < acc.size(); ++j) {
      next[j + 1] += acc[j];
      next[j] -= acc[j] * xs[i];
    }
    next[0] += coef[i];
    acc = std::move(next);
  }
  ZPoly out;
  for (const auto& c : acc) out.push_back(boost::multiprecision::numerator(c));
  trim(out);
  return out;
}

int distinct_root_count(const ZPoly& f) {
  if (f.empty()) return 0;
  QPoly a(f.begin(), f.end());
  QPoly b;
  for (std::size_t i = 1; i < f.size(); ++i) b.emplace_back(f[i] * static_cast<int>(i));
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly r = qrem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return static_cast<int>(f.size()) - 1 - (static_cast<int>(a.size()) - 1);
}

std::uint32_t mod_small(const BigInt& v, std::uint32_t p) {
  BigInt r = v % p;
  if (r < 0) r += p;
  return r.convert_to<std::uint32_t>();
}

}  // namespace nagao::zpoly
