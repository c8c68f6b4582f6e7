#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nagao {

/// Sparse integer polynomial in x and t. Keys are (degree in x, degree in t);
/// the map never stores a zero coefficient.
class BivarPoly {
 public:
  using Key = std::pair<int, int>;

  BivarPoly() = default;
  static BivarPoly constant(std::int64_t c);
  static BivarPoly var_x();
  static BivarPoly var_t();

  /// Adds c * x^dx * t^dt. Throws ValidationError on 64-bit overflow.
  void add_term(int dx, int dt, std::int64_t c);

  const std::map<Key, std::int64_t>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::int64_t coeff(int dx, int dt) const;
  /// -1 for the zero polynomial.
  int deg_x() const noexcept;
  int deg_t() const noexcept;

  /// Coefficient of x^dx as an ascending polynomial in t (trimmed).
  std::vector<std::int64_t> coeff_in_t(int dx) const;

  BivarPoly operator-() const;
  friend BivarPoly operator+(const BivarPoly& a, const BivarPoly& b);
  friend BivarPoly operator-(const BivarPoly& a, const BivarPoly& b);
  friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b);
  friend bool operator==(const BivarPoly&, const BivarPoly&) = default;
  BivarPoly pow(unsigned e) const;

  /// Canonical text form, e.g. "x^3 - x + t^2"; parses back to the same polynomial.
  std::string to_string() const;

 private:
  std::map<Key, std::int64_t> terms_;
};

/// Parses an integer polynomial expression in the variables listed in
/// `allowed_vars` (a subset of "xt"). Grammar: integer literals, x, t, + - * ^,
/// parentheses, unary minus; ^ takes a non-negative integer literal and binds
/// tightest, then *, then + and -.
///
/// `line` and `column_offset` locate the expression inside a larger file for
/// ParseError reporting.
BivarPoly parse_poly(std::string_view text, std::string_view allowed_vars = "xt", int line = 1,
                     int column_offset = 1);

}  // namespace nagao
