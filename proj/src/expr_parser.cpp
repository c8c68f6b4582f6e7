#include <cctype>
#include <limits>

#include "nagao/bivar_poly.hpp"
#include "nagao/error.hpp"

namespace nagao {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw ValidationError("integer overflow in polynomial coefficient");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw ValidationError("integer overflow in polynomial coefficient");
  return r;
}

}  // namespace

BivarPoly BivarPoly::constant(std::int64_t c) {
  BivarPoly out;
  out.add_term(0, 0, c);
  return out;
}

BivarPoly BivarPoly::var_x() {
  BivarPoly out;
  out.add_term(1, 0, 1);
  return out;
}

BivarPoly BivarPoly::var_t() {
  BivarPoly out;
  out.add_term(0, 1, 1);
  return out;
}

void BivarPoly::add_term(int dx, int dt, std::int64_t c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(Key{dx, dt}, c);
  if (!inserted) {
    it->second = checked_add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

std::int64_t BivarPoly::coeff(int dx, int dt) const {
  auto it = terms_.find(Key{dx, dt});
  return it == terms_.end() ? 0 : it->second;
}

int BivarPoly::deg_x() const noexcept {
  int d = -1;
  for (const auto& [k, v] : terms_) d = std::max(d, k.first);
  return d;
}

int BivarPoly::deg_t() const noexcept {
  int d = -1;
  for (const auto& [k, v] : terms_) d = std::max(d, k.second);
  return d;
}

std::vector<std::int64_t> BivarPoly::coeff_in_t(int dx) const {
  std::vector<std::int64_t> out;
  for (const auto& [k, v] : terms_) {
    if (k.first != dx) continue;
    if (static_cast<int>(out.size()) <= k.second) out.resize(k.second + 1, 0);
    out[k.second] = v;
  }
  return out;
}

BivarPoly BivarPoly::operator-() const {
  BivarPoly out;
  for (const auto& [k, v] : terms_) out.add_term(k.first, k.second, checked_mul(v, -1));
  return out;
}

BivarPoly operator+(const BivarPoly& a, const BivarPoly& b) {
  BivarPoly out = a;
  for (const auto& [k, v] : b.terms_) out.add_term(k.first, k.second, v);
  return out;
}

BivarPoly operator-(const BivarPoly& a, const BivarPoly& b) { return a + (-b); }

BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
  BivarPoly out;
  for (const auto& [ka, va] : a.terms_) {
    for (const auto& [kb, vb] : b.terms_) {
      out.add_term(ka.first + kb.first, ka.second + kb.second, checked_mul(va, vb));
    }
  }
  return out;
}

BivarPoly BivarPoly::pow(unsigned e) const {
  BivarPoly acc = constant(1);
  for (unsigned i = 0; i < e; ++i) acc = acc * *this;
  return acc;
}

std::string BivarPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto [dx, dt] = it->first;
    std::int64_t c = it->second;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    // magnitude as unsigned so INT64_MIN renders correctly
    const std::uint64_t mag = c < 0 ? 0 - static_cast<std::uint64_t>(c) : static_cast<std::uint64_t>(c);
    std::string mono;
    auto append = [&mono](const std::string& piece) {
      if (!mono.empty()) mono += "*";
      mono += piece;
    };
    if (dx == 1) append("x");
    if (dx > 1) append("x^" + std::to_string(dx));
    if (dt == 1) append("t");
    if (dt > 1) append("t^" + std::to_string(dt));
    if (mono.empty()) {
      out += std::to_string(mag);
    } else if (mag == 1) {
      out += mono;
    } else {
      out += std::to_string(mag) + "*" + mono;
    }
  }
  return out;
}

namespace {

class ExprParser {
 public:
  ExprParser(std::string_view text, std::string_view allowed, int line, int col_offset)
      : text_(text), allowed_(allowed), line_(line), col_offset_(col_offset) {}

  BivarPoly parse() {
    skip_ws();
    if (pos_ >= text_.size()) fail("empty expression");
    BivarPoly out = expr();
    skip_ws();
    if (pos_ < text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_, col_offset_ + static_cast<int>(pos_));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char ch) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  BivarPoly expr() {
    BivarPoly acc = term();
    for (;;) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  BivarPoly term() {
    BivarPoly acc = unary();
    while (accept('*')) acc = acc * unary();
    return acc;
  }

  BivarPoly unary() {
    if (accept('-')) return -unary();
    return power();
  }

  BivarPoly power() {
    BivarPoly base = primary();
    if (accept('^')) {
      skip_ws();
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        fail("exponent must be a non-negative integer literal");
      }
      const std::int64_t e = integer();
      if (e > 64) fail("exponent too large");
      return base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  BivarPoly primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      BivarPoly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) return BivarPoly::constant(integer());
    if (ch == 'x' || ch == 't') {
      if (allowed_.find(ch) == std::string_view::npos) fail(std::string("variable '") + ch + "' not allowed here");
      ++pos_;
      return ch == 'x' ? BivarPoly::var_x() : BivarPoly::var_t();
    }
    fail(std::string("unexpected '") + ch + "'");
  }

  std::int64_t integer() {
    std::int64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = checked_add(checked_mul(v, 10), text_[pos_] - '0');
      ++pos_;
    }
    return v;
  }

  std::string_view text_;
  std::string_view allowed_;
  int line_;
  int col_offset_;
  std::size_t pos_ = 0;
};

}  // namespace

BivarPoly parse_poly(std::string_view text, std::string_view allowed_vars, int line, int column_offset) {
  try {
    return ExprParser(text, allowed_vars, line, column_offset).parse();
  } catch (const ValidationError& e) {
    throw ParseError(e.what(), line, column_offset);
  }
}

}  // namespace nagao
