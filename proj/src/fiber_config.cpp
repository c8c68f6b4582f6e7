#include "nagao/fiber_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include "nagao/error.hpp"

namespace nagao {

int legendre(std::int64_t d, std::uint32_t p) {
  std::int64_t r = d % static_cast<std::int64_t>(p);
  if (r < 0) r += p;
  if (r == 0) return 0;
  std::uint64_t base = static_cast<std::uint64_t>(r);
  std::uint64_t acc = 1;
  for (std::uint64_t e = (p - 1) / 2; e != 0; e >>= 1U) {
    if (e & 1U) acc = acc * base % p;
    base = base * base % p;
  }
  return acc == 1 ? 1 : -1;
}

bool PrimeCondition::holds(std::uint32_t p) const {
  if (kind == Kind::character) return legendre(d, p) == expected;
  std::int64_t r = static_cast<std::int64_t>(p) % modulus;
  return r == residue;
}

unsigned MRule::eval(std::uint32_t p) const {
  for (const auto& b : branches) {
    if (b.when.holds(p)) return b.value;
  }
  return fallback;
}

unsigned MRule::max_value() const {
  unsigned m = fallback;
  for (const auto& b : branches) m = std::max(m, b.value);
  return m;
}

std::string MRule::render() const {
  std::string out;
  for (const auto& b : branches) {
    out += std::to_string(b.value) + " if ";
    if (b.when.kind == PrimeCondition::Kind::character) {
      out += "chi(" + std::to_string(b.when.d) + ")=" + std::to_string(b.when.expected);
    } else {
      out += "p%" + std::to_string(b.when.modulus) + "=" + std::to_string(b.when.residue);
    }
    out += " else ";
  }
  return out + std::to_string(fallback);
}

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view s) : s_(s) {}

  void ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    ws();
    return i_ >= s_.size();
  }
  bool lit(std::string_view word) {
    ws();
    if (s_.substr(i_, word.size()) == word) {
      i_ += word.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view word) {
    if (!lit(word)) throw ValidationError("expected '" + std::string(word) + "' in rule: " + std::string(s_));
  }
  std::int64_t integer() {
    ws();
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + i_, s_.data() + s_.size(), v);
    if (ec != std::errc{}) throw ValidationError("expected integer in rule: " + std::string(s_));
    i_ = static_cast<std::size_t>(ptr - s_.data());
    return v;
  }
  std::string_view rest() const { return s_.substr(i_); }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

unsigned rule_value(std::int64_t v) {
  if (v < 0 || v > 1000) throw ValidationError("component count out of range: " + std::to_string(v));
  return static_cast<unsigned>(v);
}

}  // namespace

MRule parse_m_rule(std::string_view text) {
  Cursor cur(text);
  MRule rule;
  for (;;) {
    const unsigned value = rule_value(cur.integer());
    if (cur.done()) {
      rule.fallback = value;
      return rule;
    }
    cur.expect("if");
    PrimeCondition cond;
    if (cur.lit("chi(")) {
      cond.kind = PrimeCondition::Kind::character;
      cond.d = cur.integer();
      cur.expect(")");
      cur.expect("=");
      cond.expected = static_cast<int>(cur.integer());
      if (cond.expected < -1 || cond.expected > 1) throw ValidationError("character value must be -1, 0 or 1");
    } else if (cur.lit("p%")) {
      cond.kind = PrimeCondition::Kind::congruence;
      cond.modulus = cur.integer();
      if (cond.modulus < 1) throw ValidationError("modulus must be positive");
      cur.expect("=");
      cond.residue = cur.integer();
      if (cond.residue < 0 || cond.residue >= cond.modulus) throw ValidationError("residue out of range");
    } else {
      throw ValidationError("unknown condition in rule: " + std::string(text));
    }
    cur.expect("else");
    rule.branches.push_back({cond, value});
  }
}

FiberDescriptor parse_fiber_descriptor(std::string_view text) {
  FiberDescriptor out;
  Cursor cur(text);
  cur.ws();
  std::string_view rest = cur.rest();
  const auto label_end = rest.find_first_of(" \t");
  if (rest.empty() || label_end == 0) throw ValidationError("fiber line needs a label");
  out.label = std::string(rest.substr(0, label_end));
  if (out.label.find('=') != std::string::npos) throw ValidationError("fiber line needs a label");
  Cursor fields(label_end == std::string_view::npos ? std::string_view{} : rest.substr(label_end));

  bool have_n = false;
  bool have_orbits = false;
  bool have_m = false;
  while (!fields.done()) {
    if (fields.lit("n=")) {
      const auto v = fields.integer();
      if (v < 1 || v > 1000) throw ValidationError("fiber n must be in [1, 1000]");
      out.n = static_cast<unsigned>(v);
      have_n = true;
    } else if (fields.lit("orbits=")) {
      const auto v = fields.integer();
      if (v < 1 || v > 1000) throw ValidationError("fiber orbits must be in [1, 1000]");
      out.orbits = static_cast<unsigned>(v);
      have_orbits = true;
    } else if (fields.lit("m=\"")) {
      std::string_view r = fields.rest();
      const auto close = r.find('"');
      if (close == std::string_view::npos) throw ValidationError("unterminated m rule");
      out.m_rule = parse_m_rule(r.substr(0, close));
      fields = Cursor(r.substr(close + 1));
      have_m = true;
    } else {
      throw ValidationError("unknown fiber field: " + std::string(fields.rest()));
    }
  }
  if (!have_n || !have_orbits || !have_m) throw ValidationError("fiber line needs n=, orbits= and m=");
  if (out.orbits > out.n) throw ValidationError("fiber " + out.label + ": orbits exceeds n");
  if (out.m_rule.max_value() > out.n) throw ValidationError("fiber " + out.label + ": m rule exceeds n");
  return out;
}

std::string render_fiber_descriptor(const FiberDescriptor& f) {
  return f.label + " n=" + std::to_string(f.n) + " orbits=" + std::to_string(f.orbits) + " m=\"" +
         f.m_rule.render() + "\"";
}

}  // namespace nagao
