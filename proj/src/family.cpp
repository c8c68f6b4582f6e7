#include "nagao/family.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "nagao/error.hpp"

namespace nagao {

std::string_view to_string(FiberClass c) {
  switch (c) {
    case FiberClass::degree_drop:
      return "degree_drop";
    case FiberClass::square_fiber:
      return "square_fiber";
    case FiberClass::multicover_singular:
      return "multicover_singular";
  }
  return "?";
}

int hyperelliptic_genus(int d) noexcept { return d < 1 ? 0 : (d - 1) / 2; }

namespace {

std::string_view kind_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::hyperelliptic:
      return "hyperelliptic";
    case FamilyKind::multicover:
      return "multicover";
    case FamilyKind::constant:
      return "constant";
  }
  return "?";
}

std::string_view trim_view(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Removes a trailing '#' comment that is not inside a quoted string.
std::string_view strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<std::int64_t> to_int(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<FiberClass> fiber_class_from(std::string_view s) {
  if (s == "degree_drop") return FiberClass::degree_drop;
  if (s == "square_fiber") return FiberClass::square_fiber;
  if (s == "multicover_singular") return FiberClass::multicover_singular;
  return std::nullopt;
}

zpoly::BigInt integer_content(const std::vector<std::int64_t>& coeffs) {
  zpoly::BigInt g = 0;
  for (auto c : coeffs) g = boost::multiprecision::gcd(g, zpoly::BigInt(c));
  return g;
}

void validate(const FamilySpec& spec) {
  if (spec.name.empty()) throw ValidationError("family name missing");
  if (spec.name.find('"') != std::string::npos) throw ValidationError("family name may not contain '\"'");
  if (spec.genus < 1) throw ValidationError("genus must be at least 1");
  const std::size_t want = spec.kind == FamilyKind::multicover ? 2 : 1;
  if (spec.polys.size() != want) {
    throw ValidationError(std::string(kind_name(spec.kind)) + " family needs exactly " + std::to_string(want) +
                          " poly line(s), got " + std::to_string(spec.polys.size()));
  }
  for (const auto& f : spec.polys) {
    if (f.deg_x() < 1) throw ValidationError("poly must involve x");
    if (spec.kind == FamilyKind::constant && f.deg_t() > 0) {
      throw ValidationError("constant family may not depend on t");
    }
  }

  BivarPoly fiber = spec.polys.front();
  if (spec.kind == FamilyKind::multicover) {
    fiber = spec.polys[0] * spec.polys[1];
    const int expected = hyperelliptic_genus(spec.polys[0].deg_x()) + hyperelliptic_genus(spec.polys[1].deg_x()) +
                         hyperelliptic_genus(fiber.deg_x());
    if (spec.genus != expected) {
      throw ValidationError("genus " + std::to_string(spec.genus) + " inconsistent with multicover model (expected " +
                            std::to_string(expected) + ")");
    }
    if (spec.infinity.kind != InfinityRule::Kind::affine_plus) {
      throw ValidationError("multicover family must declare 'infinity affine_plus <nu> <m>'");
    }
  } else {
    const int d = fiber.deg_x();
    if (d != 2 * spec.genus + 1 && d != 2 * spec.genus + 2) {
      throw ValidationError("x-degree " + std::to_string(d) + " inconsistent with genus " + std::to_string(spec.genus));
    }
  }
  if (zpoly::discriminant_in_t(fiber).empty()) {
    throw ValidationError("generic fiber polynomial is not squarefree in x over Q(t)");
  }
  for (const auto& g : spec.trace.curves) {
    if (g.deg_t() > 0) throw ValidationError("trace curve may not depend on t");
    if (g.deg_x() < 1) throw ValidationError("trace curve must involve x");
    if (zpoly::discriminant_in_t(g).empty()) throw ValidationError("trace curve " + g.to_string() + " not squarefree");
  }
  for (auto p : spec.extra_bad_primes) {
    if (!is_prime(p)) throw ValidationError("badprimes entry " + std::to_string(p) + " is not prime");
  }
  if (spec.infinity.kind == InfinityRule::Kind::affine_plus && spec.infinity.m < 1) {
    throw ValidationError("affine_plus component count must be at least 1");
  }
  std::set<FiberClass> seen;
  for (const auto& o : spec.overrides) {
    if (!seen.insert(o.fiber_class).second) {
      throw ValidationError("duplicate override for " + std::string(to_string(o.fiber_class)));
    }
  }
}

}  // namespace

FamilySpec parse_family(std::string_view text) {
  FamilySpec spec;
  bool have_name = false;
  bool have_kind = false;
  bool have_genus = false;
  bool have_trace = false;
  bool trace_none = false;
  bool have_infinity = false;

  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);

    std::string_view line = strip_comment(raw);
    const std::size_t indent = line.find_first_not_of(" \t");
    if (indent == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    line = trim_view(line);
    const int base_col = static_cast<int>(indent) + 1;
    const std::size_t key_end = std::min(line.find_first_of(" \t"), line.size());
    const std::string_view key = line.substr(0, key_end);
    const std::string_view rest_raw = key_end < line.size() ? line.substr(key_end) : std::string_view{};
    const std::size_t rest_skip = rest_raw.find_first_not_of(" \t");
    const std::string_view rest = rest_skip == std::string_view::npos ? std::string_view{} : rest_raw.substr(rest_skip);
    const int rest_col = base_col + static_cast<int>(key_end + (rest_skip == std::string_view::npos ? 0 : rest_skip));
    auto fail = [&](const std::string& what, int col) -> void { throw ParseError(what, line_no, col); };
    auto once = [&](bool& flag) {
      if (flag) fail("duplicate '" + std::string(key) + "' line", base_col);
      flag = true;
    };

    if (key == "family") {
      once(have_name);
      if (rest.size() < 2 || rest.front() != '"' || rest.back() != '"') fail("expected quoted family name", rest_col);
      spec.name = std::string(rest.substr(1, rest.size() - 2));
      if (spec.name.find('"') != std::string::npos) fail("family name may not contain '\"'", rest_col);
    } else if (key == "kind") {
      once(have_kind);
      if (rest == "hyperelliptic") {
        spec.kind = FamilyKind::hyperelliptic;
      } else if (rest == "multicover") {
        spec.kind = FamilyKind::multicover;
      } else if (rest == "constant") {
        spec.kind = FamilyKind::constant;
      } else {
        throw ValidationError("unknown kind '" + std::string(rest) + "' on line " + std::to_string(line_no));
      }
    } else if (key == "poly") {
      spec.polys.push_back(parse_poly(rest, "xt", line_no, rest_col));
    } else if (key == "genus") {
      once(have_genus);
      auto v = to_int(rest);
      if (!v) fail("expected integer genus", rest_col);
      if (*v < 1 || *v > 1000) throw ValidationError("genus must be in [1, 1000]");
      spec.genus = static_cast<int>(*v);
    } else if (key == "trace") {
      if (rest == "none") {
        if (have_trace) fail("'trace none' conflicts with other trace lines", base_col);
        have_trace = true;
        trace_none = true;
      } else if (rest.substr(0, 5) == "curve" && (rest.size() == 5 || std::isspace(static_cast<unsigned char>(rest[5])))) {
        if (trace_none) fail("'trace curve' conflicts with 'trace none'", base_col);
        have_trace = true;
        std::string_view expr = rest.substr(5);
        const std::size_t skip = expr.find_first_not_of(" \t");
        if (skip == std::string_view::npos) fail("expected trace curve expression", rest_col + 5);
        spec.trace.curves.push_back(parse_poly(expr.substr(skip), "x", line_no, rest_col + 5 + static_cast<int>(skip)));
      } else {
        fail("expected 'none' or 'curve <expr>'", rest_col);
      }
    } else if (key == "infinity") {
      once(have_infinity);
      auto words = split_ws(rest);
      if (words.size() == 1 && words[0] == "trace_zero") {
        spec.infinity = {InfinityRule::Kind::trace_zero, 0, 1};
      } else if (words.size() == 1 && words[0] == "skip") {
        spec.infinity = {InfinityRule::Kind::skip, 0, 1};
      } else if (words.size() == 3 && words[0] == "affine_plus") {
        auto nu = to_int(words[1]);
        auto m = to_int(words[2]);
        if (!nu || !m || *nu < 0 || *nu > 1000 || *m < 0 || *m > 1000) {
          fail("affine_plus needs two small non-negative integers", rest_col);
        }
        spec.infinity = {InfinityRule::Kind::affine_plus, static_cast<unsigned>(*nu), static_cast<unsigned>(*m)};
      } else {
        fail("expected trace_zero, 'affine_plus <nu> <m>' or skip", rest_col);
      }
    } else if (key == "badprimes") {
      for (auto w : split_ws(rest)) {
        auto v = to_int(w);
        if (!v || *v < 2 || *v > static_cast<std::int64_t>(UINT32_MAX)) {
          fail("bad prime list entry '" + std::string(w) + "'", rest_col);
        }
        spec.extra_bad_primes.insert(static_cast<std::uint32_t>(*v));
      }
    } else if (key == "override") {
      auto words = split_ws(rest);
      if (words.size() != 3 || words[1].substr(0, 2) != "m=" || words[2].substr(0, 4) != "inf=") {
        fail("expected 'override <class> m=<int> inf=<int>'", rest_col);
      }
      auto cls = fiber_class_from(words[0]);
      if (!cls) fail("unknown fiber class '" + std::string(words[0]) + "'", rest_col);
      auto m = to_int(words[1].substr(2));
      auto inf = to_int(words[2].substr(4));
      if (!m || !inf || *m < 1 || *m > 1000 || *inf < 0 || *inf > 1000) fail("override values out of range", rest_col);
      spec.overrides.push_back({*cls, static_cast<unsigned>(*m), static_cast<unsigned>(*inf)});
    } else if (key == "fiber") {
      if (!spec.fiber_config) spec.fiber_config.emplace();
      try {
        spec.fiber_config->fibers.push_back(parse_fiber_descriptor(rest));
      } catch (const ValidationError& e) {
        throw ValidationError("line " + std::to_string(line_no) + ": " + e.what());
      }
    } else {
      fail("unknown key '" + std::string(key) + "'", base_col);
    }
    if (end == text.size()) break;
  }

  if (!have_name) throw ValidationError("missing 'family' line");
  if (!have_kind) throw ValidationError("missing 'kind' line");
  if (!have_genus) throw ValidationError("missing 'genus' line");
  if (spec.polys.empty()) throw ValidationError("missing 'poly' line");
  validate(spec);
  return spec;
}

FamilySpec load_family(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open family file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_family(buf.str());
}

std::string render_family(const FamilySpec& spec) {
  std::string out;
  out += "family \"" + spec.name + "\"\n";
  out += "kind " + std::string(kind_name(spec.kind)) + "\n";
  for (const auto& f : spec.polys) out += "poly " + f.to_string() + "\n";
  out += "genus " + std::to_string(spec.genus) + "\n";
  if (spec.trace.trivial()) out += "trace none\n";
  for (const auto& g : spec.trace.curves) out += "trace curve " + g.to_string() + "\n";
  switch (spec.infinity.kind) {
    case InfinityRule::Kind::trace_zero:
      out += "infinity trace_zero\n";
      break;
    case InfinityRule::Kind::skip:
      out += "infinity skip\n";
      break;
    case InfinityRule::Kind::affine_plus:
      out += "infinity affine_plus " + std::to_string(spec.infinity.nu) + " " + std::to_string(spec.infinity.m) + "\n";
      break;
  }
  if (!spec.extra_bad_primes.empty()) {
    out += "badprimes";
    for (auto p : spec.extra_bad_primes) out += " " + std::to_string(p);
    out += "\n";
  }
  for (const auto& o : spec.overrides) {
    out += "override " + std::string(to_string(o.fiber_class)) + " m=" + std::to_string(o.m) +
           " inf=" + std::to_string(o.points_at_infinity) + "\n";
  }
  if (spec.fiber_config) {
    for (const auto& f : spec.fiber_config->fibers) out += "fiber " + render_fiber_descriptor(f) + "\n";
  }
  return out;
}

std::string family_hash(const FamilySpec& spec) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : render_family(spec)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

FamilyModel::FamilyModel(FamilySpec spec) : spec_(std::move(spec)) {
  validate(spec_);
  hash_ = family_hash(spec_);
  fiber_poly_ = spec_.polys.front();
  if (spec_.kind == FamilyKind::multicover) fiber_poly_ = spec_.polys[0] * spec_.polys[1];
  discriminant_ = zpoly::discriminant_in_t(fiber_poly_);
  discriminant_roots_ = zpoly::distinct_root_count(discriminant_);
  for (const auto& g : spec_.trace.curves) {
    const auto d = zpoly::discriminant_in_t(g);
    trace_discriminants_.push_back(d.front() * g.coeff(g.deg_x(), 0));
  }
}

std::optional<std::string> FamilyModel::bad_reason(std::uint32_t p) const {
  if (p == 2) return "characteristic 2";
  if (p < 2 || !is_prime(p)) return "not an odd prime";
  if (spec_.extra_bad_primes.count(p) != 0) return "declared bad prime";
  for (const auto& f : spec_.polys) {
    const auto content = integer_content(f.coeff_in_t(f.deg_x()));
    if (content % p == 0) return "p divides the leading x-coefficient";
  }
  const FieldCtx ctx = make_field(p);
  modp::BiPoly h;
  for (int dx = 0; dx <= fiber_poly_.deg_x(); ++dx) {
    modp::Poly c;
    for (auto v : fiber_poly_.coeff_in_t(dx)) c.push_back(ctx.reduce(v));
    modp::trim(c);
    h.push_back(std::move(c));
  }
  if (!modp::squarefree_over_function_field(ctx, h)) return "fiber polynomial not squarefree over F_p(t)";

  if (discriminant_.size() > 1) {
    modp::Poly d;
    for (const auto& c : discriminant_) d.push_back(zpoly::mod_small(c, p));
    modp::trim(d);
    if (modp::degree(d) != static_cast<int>(discriminant_.size()) - 1) return "discriminant locus meets infinity mod p";
    const int roots = modp::degree(d) - modp::degree(modp::gcd(ctx, d, modp::derivative(ctx, d)));
    if (roots != discriminant_roots_) return "singular fibers collide mod p";
  }
  return std::nullopt;
}

bool FamilyModel::is_bad_trace_prime(std::uint32_t p) const {
  for (const auto& d : trace_discriminants_) {
    if (zpoly::mod_small(d, p) == 0) return true;
  }
  return false;
}

std::vector<modp::BiPoly> FamilyModel::reduce(const FieldCtx& ctx) const {
  std::vector<modp::BiPoly> out;
  for (const auto& f : spec_.polys) {
    modp::BiPoly bi;
    for (int dx = 0; dx <= f.deg_x(); ++dx) {
      modp::Poly c;
      for (auto v : f.coeff_in_t(dx)) c.push_back(ctx.reduce(v));
      modp::trim(c);
      bi.push_back(std::move(c));
    }
    out.push_back(std::move(bi));
  }
  return out;
}

std::set<std::uint32_t> bad_primes(const FamilyModel& model, std::uint32_t scan_bound) {
  std::set<std::uint32_t> out(model.spec().extra_bad_primes.begin(), model.spec().extra_bad_primes.end());
  if (scan_bound < 2) return out;
  for (auto p : primes_in_range(2, scan_bound)) {
    if (model.is_bad(p)) out.insert(p);
  }
  return out;
}

FiberModel specialize(const FamilyModel& model, const FieldCtx& ctx, const std::vector<modp::BiPoly>& reduced,
                      FiberPoint c) {
  FiberModel out;
  out.point = c;
  out.kind = model.spec().kind;
  out.p = ctx.p();
  for (const auto& f : model.spec().polys) out.generic_degrees.push_back(f.deg_x());
  if (model.spec().infinity.kind == InfinityRule::Kind::affine_plus) {
    out.declared_points_at_infinity = model.spec().infinity.nu;
  }
  if (c.at_infinity) return out;
  for (const auto& bi : reduced) {
    modp::Poly f(bi.size(), 0);
    for (std::size_t dx = 0; dx < bi.size(); ++dx) f[dx] = modp::evaluate(ctx, bi[dx], c.c);
    modp::trim(f);
    out.polys.push_back(std::move(f));
  }
  return out;
}

FiberModel fiber_at(const FamilyModel& model, const FieldCtx& ctx, FiberPoint c) {
  if (auto why = model.bad_reason(ctx.p())) {
    throw BadPrime("p=" + std::to_string(ctx.p()) + " is in the bad set: " + *why);
  }
  if (!c.at_infinity && c.c >= ctx.p()) throw OutOfRange("fiber coordinate not reduced");
  return specialize(model, ctx, model.reduce(ctx), c);
}

bool is_singular_fiber(const FieldCtx& ctx, const FiberModel& fiber) {
  if (fiber.point.at_infinity) return false;
  modp::Poly product{1};
  for (std::size_t i = 0; i < fiber.polys.size(); ++i) {
    if (modp::degree(fiber.polys[i]) != fiber.generic_degrees[i]) return true;
    product = modp::mul(ctx, product, fiber.polys[i]);
  }
  return !modp::is_squarefree(ctx, product);
}

std::vector<residue_t> discriminant_locus(const FamilyModel& model, const FieldCtx& ctx) {
  if (auto why = model.bad_reason(ctx.p())) {
    throw BadPrime("p=" + std::to_string(ctx.p()) + " is in the bad set: " + *why);
  }
  const auto reduced = model.reduce(ctx);
  std::vector<residue_t> out;
  for (residue_t c = 0; c < ctx.p(); ++c) {
    if (is_singular_fiber(ctx, specialize(model, ctx, reduced, FiberPoint::finite(c)))) out.push_back(c);
  }
  return out;
}

}  // namespace nagao
