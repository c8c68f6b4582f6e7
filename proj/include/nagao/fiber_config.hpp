#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nagao {

/// Congruence or character condition on the prime p.
struct PrimeCondition {
  enum class Kind { character, congruence };
  Kind kind = Kind::character;
  std::int64_t d = 0;         // chi_p(d) == expected
  int expected = 1;
  std::int64_t modulus = 1;   // p mod modulus == residue
  std::int64_t residue = 0;

  bool holds(std::uint32_t p) const;
  friend bool operator==(const PrimeCondition&, const PrimeCondition&) = default;
};

/// Rational-component count of one singular fiber as a function of p:
///   rule := INT | INT "if" cond "else" rule
///   cond := "chi(" INT ")=" (1 | -1 | 0) | "p%" INT "=" INT
struct MRule {
  struct Branch {
    PrimeCondition when;
    unsigned value = 0;
    friend bool operator==(const Branch&, const Branch&) = default;
  };
  std::vector<Branch> branches;
  unsigned fallback = 1;

  unsigned eval(std::uint32_t p) const;
  unsigned max_value() const;
  std::string render() const;
  friend bool operator==(const MRule&, const MRule&) = default;
};

MRule parse_m_rule(std::string_view text);

struct FiberDescriptor {
  std::string label;
  unsigned n = 1;       // geometric components
  unsigned orbits = 1;  // Galois orbits on components
  MRule m_rule;
  friend bool operator==(const FiberDescriptor&, const FiberDescriptor&) = default;
};

/// Declared singular-fiber combinatorics of a fibration.
struct FiberConfiguration {
  std::vector<FiberDescriptor> fibers;
  friend bool operator==(const FiberConfiguration&, const FiberConfiguration&) = default;
};

/// Parses `<label> n=<int> orbits=<int> m="<rule>"` (the text after the `fiber`
/// keyword) and checks 1 <= orbits <= n and every rule value in [0, n].
FiberDescriptor parse_fiber_descriptor(std::string_view text);

std::string render_fiber_descriptor(const FiberDescriptor& f);

/// Legendre symbol (d/p) for an odd prime p, by Euler's criterion.
int legendre(std::int64_t d, std::uint32_t p);

}  // namespace nagao
