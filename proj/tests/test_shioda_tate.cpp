#include <doctest.h>

#include <random>

#include "nagao/error.hpp"
#include "nagao/fiber_config.hpp"
#include "nagao/nagao_series.hpp"
#include "nagao/shioda_tate.hpp"
#include "support.hpp"

using namespace nagao;

namespace {

FiberDescriptor fiber(unsigned n, unsigned orbits, const std::string& rule) {
  return parse_fiber_descriptor("F n=" + std::to_string(n) + " orbits=" + std::to_string(orbits) + " m=\"" + rule +
                                "\"");
}

}  // namespace

TEST_CASE("rank_S") {
  CHECK(rank_S({}) == 2);
  CHECK(rank_S({{fiber(3, 3, "3"), fiber(2, 2, "2")}}) == 5);
  CHECK(rank_S({{fiber(1, 1, "1"), fiber(1, 1, "1"), fiber(1, 1, "1"), fiber(1, 1, "1")}}) == 2);
}

TEST_CASE("rank_S_Gk") {
  const FiberConfiguration rational{{fiber(3, 3, "3"), fiber(4, 4, "4")}};
  CHECK(rank_S_Gk(rational) == rank_S(rational));
  CHECK(rank_S_Gk({{fiber(2, 1, "1")}}) == 2);
  CHECK(rank_S_Gk({{fiber(3, 2, "1")}}) == 3);
}

TEST_CASE("trace_on_S") {
  CHECK(trace_on_S({}, 7) == 2);
  CHECK(trace_on_S({{fiber(3, 1, "1")}}, 7) == 2);
  // chi_7(-3) = 1, chi_5(-3) = -1
  const FiberConfiguration split{{fiber(2, 1, "2 if chi(-3)=1 else 1"), fiber(2, 1, "1")}};
  CHECK(trace_on_S(split, 7) == 3);
  CHECK(trace_on_S(split, 5) == 2);
}

TEST_CASE("ns_rank") {
  CHECK(ns_rank(2, {}) == 4);
  const FiberConfiguration five{{fiber(2, 2, "2"), fiber(2, 2, "2"), fiber(2, 2, "2")}};
  REQUIRE(rank_S_Gk(five) == 5);
  CHECK(ns_rank(0, five) == 5);
  const FiberConfiguration irreducible{{fiber(1, 1, "1"), fiber(1, 1, "1"), fiber(1, 1, "1"), fiber(1, 1, "1")}};
  CHECK(ns_rank(2, irreducible) == 4);
}

TEST_CASE("m rules") {
  const MRule r = parse_m_rule("2 if chi(-3)=1 else 1");
  CHECK(r.eval(7) == 2);
  CHECK(r.eval(13) == 2);
  CHECK(r.eval(5) == 1);
  CHECK(r.eval(11) == 1);
  CHECK(r.render() == "2 if chi(-3)=1 else 1");
  CHECK(parse_m_rule(r.render()) == r);

  const MRule c = parse_m_rule("3 if p%4=1 else 2 if chi(2)=-1 else 1");
  CHECK(c.eval(13) == 3);
  CHECK(c.eval(11) == 2);
  CHECK(c.eval(7) == 1);
  CHECK(c.max_value() == 3);
  CHECK(parse_m_rule(c.render()) == c);

  CHECK_THROWS_AS(parse_m_rule("2 if chi(5)=2 else 1"), ValidationError);
  CHECK_THROWS_AS(parse_m_rule("2 if q%4=1 else 1"), ValidationError);
  CHECK_THROWS_AS(parse_fiber_descriptor("F n=2 orbits=3 m=\"1\""), ValidationError);
  CHECK_THROWS_AS(parse_fiber_descriptor("F n=2 orbits=1 m=\"3\""), ValidationError);
  CHECK_THROWS_AS(parse_fiber_descriptor("F n=2 orbits=1"), ValidationError);

  for (std::uint32_t p : primes_in_range(3, 200)) {
    for (std::int64_t d : {-3, -1, 2, 5, 12}) {
      int brute = 0;
      const std::int64_t dm = ((d % static_cast<std::int64_t>(p)) + p) % p;
      if (dm != 0) {
        brute = -1;
        for (std::uint64_t y = 1; y < p; ++y) {
          if (y * y % p == static_cast<std::uint64_t>(dm)) brute = 1;
        }
      }
      REQUIRE(legendre(d, p) == brute);
    }
  }
}

TEST_CASE("1000 random configurations against naive summation") {
  std::mt19937 rng(31337);
  const auto primes = primes_in_range(3, 500);
  for (int trial = 0; trial < 1000; ++trial) {
    FiberConfiguration config;
    std::vector<unsigned> ns, orbits;
    const int count = static_cast<int>(rng() % 7);
    for (int k = 0; k < count; ++k) {
      const unsigned n = 1 + rng() % 9;
      const unsigned o = 1 + rng() % n;
      const unsigned hi = rng() % (n + 1);
      const unsigned lo = rng() % (n + 1);
      const int mod = 3 + static_cast<int>(rng() % 5);
      const int res = static_cast<int>(rng() % mod);
      std::string rule;
      switch (rng() % 3) {
        case 0: rule = std::to_string(hi); break;
        case 1: rule = std::to_string(hi) + " if chi(" + std::to_string(int(rng() % 11) - 5) + ")=1 else " +
                       std::to_string(lo); break;
        default: rule = std::to_string(hi) + " if p%" + std::to_string(mod) + "=" + std::to_string(res) + " else " +
                        std::to_string(lo);
      }
      config.fibers.push_back(fiber(n, o, rule));
      ns.push_back(n);
      orbits.push_back(o);
    }
    int naive_S = 2, naive_G = 2;
    bool singletons = true;
    for (std::size_t k = 0; k < ns.size(); ++k) {
      naive_S += static_cast<int>(ns[k]) - 1;
      naive_G += static_cast<int>(orbits[k]) - 1;
      singletons = singletons && orbits[k] == ns[k];
    }
    REQUIRE(rank_S(config) == naive_S);
    REQUIRE(rank_S_Gk(config) == naive_G);
    REQUIRE(rank_S_Gk(config) <= rank_S(config));
    REQUIRE((rank_S_Gk(config) == rank_S(config)) == singletons);
    const int mw = static_cast<int>(rng() % 5);
    REQUIRE(ns_rank(mw, config) == mw + naive_G);
    for (int i = 0; i < 5; ++i) {
      const auto p = primes[rng() % primes.size()];
      int naive_tr = 2;
      bool full = true;
      for (const auto& f : config.fibers) {
        const unsigned m = f.m_rule.eval(p);
        naive_tr += static_cast<int>(m) - 1;
        full = full && m == f.n;
      }
      REQUIRE(trace_on_S(config, p) == naive_tr);
      REQUIRE(trace_on_S(config, p) <= rank_S(config));
      REQUIRE((trace_on_S(config, p) == rank_S(config)) == full);
    }
  }
}

TEST_CASE("form5 diagnostic") {
  const FiberConfiguration config{{fiber(2, 1, "2 if chi(-1)=1 else 1"), fiber(3, 3, "3")}};
  NagaoSeries exact, shifted;
  for (auto p : primes_in_range(3, 300)) {
    PrimeEntry e;
    e.p = p;
    e.A_star = Rational::integer(trace_on_S(config, p));
    e.A = e.A_star;
    exact.entries.push_back(e);
    e.A_star = Rational::integer(trace_on_S(config, p) - 2);
    e.A = e.A_star;
    shifted.entries.push_back(e);
  }
  const auto zero = form5_diagnostic(exact, config);
  CHECK(zero.residuals.size() == exact.entries.size());
  CHECK(zero.max_abs == 0.0);
  for (const auto& r : form5_diagnostic(shifted, config).residuals) CHECK(r.residual == Rational::integer(2));
  CHECK(form5_diagnostic(shifted, config).mean == 2.0);

  const auto g1 = testing::shipped("shioda_g1");
  const auto series = compute_series(g1, 1000, 1);
  const auto report = form5_diagnostic(series, *g1.spec().fiber_config);
  CHECK(report.max_abs <= 10.0);
}
