#include <doctest.h>

#include <random>

#include "nagao/error.hpp"
#include "nagao/oracle.hpp"
#include "nagao/prime_field.hpp"

using namespace nagao;

TEST_CASE("make_field builds the square table") {
  const auto f5 = make_field(5);
  CHECK(f5.chi(1) == 1);
  CHECK(f5.chi(4) == 1);
  CHECK(f5.chi(2) == -1);
  CHECK(f5.chi(3) == -1);
  CHECK(make_field(7).chi(3) == -1);
  CHECK_THROWS_AS(make_field(4), NotPrime);
  CHECK_THROWS_AS(make_field(9), NotPrime);
  CHECK_THROWS_AS(make_field(2), EvenOrSmall);
  CHECK_THROWS_AS(make_field(1), EvenOrSmall);
  CHECK_THROWS_AS(make_field(-7), EvenOrSmall);
}

TEST_CASE("quadratic_character") {
  const auto f5 = make_field(5);
  CHECK(quadratic_character(f5, 0) == 0);
  CHECK(quadratic_character(f5, 4) == 1);
  CHECK(quadratic_character(make_field(7), 3) == -1);
  CHECK_THROWS_AS(quadratic_character(f5, 5), OutOfRange);
  CHECK_THROWS_AS(quadratic_character(f5, -1), OutOfRange);
}

TEST_CASE("chi table: zero, balance, multiplicativity") {
  for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u, 101u, 211u}) {
    const auto ctx = make_field(p);
    CHECK(ctx.chi(0) == 0);
    int plus = 0, minus = 0, total = 0;
    for (residue_t a = 0; a < p; ++a) {
      total += ctx.chi(a);
      plus += ctx.chi(a) == 1;
      minus += ctx.chi(a) == -1;
      CHECK(ctx.chi(a) == oracle::legendre(a, p));
    }
    CHECK(total == 0);
    CHECK(plus == static_cast<int>((p - 1) / 2));
    CHECK(minus == static_cast<int>((p - 1) / 2));
    for (residue_t a = 0; a < p; ++a) {
      for (residue_t b = 0; b < p; ++b) REQUIRE(ctx.chi(ctx.mul(a, b)) == ctx.chi(a) * ctx.chi(b));
    }
  }
}

TEST_CASE("Euler criterion on 100 random (p, a)") {
  std::mt19937_64 rng(20240611);
  const auto primes = primes_in_range(3, 50000);
  for (int i = 0; i < 100; ++i) {
    const std::uint32_t p = primes[rng() % primes.size()];
    const auto ctx = make_field(p);
    const residue_t a = static_cast<residue_t>(rng() % p);
    const residue_t e = ctx.pow(a, (p - 1) / 2);
    const int expected = a == 0 ? 0 : (e == 1 ? 1 : -1);
    CHECK(quadratic_character(ctx, a) == expected);
  }
}

TEST_CASE("primes_in_range") {
  CHECK(primes_in_range(3, 20) == std::vector<std::uint32_t>{3, 5, 7, 11, 13, 17, 19});
  CHECK(primes_in_range(14, 16).empty());
  CHECK(primes_in_range(2, 100).size() == 25);
  CHECK(primes_in_range(2, 2) == std::vector<std::uint32_t>{2});
  CHECK_THROWS_AS(primes_in_range(20, 3), BadRange);
  CHECK_THROWS_AS(primes_in_range(0, 10), BadRange);

  SUBCASE("matches trial division up to 10^4") {
    std::vector<std::uint32_t> expected;
    for (std::uint32_t n = 2; n <= 10000; ++n) {
      if (oracle::is_prime(n)) expected.push_back(n);
    }
    CHECK(primes_in_range(2, 10000) == expected);
    // odd windows crossing segment boundaries
    std::vector<std::uint32_t> window;
    for (auto q : expected) {
      if (q >= 977 && q <= 8191) window.push_back(q);
    }
    CHECK(primes_in_range(977, 8191) == window);
  }

  SUBCASE("segments beyond the first block") {
    const auto big = primes_in_range(999000, 1001000);
    for (auto q : big) CHECK(oracle::is_prime(q));
    std::size_t count = 0;
    for (std::uint64_t n = 999000; n <= 1001000; ++n) count += oracle::is_prime(n);
    CHECK(big.size() == count);
  }
}

TEST_CASE("eval_poly") {
  const auto f5 = make_field(5);
  const std::vector<residue_t> cubic{0, 4, 0, 1};  // x^3 - x
  CHECK(eval_poly(f5, cubic, 2) == 1);
  CHECK(eval_poly(f5, {}, 3) == 0);
  const std::vector<residue_t> plus_one{1, 0, 0, 1};
  CHECK(eval_poly(f5, plus_one, 3) == 3);
  const std::vector<residue_t> unreduced{7};
  CHECK_THROWS_AS(eval_poly(f5, unreduced, 0), OutOfRange);
  CHECK_THROWS_AS(eval_poly(f5, cubic, 5), OutOfRange);
}

TEST_CASE("is_prime agrees with the oracle") {
  for (std::uint64_t n = 0; n < 5000; ++n) REQUIRE(is_prime(n) == oracle::is_prime(n));
}
