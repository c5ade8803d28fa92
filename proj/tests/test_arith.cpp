#include "doctest.h"

#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>

#include "apn/arith.hpp"

using apn::Factorization;
using apn::Nat;

namespace {

// Brute-force divisor sum by trial division over d <= sqrt(n); independent
// of the multiplicative implementation it checks.
std::uint64_t sigma_oracle(std::uint64_t n) {
  std::uint64_t s = 0;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      s += d;
      if (d != n / d) s += n / d;
    }
  }
  return s;
}

bool is_prime_oracle(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Factorization fact(std::initializer_list<std::pair<std::uint64_t, unsigned>> parts) {
  Factorization f;
  for (auto [p, e] : parts) f.push_back({Nat(p), e});
  return f;
}

}  // namespace

TEST_CASE("factorize on small knowns") {
  CHECK(apn::factorize(Nat(1)) == fact({}));
  CHECK(apn::factorize(Nat(35)) == fact({{5, 1}, {7, 1}}));
  CHECK(apn::factorize(Nat(1225)) == fact({{5, 2}, {7, 2}}));
  CHECK(apn::factorize(Nat(2)) == fact({{2, 1}}));
  CHECK(apn::factorize(Nat(1024)) == fact({{2, 10}}));
  CHECK(apn::factorize(Nat(720720)) ==
        fact({{2, 4}, {3, 2}, {5, 1}, {7, 1}, {11, 1}, {13, 1}}));
  CHECK_THROWS_AS(apn::factorize(Nat(0)), std::invalid_argument);
}

TEST_CASE("factorize handles large cofactors via Pollard rho") {
  // two primes above the default trial bound
  Nat n = Nat(1000003) * Nat(1000033);
  CHECK(apn::factorize(n) == fact({{1000003, 1}, {1000033, 1}}));
  // prime square above the trial bound
  Nat p2 = Nat(1000003) * Nat(1000003);
  CHECK(apn::factorize(p2) == fact({{1000003, 2}}));
  // large prime stays prime
  CHECK(apn::factorize(Nat(18446744073709551557ull)) ==
        fact({{18446744073709551557ull, 1}}));
  // width limit is enforced, not silently truncated
  CHECK_THROWS_AS(apn::factorize(Nat::two_pow(64)), std::domain_error);
}

TEST_CASE("factorization reconstructs its input up to 10^6") {
  for (std::uint64_t n = 1; n <= 1000000; ++n) {
    Factorization f = apn::factorize(Nat(n));
    CHECK_MESSAGE(apn::value_of(f) == Nat(n), "n = ", n);
    for (std::size_t i = 0; i + 1 < f.size(); ++i)
      CHECK(f[i].prime < f[i + 1].prime);
  }
}

TEST_CASE("sigma on knowns") {
  CHECK(apn::sigma(Nat(1)) == Nat(1));
  for (unsigned r = 1; r <= 10; ++r)
    CHECK(apn::sigma(Nat::two_pow(r)) == Nat::two_pow(r + 1) - Nat(1));
  CHECK(apn::sigma(Nat(1225)) == Nat(1767));
  CHECK(Nat(1767) == Nat(31) * Nat(57));
  CHECK(apn::sigma(Nat(6)) == Nat(12));
  CHECK_THROWS_AS(apn::sigma(Nat(0)), std::invalid_argument);
}

TEST_CASE("sigma agrees with the trial-division oracle up to 10^5") {
  for (std::uint64_t n = 1; n <= 100000; ++n)
    CHECK_MESSAGE(apn::sigma(Nat(n)) == Nat(sigma_oracle(n)), "n = ", n);
}

TEST_CASE("sigma is multiplicative on coprime pairs") {
  // exhaustive small grid
  for (std::uint64_t a = 1; a <= 300; ++a)
    for (std::uint64_t b = a; b <= 300; ++b) {
      if (std::gcd(a, b) != 1) continue;
      CHECK(apn::sigma(Nat(a * b)) == apn::sigma(Nat(a)) * apn::sigma(Nat(b)));
    }
  // randomized pairs up to 10^4
  std::mt19937_64 rng(424242);
  int tested = 0;
  while (tested < 2000) {
    std::uint64_t a = rng() % 10000 + 1, b = rng() % 10000 + 1;
    if (std::gcd(a, b) != 1) continue;
    ++tested;
    CHECK(apn::sigma(Nat(a) * Nat(b)) == apn::sigma(Nat(a)) * apn::sigma(Nat(b)));
  }
}

TEST_CASE("sigma_of_square avoids squaring") {
  for (std::uint64_t b : {1ull, 3ull, 5ull, 35ull, 55ull, 105ull, 9999ull}) {
    Factorization f = apn::factorize(Nat(b));
    CHECK(apn::sigma_of_square(f) == apn::sigma(Nat(b) * Nat(b)));
  }
  // representative case the pipeline leans on
  CHECK(apn::sigma_of_square(apn::factorize(Nat(55))) == Nat(4123));
}

TEST_CASE("omega") {
  CHECK(apn::omega(Nat(1)) == 0);
  CHECK(apn::omega(Nat(35)) == 2);
  CHECK(apn::omega(Nat(125)) == 1);
  CHECK(apn::omega(Nat(720720)) == 6);
  CHECK_THROWS_AS(apn::omega(Nat(0)), std::invalid_argument);
}

TEST_CASE("gcd") {
  CHECK(apn::gcd(Nat(12), Nat(18)) == Nat(6));
  CHECK(apn::gcd(Nat(1225), Nat(1767)) == Nat(1));
  CHECK(apn::gcd(Nat(99991), Nat(1)) == Nat(1));
  CHECK(apn::gcd(Nat(0), Nat(5)) == Nat(5));
  CHECK(apn::gcd(Nat(5), Nat(0)) == Nat(5));
  CHECK(apn::gcd(Nat::two_pow(100), Nat::two_pow(64)) == Nat::two_pow(64));
  CHECK_THROWS_AS(apn::gcd(Nat(0), Nat(0)), std::invalid_argument);
}

TEST_CASE("as_power_of_two") {
  CHECK(apn::as_power_of_two(Nat(8)) == 3u);
  CHECK(apn::as_power_of_two(Nat(1)) == 0u);
  CHECK(apn::as_power_of_two(Nat(2)) == 1u);
  CHECK_FALSE(apn::as_power_of_two(Nat(12)).has_value());
  CHECK_FALSE(apn::as_power_of_two(Nat(3)).has_value());
  CHECK(apn::as_power_of_two(Nat::two_pow(127)) == 127u);
  CHECK_THROWS_AS(apn::as_power_of_two(Nat(0)), std::invalid_argument);
}

TEST_CASE("deterministic Miller-Rabin matches trial division") {
  for (std::uint64_t n = 1; n <= 20000; ++n)
    CHECK_MESSAGE(apn::is_prime(Nat(n)) == is_prime_oracle(n), "n = ", n);
  CHECK(apn::is_prime(Nat((std::uint64_t(1) << 61) - 1)));       // Mersenne prime
  CHECK_FALSE(apn::is_prime(Nat::two_pow(61) + Nat(1)));
  CHECK_FALSE(apn::is_prime(Nat(3215031751ull)));                // strong pseudoprime to 2,3,5,7
  CHECK(apn::is_prime(Nat(18446744073709551557ull)));
  CHECK_THROWS_AS(apn::is_prime(Nat::two_pow(64)), std::domain_error);
}

TEST_CASE("factorize is deterministic") {
  Nat n = Nat(2147483647ull) * Nat(2147483629ull) * Nat(3);
  Factorization first = apn::factorize(n);
  CHECK(first == fact({{3, 1}, {2147483629ull, 1}, {2147483647ull, 1}}));
  for (int i = 0; i < 5; ++i) CHECK(apn::factorize(n) == first);
}
