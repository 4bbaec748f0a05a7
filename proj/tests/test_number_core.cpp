#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>

#include "radlin/number_core.hpp"

using namespace radlin;

namespace {

// Independent oracle: factor by scanning every candidate divisor 2..n with
// no wheel and no early square cutoff shortcuts beyond correctness.
std::map<long, unsigned long> oracle_factor(long n) {
  std::map<long, unsigned long> f;
  for (long d = 2; d <= n; ++d) {
    while (n % d == 0) {
      ++f[d];
      n /= d;
    }
  }
  return f;
}

std::map<long, unsigned long> to_map(const PrimeFactorization& f) {
  std::map<long, unsigned long> m;
  for (const auto& [p, e] : f.factors) m[p.get_si()] = e;
  return m;
}

bool oracle_is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("factor: frozen values", "[number_core]") {
  CHECK(factor(Int(1)).factors.empty());
  CHECK(to_map(factor(Int(12))) == std::map<long, unsigned long>{{2, 2}, {3, 1}});
  CHECK(to_map(factor(Int(42089))) == std::map<long, unsigned long>{{42089, 1}});
  CHECK(to_map(factor(Int(972))) == std::map<long, unsigned long>{{2, 2}, {3, 5}});
  CHECK(to_map(factor(Int(43046720))) ==
        std::map<long, unsigned long>{{2, 6}, {5, 1}, {17, 1}, {41, 1}, {193, 1}});
  CHECK_THROWS_AS(factor(Int(0)), std::invalid_argument);
  CHECK_THROWS_AS(factor(Int(-6)), std::invalid_argument);
}

TEST_CASE("factor: agrees with the scan oracle and reconstructs the input", "[number_core]") {
  for (long n = 1; n <= 2000; ++n) {
    PrimeFactorization f = factor(Int(n));
    CHECK(to_map(f) == oracle_factor(n));
    CHECK(f.value() == n);
  }
  std::mt19937_64 rng(20260814);
  std::uniform_int_distribution<long> dist(1, 1000000);
  for (int i = 0; i < 200; ++i) {
    long n = dist(rng);
    CHECK(to_map(factor(Int(n))) == oracle_factor(n));
  }
}

TEST_CASE("factor is multiplicative on coprime-free merges", "[number_core]") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> dist(1, 10000);
  for (int i = 0; i < 300; ++i) {
    long a = dist(rng), b = dist(rng);
    auto ma = to_map(factor(Int(a)));
    for (const auto& [p, e] : to_map(factor(Int(b)))) ma[p] += e;
    CHECK(ma == to_map(factor(Int(a) * Int(b))));
  }
}

TEST_CASE("perfect_power_decompose: frozen values", "[number_core]") {
  CHECK(perfect_power_decompose(Int(64)) == std::pair<Int, unsigned long>{Int(2), 6});
  CHECK(perfect_power_decompose(Int(36)) == std::pair<Int, unsigned long>{Int(6), 2});
  CHECK(perfect_power_decompose(Int(972)) == std::pair<Int, unsigned long>{Int(972), 1});
  CHECK(perfect_power_decompose(Int(2)) == std::pair<Int, unsigned long>{Int(2), 1});
  CHECK_THROWS_AS(perfect_power_decompose(Int(1)), std::invalid_argument);
  CHECK_THROWS_AS(perfect_power_decompose(Int(0)), std::invalid_argument);
}

TEST_CASE("perfect_power_decompose: base^k reconstructs and base is primitive", "[number_core]") {
  for (long n = 2; n <= 3000; ++n) {
    auto [base, k] = perfect_power_decompose(Int(n));
    CHECK(int_pow(base, k) == n);
    auto [base2, k2] = perfect_power_decompose(base);
    CHECK(k2 == 1);  // the base is not itself a perfect power
  }
}

TEST_CASE("kth_root_floor and perfect power predicate", "[number_core]") {
  CHECK(kth_root_floor(Int(42088), 6).first == 5);
  CHECK(kth_root_floor(Int(0), 3) == std::pair<Int, bool>{Int(0), true});
  CHECK(is_perfect_kth_power(Int(729), 6));
  CHECK_FALSE(is_perfect_kth_power(Int(730), 6));
  for (long v = 0; v <= 500; ++v) {
    for (unsigned long k = 1; k <= 5; ++k) {
      auto [r, exact] = kth_root_floor(Int(v), k);
      CHECK(int_pow(r, k) <= v);
      CHECK(int_pow(r + 1, k) > v);
      CHECK(exact == (int_pow(r, k) == v));
    }
  }
  CHECK_THROWS_AS(kth_root_floor(Int(-1), 2), std::invalid_argument);
}

TEST_CASE("multiplicative_order: frozen values and errors", "[number_core]") {
  CHECK(multiplicative_order(Int(1), Int(5)) == 1);
  CHECK(multiplicative_order(Int(2), Int(7)) == 3);
  CHECK(multiplicative_order(Int(3), Int(8)) == 2);
  CHECK(multiplicative_order(Int(3), Int(43046720)) == 16);
  CHECK(multiplicative_order(Int(5), Int(1)) == 1);
  CHECK_THROWS_AS(multiplicative_order(Int(2), Int(8)), std::invalid_argument);
  CHECK_THROWS_AS(multiplicative_order(Int(6), Int(4)), std::invalid_argument);
}

TEST_CASE("multiplicative_order: minimal and divides phi(n)", "[number_core]") {
  for (long n = 2; n <= 120; ++n) {
    for (long d = 1; d < n; ++d) {
      if (std::gcd(d, n) != 1) continue;
      Int t = multiplicative_order(Int(d), Int(n));
      CHECK(powmod(Int(d), t, Int(n)) == 1);
      CHECK(euler_phi(Int(n)) % t == 0);
      // minimality by direct scan
      Int cur = 1;
      for (Int i = 1; i < t; ++i) {
        cur = cur * d % n;
        CHECK(cur != 1);
      }
    }
  }
}

TEST_CASE("is_prime agrees with trial division and handles large inputs", "[number_core]") {
  for (long n = 0; n <= 2000; ++n) CHECK(is_prime(Int(n)) == oracle_is_prime(n));
  CHECK(is_prime(Int(42089)));
  Int mersenne61 = pow2(61) - 1;
  CHECK(is_prime(mersenne61));
  CHECK_FALSE(is_prime(Int(561)));        // Carmichael
  CHECK_FALSE(is_prime(mersenne61 * 3));  // composite beyond 2^61
}

TEST_CASE("euler_phi, divisors, primorial", "[number_core]") {
  CHECK(euler_phi(Int(1)) == 1);
  CHECK(euler_phi(Int(12)) == 4);
  CHECK(euler_phi(Int(43046720)) == 15728640);
  CHECK(divisors_sorted(Int(12)) == std::vector<Int>{1, 2, 3, 4, 6, 12});
  CHECK(divisors_sorted(Int(8)) == std::vector<Int>{1, 2, 4, 8});
  CHECK(primorial_up_to(1) == 1);
  CHECK(primorial_up_to(5) == 30);
  CHECK(primorial_up_to(10) == 210);
  // phi as a count
  for (long n = 1; n <= 200; ++n) {
    long count = 0;
    for (long d = 1; d <= n; ++d)
      if (std::gcd(d, n) == 1) ++count;
    CHECK(euler_phi(Int(n)) == count);
  }
}
