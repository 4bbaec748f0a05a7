#pragma once

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "radlin/numeric.hpp"

namespace radlin {

/// Ordered prime-power decomposition. The empty factor list represents 1.
struct PrimeFactorization {
  std::vector<std::pair<Int, unsigned long>> factors;  // (prime, multiplicity), primes ascending

  Int value() const {
    Int v = 1;
    for (const auto& [p, e] : factors) v *= int_pow(p, e);
    return v;
  }
};

/// Trial division on a 2,3 wheel. Exact and deterministic; meant for the
/// desk-scale inputs this library works with (roughly up to 2^48, or larger
/// values whose second-largest prime factor is small).
inline PrimeFactorization factor(const Int& n) {
  if (n < 1) throw std::invalid_argument("factor: n must be positive");
  PrimeFactorization f;
  Int rem = n;
  auto strip = [&](const Int& d) {
    if (rem % d == 0) {
      unsigned long e = 0;
      while (rem % d == 0) {
        rem /= d;
        ++e;
      }
      f.factors.emplace_back(d, e);
    }
  };
  strip(2);
  strip(3);
  Int d = 5;
  while (d * d <= rem) {
    strip(d);
    strip(d + 2);
    d += 6;
  }
  if (rem > 1) f.factors.emplace_back(rem, 1);
  return f;
}

/// Largest k with n = base^k; the returned base is not itself a perfect
/// power. Requires n >= 2 (1 is a perfect k-th power for every k).
inline std::pair<Int, unsigned long> perfect_power_decompose(const Int& n) {
  if (n < 2) throw std::invalid_argument("perfect_power_decompose: n must be >= 2");
  PrimeFactorization f = factor(n);
  unsigned long k = 0;
  for (const auto& [p, e] : f.factors) k = std::gcd(k, e);
  Int base = 1;
  for (const auto& [p, e] : f.factors) base *= int_pow(p, e / k);
  return {base, k};
}

inline Int euler_phi(const Int& n) {
  Int r = 1;
  for (const auto& [p, e] : factor(n).factors) r *= int_pow(p, e - 1) * (p - 1);
  return r;
}

/// Least t >= 1 with d^t = 1 mod n. Requires gcd(d, n) = 1; found by
/// stripping prime factors from phi(n), so no scan up to t is needed.
inline Int multiplicative_order(const Int& d, const Int& n) {
  if (n < 1) throw std::invalid_argument("multiplicative_order: n must be positive");
  if (n == 1) return 1;
  Int dm = d % n;
  if (dm < 0) dm += n;
  if (int_gcd(dm, n) != 1)
    throw std::invalid_argument("multiplicative_order: gcd(d, n) must be 1");
  Int t = euler_phi(n);
  for (const auto& [q, e] : factor(t).factors) {
    for (unsigned long i = 0; i < e; ++i) {
      if (t % q == 0 && powmod(dm, t / q, n) == 1)
        t /= q;
      else
        break;
    }
  }
  return t;
}

inline std::vector<Int> divisors_sorted(const Int& n) {
  if (n < 1) throw std::invalid_argument("divisors_sorted: n must be positive");
  std::vector<Int> divs{1};
  for (const auto& [p, e] : factor(n).factors) {
    const std::size_t base_count = divs.size();
    Int pk = 1;
    for (unsigned long i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base_count; ++j) divs.push_back(divs[j] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

/// Product of all primes <= k.
inline Int primorial_up_to(unsigned long k) {
  Int r = 1;
  for (Int p = 2; p <= k; ++p)
    if (is_prime(p)) r *= p;
  return r;
}

}  // namespace radlin
