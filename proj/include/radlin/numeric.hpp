#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace radlin {

// All integer arithmetic in this library is arbitrary precision. Int and Rat
// are the only numeric carriers; nothing downstream may silently overflow.
using Int = mpz_class;
using Rat = mpq_class;

inline Int int_gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int int_lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Int pow2(unsigned long bits) {
  Int r = 1;
  mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), bits);
  return r;
}

inline Int powmod(const Int& base, const Int& e, const Int& mod) {
  Int r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
  return r;
}

/// Floor of x^(1/k) plus an exactness flag; requires x >= 0 and k >= 1.
inline std::pair<Int, bool> kth_root_floor(const Int& x, unsigned long k) {
  if (k < 1) throw std::invalid_argument("kth_root_floor: k must be >= 1");
  if (sgn(x) < 0) throw std::invalid_argument("kth_root_floor: negative radicand");
  Int r;
  bool exact = mpz_root(r.get_mpz_t(), x.get_mpz_t(), k) != 0;
  return {r, exact};
}

inline bool is_perfect_kth_power(const Int& x, unsigned long k) {
  return kth_root_floor(x, k).second;
}

inline Rat rat_make(Int num, Int den) {
  if (sgn(den) == 0) throw std::invalid_argument("rat_make: zero denominator");
  Rat q(std::move(num), std::move(den));
  q.canonicalize();
  return q;
}

inline Int rat_num(const Rat& q) { return Int(q.get_num()); }
inline Int rat_den(const Rat& q) { return Int(q.get_den()); }

inline bool rat_is_integer(const Rat& q) { return q.get_den() == 1; }

/// Miller-Rabin with the first twelve prime witnesses, a set known to be
/// deterministic for all n < 2^64. Larger inputs are still tested against
/// the same witnesses (no desk-scale caller reaches them).
inline bool is_prime(const Int& n) {
  static const long witnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (long p : witnesses) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  Int d = n - 1;
  unsigned long s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }
  for (long a : witnesses) {
    Int x = powmod(Int(a), d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned long i = 1; i < s; ++i) {
      x = x * x % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace radlin
