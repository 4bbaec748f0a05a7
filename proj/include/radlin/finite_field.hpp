#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "radlin/number_core.hpp"

namespace radlin {

/// Element of GF(p^v) as a coefficient vector over GF(p), index = power of
/// the generator x of the polynomial basis, length v.
struct FqElement {
  std::vector<unsigned long> c;

  bool operator==(const FqElement& o) const { return c == o.c; }
  bool operator!=(const FqElement& o) const { return c != o.c; }

  bool is_zero() const {
    for (unsigned long v : c)
      if (v != 0) return false;
    return true;
  }
};

namespace gfp {

// Dense polynomials over GF(p) with trimmed leading zeros; p < 2^31 so
// products of residues fit in 64 bits.
using Poly = std::vector<unsigned long>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly add(const Poly& a, const Poly& b, unsigned long p) {
  Poly r = a;
  if (r.size() < b.size()) r.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % p;
  trim(r);
  return r;
}

inline Poly sub(const Poly& a, const Poly& b, unsigned long p) {
  Poly r = a;
  if (r.size() < b.size()) r.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i]) % p;
  trim(r);
  return r;
}

inline Poly mul(const Poly& a, const Poly& b, unsigned long p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  trim(r);
  return r;
}

inline unsigned long inv_mod_p(unsigned long a, unsigned long p) {
  // extended Euclid on machine words
  long long t = 0, newt = 1, r = static_cast<long long>(p), newr = static_cast<long long>(a % p);
  while (newr != 0) {
    long long q = r / newr;
    t -= q * newt;
    std::swap(t, newt);
    r -= q * newr;
    std::swap(r, newr);
  }
  if (r != 1) throw std::invalid_argument("inv_mod_p: not invertible");
  return static_cast<unsigned long>(t < 0 ? t + static_cast<long long>(p) : t);
}

inline std::pair<Poly, Poly> divmod(Poly a, const Poly& b, unsigned long p) {
  if (b.empty()) throw std::invalid_argument("gfp::divmod: zero divisor");
  trim(a);
  if (a.size() < b.size()) return {{}, std::move(a)};
  const unsigned long lead_inv = inv_mod_p(b.back(), p);
  Poly q(a.size() - b.size() + 1, 0);
  for (std::size_t i = q.size(); i-- > 0;) {
    unsigned long c = a[i + b.size() - 1] % p * lead_inv % p;
    q[i] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      a[i + j] = (a[i + j] + p - c * b[j] % p) % p;
  }
  trim(a);
  trim(q);
  return {std::move(q), std::move(a)};
}

inline Poly mod(const Poly& a, const Poly& f, unsigned long p) {
  return divmod(a, f, p).second;
}

inline Poly powmod(Poly base, const Int& e, const Poly& f, unsigned long p) {
  if (sgn(e) < 0) throw std::invalid_argument("gfp::powmod: negative exponent");
  Poly result{1};
  base = mod(base, f, p);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return result;
  for (std::size_t i = bits; i-- > 0;) {
    result = mod(mul(result, result, p), f, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mod(mul(result, base, p), f, p);
  }
  return result;
}

inline Poly gcd(Poly a, Poly b, unsigned long p) {
  while (!b.empty()) {
    Poly r = mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Inverse of a modulo f (f need not be irreducible as long as gcd = 1).
inline Poly inv_mod(const Poly& a, const Poly& f, unsigned long p) {
  Poly r0 = f, r1 = mod(a, f, p);
  Poly s0{}, s1{1};
  if (r1.empty()) throw std::invalid_argument("gfp::inv_mod: zero element");
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1, p);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = sub(s0, mul(q, s1, p), p);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.size() != 1) throw std::invalid_argument("gfp::inv_mod: not invertible");
  Poly inv = s0;
  const unsigned long scale = inv_mod_p(r0[0], p);
  for (unsigned long& c : inv) c = c * scale % p;
  trim(inv);
  return inv;
}

/// Rabin irreducibility test for monic f of degree r: x^(p^r) = x mod f and
/// gcd(x^(p^(r/q)) - x, f) = 1 for every prime q | r. Deterministic.
inline bool is_irreducible(const Poly& f, unsigned long p) {
  if (f.size() < 2) return false;
  const unsigned long r = static_cast<unsigned long>(f.size() - 1);
  const Poly x{0, 1};
  // frob[i] = x^(p^i) mod f, by repeated exponentiation by p
  std::vector<Poly> frob(r + 1);
  frob[0] = mod(x, f, p);
  for (unsigned long i = 1; i <= r; ++i) frob[i] = powmod(frob[i - 1], Int(p), f, p);
  if (sub(frob[r], frob[0], p) != Poly{}) return false;
  for (const auto& [q, e] : factor(Int(r)).factors) {
    const unsigned long qr = r / q.get_ui();
    Poly g = gcd(f, sub(frob[qr], x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace gfp

/// A subfield pair GF(p^u) inside GF(p^v) (u | v) with the derived
/// constants m = p^u - 1, n = p^v - 1, l = n / m, a canonical irreducible
/// modulus, and a certified generator of the multiplicative group.
class FieldTower {
 public:
  /// Deterministic construction: the modulus is the lexicographically least
  /// monic irreducible of degree v (by integer encoding of the low
  /// coefficients in base p) and the generator is the least-encoded field
  /// element of full order n, certified by g^(n/q) != 1 for every prime
  /// q | n.
  static FieldTower build(unsigned long p, unsigned long u, unsigned long v) {
    if (!is_prime(Int(p))) throw std::invalid_argument("FieldTower: p must be prime");
    if (p >= (1ul << 31)) throw std::invalid_argument("FieldTower: p must be < 2^31");
    if (u < 1 || v < 1 || v % u != 0)
      throw std::invalid_argument("FieldTower: need 1 <= u and u | v");
    if (Int(v) * mpz_sizeinbase(Int(p).get_mpz_t(), 2) > 62)
      throw std::invalid_argument("FieldTower: p^v must stay below 2^62");
    FieldTower t;
    t.p_ = p;
    t.u_ = u;
    t.v_ = v;
    t.m_ = int_pow(Int(p), u) - 1;
    t.n_ = int_pow(Int(p), v) - 1;
    t.l_ = t.n_ / t.m_;
    for (Int enc = 0;; ++enc) {
      gfp::Poly f = t.digits(enc, v);
      f.push_back(1);  // monic of degree v
      if (gfp::is_irreducible(f, p)) {
        t.mod_ = std::move(f);
        break;
      }
    }
    for (const auto& [q, e] : factor(t.n_).factors) t.n_prime_factors_.push_back(q);
    for (Int enc = 1;; ++enc) {
      FqElement g = t.element_from_index(enc);
      if (t.certify_generator(g)) {
        t.g_ = std::move(g);
        break;
      }
    }
    return t;
  }

  unsigned long p() const { return p_; }
  unsigned long u() const { return u_; }
  unsigned long v() const { return v_; }
  const Int& m() const { return m_; }
  const Int& n() const { return n_; }
  const Int& l() const { return l_; }
  const gfp::Poly& modulus() const { return mod_; }
  const FqElement& generator() const { return g_; }

  FqElement zero() const { return FqElement{std::vector<unsigned long>(v_, 0)}; }

  FqElement one() const {
    FqElement e = zero();
    e.c[0] = 1;
    return e;
  }

  FqElement from_coeffs(std::vector<unsigned long> c) const {
    if (c.size() > v_) throw std::invalid_argument("FieldTower: coefficient vector too long");
    c.resize(v_, 0);
    for (unsigned long& x : c) x %= p_;
    return FqElement{std::move(c)};
  }

  /// Element whose coefficient vector is the base-p digit string of idx;
  /// enumerates the field as idx runs over [0, p^v).
  FqElement element_from_index(const Int& idx) const {
    return FqElement{digits(idx, v_)};
  }

  std::uint64_t index_of(const FqElement& a) const {
    std::uint64_t r = 0;
    for (std::size_t i = a.c.size(); i-- > 0;) r = r * p_ + a.c[i];
    return r;
  }

  FqElement add(const FqElement& a, const FqElement& b) const {
    FqElement r = a;
    for (std::size_t i = 0; i < v_; ++i) r.c[i] = (r.c[i] + b.c[i]) % p_;
    return r;
  }

  FqElement sub(const FqElement& a, const FqElement& b) const {
    FqElement r = a;
    for (std::size_t i = 0; i < v_; ++i) r.c[i] = (r.c[i] + p_ - b.c[i]) % p_;
    return r;
  }

  FqElement neg(const FqElement& a) const { return sub(zero(), a); }

  FqElement scalar_mul(unsigned long s, const FqElement& a) const {
    s %= p_;
    FqElement r = a;
    for (std::size_t i = 0; i < v_; ++i) r.c[i] = r.c[i] * s % p_;
    return r;
  }

  FqElement mul(const FqElement& a, const FqElement& b) const {
    gfp::Poly prod = gfp::mod(gfp::mul(a.c, b.c, p_), mod_, p_);
    prod.resize(v_, 0);
    return FqElement{std::move(prod)};
  }

  FqElement pow(const FqElement& a, const Int& e) const {
    gfp::Poly r = gfp::powmod(a.c, e, mod_, p_);
    r.resize(v_, 0);
    return FqElement{std::move(r)};
  }

  FqElement inv(const FqElement& a) const {
    gfp::Poly r = gfp::inv_mod(a.c, mod_, p_);
    r.resize(v_, 0);
    return FqElement{std::move(r)};
  }

  /// Full-order certificate: g^(n/q) != 1 for every prime q | n (g^n = 1
  /// holds for any nonzero element, so this pins the order to exactly n).
  bool certify_generator(const FqElement& g) const {
    if (g.is_zero()) return false;
    const FqElement e1 = one();
    for (const Int& q : n_prime_factors_)
      if (pow(g, n_ / q) == e1) return false;
    return true;
  }

  /// Discrete log base the tower generator, by baby-step giant-step in
  /// O(sqrt(n)) time and space. Requires x != 0.
  Int discrete_log(const FqElement& x) const {
    if (x.is_zero()) throw std::invalid_argument("discrete_log: zero has no logarithm");
    Int s_int = kth_root_floor(n_, 2).first + 1;
    const std::uint64_t s = s_int.get_ui();
    std::unordered_map<std::uint64_t, std::uint64_t> baby;
    baby.reserve(static_cast<std::size_t>(s));
    FqElement cur = one();
    for (std::uint64_t j = 0; j < s; ++j) {
      baby.emplace(index_of(cur), j);
      cur = mul(cur, g_);
    }
    const FqElement giant = inv(pow(g_, Int(static_cast<unsigned long>(s))));
    FqElement c = x;
    for (std::uint64_t i = 0; i * s <= std::uint64_t(n_.get_ui()); ++i) {
      auto it = baby.find(index_of(c));
      if (it != baby.end()) {
        Int e = Int(static_cast<unsigned long>(i)) * Int(static_cast<unsigned long>(s)) +
                Int(static_cast<unsigned long>(it->second));
        return e % n_;
      }
      c = mul(c, giant);
    }
    throw std::logic_error("discrete_log: exhausted range without a match");
  }

  /// The subfield GF(p^u) inside GF(p^v): zero plus the powers g^(l*t),
  /// t = 0..m-1 (the unique subgroup of order m, plus zero).
  std::vector<FqElement> subfield_elements() const {
    std::vector<FqElement> out{zero()};
    const FqElement step = pow(g_, l_);
    FqElement cur = one();
    for (Int t = 0; t < m_; ++t) {
      out.push_back(cur);
      cur = mul(cur, step);
    }
    return out;
  }

  bool in_subfield(const FqElement& x) const {
    if (x.is_zero()) return true;
    return pow(x, m_) == one();
  }

  /// Least k >= 1 with x^k in GF(p^u): k = l / gcd(l, dlog(x)). Requires
  /// x != 0.
  Int root_index(const FqElement& x) const {
    return l_ / int_gcd(l_, discrete_log(x));
  }

  struct ConstructedSet {
    Int w;                          // l / m
    std::vector<Int> exponents;     // d * w for divisors d of m, ascending
    std::vector<FqElement> elements;
  };

  /// The explicit GF(p^u)-linearly-independent set {g^(d l / m) : d | m}.
  /// Requires m > 1 and m | l; throws with the failed divisibility
  /// otherwise.
  ConstructedSet construct_independent_set() const {
    if (m_ == 1)
      throw std::invalid_argument(
          "construct_independent_set: m = 1 (subfield GF(2)) admits no construction");
    if (l_ % m_ != 0)
      throw std::invalid_argument("construct_independent_set: m = " + m_.get_str() +
                                  " does not divide l = " + l_.get_str());
    ConstructedSet cs;
    cs.w = l_ / m_;
    for (const Int& d : divisors_sorted(m_)) {
      Int e = d * cs.w;
      cs.elements.push_back(pow(g_, e));
      cs.exponents.push_back(std::move(e));
    }
    return cs;
  }

  enum class VerifyMethod { automatic, exhaustive, rank };

  struct VerifyResult {
    bool independent = false;
    Int combinations_checked;  // nontrivial tuples tried (exhaustive path)
    bool exhaustive = false;
  };

  /// Linear independence of A over the subfield GF(p^u). Exhaustive
  /// enumeration of all (p^u)^|A| coefficient tuples when that count is at
  /// most 10^7; otherwise reduces to a GF(p)-rank computation: A is
  /// GF(p^u)-independent iff the u * |A| products {s_t * a_i} of a
  /// GF(p)-basis {s_t} of the subfield with the a_i are GF(p)-independent.
  VerifyResult verify_linear_independence(const std::vector<FqElement>& a,
                                          VerifyMethod method = VerifyMethod::automatic) const {
    for (const FqElement& x : a)
      if (x.is_zero()) return {false, Int(0), true};
    if (a.empty()) return {true, Int(0), true};
    const Int space = int_pow(int_pow(Int(p_), u_), static_cast<unsigned long>(a.size()));
    if (method == VerifyMethod::automatic)
      method = space <= 10000000 ? VerifyMethod::exhaustive : VerifyMethod::rank;
    if (method == VerifyMethod::exhaustive) {
      if (space > 100000000)
        throw std::invalid_argument("verify_linear_independence: exhaustive space too large");
      return verify_exhaustive(a);
    }
    return verify_rank(a);
  }

 private:
  FieldTower() = default;

  gfp::Poly digits(Int x, unsigned long count) const {
    gfp::Poly d(count, 0);
    for (unsigned long i = 0; i < count && sgn(x) != 0; ++i) {
      d[i] = Int(x % p_).get_ui();
      x /= p_;
    }
    if (sgn(x) != 0) throw std::invalid_argument("FieldTower: index out of range");
    return d;
  }

  VerifyResult verify_exhaustive(const std::vector<FqElement>& a) const {
    const std::vector<FqElement> sub = subfield_elements();
    const std::size_t q = sub.size();
    const std::size_t k = a.size();
    // products[i][c] = sub[c] * a[i]
    std::vector<std::vector<FqElement>> products(k);
    for (std::size_t i = 0; i < k; ++i) {
      products[i].reserve(q);
      for (std::size_t c = 0; c < q; ++c) products[i].push_back(mul(sub[c], a[i]));
    }
    std::vector<std::size_t> idx(k, 0);
    // psum[i] = sum of products[j][idx[j]] for j < i
    std::vector<FqElement> psum(k + 1, zero());
    Int checked = 0;
    std::size_t pos = k;  // positions >= pos have stale psum
    for (;;) {
      for (std::size_t i = pos; i < k; ++i) psum[i + 1] = add(psum[i], products[i][idx[i]]);
      bool trivial = true;
      for (std::size_t i = 0; i < k; ++i)
        if (idx[i] != 0) {
          trivial = false;
          break;
        }
      if (!trivial) {
        ++checked;
        if (psum[k].is_zero()) return {false, checked, true};
      }
      std::size_t i = k;
      while (i-- > 0) {
        if (++idx[i] < q) break;
        idx[i] = 0;
        if (i == 0) return {true, checked, true};
      }
      pos = i;
    }
  }

  VerifyResult verify_rank(const std::vector<FqElement>& a) const {
    // GF(p)-basis of the subfield: greedily take subfield elements whose
    // coefficient vectors extend the span.
    std::vector<std::vector<unsigned long>> rows;
    auto rank_insert = [this, &rows](std::vector<unsigned long> vec) {
      // Gaussian elimination over GF(p), rows kept in echelon form
      for (const auto& r : rows) {
        std::size_t lead = 0;
        while (lead < v_ && r[lead] == 0) ++lead;
        if (lead < v_ && vec[lead] != 0) {
          unsigned long m = vec[lead] * gfp::inv_mod_p(r[lead], p_) % p_;
          for (std::size_t j = 0; j < v_; ++j) vec[j] = (vec[j] + p_ - m * r[j] % p_) % p_;
        }
      }
      bool nonzero = false;
      for (unsigned long x : vec)
        if (x != 0) {
          nonzero = true;
          break;
        }
      if (!nonzero) return false;
      rows.push_back(std::move(vec));
      std::sort(rows.begin(), rows.end(), [this](const auto& x, const auto& y) {
        std::size_t lx = 0, ly = 0;
        while (lx < v_ && x[lx] == 0) ++lx;
        while (ly < v_ && y[ly] == 0) ++ly;
        return lx < ly;
      });
      return true;
    };
    std::vector<FqElement> basis;
    const FqElement step = pow(g_, l_);
    FqElement cur = one();
    for (Int t = 0; t < m_ && basis.size() < u_; ++t) {
      if (rank_insert(cur.c)) basis.push_back(cur);
      cur = mul(cur, step);
    }
    if (basis.size() != u_)
      throw std::logic_error("verify_linear_independence: subfield basis extraction failed");
    rows.clear();
    bool independent = true;
    for (const FqElement& x : a) {
      for (const FqElement& s : basis) {
        if (!rank_insert(mul(s, x).c)) {
          independent = false;
          break;
        }
      }
      if (!independent) break;
    }
    return {independent, Int(0), false};
  }

  unsigned long p_ = 2, u_ = 1, v_ = 1;
  gfp::Poly mod_;
  FqElement g_;
  Int m_, n_, l_;
  std::vector<Int> n_prime_factors_;
};

}  // namespace radlin
