#pragma once

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "radlin/number_core.hpp"

namespace radlin {

/// Generators acting on Z_n: phi(x) = 1 + d*x and inv(x) = -x.
enum class OrbitStep : unsigned char { phi, inv };

namespace detail {

inline long long norm_mod(long long x, long long n) {
  long long r = x % n;
  return r < 0 ? r + n : r;
}

inline void check_orbit_params(long long n, long long& d) {
  if (n < 1) throw std::invalid_argument("orbit: n must be positive");
  d = norm_mod(d, n);
  if (std::gcd(d == 0 ? n : d, n) != 1)
    throw std::invalid_argument("orbit: gcd(d, n) must be 1");
}

}  // namespace detail

inline long long apply_step(long long n, long long d, OrbitStep s, long long x) {
  if (s == OrbitStep::phi) return detail::norm_mod(1 + d * x, n);
  return detail::norm_mod(-x, n);
}

inline long long apply_word(long long n, long long d, const std::vector<OrbitStep>& w,
                            long long start = 0) {
  detail::check_orbit_params(n, d);
  long long x = detail::norm_mod(start, n);
  for (OrbitStep s : w) x = apply_step(n, d, s, x);
  return x;
}

/// Closure of {0} in Z_n under phi and inv, by breadth-first search.
/// For gcd(d, n) = 1 this is all of Z_n; the BFS does not assume that.
inline std::vector<long long> orbit_closure(long long n, long long d) {
  detail::check_orbit_params(n, d);
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<long long> queue{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    long long x = queue[head];
    for (OrbitStep s : {OrbitStep::phi, OrbitStep::inv}) {
      long long y = apply_step(n, d, s, x);
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = 1;
        queue.push_back(y);
      }
    }
  }
  std::vector<long long> out;
  for (long long v = 0; v < n; ++v)
    if (seen[static_cast<std::size_t>(v)]) out.push_back(v);
  return out;
}

/// Explicit generator word w with w(0) = target, built from the step-down
/// block rather than searched for. With r the multiplicative order of d
/// mod n, the block
///     B = inv . phi . inv . phi^((d-1)r - 1)        (applied right to left)
/// sends x to x - 2: the phi-run walks x up the geometric series to
/// d^((d-1)r) x + (d^((d-1)r)-1)/(d-1) and the conjugated extra phi turns
/// the net effect into subtraction of 2. Repeating B and fixing parity with
/// inv / a trailing phi reaches every residue. The returned word is replayed
/// before returning, so callers never receive an unvalidated path.
/// Word length is O(n * d * r); this is a desk-scale constructive witness,
/// not a shortest path.
inline std::vector<OrbitStep> constructive_path(long long n, long long d, long long target) {
  detail::check_orbit_params(n, d);
  long long t = detail::norm_mod(target, n);
  std::vector<OrbitStep> word;
  auto push_phi_run = [&word](long long count) {
    for (long long i = 0; i < count; ++i) word.push_back(OrbitStep::phi);
  };
  if (n == 1 || t == 0) {
    // empty word
  } else if (d == 1) {
    // phi is x -> x + 1
    push_phi_run(t);
  } else {
    const long long r =
        multiplicative_order(Int(static_cast<long>(d)), Int(static_cast<long>(n))).get_si();
    const long long block_phis = (d - 1) * r - 1;
    auto push_block = [&] {  // appends B; net effect x -> x - 2
      push_phi_run(block_phis);
      word.push_back(OrbitStep::inv);
      word.push_back(OrbitStep::phi);
      word.push_back(OrbitStep::inv);
    };
    // Reach -2k = t (mod n) for a nonnegative k, inserting parity fixes.
    if (n % 2 == 1) {
      // 2 is invertible: k = -t/2 mod n
      long long inv2 = (n + 1) / 2;  // inverse of 2 mod odd n
      long long k = detail::norm_mod((n - t) % n * inv2 % n, n);
      for (long long i = 0; i < k; ++i) push_block();
    } else if (t % 2 == 0) {
      long long k = (n - t) / 2 % n;
      for (long long i = 0; i < k; ++i) push_block();
    } else {
      // Odd target in even n: land on e*(t-1) with e = d^{-1}, then one
      // trailing phi maps it to 1 + d*e*(t-1) = t. e*(t-1) is even because
      // d (hence e) is odd when n is even and t-1 is even.
      const Int nz(static_cast<long>(n));
      long long e = detail::norm_mod(
          powmod(Int(static_cast<long>(d)), euler_phi(nz) - 1, nz).get_si(), n);
      long long pre = detail::norm_mod(e * (t - 1), n);
      long long k = (n - pre) % n / 2;
      for (long long i = 0; i < k; ++i) push_block();
      word.push_back(OrbitStep::phi);
    }
  }
  // Replay: the word is validated by evaluation, never trusted.
  long long x = 0;
  for (OrbitStep s : word) x = apply_step(n, d, s, x);
  if (x != t) throw std::logic_error("constructive_path: replay mismatch");
  return word;
}

inline std::string format_word(const std::vector<OrbitStep>& w) {
  std::string s;
  for (OrbitStep st : w) {
    if (!s.empty()) s += ',';
    s += (st == OrbitStep::phi) ? "phi" : "inv";
  }
  return s;
}

}  // namespace radlin
