#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "radlin/lattice.hpp"
#include "radlin/number_core.hpp"

namespace radlin {

/// A nonzero real of the form sign * prod p^(e_p), p prime, e_p a nonzero
/// rational in lowest terms. Construction absorbs perfect powers (e.g.
/// 4^(1/4) and 2^(1/2) coincide), so equality of values is equality of
/// representations and rationality is a pure denominator check.
class Radical {
 public:
  Radical() : sign_(1) {}

  static Radical one(int sign = +1) {
    Radical r;
    r.set_sign(sign);
    return r;
  }

  int sign() const { return sign_; }
  const std::map<Int, Rat>& exponents() const { return exps_; }

  bool is_rational() const {
    for (const auto& [p, e] : exps_)
      if (!rat_is_integer(e)) return false;
    return true;
  }

  /// Exact value when rational; throws otherwise.
  Rat rational_value() const {
    if (!is_rational()) throw std::domain_error("rational_value: radical is irrational");
    Int num = 1, den = 1;
    for (const auto& [p, e] : exps_) {
      Int z = rat_num(e);
      if (sgn(z) > 0)
        num *= int_pow(p, z.get_ui());
      else
        den *= int_pow(p, Int(-z).get_ui());
    }
    Rat v = rat_make(num, den);
    return sign_ < 0 ? Rat(-v) : v;
  }

  /// Least n >= 1 with value^n rational: the lcm of exponent denominators.
  Int root_degree() const {
    Int n = 1;
    for (const auto& [p, e] : exps_) n = int_lcm(n, rat_den(e));
    return n;
  }

  Radical inverse() const {
    Radical r;
    r.sign_ = sign_;
    for (const auto& [p, e] : exps_) r.exps_.emplace(p, Rat(-e));
    return r;
  }

  Radical mul(const Radical& o) const {
    Radical r = *this;
    r.sign_ = sign_ * o.sign_;
    for (const auto& [p, e] : o.exps_) r.bump(p, e);
    return r;
  }

  Radical div(const Radical& o) const { return mul(o.inverse()); }

  Radical pow(long k) const {
    Radical r;
    if (k == 0) return r;
    r.sign_ = (k % 2 == 0) ? +1 : sign_;
    Rat kk(k);
    for (const auto& [p, e] : exps_) r.exps_.emplace(p, Rat(e * kk));
    return r;
  }

  bool operator==(const Radical& o) const { return sign_ == o.sign_ && exps_ == o.exps_; }
  bool operator!=(const Radical& o) const { return !(*this == o); }

  bool operator<(const Radical& o) const {
    if (sign_ != o.sign_) return sign_ < o.sign_;
    auto it = exps_.begin();
    auto jt = o.exps_.begin();
    for (; it != exps_.end() && jt != o.exps_.end(); ++it, ++jt) {
      if (it->first != jt->first) return it->first < jt->first;
      if (it->second != jt->second) return it->second < jt->second;
    }
    return jt != o.exps_.end();
  }

  /// Add d to the exponent of prime p, dropping the entry when it cancels.
  void bump(const Int& p, const Rat& d) {
    auto it = exps_.find(p);
    if (it == exps_.end()) {
      if (sgn(d) != 0) exps_.emplace(p, d);
      return;
    }
    it->second += d;
    if (sgn(it->second) == 0) exps_.erase(it);
  }

  void set_sign(int s) {
    if (s != 1 && s != -1) throw std::invalid_argument("Radical: sign must be +1 or -1");
    sign_ = s;
  }

 private:
  int sign_;
  std::map<Int, Rat> exps_;
};

/// Canonical form of sign * base^exponent with base >= 1 and exponent > 0.
inline Radical radical_from(const Int& base, const Rat& exponent, int sign = +1) {
  if (base < 1) throw std::invalid_argument("radical_from: base must be >= 1");
  if (sgn(exponent) <= 0) throw std::invalid_argument("radical_from: exponent must be positive");
  Radical r = Radical::one(sign);
  for (const auto& [p, e] : factor(base).factors) r.bump(p, Rat(Rat(e) * exponent));
  return r;
}

inline Radical radical_from_rational(const Rat& q) {
  if (sgn(q) == 0) throw std::invalid_argument("radical_from_rational: value must be nonzero");
  Radical r = Radical::one(sgn(q) < 0 ? -1 : +1);
  for (const auto& [p, e] : factor(rat_num(abs(q))).factors) r.bump(p, Rat(e));
  for (const auto& [p, e] : factor(rat_den(q)).factors) r.bump(p, Rat(-Rat(e)));
  return r;
}

/// Two radicals are (linearly, over Q) independent iff their ratio is
/// irrational; with canonical representations this is a denominator check.
inline bool pairwise_independent(const Radical& a, const Radical& b) {
  return !a.div(b).is_rational();
}

/// A set of at least two distinct radicals, kept sorted for deterministic
/// iteration and witness indexing.
class RadicalSet {
 public:
  explicit RadicalSet(std::vector<Radical> elems) : elems_(std::move(elems)) {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
    if (elems_.size() < 2)
      throw std::invalid_argument("RadicalSet: need at least 2 distinct elements");
  }

  const std::vector<Radical>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }

 private:
  std::vector<Radical> elems_;
};

/// Membership of the set in the family for which pairwise independence over
/// Q upgrades to full linear independence. For real radicals over Q the
/// only live condition is the pairwise one: each element already has a
/// rational power (condition on powers), lies in R, and the set is finite.
struct ThetaResult {
  bool member = false;
  std::optional<std::pair<std::size_t, std::size_t>> dependent_pair;  // first failure, if any
};

inline ThetaResult theta_membership(const RadicalSet& a) {
  const auto& e = a.elements();
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j)
      if (!pairwise_independent(e[i], e[j])) return {false, {{i, j}}};
  return {true, std::nullopt};
}

/// Per-pair verdicts with exact witnesses: a dependent pair carries the
/// rational ratio, an independent pair carries a prime whose exponent in
/// the ratio is non-integral.
struct PairWitness {
  std::size_t i = 0, j = 0;
  bool independent = false;
  Rat ratio;          // set when dependent: value of e_i / e_j
  Int prime;          // set when independent
  Rat prime_exponent; // exponent of `prime` in e_i / e_j, non-integral
};

struct IndependenceCertificate {
  bool independent = false;
  std::vector<PairWitness> pairs;
};

inline IndependenceCertificate independence_certificate(const RadicalSet& a) {
  const auto& e = a.elements();
  IndependenceCertificate cert;
  cert.independent = true;
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      PairWitness w;
      w.i = i;
      w.j = j;
      Radical q = e[i].div(e[j]);
      if (q.is_rational()) {
        w.independent = false;
        w.ratio = q.rational_value();
        cert.independent = false;
      } else {
        w.independent = true;
        for (const auto& [p, ex] : q.exponents()) {
          if (!rat_is_integer(ex)) {
            w.prime = p;
            w.prime_exponent = ex;
            break;
          }
        }
      }
      cert.pairs.push_back(std::move(w));
    }
  }
  return cert;
}

namespace detail {

inline std::vector<Int> prime_support(const std::vector<Radical>& xs) {
  std::vector<Int> primes;
  for (const auto& x : xs)
    for (const auto& [p, e] : x.exponents()) primes.push_back(p);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

inline std::vector<std::vector<Rat>> exponent_matrix(const std::vector<Radical>& xs,
                                                     const std::vector<Int>& primes) {
  std::vector<std::vector<Rat>> m(xs.size(), std::vector<Rat>(primes.size(), Rat(0)));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto& ex = xs[i].exponents();
    for (std::size_t j = 0; j < primes.size(); ++j) {
      auto it = ex.find(primes[j]);
      if (it != ex.end()) m[i][j] = it->second;
    }
  }
  return m;
}

}  // namespace detail

/// Whether prod x_i^(c_i) is irrational for every exponent vector c with
/// 0 <= c_i < n_i, c != 0, where n_i is the root degree of x_i. Decided
/// exactly by a lattice index computation: the exponent vectors of the x_i,
/// read in the group (Q/Z)^P over the prime support P, generate a subgroup
/// whose order must equal prod n_i.
inline bool multiplicative_condition_check(const std::vector<Radical>& xs) {
  if (xs.empty())
    throw std::invalid_argument("multiplicative_condition_check: empty input");
  for (const auto& x : xs)
    if (x.is_rational())
      throw std::invalid_argument("multiplicative_condition_check: elements must be irrational");
  const auto primes = detail::prime_support(xs);
  const auto v = detail::exponent_matrix(xs, primes);
  const std::size_t np = primes.size();
  // Per-coordinate denominators d_j; the ambient finite group is +_j Z/d_j.
  std::vector<Int> d(np, 1);
  for (std::size_t j = 0; j < np; ++j)
    for (std::size_t i = 0; i < xs.size(); ++i) d[j] = int_lcm(d[j], rat_den(v[i][j]));
  IntMat rows;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<Int> row(np);
    for (std::size_t j = 0; j < np; ++j) row[j] = rat_num(Rat(v[i][j] * Rat(d[j])));
    rows.push_back(std::move(row));
  }
  Int group_order = 1;
  for (std::size_t j = 0; j < np; ++j) {
    std::vector<Int> unit(np, 0);
    unit[j] = d[j];
    rows.push_back(std::move(unit));
    group_order *= d[j];
  }
  // Subgroup order = |group| / [Z^P : span(rows)].
  Int subgroup_order = group_order / lattice_index(std::move(rows), np);
  Int target = 1;
  for (const auto& x : xs) target *= x.root_degree();
  return subgroup_order == target;
}

/// Same predicate by direct enumeration of all exponent vectors; intended
/// as an independent cross-check for small inputs. Throws when the search
/// space prod n_i exceeds the budget.
inline bool multiplicative_condition_check_bruteforce(const std::vector<Radical>& xs,
                                                      const Int& budget = Int(1000000)) {
  if (xs.empty())
    throw std::invalid_argument("multiplicative_condition_check_bruteforce: empty input");
  for (const auto& x : xs)
    if (x.is_rational())
      throw std::invalid_argument(
          "multiplicative_condition_check_bruteforce: elements must be irrational");
  std::vector<unsigned long> n(xs.size());
  Int total = 1;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    n[i] = xs[i].root_degree().get_ui();
    total *= n[i];
  }
  if (total > budget)
    throw std::invalid_argument("multiplicative_condition_check_bruteforce: space too large");
  const auto primes = detail::prime_support(xs);
  const auto v = detail::exponent_matrix(xs, primes);
  std::vector<unsigned long> c(xs.size(), 0);
  for (;;) {
    // advance odometer; the all-zero vector is skipped as the trivial combination
    std::size_t pos = 0;
    while (pos < c.size() && ++c[pos] == n[pos]) c[pos++] = 0;
    if (pos == c.size()) break;
    bool all_integral = true;
    for (std::size_t j = 0; j < primes.size() && all_integral; ++j) {
      Rat s(0);
      for (std::size_t i = 0; i < xs.size(); ++i) s += v[i][j] * Rat(c[i]);
      all_integral = rat_is_integer(s);
    }
    if (all_integral) return false;  // some nontrivial power product is rational
  }
  return true;
}

/// Degree of Q(x_1, ..., x_r) over Q when the multiplicative condition
/// holds: the product of the root degrees. Rejects generating sets that
/// fail the condition instead of guessing a smaller degree.
inline Int extension_degree(const std::vector<Radical>& xs) {
  if (!multiplicative_condition_check(xs))
    throw std::invalid_argument(
        "extension_degree: multiplicative condition fails; reduce the generating set first");
  Int deg = 1;
  for (const auto& x : xs) deg *= x.root_degree();
  return deg;
}

/// Degree of Q(x_1, ..., x_r) over Q for arbitrary positive radicals, with
/// no condition on the generating set: [L : Z^P] for the lattice L spanned
/// by the exponent vectors together with Z^P, computed as an index ratio.
/// With D the common denominator, deg = D^P / [Z^P : D*L].
inline Int lattice_degree(const std::vector<Radical>& xs) {
  for (const auto& x : xs)
    if (x.sign() < 0)
      throw std::invalid_argument("lattice_degree: radicals must be positive reals");
  const auto primes = detail::prime_support(xs);
  const std::size_t np = primes.size();
  if (np == 0) return 1;  // every element is rational
  const auto v = detail::exponent_matrix(xs, primes);
  Int dd = 1;
  for (const auto& row : v)
    for (const auto& q : row) dd = int_lcm(dd, rat_den(q));
  IntMat rows;
  for (const auto& row : v) {
    std::vector<Int> r(np);
    for (std::size_t j = 0; j < np; ++j) r[j] = rat_num(Rat(row[j] * Rat(dd)));
    rows.push_back(std::move(r));
  }
  for (std::size_t j = 0; j < np; ++j) {
    std::vector<Int> unit(np, 0);
    unit[j] = dd;
    rows.push_back(std::move(unit));
  }
  return int_pow(dd, np) / lattice_index(std::move(rows), np);
}

/// Degree of Q(2^(1/2), 3^(1/3), ..., n^(1/n)) over Q.
inline Int sierpinski_degree(long n) {
  if (n < 2) throw std::invalid_argument("sierpinski_degree: n must be >= 2");
  std::vector<Radical> xs;
  for (long k = 2; k <= n; ++k) xs.push_back(radical_from(Int(k), rat_make(1, k)));
  return lattice_degree(xs);
}

/// Rationality of sum q_i * x_i with positive rational q_i and positive
/// radicals x_i: rational iff every term is rational (a positive rational
/// combination of pairwise-independent irrational radicals cannot cancel,
/// and positivity forbids mixed-sign cancellation of like terms).
struct SumRationality {
  bool is_rational = false;
  Rat value;  // set when rational
};

inline SumRationality positive_sum_rationality(
    const std::vector<std::pair<Rat, Radical>>& terms) {
  for (const auto& [q, x] : terms) {
    if (sgn(q) <= 0)
      throw std::invalid_argument("positive_sum_rationality: coefficients must be positive");
    if (x.sign() < 0)
      throw std::invalid_argument("positive_sum_rationality: radicals must be positive");
  }
  for (const auto& [q, x] : terms)
    if (!x.is_rational()) return {false, Rat(0)};
  Rat v(0);
  for (const auto& [q, x] : terms) v += q * x.rational_value();
  return {true, v};
}

/// Text form: [-]p1^(a1/b1)*p2^(a2/b2)*... with primes ascending and
/// exponents in lowest terms; the empty product prints as 1. Exact and
/// round-trip stable.
inline std::string format_radical(const Radical& r) {
  std::string s;
  if (r.sign() < 0) s += '-';
  if (r.exponents().empty()) {
    s += '1';
    return s;
  }
  bool first = true;
  for (const auto& [p, e] : r.exponents()) {
    if (!first) s += '*';
    first = false;
    s += p.get_str();
    s += "^(";
    s += rat_num(e).get_str();
    s += '/';
    s += rat_den(e).get_str();
    s += ')';
  }
  return s;
}

/// Inverse of format_radical. Also accepts a bare base (exponent 1) and
/// non-canonical input such as 4^(1/4): the result is canonicalized.
inline Radical parse_radical(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("parse_radical: empty input");
  int sign = +1;
  std::size_t pos = 0;
  if (s[0] == '-') {
    sign = -1;
    pos = 1;
  } else if (s[0] == '+') {
    pos = 1;
  }
  if (pos >= s.size()) throw std::invalid_argument("parse_radical: missing body");
  Radical r = Radical::one(sign);
  std::size_t start = pos;
  auto take_factor = [&r](const std::string& tok) {
    if (tok.empty()) throw std::invalid_argument("parse_radical: empty factor");
    std::size_t caret = tok.find('^');
    std::string base_str = tok.substr(0, caret == std::string::npos ? tok.size() : caret);
    if (base_str.empty() || base_str.find_first_not_of("0123456789") != std::string::npos)
      throw std::invalid_argument("parse_radical: bad base '" + base_str + "'");
    Int base(base_str);
    if (base < 1) throw std::invalid_argument("parse_radical: base must be >= 1");
    Rat e(1);
    if (caret != std::string::npos) {
      std::string es = tok.substr(caret + 1);
      if (es.size() < 2 || es.front() != '(' || es.back() != ')')
        throw std::invalid_argument("parse_radical: exponent must be parenthesized");
      es = es.substr(1, es.size() - 2);
      std::size_t slash = es.find('/');
      try {
        if (slash == std::string::npos)
          e = rat_make(Int(es), 1);
        else
          e = rat_make(Int(es.substr(0, slash)), Int(es.substr(slash + 1)));
      } catch (const std::exception&) {
        throw std::invalid_argument("parse_radical: bad exponent '" + es + "'");
      }
    }
    if (sgn(e) > 0)
      r = r.mul(radical_from(base, e));
    else if (sgn(e) < 0)
      r = r.mul(radical_from(base, Rat(-e)).inverse());
    // exponent 0 contributes the empty product
  };
  for (std::size_t i = start; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == '*') {
      take_factor(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return r;
}

}  // namespace radlin
