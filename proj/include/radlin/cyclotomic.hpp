#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "radlin/number_core.hpp"

namespace radlin {

namespace detail {

/// Quotient of a by monic b over Z, requiring exact division.
inline std::vector<Int> poly_exact_div(const std::vector<Int>& a, const std::vector<Int>& b) {
  if (b.empty() || b.back() != 1) throw std::invalid_argument("poly_exact_div: divisor not monic");
  std::vector<Int> rem = a;
  if (rem.size() < b.size()) throw std::invalid_argument("poly_exact_div: degree underflow");
  std::vector<Int> q(rem.size() - b.size() + 1, Int(0));
  for (std::size_t i = q.size(); i-- > 0;) {
    Int c = rem[i + b.size() - 1];
    q[i] = c;
    if (sgn(c) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) rem[i + j] -= c * b[j];
  }
  for (const Int& c : rem)
    if (sgn(c) != 0) throw std::logic_error("poly_exact_div: nonzero remainder");
  return q;
}

}  // namespace detail

/// Coefficients of the n-th cyclotomic polynomial (ascending powers),
/// computed by the recursion x^n - 1 = prod over d|n of Phi_d: divide
/// x^n - 1 by all proper-divisor factors. Exact integer arithmetic.
inline std::vector<Int> cyclotomic_poly(long n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_poly: n must be >= 1");
  std::map<long, std::vector<Int>> memo;
  auto compute = [&memo](auto&& self, long k) -> const std::vector<Int>& {
    auto it = memo.find(k);
    if (it != memo.end()) return it->second;
    std::vector<Int> poly(static_cast<std::size_t>(k) + 1, Int(0));
    poly[0] = -1;
    poly[static_cast<std::size_t>(k)] = 1;  // x^k - 1
    for (long d = 1; d < k; ++d)
      if (k % d == 0) poly = detail::poly_exact_div(poly, self(self, d));
    return memo.emplace(k, std::move(poly)).first->second;
  };
  return compute(compute, n);
}

/// Q(zeta_n) presented as Q[x]/(Phi_n). Shared by elements so that mixed
/// arithmetic can verify it is working over one conductor.
class CycloField {
 public:
  static std::shared_ptr<const CycloField> create(long n) {
    return std::shared_ptr<const CycloField>(new CycloField(n));
  }

  long conductor() const { return n_; }
  std::size_t degree() const { return phi_.size() - 1; }
  const std::vector<Int>& modulus() const { return phi_; }

  /// Reduce an arbitrary-degree coefficient vector modulo Phi_n.
  std::vector<Rat> reduce(std::vector<Rat> c) const {
    const std::size_t deg = degree();
    for (std::size_t i = c.size(); i-- > deg;) {
      Rat t = c[i];
      if (sgn(t) == 0) continue;
      c[i] = 0;
      for (std::size_t j = 0; j < deg; ++j) c[i - deg + j] -= t * Rat(phi_[j]);
    }
    c.resize(deg, Rat(0));
    return c;
  }

 private:
  explicit CycloField(long n) : n_(n), phi_(cyclotomic_poly(n)) {}
  long n_;
  std::vector<Int> phi_;
};

using CycloFieldPtr = std::shared_ptr<const CycloField>;

/// Element of Q(zeta_n) as a rational coefficient vector on the power
/// basis 1, zeta, ..., zeta^(phi(n)-1). All arithmetic is exact.
class CycloElement {
 public:
  static CycloElement zero(CycloFieldPtr f) {
    return CycloElement(std::move(f), {});
  }

  static CycloElement rational(CycloFieldPtr f, Rat v) {
    std::vector<Rat> c(f->degree(), Rat(0));
    c[0] = std::move(v);
    std::vector<Rat> red = f->reduce(std::move(c));
    return CycloElement(std::move(f), std::move(red));
  }

  static CycloElement zeta_pow(CycloFieldPtr f, long k) {
    long n = f->conductor();
    long e = ((k % n) + n) % n;
    std::vector<Rat> c(static_cast<std::size_t>(e) + 1, Rat(0));
    c[static_cast<std::size_t>(e)] = 1;
    std::vector<Rat> red = f->reduce(std::move(c));
    return CycloElement(std::move(f), std::move(red));
  }

  static CycloElement from_poly(CycloFieldPtr f, std::vector<Rat> coeffs) {
    std::vector<Rat> red = f->reduce(std::move(coeffs));
    return CycloElement(std::move(f), std::move(red));
  }

  const CycloFieldPtr& field() const { return f_; }
  long conductor() const { return f_->conductor(); }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const Rat& q : c_)
      if (sgn(q) != 0) return false;
    return true;
  }

  bool is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (sgn(c_[i]) != 0) return false;
    return true;
  }

  Rat rational_value() const {
    if (!is_rational()) throw std::domain_error("CycloElement: not rational");
    return c_[0];
  }

  CycloElement operator+(const CycloElement& o) const {
    check_same(o);
    std::vector<Rat> c = c_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c_[i];
    return CycloElement(f_, std::move(c));
  }

  CycloElement operator-(const CycloElement& o) const {
    check_same(o);
    std::vector<Rat> c = c_;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c_[i];
    return CycloElement(f_, std::move(c));
  }

  CycloElement operator-() const {
    std::vector<Rat> c = c_;
    for (Rat& q : c) q = -q;
    return CycloElement(f_, std::move(c));
  }

  CycloElement operator*(const CycloElement& o) const {
    check_same(o);
    if (c_.empty() || o.c_.empty()) return zero(f_);
    std::vector<Rat> prod(c_.size() + o.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (sgn(c_[i]) == 0) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) {
        if (sgn(o.c_[j]) == 0) continue;
        prod[i + j] += c_[i] * o.c_[j];
      }
    }
    return CycloElement(f_, f_->reduce(std::move(prod)));
  }

  /// Multiplicative inverse via the extended Euclidean algorithm on
  /// (this, Phi_n) in Q[x]; Phi_n is coprime to any nonzero residue
  /// because zeta_n is a root of neither.
  CycloElement inverse() const {
    if (is_zero()) throw std::domain_error("CycloElement: inverse of zero");
    std::vector<Rat> r0;  // modulus
    for (const Int& z : f_->modulus()) r0.emplace_back(z);
    std::vector<Rat> r1 = c_;
    trim(r0);
    trim(r1);
    std::vector<Rat> s0{Rat(0)}, s1{Rat(1)};  // Bezout coefficients for c_
    while (!r1.empty()) {
      auto [q, r] = divmod(r0, r1);
      r0 = std::move(r1);
      r1 = std::move(r);
      std::vector<Rat> s2 = sub(s0, mul(q, s1));
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    // r0 is a nonzero constant gcd; inverse = s0 / r0
    if (r0.size() != 1)
      throw std::logic_error("CycloElement: residue shares a factor with the modulus");
    for (Rat& q : s0) q /= r0[0];
    return CycloElement(f_, f_->reduce(std::move(s0)));
  }

  /// Complex conjugation: zeta^k -> zeta^(n-k).
  CycloElement conjugate() const {
    const long n = f_->conductor();
    std::vector<Rat> c(static_cast<std::size_t>(n), Rat(0));
    for (std::size_t j = 0; j < c_.size(); ++j)
      c[static_cast<std::size_t>((n - static_cast<long>(j)) % n)] += c_[j];
    return CycloElement(f_, f_->reduce(std::move(c)));
  }

  bool operator==(const CycloElement& o) const {
    return conductor() == o.conductor() && c_ == o.c_;
  }
  bool operator!=(const CycloElement& o) const { return !(*this == o); }

 private:
  CycloElement(CycloFieldPtr f, std::vector<Rat> c) : f_(std::move(f)), c_(std::move(c)) {
    c_.resize(f_->degree(), Rat(0));
  }

  void check_same(const CycloElement& o) const {
    if (conductor() != o.conductor())
      throw std::invalid_argument("CycloElement: mixed conductors");
  }

  static void trim(std::vector<Rat>& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
  }

  static std::vector<Rat> sub(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    std::vector<Rat> r = a;
    if (r.size() < b.size()) r.resize(b.size(), Rat(0));
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
  }

  static std::vector<Rat> mul(const std::vector<Rat>& a, const std::vector<Rat>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<Rat> r(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
  }

  static std::pair<std::vector<Rat>, std::vector<Rat>> divmod(std::vector<Rat> a,
                                                              const std::vector<Rat>& b) {
    if (b.empty()) throw std::invalid_argument("divmod: zero divisor");
    if (a.size() < b.size()) return {{}, std::move(a)};
    std::vector<Rat> q(a.size() - b.size() + 1, Rat(0));
    for (std::size_t i = q.size(); i-- > 0;) {
      Rat c = a[i + b.size() - 1] / b.back();
      q[i] = c;
      if (sgn(c) == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) a[i + j] -= c * b[j];
    }
    trim(a);
    trim(q);
    return {std::move(q), std::move(a)};
  }

  CycloFieldPtr f_;
  std::vector<Rat> c_;
};

using CycloMat = std::vector<std::vector<CycloElement>>;

/// The n x n character table V with V[i][j] = zeta^(j(i-1)) for 1-based
/// i, j. Row 1 is all ones shifted by the zeta^j convention; V W = n I with
/// W the conjugate transpose, because row sums of powers of zeta telescope.
inline CycloMat character_matrix(const CycloFieldPtr& f) {
  const long n = f->conductor();
  CycloMat v;
  for (long i = 1; i <= n; ++i) {
    std::vector<CycloElement> row;
    for (long j = 1; j <= n; ++j)
      row.push_back(CycloElement::zeta_pow(f, j * (i - 1)));
    v.push_back(std::move(row));
  }
  return v;
}

/// Exact check of V * conj(V)^T = n I in Q(zeta_n).
inline bool dft_unitarity_check(long n) {
  auto f = CycloField::create(n);
  CycloMat v = character_matrix(f);
  CycloMat w(static_cast<std::size_t>(n),
             std::vector<CycloElement>(static_cast<std::size_t>(n), CycloElement::zero(f)));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) w[j][i] = v[i][j].conjugate();
  const CycloElement big_n = CycloElement::rational(f, Rat(n));
  const CycloElement zero = CycloElement::zero(f);
  for (long i = 0; i < n; ++i) {
    for (long k = 0; k < n; ++k) {
      CycloElement acc = CycloElement::zero(f);
      for (long j = 0; j < n; ++j) acc = acc + v[i][j] * w[j][k];
      if (acc != (i == k ? big_n : zero)) return false;
    }
  }
  return true;
}

/// Fraction-free Bareiss determinant over Q(zeta_n). Division at each step
/// is by the previous pivot and is exact by the Bareiss identity; the
/// field arithmetic is exact regardless.
inline CycloElement bareiss_determinant(CycloMat m, const CycloFieldPtr& f) {
  const std::size_t n = m.size();
  if (n == 0) return CycloElement::rational(f, Rat(1));
  int sign = 1;
  CycloElement prev = CycloElement::rational(f, Rat(1));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap_row = n;
      for (std::size_t i = k + 1; i < n; ++i)
        if (!m[i][k].is_zero()) {
          swap_row = i;
          break;
        }
      if (swap_row == n) return CycloElement::zero(f);
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    CycloElement prev_inv = prev.inverse();
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) * prev_inv;
    prev = m[k][k];
  }
  CycloElement det = m[n - 1][n - 1];
  return sign < 0 ? -det : det;
}

struct VandermondeCheck {
  bool ok = false;
  Rat det_norm;  // |det V|^2, exact
};

/// |det V|^2 = n^n for the character matrix V, checked exactly.
inline VandermondeCheck vandermonde_det_identity(long n) {
  auto f = CycloField::create(n);
  CycloElement det = bareiss_determinant(character_matrix(f), f);
  CycloElement norm = det * det.conjugate();
  if (!norm.is_rational())
    throw std::logic_error("vandermonde_det_identity: |det|^2 not rational");
  Rat val = norm.rational_value();
  return {val == Rat(int_pow(Int(n), static_cast<unsigned long>(n))), val};
}

/// A formal sum  sum c_i zeta_n^(e_i)  with nonzero integer coefficients
/// and distinct exponents in [0, n), exponents ascending.
struct VanishingSum {
  long n = 1;
  std::vector<std::pair<Int, long>> terms;  // (coefficient, exponent)
};

namespace detail {

inline void validate_sum_shape(const VanishingSum& s) {
  if (s.n < 1) throw std::invalid_argument("VanishingSum: n must be >= 1");
  long prev = -1;
  for (const auto& [c, e] : s.terms) {
    if (sgn(c) == 0) throw std::invalid_argument("VanishingSum: zero coefficient");
    if (e < 0 || e >= s.n) throw std::invalid_argument("VanishingSum: exponent out of range");
    if (e <= prev) throw std::invalid_argument("VanishingSum: exponents must be ascending");
    prev = e;
  }
}

inline CycloElement masked_sum(const CycloFieldPtr& f, const VanishingSum& s, std::uint64_t mask) {
  CycloElement acc = CycloElement::zero(f);
  for (std::size_t i = 0; i < s.terms.size(); ++i) {
    if (!(mask >> i & 1)) continue;
    const auto& [c, e] = s.terms[i];
    acc = acc + CycloElement::rational(f, Rat(c)) * CycloElement::zeta_pow(f, e);
  }
  return acc;
}

}  // namespace detail

/// Whether the subsum of s over the given term indices is exactly zero.
inline bool subsum_vanishes(const VanishingSum& s, const std::vector<std::size_t>& indices) {
  detail::validate_sum_shape(s);
  auto f = CycloField::create(s.n);
  std::uint64_t mask = 0;
  for (std::size_t i : indices) {
    if (i >= s.terms.size()) throw std::invalid_argument("subsum_vanishes: index out of range");
    mask |= std::uint64_t{1} << i;
  }
  return detail::masked_sum(f, s, mask).is_zero();
}

/// For a vanishing sum with k terms, no vanishing proper subsum, and a term
/// at exponent zero: n0 = n / gcd(n, e_1, ..., e_{k-1}) divides the product
/// of primes <= k. Verifies the hypotheses exactly (throws when they fail)
/// and returns whether the divisibility holds.
inline bool mann_condition_check(const VanishingSum& s) {
  detail::validate_sum_shape(s);
  const std::size_t k = s.terms.size();
  if (k < 2) throw std::invalid_argument("mann_condition_check: need at least 2 terms");
  if (k > 25) throw std::invalid_argument("mann_condition_check: subsum scan bounded at 25 terms");
  if (s.terms.front().second != 0)
    throw std::invalid_argument("mann_condition_check: a term with exponent 0 is required");
  auto f = CycloField::create(s.n);
  const std::uint64_t full = (std::uint64_t{1} << k) - 1;
  if (!detail::masked_sum(f, s, full).is_zero())
    throw std::invalid_argument("mann_condition_check: the sum does not vanish");
  for (std::uint64_t mask = 1; mask < full; ++mask)
    if (detail::masked_sum(f, s, mask).is_zero())
      throw std::invalid_argument("mann_condition_check: a proper subsum vanishes");
  Int g(s.n);
  for (const auto& [c, e] : s.terms)
    if (e != 0) g = int_gcd(g, Int(e));
  Int n0 = Int(s.n) / g;
  return primorial_up_to(static_cast<unsigned long>(k)) % n0 == 0;
}

namespace detail {

/// Reduced power-basis coordinates of zeta^e for all e; entries are
/// integers because Phi_n is monic over Z.
inline std::vector<std::vector<Int>> zeta_table(const CycloFieldPtr& f) {
  std::vector<std::vector<Int>> table;
  for (long e = 0; e < f->conductor(); ++e) {
    CycloElement z = CycloElement::zeta_pow(f, e);
    std::vector<Int> row;
    for (const Rat& q : z.coeffs()) {
      if (!rat_is_integer(q)) throw std::logic_error("zeta_table: non-integer coordinate");
      row.push_back(rat_num(q));
    }
    table.push_back(std::move(row));
  }
  return table;
}

/// Nullspace basis of a rows x cols rational matrix (column vectors of the
/// kernel), by reduced row echelon over Q.
inline std::vector<std::vector<Rat>> nullspace(std::vector<std::vector<Rat>> a,
                                               std::size_t cols) {
  const std::size_t rows = a.size();
  std::vector<std::size_t> pivot_col;
  std::size_t pr = 0;
  for (std::size_t c = 0; c < cols && pr < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t r = pr; r < rows; ++r)
      if (sgn(a[r][c]) != 0) {
        piv = r;
        break;
      }
    if (piv == rows) continue;
    std::swap(a[piv], a[pr]);
    Rat lead = a[pr][c];
    for (std::size_t j = c; j < cols; ++j) a[pr][j] /= lead;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == pr || sgn(a[r][c]) == 0) continue;
      Rat m = a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[r][j] -= m * a[pr][j];
    }
    pivot_col.push_back(c);
    ++pr;
  }
  std::vector<std::vector<Rat>> basis;
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;
  for (std::size_t c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Rat> v(cols, Rat(0));
    v[c] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -a[r][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace detail

/// All minimal vanishing sums over zeta_n with 0 < |c_i| <= coeff_bound,
/// at most max_terms terms, a term at exponent 0, and first coefficient
/// positive (one representative per sign orbit). Minimal means no proper
/// nonempty subsum vanishes. Enumeration order: by term count, then by the
/// exponent tuple lexicographically, then by coefficient vector.
inline std::vector<VanishingSum> enumerate_vanishing_sums(long n, long coeff_bound,
                                                          long max_terms) {
  if (n < 1) throw std::invalid_argument("enumerate_vanishing_sums: n must be >= 1");
  if (coeff_bound < 1)
    throw std::invalid_argument("enumerate_vanishing_sums: coeff_bound must be >= 1");
  if (max_terms < 2 || max_terms > n || max_terms > 20)
    throw std::invalid_argument("enumerate_vanishing_sums: max_terms out of range");
  auto f = CycloField::create(n);
  const auto table = detail::zeta_table(f);
  const std::size_t deg = f->degree();
  std::vector<VanishingSum> out;

  auto minimal_vanishing = [&](const std::vector<long>& exps, const std::vector<Int>& coeffs) {
    const std::size_t t = exps.size();
    std::vector<Int> acc(deg);
    const std::uint64_t full = (std::uint64_t{1} << t) - 1;
    for (std::uint64_t mask = 1; mask <= full; ++mask) {
      for (Int& v : acc) v = 0;
      for (std::size_t i = 0; i < t; ++i)
        if (mask >> i & 1)
          for (std::size_t j = 0; j < deg; ++j)
            acc[j] += coeffs[i] * table[static_cast<std::size_t>(exps[i])][j];
      bool zero = true;
      for (const Int& v : acc)
        if (sgn(v) != 0) {
          zero = false;
          break;
        }
      if (mask == full) return zero;       // the full sum must vanish
      if (zero) return false;              // a proper subsum vanished first
    }
    return false;
  };

  auto emit = [&](const std::vector<long>& exps, const std::vector<Int>& coeffs) {
    if (!minimal_vanishing(exps, coeffs)) return;
    VanishingSum s;
    s.n = n;
    for (std::size_t i = 0; i < exps.size(); ++i) s.terms.emplace_back(coeffs[i], exps[i]);
    out.push_back(std::move(s));
  };

  for (long t = 2; t <= max_terms; ++t) {
    // exponent tuples 0 = e_0 < e_1 < ... < e_{t-1} < n in lex order
    std::vector<long> exps(static_cast<std::size_t>(t));
    for (long i = 0; i < t; ++i) exps[static_cast<std::size_t>(i)] = i;
    for (;;) {
      // candidate coefficients from the kernel of the coordinate matrix
      std::vector<std::vector<Rat>> m(deg, std::vector<Rat>(static_cast<std::size_t>(t)));
      for (std::size_t j = 0; j < deg; ++j)
        for (long i = 0; i < t; ++i)
          m[j][static_cast<std::size_t>(i)] =
              Rat(table[static_cast<std::size_t>(exps[static_cast<std::size_t>(i)])][j]);
      auto kernel = detail::nullspace(std::move(m), static_cast<std::size_t>(t));
      if (kernel.size() == 1) {
        // one ray: integer primitive vector, scaled through the coeff box
        std::vector<Rat>& v = kernel[0];
        Int mult = 1;
        for (const Rat& q : v) mult = int_lcm(mult, rat_den(q));
        std::vector<Int> w;
        Int g = 0;
        bool has_zero = false;
        for (const Rat& q : v) {
          Int z = rat_num(Rat(q * Rat(mult)));
          if (sgn(z) == 0) has_zero = true;
          g = int_gcd(g, z);
          w.push_back(std::move(z));
        }
        if (!has_zero) {
          for (Int& z : w) z /= g;
          if (sgn(w[0]) < 0)
            for (Int& z : w) z = -z;
          Int wmax = 0;
          for (const Int& z : w)
            if (mpz_cmpabs(z.get_mpz_t(), wmax.get_mpz_t()) > 0) wmax = abs(z);
          for (Int lambda = 1; lambda * wmax <= coeff_bound; ++lambda) {
            std::vector<Int> coeffs;
            for (const Int& z : w) coeffs.push_back(z * lambda);
            emit(exps, coeffs);
          }
        }
      } else if (kernel.size() >= 2) {
        // small odometer over the coefficient box; c_0 > 0 pins the sign
        std::vector<long> c(static_cast<std::size_t>(t));
        auto scan = [&](auto&& self, std::size_t pos) -> void {
          if (pos == c.size()) {
            std::vector<Int> coeffs(c.begin(), c.end());
            std::vector<Int> acc(deg);
            for (std::size_t i = 0; i < c.size(); ++i)
              for (std::size_t j = 0; j < deg; ++j)
                acc[j] += coeffs[i] * table[static_cast<std::size_t>(exps[i])][j];
            for (const Int& v2 : acc)
              if (sgn(v2) != 0) return;
            emit(exps, coeffs);
            return;
          }
          long lo = pos == 0 ? 1 : -coeff_bound;
          for (long val = lo; val <= coeff_bound; ++val) {
            if (val == 0) continue;
            c[pos] = val;
            self(self, pos + 1);
          }
        };
        scan(scan, 0);
      }
      // next exponent tuple (e_0 fixed at 0)
      long i = t - 1;
      while (i >= 1 && exps[static_cast<std::size_t>(i)] == n - (t - i)) --i;
      if (i < 1) break;
      ++exps[static_cast<std::size_t>(i)];
      for (long j = i + 1; j < t; ++j)
        exps[static_cast<std::size_t>(j)] = exps[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

}  // namespace radlin
