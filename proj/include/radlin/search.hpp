#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"
#include "radlin/radicals.hpp"

namespace radlin {

/// One signed root term sign * base^(1/k).
struct RootTerm {
  Int base;
  unsigned long k = 2;
  int sign = +1;
};

struct Interval {
  Rat lo, hi;
  unsigned long precision_bits = 0;  // binary size of the decimal scale used

  Rat width() const { return Rat(hi - lo); }
};

/// Certified enclosure of sum_i sign_i * base_i^(1/k_i) at a fixed decimal
/// scale S = 10^digits: each root is bracketed by floor and floor+1 of the
/// integer k-th root of base * S^k, so the endpoints are exact rationals.
inline Interval eval_radical_sum_at_digits(const std::vector<RootTerm>& terms,
                                           unsigned long digits) {
  if (digits < 1) throw std::invalid_argument("eval_radical_sum_at_digits: digits must be >= 1");
  const Int scale = int_pow(Int(10), digits);
  Rat lo(0), hi(0);
  for (const RootTerm& t : terms) {
    if (t.base < 1) throw std::invalid_argument("eval_radical_sum: bases must be >= 1");
    if (t.k < 2) throw std::invalid_argument("eval_radical_sum: k must be >= 2");
    if (t.sign != 1 && t.sign != -1)
      throw std::invalid_argument("eval_radical_sum: sign must be +1 or -1");
    auto [r, exact] = kth_root_floor(t.base * int_pow(scale, t.k), t.k);
    Rat term_lo = rat_make(r, scale);
    Rat term_hi = exact ? term_lo : rat_make(r + 1, scale);
    if (t.sign > 0) {
      lo += term_lo;
      hi += term_hi;
    } else {
      lo -= term_hi;
      hi -= term_lo;
    }
  }
  return {std::move(lo), std::move(hi),
          mpz_sizeinbase(scale.get_mpz_t(), 2)};
}

/// Adaptive version: the decimal scale doubles until the enclosure is
/// narrower than target_width. Doubling the scale never widens the
/// enclosure (the finer floor refines the coarser one), so refinement is
/// monotone.
inline Interval eval_radical_sum(const std::vector<RootTerm>& terms, const Rat& target_width,
                                 unsigned long start_digits = 16) {
  if (sgn(target_width) <= 0)
    throw std::invalid_argument("eval_radical_sum: target_width must be positive");
  unsigned long digits = std::max<unsigned long>(start_digits, 1);
  for (;;) {
    Interval iv = eval_radical_sum_at_digits(terms, digits);
    if (iv.width() < target_width) return iv;
    digits *= 2;
  }
}

/// Certificate that eps = x^(1/m) + y^(1/n) - z^(1/r) is not zero, derived
/// from exact independence of the radicals rather than from numerics.
struct ExactnessCertificate {
  IndependenceCertificate certificate;
  bool reduced = false;  // true when z^(1/r) was a rational multiple of one summand
  std::string note;
};

/// Preconditions (each rejected with a diagnostic): x, y, z >= 2 and
/// m, n, r >= 2; gcd(x, y) = 1; x, y, z not perfect m-, n-, r-th powers.
/// Under these, x^(1/m) and y^(1/n) are independent over Q (their prime
/// supports are disjoint and neither root is rational). If z^(1/r) is
/// independent of both, the pairwise-independent triple is linearly
/// independent over Q and the combination with coefficients (1, 1, -1)
/// cannot vanish. If z^(1/r) is a rational multiple q of one summand, the
/// sum collapses onto the independent pair with coefficients
/// (1 - q, 1) or (1, 1 - q), which are not both zero; either way eps != 0.
inline ExactnessCertificate exactness_guard(const Int& x, unsigned long m, const Int& y,
                                            unsigned long n, const Int& z, unsigned long r) {
  auto reject = [](const std::string& msg) {
    throw std::invalid_argument("exactness_guard: " + msg);
  };
  if (x < 2 || y < 2 || z < 2) reject("x, y, z must all be >= 2");
  if (m < 2 || n < 2 || r < 2) reject("m, n, r must all be >= 2");
  if (int_gcd(x, y) != 1) reject("gcd(x, y) must be 1");
  if (is_perfect_kth_power(x, m))
    reject(x.get_str() + " is a perfect " + std::to_string(m) + "-th power");
  if (is_perfect_kth_power(y, n))
    reject(y.get_str() + " is a perfect " + std::to_string(n) + "-th power");
  if (is_perfect_kth_power(z, r))
    reject(z.get_str() + " is a perfect " + std::to_string(r) + "-th power");
  Radical a = radical_from(x, rat_make(1, m));
  Radical b = radical_from(y, rat_make(1, n));
  Radical c = radical_from(z, rat_make(1, r));
  if (!pairwise_independent(a, b))
    throw std::logic_error("exactness_guard: x^(1/m), y^(1/n) unexpectedly dependent");
  const bool ac = pairwise_independent(a, c);
  const bool bc = pairwise_independent(b, c);
  ExactnessCertificate out;
  if (ac && bc) {
    out.certificate = independence_certificate(RadicalSet({a, b, c}));
    out.note =
        "pairwise independence of the triple makes it linearly independent over Q; "
        "the coefficients (1, 1, -1) are nonzero, so eps != 0";
  } else {
    // z^(1/r) is a rational multiple of exactly one summand; the sum
    // collapses onto the remaining independent pair.
    out.reduced = true;
    out.certificate = independence_certificate(RadicalSet({a, b}));
    out.note = std::string("z^(1/r) is a rational multiple of ") +
               (ac ? "y^(1/n)" : "x^(1/m)") +
               "; eps collapses onto the independent pair {x^(1/m), y^(1/n)} with a "
               "nonzero coefficient vector, so eps != 0";
  }
  if (!out.certificate.independent)
    throw std::logic_error("exactness_guard: independence certificate failed");
  return out;
}

struct SearchConfig {
  long x_max = 1000;
  long y_max = 1000;
  long exp_min = 2;
  long exp_max = 10;
  bool allow_mixed_exponents = false;
  long top_k = 10;
  long pool_size = 10000;
  long worker_count = 1;
  std::string checkpoint_path;   // empty = no checkpointing
  long checkpoint_every = 256;   // completed shards between checkpoint writes
  long stop_after_shards = 0;    // test hook: stop after this many new shards (0 = off)
};

struct NearMiss {
  Int x, y, z;
  unsigned long m = 2, n = 2, r = 2;
  Rat eps_lo, eps_hi;
  unsigned long precision_bits = 0;
};

struct SearchReport {
  std::vector<NearMiss> results;
  std::uint64_t shards_total = 0;
  std::uint64_t shards_done = 0;
  bool complete = false;
};

namespace detail {

// ---- small exact helpers on 64-bit candidates (prefilter fast path) ----

inline std::uint64_t u64_pow_clamped(std::uint64_t b, unsigned long k) {
  unsigned __int128 r = 1;
  for (unsigned long i = 0; i < k; ++i) {
    r *= b;
    if (r > static_cast<unsigned __int128>(UINT64_MAX)) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(r);
}

inline bool u64_is_perfect_kth_power(std::uint64_t v, unsigned long k) {
  if (v < 2) return true;
  if (k == 1) return true;
  auto guess = static_cast<std::uint64_t>(std::llround(std::pow(static_cast<double>(v),
                                                                1.0 / static_cast<double>(k))));
  for (std::uint64_t r = (guess > 2 ? guess - 2 : 0); r <= guess + 2; ++r)
    if (u64_pow_clamped(r, k) == v) return true;
  return false;
}

struct PoolEntry {
  double approx = 0.0;  // |eps| at hardware precision
  long x = 0, y = 0;
  std::int64_t z = 0;
  long m = 2, n = 2, r = 2;

  // Total order: approx first, then the tuple; no two distinct admissible
  // candidates share the full key, so merging is order-independent.
  friend bool operator<(const PoolEntry& a, const PoolEntry& b) {
    if (a.approx != b.approx) return a.approx < b.approx;
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    if (a.z != b.z) return a.z < b.z;
    if (a.m != b.m) return a.m < b.m;
    if (a.n != b.n) return a.n < b.n;
    return a.r < b.r;
  }
};

inline double approx_eps(long x, long m, long y, long n, std::int64_t z, long r) {
  const double s = std::pow(static_cast<double>(x), 1.0 / static_cast<double>(m)) +
                   std::pow(static_cast<double>(y), 1.0 / static_cast<double>(n));
  return std::fabs(s - std::pow(static_cast<double>(z), 1.0 / static_cast<double>(r)));
}

/// Nearest integer to (x^(1/m) + y^(1/n))^r. Hardware doubles are exact
/// enough below 2^52; above that the rounding is settled with exact
/// rational interval arithmetic.
inline std::int64_t nearest_z(long x, long m, long y, long n, long r) {
  const double s = std::pow(static_cast<double>(x), 1.0 / static_cast<double>(m)) +
                   std::pow(static_cast<double>(y), 1.0 / static_cast<double>(n));
  const double zd = std::pow(s, static_cast<double>(r));
  if (zd < 4.5e15) return std::llround(zd);
  std::vector<RootTerm> terms{{Int(x), static_cast<unsigned long>(m), +1},
                              {Int(y), static_cast<unsigned long>(n), +1}};
  for (unsigned long digits = 24;; digits *= 2) {
    Interval s_iv = eval_radical_sum_at_digits(terms, digits);
    Rat lo(s_iv.lo), hi(s_iv.hi);
    Rat plo(1), phi(1);
    for (long i = 0; i < r; ++i) {
      plo *= lo;
      phi *= hi;
    }
    // round both endpoints (floor(v + 1/2); v > 0 so truncation = floor);
    // equal answers settle the rounding
    Rat half_lo = Rat(plo) + rat_make(1, 2);
    Int flo = rat_num(half_lo) / rat_den(half_lo);
    Rat half_hi = Rat(phi) + rat_make(1, 2);
    Int fhi = rat_num(half_hi) / rat_den(half_hi);
    if (flo == fhi) return static_cast<std::int64_t>(flo.get_si());
    if (digits > 4096)
      throw std::logic_error("nearest_z: could not settle rounding (value too close to half-integer)");
  }
}

inline std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

}  // namespace detail

/// Hash of the result-affecting configuration fields; worker count and
/// checkpoint bookkeeping deliberately excluded so a resume may change them.
inline std::string search_config_hash(const SearchConfig& cfg) {
  std::ostringstream os;
  os << "x_max=" << cfg.x_max << ";y_max=" << cfg.y_max << ";exp_min=" << cfg.exp_min
     << ";exp_max=" << cfg.exp_max << ";mixed=" << (cfg.allow_mixed_exponents ? 1 : 0)
     << ";top_k=" << cfg.top_k << ";pool_size=" << cfg.pool_size;
  return detail::fnv1a_hex(os.str());
}

inline std::string rat_fraction_string(const Rat& q) {
  return rat_num(q).get_str() + "/" + rat_den(q).get_str();
}

inline nlohmann::ordered_json nearmiss_to_json(const NearMiss& nm) {
  nlohmann::ordered_json j;
  j["x"] = nm.x.get_si();
  j["y"] = nm.y.get_si();
  j["z"] = nm.z.get_si();
  j["m"] = nm.m;
  j["n"] = nm.n;
  j["r"] = nm.r;
  j["eps_lo"] = rat_fraction_string(nm.eps_lo);
  j["eps_hi"] = rat_fraction_string(nm.eps_hi);
  j["precision_bits"] = nm.precision_bits;
  return j;
}

/// Canonical one-JSON-object-per-line rendering of a ranked result list.
inline std::string search_report_lines(const std::vector<NearMiss>& results) {
  std::string out;
  for (const NearMiss& nm : results) {
    out += nearmiss_to_json(nm).dump();
    out += '\n';
  }
  return out;
}

namespace detail {

struct CheckpointData {
  std::vector<std::uint64_t> completed;
  std::vector<PoolEntry> pool;  // approx fields recomputed on load
};

inline void checkpoint_write_file(const std::string& path, const std::string& hash,
                                  std::uint64_t shards_total,
                                  const std::vector<std::uint64_t>& completed,
                                  const std::vector<PoolEntry>& pool) {
  nlohmann::ordered_json j;
  j["config_hash"] = hash;
  j["shards_total"] = shards_total;
  j["completed"] = completed;
  nlohmann::json parr = nlohmann::json::array();
  for (const PoolEntry& e : pool)
    parr.push_back({e.x, e.y, e.z, e.m, e.n, e.r});
  j["pool"] = std::move(parr);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("checkpoint: cannot write " + tmp);
    out << j.dump();
  }
  std::filesystem::rename(tmp, path);
}

inline std::optional<CheckpointData> checkpoint_load_file(const std::string& path,
                                                          const std::string& hash) {
  if (!std::filesystem::exists(path)) return std::nullopt;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("checkpoint: cannot read " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  if (j.at("config_hash").get<std::string>() != hash)
    throw std::invalid_argument(
        "checkpoint: config hash mismatch (checkpoint was written by a different "
        "configuration); refusing to resume");
  CheckpointData data;
  data.completed = j.at("completed").get<std::vector<std::uint64_t>>();
  for (const auto& t : j.at("pool")) {
    PoolEntry e;
    e.x = t.at(0).get<long>();
    e.y = t.at(1).get<long>();
    e.z = t.at(2).get<std::int64_t>();
    e.m = t.at(3).get<long>();
    e.n = t.at(4).get<long>();
    e.r = t.at(5).get<long>();
    e.approx = approx_eps(e.x, e.m, e.y, e.n, e.z, e.r);
    data.pool.push_back(e);
  }
  return data;
}

}  // namespace detail

/// Exhaustive scan over admissible (x, y, exponents) with a two-stage
/// pipeline: a hardware-precision prefilter retains the pool_size most
/// promising candidates, then every pool member is confirmed with exact
/// interval arithmetic (width < |eps| / 10 and 0 excluded) and the final
/// ranking uses only certified bounds. The shard grid is (x, first
/// exponent); workers claim shards from an atomic counter and merge into
/// an order-independent bounded pool, so the output is identical for any
/// worker count.
inline SearchReport near_miss_search(const SearchConfig& cfg) {
  if (cfg.x_max < 1 || cfg.y_max < 1)
    throw std::invalid_argument("near_miss_search: x_max and y_max must be >= 1");
  if (cfg.exp_min < 2)
    throw std::invalid_argument("near_miss_search: exp_min must be >= 2");
  if (cfg.exp_max < cfg.exp_min)
    throw std::invalid_argument("near_miss_search: exp_max must be >= exp_min");
  if (cfg.top_k < 1) throw std::invalid_argument("near_miss_search: top_k must be >= 1");
  if (cfg.pool_size < cfg.top_k)
    throw std::invalid_argument("near_miss_search: pool_size must be >= top_k");
  if (cfg.worker_count < 1)
    throw std::invalid_argument("near_miss_search: worker_count must be >= 1");

  const long exp_count = cfg.exp_max - cfg.exp_min + 1;
  const std::uint64_t shards_total =
      static_cast<std::uint64_t>(cfg.x_max) * static_cast<std::uint64_t>(exp_count);
  const std::string hash = search_config_hash(cfg);

  std::vector<char> completed(shards_total, 0);
  std::set<detail::PoolEntry> pool;
  const std::size_t cap = static_cast<std::size_t>(cfg.pool_size);
  std::uint64_t done = 0;

  if (!cfg.checkpoint_path.empty()) {
    if (auto data = detail::checkpoint_load_file(cfg.checkpoint_path, hash)) {
      for (std::uint64_t id : data->completed) {
        if (id >= shards_total) throw std::invalid_argument("checkpoint: shard id out of range");
        if (!completed[id]) {
          completed[id] = 1;
          ++done;
        }
      }
      for (const detail::PoolEntry& e : data->pool) {
        pool.insert(e);
        if (pool.size() > cap) pool.erase(std::prev(pool.end()));
      }
    }
  }

  std::mutex merge_mutex;
  std::atomic<std::uint64_t> next_shard{0};
  std::atomic<long> new_budget{cfg.stop_after_shards > 0 ? cfg.stop_after_shards
                                                         : static_cast<long>(shards_total) + 1};
  std::uint64_t since_checkpoint = 0;

  auto scan_shard = [&cfg](std::uint64_t id, std::vector<detail::PoolEntry>& out) {
    const long exp_count_l = cfg.exp_max - cfg.exp_min + 1;
    const long x = static_cast<long>(id / static_cast<std::uint64_t>(exp_count_l)) + 1;
    const long m = cfg.exp_min + static_cast<long>(id % static_cast<std::uint64_t>(exp_count_l));
    if (detail::u64_is_perfect_kth_power(static_cast<std::uint64_t>(x),
                                         static_cast<unsigned long>(m)))
      return;
    const long n_lo = cfg.allow_mixed_exponents ? cfg.exp_min : m;
    const long n_hi = cfg.allow_mixed_exponents ? cfg.exp_max : m;
    for (long y = x; y <= cfg.y_max; ++y) {
      if (std::gcd(x, y) != 1) continue;
      for (long n = n_lo; n <= n_hi; ++n) {
        if (detail::u64_is_perfect_kth_power(static_cast<std::uint64_t>(y),
                                             static_cast<unsigned long>(n)))
          continue;
        for (long r = n_lo; r <= n_hi; ++r) {
          const std::int64_t z0 = detail::nearest_z(x, m, y, n, r);
          for (std::int64_t z = z0 - 1; z <= z0 + 1; ++z) {
            if (z < 2) continue;
            if (detail::u64_is_perfect_kth_power(static_cast<std::uint64_t>(z),
                                                 static_cast<unsigned long>(r)))
              continue;
            detail::PoolEntry e;
            e.approx = detail::approx_eps(x, m, y, n, z, r);
            e.x = x;
            e.y = y;
            e.z = z;
            e.m = m;
            e.n = n;
            e.r = r;
            out.push_back(e);
          }
        }
      }
    }
  };

  auto worker = [&] {
    std::vector<detail::PoolEntry> local;
    for (;;) {
      const std::uint64_t id = next_shard.fetch_add(1);
      if (id >= shards_total) return;
      if (completed[id]) continue;  // set only before threads start or under merge_mutex
      if (new_budget.fetch_sub(1) <= 0) return;
      local.clear();
      scan_shard(id, local);
      std::lock_guard<std::mutex> lk(merge_mutex);
      for (const detail::PoolEntry& e : local) {
        // equivalent to insert-then-trim: distinct candidates never share a
        // full key, so an entry not below the current worst can be dropped
        if (pool.size() == cap && !(e < *pool.rbegin())) continue;
        pool.insert(e);
        if (pool.size() > cap) pool.erase(std::prev(pool.end()));
      }
      completed[id] = 1;
      ++done;
      ++since_checkpoint;
      if (!cfg.checkpoint_path.empty() &&
          since_checkpoint >= static_cast<std::uint64_t>(cfg.checkpoint_every)) {
        since_checkpoint = 0;
        std::vector<std::uint64_t> ids;
        for (std::uint64_t i = 0; i < shards_total; ++i)
          if (completed[i]) ids.push_back(i);
        detail::checkpoint_write_file(cfg.checkpoint_path, hash, shards_total, ids,
                                      {pool.begin(), pool.end()});
      }
    }
  };

  const unsigned long nthreads = static_cast<unsigned long>(
      std::min<std::uint64_t>(static_cast<std::uint64_t>(cfg.worker_count), shards_total));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (unsigned long i = 0; i < nthreads; ++i) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }

  if (!cfg.checkpoint_path.empty()) {
    std::vector<std::uint64_t> ids;
    for (std::uint64_t i = 0; i < shards_total; ++i)
      if (completed[i]) ids.push_back(i);
    detail::checkpoint_write_file(cfg.checkpoint_path, hash, shards_total, ids,
                                  {pool.begin(), pool.end()});
  }

  // Certified confirmation of the whole retained pool.
  std::vector<NearMiss> results;
  for (const detail::PoolEntry& e : pool) {
    std::vector<RootTerm> terms{{Int(e.x), static_cast<unsigned long>(e.m), +1},
                                {Int(e.y), static_cast<unsigned long>(e.n), +1},
                                {Int(static_cast<long>(e.z)), static_cast<unsigned long>(e.r), -1}};
    NearMiss nm;
    nm.x = e.x;
    nm.y = e.y;
    nm.z = static_cast<long>(e.z);
    nm.m = static_cast<unsigned long>(e.m);
    nm.n = static_cast<unsigned long>(e.n);
    nm.r = static_cast<unsigned long>(e.r);
    for (unsigned long digits = 24;; digits *= 2) {
      Interval iv = eval_radical_sum_at_digits(terms, digits);
      const bool excludes_zero = sgn(iv.lo) > 0 || sgn(iv.hi) < 0;
      if (excludes_zero) {
        Rat margin = sgn(iv.lo) > 0 ? iv.lo : Rat(-iv.hi);
        if (iv.width() * 10 < margin) {
          nm.eps_lo = iv.lo;
          nm.eps_hi = iv.hi;
          nm.precision_bits = iv.precision_bits;
          break;
        }
      }
      if (digits > (1ul << 20))
        throw std::logic_error("near_miss_search: certification failed to converge");
    }
    results.push_back(std::move(nm));
  }
  auto upper_bound_abs = [](const NearMiss& nm) {
    // 0 is outside [eps_lo, eps_hi], so |eps| <= hi when positive, -lo when negative
    return sgn(nm.eps_lo) > 0 ? nm.eps_hi : Rat(-nm.eps_lo);
  };
  std::sort(results.begin(), results.end(), [&](const NearMiss& a, const NearMiss& b) {
    Rat ua = upper_bound_abs(a);
    Rat ub = upper_bound_abs(b);
    if (ua != ub) return ua < ub;
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    if (a.z != b.z) return a.z < b.z;
    if (a.m != b.m) return a.m < b.m;
    if (a.n != b.n) return a.n < b.n;
    return a.r < b.r;
  });
  if (results.size() > static_cast<std::size_t>(cfg.top_k))
    results.resize(static_cast<std::size_t>(cfg.top_k));

  SearchReport report;
  report.results = std::move(results);
  report.shards_total = shards_total;
  report.shards_done = done;
  report.complete = done == shards_total;
  return report;
}

}  // namespace radlin
