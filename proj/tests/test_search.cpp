#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "radlin/search.hpp"

using namespace radlin;
using Catch::Matchers::ContainsSubstring;

namespace {

// Independent binary-scaled enclosures: the library brackets roots at
// decimal scales 10^d, the oracle at powers of two, so agreement is not a
// shared-code artifact.
struct BinIv {
  Rat lo, hi;
};

BinIv oracle_root(const Int& b, unsigned long k, unsigned long bits) {
  Int scale = Int(1) << bits;
  auto [r, exact] = kth_root_floor(b * int_pow(scale, k), k);
  Rat lo = rat_make(r, scale);
  return {lo, exact ? lo : rat_make(r + 1, scale)};
}

BinIv oracle_eps(const Int& x, unsigned long m, const Int& y, unsigned long n, const Int& z,
                 unsigned long r, unsigned long bits) {
  BinIv a = oracle_root(x, m, bits), b = oracle_root(y, n, bits), c = oracle_root(z, r, bits);
  return {a.lo + b.lo - c.hi, a.hi + b.hi - c.lo};
}

Rat oracle_ub_abs(const BinIv& iv) {
  REQUIRE((sgn(iv.lo) > 0 || sgn(iv.hi) < 0));
  return sgn(iv.lo) > 0 ? iv.hi : Rat(-iv.lo);
}

Int rat_floor(const Rat& q) {
  Int f;
  mpz_fdiv_q(f.get_mpz_t(), rat_num(q).get_mpz_t(), rat_den(q).get_mpz_t());
  return f;
}

std::int64_t oracle_nearest_z(long x, unsigned long m, long y, unsigned long n, long r) {
  for (unsigned long bits = 136;; bits *= 2) {
    BinIv a = oracle_root(Int(x), m, bits), b = oracle_root(Int(y), n, bits);
    Rat plo(1), phi(1);
    for (long i = 0; i < r; ++i) {
      plo *= (a.lo + b.lo);
      phi *= (a.hi + b.hi);
    }
    Int flo = rat_floor(plo + rat_make(1, 2));
    Int fhi = rat_floor(phi + rat_make(1, 2));
    if (flo == fhi) return flo.get_si();
    REQUIRE(bits < 10000);
  }
}

Rat pow10_inv(unsigned long d) { return rat_make(1, int_pow(Int(10), d)); }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("certified evaluation: exact and irrational roots", "[search]") {
  // sqrt(4) is exact at any scale: a degenerate interval equal to 2
  Interval iv = eval_radical_sum_at_digits({{Int(4), 2, +1}}, 5);
  CHECK(iv.lo == 2);
  CHECK(iv.hi == 2);
  CHECK(iv.width() == 0);
  iv = eval_radical_sum({{Int(4), 2, +1}}, pow10_inv(30));
  CHECK(iv.lo == 2);

  // sqrt(2) + sqrt(2): overlap with the binary oracle, tiny width
  Interval lib = eval_radical_sum({{Int(2), 2, +1}, {Int(2), 2, +1}}, pow10_inv(50));
  BinIv orc = oracle_eps(Int(2), 2, Int(2), 2, Int(1), 2, 200);  // 2 sqrt(2) - 1
  Rat shift(1);
  CHECK(lib.lo <= orc.hi + shift);
  CHECK(orc.lo + shift <= lib.hi);
  CHECK(lib.width() < pow10_inv(50));
  CHECK(lib.precision_bits > 0);

  CHECK_THROWS_AS(eval_radical_sum_at_digits({{Int(2), 2, +1}}, 0), std::invalid_argument);
  CHECK_THROWS_AS(eval_radical_sum_at_digits({{Int(0), 2, +1}}, 4), std::invalid_argument);
  CHECK_THROWS_AS(eval_radical_sum_at_digits({{Int(2), 1, +1}}, 4), std::invalid_argument);
  CHECK_THROWS_AS(eval_radical_sum_at_digits({{Int(2), 2, +3}}, 4), std::invalid_argument);
  CHECK_THROWS_AS(eval_radical_sum({{Int(2), 2, +1}}, Rat(0)), std::invalid_argument);
}

TEST_CASE("refinement under scale doubling is monotone", "[search]") {
  const std::vector<RootTerm> sums[] = {
      {{Int(2), 2, +1}, {Int(3), 2, +1}, {Int(10), 2, -1}},
      {{Int(433), 6, +1}, {Int(972), 6, +1}, {Int(42089), 6, -1}},
      {{Int(7), 3, +1}, {Int(5), 4, -1}},
  };
  for (const auto& terms : sums) {
    Interval prev = eval_radical_sum_at_digits(terms, 1);
    for (unsigned long d = 2; d <= 64; d *= 2) {
      Interval next = eval_radical_sum_at_digits(terms, d);
      CHECK(next.lo >= prev.lo);
      CHECK(next.hi <= prev.hi);
      prev = next;
    }
  }
}

TEST_CASE("the (433, 972, 42089) sixth-root near-miss", "[search]") {
  const std::vector<RootTerm> terms{
      {Int(433), 6, +1}, {Int(972), 6, +1}, {Int(42089), 6, -1}};
  Interval iv = eval_radical_sum(terms, pow10_inv(16));
  // eps is negative, nonzero, and smaller than 10^-12 in magnitude
  CHECK(sgn(iv.hi) < 0);
  CHECK(Rat(-iv.lo) < pow10_inv(12));
  CHECK(Rat(-iv.hi) > rat_make(5, int_pow(Int(10), 13)));  // |eps| > 5e-13

  // binary oracle agrees on the enclosure
  BinIv orc = oracle_eps(Int(433), 6, Int(972), 6, Int(42089), 6, 256);
  CHECK(iv.lo <= orc.hi);
  CHECK(orc.lo <= iv.hi);

  // and the candidate generator proposes exactly this z
  CHECK(detail::nearest_z(433, 6, 972, 6, 6) == 42089);
}

TEST_CASE("nearest_z agrees with the binary oracle", "[search]") {
  // below the hardware threshold
  CHECK(detail::nearest_z(2, 2, 3, 2, 2) == oracle_nearest_z(2, 2, 3, 2, 2));
  CHECK(detail::nearest_z(433, 6, 972, 6, 6) == oracle_nearest_z(433, 6, 972, 6, 6));
  // s^r ~ 1.6e16 and ~1.0e18: doubles alone cannot settle the rounding
  CHECK(detail::nearest_z(999, 2, 998, 2, 9) == 16081855290932886LL);
  CHECK(detail::nearest_z(999, 2, 998, 2, 9) == oracle_nearest_z(999, 2, 998, 2, 9));
  CHECK(detail::nearest_z(999, 2, 997, 2, 10) == 1013799605826856832LL);
  CHECK(detail::nearest_z(999, 2, 997, 2, 10) == oracle_nearest_z(999, 2, 997, 2, 10));
  // a sweep of mid-size cases
  for (long x : {2L, 37L, 101L, 999L})
    for (long r = 2; r <= 6; ++r)
      CHECK(detail::nearest_z(x, 2, x + 1, 3, r) == oracle_nearest_z(x, 2, x + 1, 3, r));
}

TEST_CASE("exactness guard: certificates and rejections", "[search]") {
  auto cert = exactness_guard(Int(433), 6, Int(972), 6, Int(42089), 6);
  CHECK(cert.certificate.independent);
  CHECK_FALSE(cert.reduced);
  CHECK(cert.certificate.pairs.size() == 3);

  // sqrt(2) + sqrt(3) - sqrt(10): triple certificate, numerically nonzero
  cert = exactness_guard(Int(2), 2, Int(3), 2, Int(10), 2);
  CHECK(cert.certificate.independent);
  CHECK_FALSE(cert.reduced);
  Interval iv = eval_radical_sum(
      {{Int(2), 2, +1}, {Int(3), 2, +1}, {Int(10), 2, -1}}, pow10_inv(8));
  CHECK((sgn(iv.lo) > 0 || sgn(iv.hi) < 0));

  // sqrt(8) = 2 sqrt(2): the sum collapses onto the independent pair
  cert = exactness_guard(Int(2), 2, Int(7), 2, Int(8), 2);
  CHECK(cert.reduced);
  CHECK(cert.certificate.independent);
  CHECK(cert.certificate.pairs.size() == 1);
  CHECK_THAT(cert.note, ContainsSubstring("x^(1/m)"));

  CHECK_THROWS_AS(exactness_guard(Int(4), 2, Int(9), 2, Int(25), 2), std::invalid_argument);
  CHECK_THROWS_WITH(exactness_guard(Int(4), 2, Int(3), 2, Int(10), 2),
                    ContainsSubstring("perfect 2-th power"));
  CHECK_THROWS_WITH(exactness_guard(Int(2), 2, Int(3), 2, Int(9), 2),
                    ContainsSubstring("perfect 2-th power"));
  CHECK_THROWS_WITH(exactness_guard(Int(6), 2, Int(10), 2, Int(5), 2),
                    ContainsSubstring("gcd"));
  CHECK_THROWS_WITH(exactness_guard(Int(1), 2, Int(3), 2, Int(10), 2),
                    ContainsSubstring(">= 2"));
  CHECK_THROWS_AS(exactness_guard(Int(2), 1, Int(3), 2, Int(10), 2), std::invalid_argument);
}

TEST_CASE("search rejects bad configurations", "[search]") {
  SearchConfig cfg;
  cfg.x_max = 0;
  CHECK_THROWS_AS(near_miss_search(cfg), std::invalid_argument);
  cfg = {};
  cfg.exp_min = 1;
  CHECK_THROWS_AS(near_miss_search(cfg), std::invalid_argument);
  cfg = {};
  cfg.exp_max = 1;
  CHECK_THROWS_AS(near_miss_search(cfg), std::invalid_argument);
  cfg = {};
  cfg.top_k = 0;
  CHECK_THROWS_AS(near_miss_search(cfg), std::invalid_argument);
  cfg = {};
  cfg.pool_size = 5;
  cfg.top_k = 10;
  CHECK_THROWS_AS(near_miss_search(cfg), std::invalid_argument);
  cfg = {};
  cfg.worker_count = 0;
  CHECK_THROWS_AS(near_miss_search(cfg), std::invalid_argument);
}

TEST_CASE("tiny search: the full candidate set is frozen", "[search]") {
  SearchConfig cfg;
  cfg.x_max = 3;
  cfg.y_max = 3;
  cfg.exp_min = 2;
  cfg.exp_max = 2;
  SearchReport rep = near_miss_search(cfg);
  CHECK(rep.complete);
  CHECK(rep.shards_total == 3);
  CHECK(rep.shards_done == 3);
  // the only coprime non-square pair is (2, 3); z0 = 10 and 9 is a square,
  // so the candidates are (2, 3, 10) and (2, 3, 11), ranked in that order
  REQUIRE(rep.results.size() == 2);
  CHECK(rep.results[0].x == 2);
  CHECK(rep.results[0].y == 3);
  CHECK(rep.results[0].z == 10);
  CHECK(rep.results[0].m == 2);
  CHECK(rep.results[1].z == 11);

  for (const NearMiss& nm : rep.results) {
    CHECK((sgn(nm.eps_lo) > 0 || sgn(nm.eps_hi) < 0));  // zero excluded
    CHECK(nm.eps_lo < nm.eps_hi);
    CHECK(nm.precision_bits > 0);
    // certified width is at most a tenth of the distance to zero
    Rat margin = sgn(nm.eps_lo) > 0 ? nm.eps_lo : Rat(-nm.eps_hi);
    CHECK(Rat(nm.eps_hi - nm.eps_lo) * 10 < margin);
    CHECK(exactness_guard(nm.x, nm.m, nm.y, nm.n, nm.z, nm.r).certificate.independent);
    // binary oracle interval must overlap the reported one
    BinIv orc = oracle_eps(nm.x, nm.m, nm.y, nm.n, nm.z, nm.r, 300);
    CHECK(nm.eps_lo <= orc.hi);
    CHECK(orc.lo <= nm.eps_hi);
  }

  std::string lines = search_report_lines(rep.results);
  CHECK_THAT(lines, ContainsSubstring("{\"x\":2,\"y\":3,\"z\":10,\"m\":2,\"n\":2,\"r\":2,"));
  CHECK(std::count(lines.begin(), lines.end(), '\n') == 2);
}

TEST_CASE("mid-size search matches an independent re-ranking", "[search]") {
  SearchConfig cfg;
  cfg.x_max = 50;
  cfg.y_max = 50;
  cfg.exp_min = 2;
  cfg.exp_max = 4;
  cfg.top_k = 10;
  SearchReport rep = near_miss_search(cfg);
  CHECK(rep.complete);
  REQUIRE(rep.results.size() == 10);

  // oracle: enumerate the whole admissible grid with binary-scaled
  // certified bounds and take the argmin of the |eps| upper bound
  Rat best_ub(-1);
  long bx = 0, by = 0;
  std::int64_t bz = 0;
  unsigned long bm = 0;
  for (unsigned long m = 2; m <= 4; ++m)
    for (long x = 2; x <= 50; ++x) {
      if (is_perfect_kth_power(Int(x), m)) continue;
      for (long y = x; y <= 50; ++y) {
        if (std::gcd(x, y) != 1) continue;
        if (is_perfect_kth_power(Int(y), m)) continue;
        std::int64_t z0 = oracle_nearest_z(x, m, y, m, static_cast<long>(m));
        for (std::int64_t z = z0 - 1; z <= z0 + 1; ++z) {
          if (z < 2 || is_perfect_kth_power(Int(static_cast<long>(z)), m)) continue;
          BinIv iv = oracle_eps(Int(x), m, Int(y), m, Int(static_cast<long>(z)), m, 340);
          Rat ub = oracle_ub_abs(iv);
          if (best_ub < 0 || ub < best_ub) {
            best_ub = ub;
            bx = x;
            by = y;
            bz = z;
            bm = m;
          }
        }
      }
    }
  CHECK(bx == 36);  // frozen: 36^(1/4) + 49^(1/4) - 674^(1/4) = 2.80e-6
  CHECK(by == 49);
  CHECK(bz == 674);
  CHECK(bm == 4);
  CHECK(rep.results[0].x == bx);
  CHECK(rep.results[0].y == by);
  CHECK(rep.results[0].z == bz);
  CHECK(rep.results[0].m == bm);

  // reported intervals overlap the oracle's and the ranking key ascends
  Rat prev_ub(-1);
  for (const NearMiss& nm : rep.results) {
    BinIv orc = oracle_eps(nm.x, nm.m, nm.y, nm.n, nm.z, nm.r, 340);
    CHECK(nm.eps_lo <= orc.hi);
    CHECK(orc.lo <= nm.eps_hi);
    Rat ub = sgn(nm.eps_lo) > 0 ? nm.eps_hi : Rat(-nm.eps_lo);
    CHECK(ub >= prev_ub);
    prev_ub = ub;
  }
}

TEST_CASE("mixed-exponent search stays certified", "[search]") {
  SearchConfig cfg;
  cfg.x_max = 6;
  cfg.y_max = 6;
  cfg.exp_min = 2;
  cfg.exp_max = 3;
  cfg.allow_mixed_exponents = true;
  cfg.top_k = 25;
  SearchReport rep = near_miss_search(cfg);
  CHECK(rep.complete);
  CHECK(rep.shards_total == 12);
  REQUIRE(!rep.results.empty());
  bool saw_mixed = false;
  for (const NearMiss& nm : rep.results) {
    saw_mixed = saw_mixed || nm.m != nm.n || nm.n != nm.r;
    CHECK((sgn(nm.eps_lo) > 0 || sgn(nm.eps_hi) < 0));
    CHECK(int_gcd(nm.x, nm.y) == 1);
    CHECK_FALSE(is_perfect_kth_power(nm.x, nm.m));
    CHECK_FALSE(is_perfect_kth_power(nm.y, nm.n));
    CHECK_FALSE(is_perfect_kth_power(nm.z, nm.r));
  }
  CHECK(saw_mixed);
}

TEST_CASE("results are identical for any worker count", "[search]") {
  SearchConfig cfg;
  cfg.x_max = 40;
  cfg.y_max = 40;
  cfg.exp_min = 2;
  cfg.exp_max = 3;
  cfg.top_k = 20;
  cfg.pool_size = 300;

  auto run = [&](long workers) {
    SearchConfig c = cfg;
    c.worker_count = workers;
    return near_miss_search(c);
  };
  SearchReport r1 = run(1), r2 = run(2), r8 = run(8);
  auto same = [](const SearchReport& a, const SearchReport& b) {
    REQUIRE(a.results.size() == b.results.size());
    for (std::size_t i = 0; i < a.results.size(); ++i) {
      const NearMiss &x = a.results[i], &y = b.results[i];
      CHECK(x.x == y.x);
      CHECK(x.y == y.y);
      CHECK(x.z == y.z);
      CHECK(x.m == y.m);
      CHECK(x.n == y.n);
      CHECK(x.r == y.r);
      CHECK(x.eps_lo == y.eps_lo);
      CHECK(x.eps_hi == y.eps_hi);
    }
  };
  same(r1, r2);
  same(r1, r8);
  CHECK(r1.complete);
  CHECK(r8.shards_done == r1.shards_done);
}

TEST_CASE("checkpointing: interrupt, resume, tamper", "[search]") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "radlin_ckpt_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string resumed_path = (dir / "resumed.json").string();
  const std::string straight_path = (dir / "straight.json").string();

  SearchConfig cfg;
  cfg.x_max = 30;
  cfg.y_max = 30;
  cfg.exp_min = 2;
  cfg.exp_max = 2;
  cfg.top_k = 5;
  cfg.pool_size = 100;
  cfg.checkpoint_every = 4;

  // interrupted run: only 15 of the 30 shards complete
  SearchConfig part = cfg;
  part.checkpoint_path = resumed_path;
  part.stop_after_shards = 15;
  SearchReport partial = near_miss_search(part);
  CHECK_FALSE(partial.complete);
  CHECK(partial.shards_done == 15);
  REQUIRE(fs::exists(resumed_path));

  // resume with a different worker count and finish
  SearchConfig rest = cfg;
  rest.checkpoint_path = resumed_path;
  rest.worker_count = 3;
  SearchReport resumed = near_miss_search(rest);
  CHECK(resumed.complete);
  CHECK(resumed.shards_done == 30);

  // a straight-through run must produce identical results and an
  // identical final checkpoint, byte for byte
  SearchConfig straight = cfg;
  straight.checkpoint_path = straight_path;
  SearchReport full = near_miss_search(straight);
  CHECK(full.complete);
  REQUIRE(full.results.size() == resumed.results.size());
  for (std::size_t i = 0; i < full.results.size(); ++i) {
    CHECK(full.results[i].x == resumed.results[i].x);
    CHECK(full.results[i].z == resumed.results[i].z);
    CHECK(full.results[i].eps_lo == resumed.results[i].eps_lo);
    CHECK(full.results[i].eps_hi == resumed.results[i].eps_hi);
  }
  CHECK(slurp(resumed_path) == slurp(straight_path));

  // tampering with the recorded configuration hash must refuse to resume
  nlohmann::json j = nlohmann::json::parse(slurp(resumed_path));
  j["config_hash"] = "deadbeef";
  {
    std::ofstream out(resumed_path, std::ios::trunc);
    out << j.dump();
  }
  CHECK_THROWS_WITH(near_miss_search(rest), ContainsSubstring("hash mismatch"));

  // a changed search range is a different hash even with a pristine file
  SearchConfig widened = straight;
  widened.x_max = 31;
  CHECK_THROWS_WITH(near_miss_search(widened), ContainsSubstring("hash mismatch"));

  fs::remove_all(dir);
}
