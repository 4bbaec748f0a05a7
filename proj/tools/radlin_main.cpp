#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "radlin/cyclotomic.hpp"
#include "radlin/finite_field.hpp"
#include "radlin/orbit.hpp"
#include "radlin/search.hpp"

using nlohmann::ordered_json;
using namespace radlin;

namespace {

// Token form base^(num/den); the exponent part may be omitted (meaning 1)
// or written without a denominator, e.g. 433^(1/6), 12, 5^(2).
Radical parse_token(const std::string& tok) {
  const auto caret = tok.find('^');
  const std::string base_text = tok.substr(0, caret);
  Int base;
  try {
    base = Int(base_text);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("bad token '" + tok + "': base must be an integer");
  }
  Rat expo(1);
  if (caret != std::string::npos) {
    std::string e = tok.substr(caret + 1);
    if (e.size() >= 2 && e.front() == '(' && e.back() == ')') e = e.substr(1, e.size() - 2);
    const auto slash = e.find('/');
    try {
      Int num(e.substr(0, slash));
      Int den = slash == std::string::npos ? Int(1) : Int(e.substr(slash + 1));
      expo = rat_make(num, den);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("bad token '" + tok + "': exponent must be num or num/den");
    }
  }
  const int sign = sgn(base) < 0 ? -1 : +1;
  return radical_from(abs(base), expo, sign);
}

std::vector<Radical> parse_tokens(const std::vector<std::string>& toks) {
  std::vector<Radical> xs;
  xs.reserve(toks.size());
  for (const std::string& t : toks) xs.push_back(parse_token(t));
  return xs;
}

ordered_json certificate_json(const std::vector<Radical>& xs) {
  const RadicalSet set(xs);
  const IndependenceCertificate cert = independence_certificate(set);
  ordered_json j;
  ordered_json rads = ordered_json::array();
  for (const Radical& x : set.elements()) rads.push_back(format_radical(x));
  j["radicals"] = std::move(rads);
  j["independent"] = cert.independent;
  ordered_json pairs = ordered_json::array();
  for (const PairWitness& w : cert.pairs) {
    ordered_json pj;
    pj["i"] = w.i;
    pj["j"] = w.j;
    pj["independent"] = w.independent;
    if (w.independent) {
      pj["prime"] = w.prime.get_str();
      pj["prime_exponent"] = rat_fraction_string(w.prime_exponent);
    } else {
      pj["ratio"] = rat_fraction_string(w.ratio);
    }
    pairs.push_back(std::move(pj));
  }
  j["pairs"] = std::move(pairs);
  return j;
}

int run_search(const SearchConfig& cfg) {
  const SearchReport rep = near_miss_search(cfg);
  std::cout << search_report_lines(rep.results);
  std::cerr << "shards " << rep.shards_done << "/" << rep.shards_total
            << (rep.complete ? " (complete)" : " (interrupted)") << "\n";
  return rep.complete ? 0 : 3;
}

int run_ff_construct(unsigned long p, unsigned long u, unsigned long v, bool verify) {
  const FieldTower t = FieldTower::build(p, u, v);
  const auto cs = t.construct_independent_set();
  ordered_json j;
  j["p"] = p;
  j["u"] = u;
  j["v"] = v;
  j["m"] = t.m().get_si();
  j["n"] = t.n().get_si();
  j["l"] = t.l().get_si();
  j["w"] = cs.w.get_si();
  ordered_json exps = ordered_json::array();
  for (const Int& e : cs.exponents) exps.push_back(e.get_si());
  j["exponents"] = std::move(exps);
  if (verify) {
    const auto res = t.verify_linear_independence(cs.elements);
    j["verified"] = res.independent;
    j["exhaustive"] = res.exhaustive;
    j["combinations_checked"] = res.combinations_checked.get_si();
  }
  std::cout << j.dump() << "\n";
  return 0;
}

int run_orbit(long long n, long long d, std::optional<long long> target) {
  if (!target) {
    std::cout << orbit_closure(n, d).size() << "\n";
    return 0;
  }
  const auto word = constructive_path(n, d, *target);
  std::cout << format_word(word) << "\n";
  return 0;
}

int run_vandermonde(long n) {
  const VandermondeCheck c = vandermonde_det_identity(n);
  ordered_json j;
  j["n"] = n;
  j["ok"] = c.ok;
  j["det_norm"] = c.det_norm.get_str();
  std::cout << j.dump() << "\n";
  return c.ok ? 0 : 1;
}

int run_mann_scan(long n, long coeff_bound, long max_terms) {
  const auto sums = enumerate_vanishing_sums(n, coeff_bound, max_terms);
  for (const VanishingSum& s : sums) {
    ordered_json j;
    j["n"] = s.n;
    ordered_json terms = ordered_json::array();
    for (const auto& [c, e] : s.terms) terms.push_back({c.get_si(), e});
    j["terms"] = std::move(terms);
    j["mann"] = mann_condition_check(s);
    std::cout << j.dump() << "\n";
  }
  std::cerr << sums.size() << " minimal vanishing sum(s)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact linear-independence toolkit for radicals"};
  app.require_subcommand(1);

  SearchConfig cfg;
  auto* search = app.add_subcommand("search", "certified near-miss search for x^(1/m) + y^(1/n) = z^(1/r)");
  search->add_option("--x-max", cfg.x_max, "largest x")->capture_default_str();
  search->add_option("--y-max", cfg.y_max, "largest y")->capture_default_str();
  search->add_option("--exp-min", cfg.exp_min, "smallest exponent (>= 2)")->capture_default_str();
  search->add_option("--exp-max", cfg.exp_max, "largest exponent")->capture_default_str();
  search->add_flag("--mixed", cfg.allow_mixed_exponents, "allow m, n, r to differ");
  search->add_option("--top", cfg.top_k, "results to report")->capture_default_str();
  search->add_option("--pool", cfg.pool_size, "prefilter pool size")->capture_default_str();
  search->add_option("--checkpoint", cfg.checkpoint_path, "checkpoint file (resume if present)");
  search->add_option("--workers", cfg.worker_count, "worker threads")->capture_default_str();
  search->add_option("--checkpoint-every", cfg.checkpoint_every, "shards between checkpoint writes")
      ->capture_default_str();
  search->add_option("--stop-after-shards", cfg.stop_after_shards,
                     "stop after this many new shards (testing aid; 0 = run to completion)")
      ->capture_default_str();

  std::vector<std::string> tokens;
  auto* chk = app.add_subcommand("check-independence",
                                 "pairwise independence certificate for radical tokens");
  chk->add_option("tokens", tokens, "radicals as base^(num/den), e.g. 433^(1/6)")
      ->required()
      ->expected(-2);

  std::vector<std::string> deg_tokens;
  auto* deg = app.add_subcommand("degree", "degree of Q(x_1, ..., x_r) over Q");
  deg->add_option("tokens", deg_tokens, "radicals as base^(num/den)")->required()->expected(-1);

  unsigned long ff_p = 0, ff_u = 0, ff_v = 0;
  bool ff_verify = false;
  auto* ff = app.add_subcommand("ff-construct",
                                "independent set {g^(dl/m) : d | m} in GF(p^v) over GF(p^u)");
  ff->add_option("--p", ff_p, "characteristic (prime)")->required();
  ff->add_option("--u", ff_u, "subfield degree")->required();
  ff->add_option("--v", ff_v, "field degree (u | v)")->required();
  ff->add_flag("--verify", ff_verify, "verify linear independence over GF(p^u)");

  long long orb_n = 0, orb_d = 0;
  std::optional<long long> orb_target;
  auto* orb = app.add_subcommand("orbit", "closure of {0} in Z_n under phi(x) = dx + 1 and its inverse");
  orb->add_option("--n", orb_n, "modulus")->required();
  orb->add_option("--d", orb_d, "multiplier (gcd(d, n) = 1)")->required();
  orb->add_option("--target", orb_target, "print a step word from 0 to this residue");

  long vdm_n = 0;
  auto* vdm = app.add_subcommand("vandermonde-check", "|det V|^2 = n^n for the character matrix");
  vdm->add_option("--n", vdm_n, "matrix order")->required();

  long mann_n = 0, mann_bound = 1, mann_terms = 4;
  auto* mann = app.add_subcommand("mann-scan",
                                  "minimal vanishing sums of n-th roots of unity + Mann check");
  mann->add_option("--n", mann_n, "root-of-unity order")->required();
  mann->add_option("--coeff-bound", mann_bound, "largest |coefficient|")->capture_default_str();
  mann->add_option("--max-terms", mann_terms, "largest number of terms")->capture_default_str();

  try {
    app.parse(argc, argv);
    if (search->parsed()) return run_search(cfg);
    if (chk->parsed()) {
      std::cout << certificate_json(parse_tokens(tokens)).dump() << "\n";
      return 0;
    }
    if (deg->parsed()) {
      std::cout << lattice_degree(parse_tokens(deg_tokens)).get_str() << "\n";
      return 0;
    }
    if (ff->parsed()) return run_ff_construct(ff_p, ff_u, ff_v, ff_verify);
    if (orb->parsed()) return run_orbit(orb_n, orb_d, orb_target);
    if (vdm->parsed()) return run_vandermonde(vdm_n);
    if (mann->parsed()) return run_mann_scan(mann_n, mann_bound, mann_terms);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
