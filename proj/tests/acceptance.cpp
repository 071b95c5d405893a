// Acceptance suite: one line per criterion, nonzero exit on any failure.
//
// Each criterion pins its tolerances in code; nothing is deferred to runtime
// configuration. Expected total runtime is well under the per-criterion
// budgets on commodity hardware.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ngv/brenner.hpp"
#include "ngv/coverage.hpp"
#include "ngv/iet.hpp"
#include "ngv/norms.hpp"
#include "ngv/sl.hpp"
#include "ngv/tasks.hpp"
#include "ngv/ultraseq.hpp"

using namespace ngv;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::shared_ptr<CoverageEngine> engine_for(const json& desc) {
  return std::make_shared<CoverageEngine>(make_group(desc));
}

std::vector<Perm> symmetric_group(int n) {
  std::vector<Perm> all;
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = i;
  do {
    all.push_back(Perm::from_images(img));
  } while (std::next_permutation(img.begin(), img.end()));
  return all;
}

// Seeded SL_n(F_p) sample: random entries, retry on det 0, rescale one row.
MatFp random_sl(int n, int p, std::mt19937_64& rng) {
  for (;;) {
    MatFp m(n, p);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.set(i, j, static_cast<long long>(rng() % p));
    const int d = m.det();
    if (d == 0) continue;
    // Scale the first row by d^{-1} to land in SL.
    long long inv = 1;
    for (int k = 0; k < p - 2; ++k) inv = inv * d % p;
    for (int j = 0; j < n; ++j)
      m.set(0, j, static_cast<long long>(m.at(0, j)) * inv);
    return m;
  }
}

// ---- criteria ---------------------------------------------------------------

// Every nonexceptional full-support element of A_5 and A_6 is a C_4 normal
// generator of its group. Exhaustive, zero tolerance.
Outcome c1_brenner_desk() {
  Outcome out;
  int checked = 0;
  for (int n : {5, 6}) {
    auto engine = engine_for(json{{"type", "alt"}, {"n", n}, {"norm", "hamming"}});
    for (int i = 0; i < engine->size(); ++i) {
      const Perm& sigma = std::get<Perm>(engine->element(i));
      if (sigma.hamming_norm() != n || is_exceptional(sigma)) continue;
      ++checked;
      const auto ngen = engine->normal_gen_number(i);
      if (!ngen || *ngen > 4) {
        out.pass = false;
        out.detail = "A_" + std::to_string(n) + ": " + sigma.to_cycle_string() +
                     " needs more than 4 conjugates";
        return out;
      }
    }
  }
  out.detail = std::to_string(checked) +
               " full-support nonexceptional elements (A_5 has none)";
  return out;
}

// nearby_nonexceptional repairs every tau with |tau| >= 5 in S_5..S_8 within
// distance 5, keeping the support, landing nonexceptional. Exhaustive.
Outcome c2_repair_bound() {
  Outcome out;
  int checked = 0, odd_corners = 0;
  for (int n = 5; n <= 8; ++n) {
    for (const auto& tau : symmetric_group(n)) {
      if (tau.hamming_norm() < 5) continue;
      ++checked;
      const auto rr = nearby_nonexceptional(tau);
      if (rr.sigma.support() != tau.support() || is_exceptional(rr.sigma) ||
          rr.distance > 5) {
        out.pass = false;
        out.detail = "S_" + std::to_string(n) + ": failed on " +
                     tau.to_cycle_string();
        return out;
      }
      if (!rr.even) ++odd_corners;
    }
  }
  out.detail = std::to_string(checked) + " permutations repaired (" +
               std::to_string(odd_corners) +
               " odd repairs where no even one exists)";
  return out;
}

// Conjugator with support inside supp(a) u supp(b), exhaustive over S_5 pairs.
Outcome c3_conjugator_support() {
  Outcome out;
  const auto s5 = symmetric_group(5);
  int conjugate_pairs = 0;
  for (const auto& a : s5)
    for (const auto& b : s5) {
      const auto h = find_conjugator_min_support(a, b);
      if (a.cycle_type() != b.cycle_type()) {
        if (h) {
          out.pass = false;
          out.detail = "conjugator produced for non-conjugate pair";
          return out;
        }
        continue;
      }
      ++conjugate_pairs;
      if (!h || a.conjugate_by(*h) != b) {
        out.pass = false;
        out.detail = "missing or wrong conjugator for " + a.to_cycle_string() +
                     " ~ " + b.to_cycle_string();
        return out;
      }
      auto sa = a.support(), sb = b.support(), sh = h->support();
      std::vector<int> allowed;
      std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(),
                     std::back_inserter(allowed));
      if (!std::includes(allowed.begin(), allowed.end(), sh.begin(), sh.end())) {
        out.pass = false;
        out.detail = "conjugator support leaks outside supp(a) u supp(b)";
        return out;
      }
    }
  out.detail = std::to_string(conjugate_pairs) + " conjugate pairs in S_5";
  return out;
}

Outcome c4_rho_pi_identity() {
  Outcome out;
  for (int m = 5; m <= 15; ++m) {
    const auto [rho, pi] = brenner_cycles(m);
    const Perm expected =
        Perm::parse("(" + std::to_string(m - 4) + " " + std::to_string(m - 2) +
                        " " + std::to_string(m) + ")",
                    m);
    if (rho * pi.inverse() != expected) {
      out.pass = false;
      out.detail = "identity fails at m = " + std::to_string(m);
      return out;
    }
  }
  out.detail = "exact for 5 <= m <= 15";
  return out;
}

// Axiom suites: Hamming on S_5, Lee on Z_{2^n} for n <= 10, Jordan on
// SL_2(F_3) and SL_2(F_5); Jordan fails definiteness exactly on the center.
Outcome c5_axiom_suites() {
  Outcome out;

  auto s5 = make_group(json{{"type", "sym"}, {"n", 5}, {"norm", "hamming"}});
  if (!verify_norm_axioms(*s5, NormReport::Mode::Exhaustive).all_pass()) {
    out.pass = false;
    out.detail = "Hamming on S_5 failed an axiom";
    return out;
  }

  for (int n = 1; n <= 10; ++n) {
    auto z = make_group(json{{"type", "cyclic_lee"}, {"m", 1LL << n}});
    if (!verify_norm_axioms(*z, NormReport::Mode::Exhaustive).all_pass()) {
      out.pass = false;
      out.detail = "Lee on Z_" + std::to_string(1LL << n) + " failed an axiom";
      return out;
    }
  }

  for (int p : {3, 5}) {
    auto sl = make_group(json{{"type", "sl_fp"}, {"n", 2}, {"p", p}, {"norm", "jordan"}});
    const auto report = verify_norm_axioms(*sl, NormReport::Mode::Exhaustive);
    if (!(report.pass(0) && report.pass(1) && report.pass(2) && !report.pass(3))) {
      out.pass = false;
      out.detail = "Jordan on SL_2(F_" + std::to_string(p) +
                   ") is not a pseudo-norm with failing definiteness";
      return out;
    }
    // The zero set must be exactly the center {+-I}.
    const auto center = sl_center(2, p);
    for (const auto& e : sl->enumerate()) {
      const bool zero = sl->norm(e).is_zero();
      const bool central =
          std::find(center.begin(), center.end(), std::get<MatFp>(e)) !=
          center.end();
      if (zero != central) {
        out.pass = false;
        out.detail = "Jordan zero set differs from the center of SL_2(F_" +
                     std::to_string(p) + ")";
        return out;
      }
    }
  }
  out.detail = "Hamming S_5, Lee Z_2..Z_1024, Jordan SL_2(F_3)/SL_2(F_5)";
  return out;
}

// |g^n| <= |g| exhaustively up to the group exponent.
Outcome c6_power_monotone() {
  Outcome out;
  auto s6 = make_group(json{{"type", "sym"}, {"n", 6}, {"norm", "hamming"}});
  const long long exp_s6 = group_exponent(*s6);
  if (!check_power_monotone(*s6, exp_s6, NormReport::Mode::Exhaustive).pass) {
    out.pass = false;
    out.detail = "Hamming power monotonicity fails on S_6";
    return out;
  }
  auto sl = make_group(json{{"type", "sl_fp"}, {"n", 2}, {"p", 5}, {"norm", "jordan"}});
  const long long exp_sl = group_exponent(*sl);
  if (!check_power_monotone(*sl, exp_sl, NormReport::Mode::Exhaustive).pass) {
    out.pass = false;
    out.detail = "Jordan power monotonicity fails on SL_2(F_5)";
    return out;
  }
  out.detail = "S_6 up to exponent " + std::to_string(exp_s6) +
               ", SL_2(F_5) up to exponent " + std::to_string(exp_sl);
  return out;
}

// Block embeddings preserve the Jordan length and compose coherently,
// 500 seeded samples per (n, m, p).
Outcome c7_block_embedding() {
  Outcome out;
  const struct {
    int n, m, p;
  } cases[] = {{2, 4, 3}, {2, 6, 5}, {3, 6, 2}};
  for (const auto& c : cases) {
    std::mt19937_64 rng(1000 + c.n * 100 + c.m * 10 + c.p);
    for (int s = 0; s < 500; ++s) {
      const MatFp a = random_sl(c.n, c.p, rng);
      const MatFp e = block_embed(a, c.m);
      if (jordan_length(e) != jordan_length(a)) {
        out.pass = false;
        out.detail = "Jordan length changes under block embedding";
        return out;
      }
      if (block_embed(e, 2 * c.m) != block_embed(a, 2 * c.m)) {
        out.pass = false;
        out.detail = "f_{i,k} != f_{j,k} o f_{i,j}";
        return out;
      }
    }
  }
  out.detail = "500 samples per (2,4,3), (2,6,5), (3,6,2)";
  return out;
}

// Liebeck-Shalev self-consistency at desk scale: every noncentral A must
// have finite N(A). SL_2(F_3) cannot satisfy this: its six order-4 elements
// lie in a normal quaternion subgroup Q8, so their conjugate balls stabilize
// inside Q8 and N(A) is infinite there. Kept red on purpose.
Outcome c8_liebeck_shalev() {
  Outcome out;
  std::string parts;
  for (const auto& [n, p] : std::vector<std::pair<int, int>>{{2, 3}, {2, 5}, {3, 2}}) {
    auto engine = engine_for(
        json{{"type", "sl_fp"}, {"n", n}, {"p", p}, {"norm", "jordan"}});
    const auto probe = ls_constant_probe(*engine);
    int infinite = 0;
    for (const auto& row : probe.rows)
      if (!row.n) ++infinite;
    if (!parts.empty()) parts += "; ";
    parts += "SL_" + std::to_string(n) + "(F_" + std::to_string(p) +
             "): C_emp = " + probe.c_emp.to_string() +
             (infinite ? ", " + std::to_string(infinite) + " infinite N(A)" : "");
    if (!probe.all_finite || !probe.consistent) out.pass = false;
  }
  out.detail = parts;
  return out;
}

// IET group axioms on 10^4 seeded triples, phi isometric homomorphism
// exhaustive for n <= 5, discretize exact on grid-commensurate input.
Outcome c9_iet_suite() {
  Outcome out;

  std::mt19937_64 rng(424242);
  auto random_iet = [&rng]() {
    const long long den = 8 + rng() % 57;
    const int pieces = 2 + rng() % 4;
    std::vector<long long> cuts{0, den};
    while (static_cast<int>(cuts.size()) < pieces + 1) {
      const long long c = 1 + rng() % (den - 1);
      if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    std::vector<Rational> lengths;
    for (size_t i = 0; i + 1 < cuts.size(); ++i)
      lengths.emplace_back(cuts[i + 1] - cuts[i], den);
    std::vector<int> dest(lengths.size());
    for (size_t i = 0; i < dest.size(); ++i) dest[i] = static_cast<int>(i);
    for (size_t i = dest.size(); i > 1; --i)
      std::swap(dest[i - 1], dest[rng() % i]);
    return IetMap(std::move(lengths), std::move(dest));
  };

  for (int trial = 0; trial < 10000; ++trial) {
    const IetMap f = random_iet(), g = random_iet(), h = random_iet();
    if ((f * g) * h != f * (g * h) || f * f.inverse() != IetMap::identity() ||
        f * IetMap::identity() != f || IetMap::identity() * f != f) {
      out.pass = false;
      out.detail = "group axiom fails at triple " + std::to_string(trial);
      return out;
    }
  }

  for (int n = 1; n <= 5; ++n) {
    const auto sn = symmetric_group(n);
    for (const auto& a : sn) {
      if (embed_perm(a).support_norm() != Rational(a.hamming_norm(), n)) {
        out.pass = false;
        out.detail = "phi is not an isometry on S_" + std::to_string(n);
        return out;
      }
      for (const auto& b : sn)
        if (embed_perm(a * b) != embed_perm(a) * embed_perm(b)) {
          out.pass = false;
          out.detail = "phi is not a homomorphism on S_" + std::to_string(n);
          return out;
        }
    }
  }

  // Grid-commensurate inputs snap to themselves.
  std::mt19937_64 rng2(99);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + static_cast<int>(rng2() % 7);
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = i;
    for (size_t i = n; i > 1; --i) std::swap(img[i - 1], img[rng2() % i]);
    const IetMap h = embed_perm(Perm::from_images(std::move(img)));
    const int resolution = n * static_cast<int>(1 + rng2() % 4);
    const auto res = discretize(h, resolution);
    if (res.distance != Rational(0) || res.snapped != h) {
      out.pass = false;
      out.detail = "grid-commensurate input moved under discretize";
      return out;
    }
  }
  out.detail = "10^4 triples, phi exhaustive to S_5, 200 grid snaps";
  return out;
}

// |g_n^3| <= 2^{2-n} for 3 <= n <= 30 in (Z_{2^n}, Lee).
Outcome c10_order3_shadow() {
  Outcome out;
  auto rule = make_rule(json{{"rule", "lee_third"}});
  for (long long n = 3; n <= 30; ++n) {
    const Rational value = rule->power_norm(n, 3);
    const Rational bound(4, 1LL << n);  // 2^{2-n}
    if (!(value <= bound)) {
      out.pass = false;
      out.detail = "bound fails at stage " + std::to_string(n);
      return out;
    }
  }
  out.detail = "exact rational bound at stages 3..30";
  return out;
}

// 200 seeded perturbation instances on S_6: C_n(h) inside C_n(g) B(n*eps).
Outcome c11_perturbation() {
  Outcome out;
  auto engine = engine_for(
      json{{"type", "sym"}, {"n", 6}, {"norm", "hamming_normalized"}});
  std::mt19937_64 rng(20250101);
  for (int s = 0; s < 200; ++s) {
    const int g = static_cast<int>(rng() % engine->size());
    const int h = static_cast<int>(rng() % engine->size());
    const int n = 1 + static_cast<int>(rng() % 3);
    const Rational dist =
        engine->norm(engine->mul(engine->inv(g), h)).as_rational();
    // Any rational strictly above the distance qualifies.
    const Rational eps = dist + Rational(1 + static_cast<long long>(rng() % 3), 12);
    const auto check = perturbation_check(*engine, g, h, n, eps);
    if (!check.holds) {
      out.pass = false;
      out.detail = "inclusion fails at instance " + std::to_string(s);
      return out;
    }
  }
  out.detail = "200 instances, n <= 3, exhaustive inclusion each";
  return out;
}

// uniformity_scan on {A_5, A_6, A_7}: common N at or below 24.
Outcome c12_uniformity_bound() {
  Outcome out;
  std::vector<std::shared_ptr<CoverageEngine>> family;
  for (int n : {5, 6, 7})
    family.push_back(engine_for(
        json{{"type", "alt"}, {"n", n}, {"norm", "hamming_normalized"}}));
  const auto scan =
      uniformity_scan(family, Rational(1, 2), Rational(101, 100), Rational(0));
  if (scan.status != UniformityOutcome::Status::Bound || scan.bound > 24) {
    out.pass = false;
    out.detail = scan.status == UniformityOutcome::Status::Bound
                     ? "bound " + std::to_string(scan.bound) + " exceeds 24"
                     : "scan did not produce a bound";
    return out;
  }
  out.detail = "N = " + std::to_string(scan.bound) + " <= 24";
  return out;
}

// [S_n, S_n] = A_n for 3 <= n <= 6; commutator width of A_5 is 1, checked
// against an independent brute-force oracle.
Outcome c13_perfectness() {
  Outcome out;
  for (int n = 3; n <= 6; ++n) {
    auto sn = engine_for(json{{"type", "sym"}, {"n", n}, {"norm", "hamming"}});
    const auto cw = commutator_width(*sn);
    std::vector<int> evens;
    for (int i = 0; i < sn->size(); ++i)
      if (std::get<Perm>(sn->element(i)).is_even()) evens.push_back(i);
    if (cw.derived != evens) {
      out.pass = false;
      out.detail = "[S_" + std::to_string(n) + ", S_" + std::to_string(n) +
                   "] != A_" + std::to_string(n);
      return out;
    }
  }

  auto a5 = engine_for(json{{"type", "alt"}, {"n", 5}, {"norm", "hamming"}});
  const auto cw = commutator_width(*a5);
  // Independent oracle: the set of single commutators is all of A_5.
  std::set<int> single;
  for (int a = 0; a < a5->size(); ++a)
    for (int b = 0; b < a5->size(); ++b)
      single.insert(
          a5->mul(a5->mul(a5->inv(a), a5->inv(b)), a5->mul(a, b)));
  if (!cw.perfect || cw.width != 1 ||
      static_cast<int>(single.size()) != a5->size()) {
    out.pass = false;
    out.detail = "commutator width of A_5 is not 1";
    return out;
  }
  out.detail = "derived subgroups S_3..S_6 and width(A_5) = 1 via brute force";
  return out;
}

// conj_ball agrees with the all-conjugator product oracle for every base
// point of A_4, S_4 and A_5.
Outcome c14_oracle_equivalence() {
  Outcome out;
  const json descs[] = {
      {{"type", "alt"}, {"n", 4}, {"norm", "hamming"}},
      {{"type", "sym"}, {"n", 4}, {"norm", "hamming"}},
      {{"type", "alt"}, {"n", 5}, {"norm", "hamming"}},
  };
  for (const auto& desc : descs) {
    auto engine = engine_for(desc);
    for (int g = 0; g < engine->size(); ++g) {
      // Naive oracle: conjugate by every element, multiply level sets fully.
      std::set<int> c1;
      for (int h = 0; h < engine->size(); ++h) {
        c1.insert(engine->mul(engine->mul(engine->inv(h), g), h));
        c1.insert(engine->mul(engine->mul(engine->inv(h), engine->inv(g)), h));
      }
      const ConjChain& chain = engine->chain(g);
      std::set<int> current = c1;
      for (int level = 1; level <= chain.stable_level + 1; ++level) {
        std::set<int> ours;
        for (int x = 0; x < engine->size(); ++x)
          if (chain.level[x] >= 1 && chain.level[x] <= level) ours.insert(x);
        if (ours != current) {
          out.pass = false;
          out.detail = "chain disagrees with the oracle at level " +
                       std::to_string(level);
          return out;
        }
        std::set<int> next = current;
        for (int x : current)
          for (int c : c1) next.insert(engine->mul(x, c));
        current = std::move(next);
      }
    }
  }
  out.detail = "every base point of A_4, S_4, A_5, all levels to stability";
  return out;
}

// Reports are byte-identical across reruns with the same seed, runtime aside.
Outcome c15_determinism() {
  Outcome out;
  const json configs[] = {
      {{"task", "axioms"},
       {"group", {{"type", "sym"}, {"n", 4}, {"norm", "hamming"}}}},
      {{"task", "cover"},
       {"group", {{"type", "sym"}, {"n", 3}, {"norm", "hamming_normalized"}}},
       {"sets", {{{"kind", "identity"}}, {{"kind", "class"}, {"g", "(1 2 3)"}}}},
       {"eps", {"7/10", "1/10"}}},
      {{"task", "brenner"}, {"m_range", {5, 12}}},
      {{"task", "brenner"},
       {"op", "sigma_infinity"},
       {"sigma", "(1 2)(3 4 5)"},
       {"n", 13},
       {"seed", 31337}},
      {{"task", "bigseq"},
       {"group", {{"type", "sym"}, {"n", 3}, {"norm", "hamming_normalized"}}},
       {"r", "9/10"},
       {"t", "101/100"},
       {"eps", {"1/10", "1/10", "1/10"}}},
      {{"task", "scan"},
       {"groups", {{{"type", "alt"}, {"n", 5}, {"norm", "hamming_normalized"}}}},
       {"r", "1/2"},
       {"t", "101/100"},
       {"eps", "0"}},
      {{"task", "star"},
       {"groups", {{{"type", "alt"}, {"n", 4}, {"norm", "hamming_normalized"}}}},
       {"k_list", {2, 3}}},
      {{"task", "iet"},
       {"op", "discretize"},
       {"f", {{"lengths", {"2/3", "1/3"}}, {"perm", {2, 1}}}},
       {"resolution", 5}},
      {{"task", "sl"}, {"n", 2}, {"p", 3}},
      {{"task", "ultra"},
       {"rule", "lee_third"},
       {"power", 3},
       {"range", {3, 30}},
       {"tol", "1/2"}},
      {{"task", "tree"},
       {"group", {{"type", "sym"}, {"n", 3}, {"norm", "hamming_normalized"}}},
       {"family", {{"kind", "conj_chain"}, {"g", "(1 2)"}}},
       {"grid", {"1/5"}},
       {"depth_cap", 8}},
      {{"task", "dirlim"},
       {"system", {{"kind", "sym_fix"}, {"ns", {4, 6}}, {"norm", "hamming"}}},
       {"r", "1"},
       {"t", "5"},
       {"N", 10},
       {"samples", 6},
       {"seed", 777}},
  };
  for (const auto& cfg : configs) {
    auto a = run_task(cfg), b = run_task(cfg);
    a.report.erase("runtime_ms");
    b.report.erase("runtime_ms");
    if (a.exit_code != b.exit_code || a.report.dump() != b.report.dump()) {
      out.pass = false;
      out.detail = "rerun differs for task " +
                   cfg.at("task").get<std::string>();
      return out;
    }
  }
  out.detail = "12 task configs, byte-identical reruns";
  return out;
}

}  // namespace

int main() {
  const struct {
    int id;
    const char* name;
    std::function<Outcome()> run;
  } criteria[] = {
      {1, "brenner-desk-check", c1_brenner_desk},
      {2, "repair-bound", c2_repair_bound},
      {3, "conjugator-support", c3_conjugator_support},
      {4, "rho-pi-identity", c4_rho_pi_identity},
      {5, "norm-axiom-suites", c5_axiom_suites},
      {6, "power-monotonicity", c6_power_monotone},
      {7, "block-embedding-isometry", c7_block_embedding},
      {8, "liebeck-shalev-consistency", c8_liebeck_shalev},
      {9, "iet-suite", c9_iet_suite},
      {10, "order-3-shadow", c10_order3_shadow},
      {11, "perturbation-inclusion", c11_perturbation},
      {12, "uniformity-bound", c12_uniformity_bound},
      {13, "perfectness-ledger", c13_perfectness},
      {14, "oracle-equivalence", c14_oracle_equivalence},
      {15, "determinism", c15_determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    std::printf("%s %2d %-28s %6lldms  %s\n", outcome.pass ? "PASS" : "FAIL",
                c.id, c.name, static_cast<long long>(ms),
                outcome.detail.c_str());
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  std::printf("%d/15 criteria passed\n", 15 - failures);
  return failures;
}
