#include "ngv/tasks.hpp"

#include <algorithm>
#include <chrono>

#include "ngv/brenner.hpp"
#include "ngv/coverage.hpp"
#include "ngv/errors.hpp"
#include "ngv/norms.hpp"
#include "ngv/sl.hpp"
#include "ngv/ultraseq.hpp"

namespace ngv {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

// --- config access with JSON-pointer style error messages -------------------

[[noreturn]] void bad_field(const std::string& pointer, const std::string& why) {
  throw DomainError("config error at " + pointer + ": " + why);
}

const json& need(const json& cfg, const std::string& field) {
  if (!cfg.is_object() || !cfg.contains(field))
    bad_field("/" + field, "missing required field");
  return cfg.at(field);
}

long long need_int(const json& cfg, const std::string& field) {
  const json& v = need(cfg, field);
  if (!v.is_number_integer()) bad_field("/" + field, "expected an integer");
  return v.get<long long>();
}

long long opt_int(const json& cfg, const std::string& field, long long dflt) {
  if (!cfg.is_object() || !cfg.contains(field)) return dflt;
  if (!cfg.at(field).is_number_integer())
    bad_field("/" + field, "expected an integer");
  return cfg.at(field).get<long long>();
}

std::string need_str(const json& cfg, const std::string& field) {
  const json& v = need(cfg, field);
  if (!v.is_string()) bad_field("/" + field, "expected a string");
  return v.get<std::string>();
}

Rational need_rat(const json& cfg, const std::string& field) {
  const json& v = need(cfg, field);
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (!v.is_string()) bad_field("/" + field, "expected a \"p/q\" string");
  return Rational::parse(v.get<std::string>());
}

std::vector<Rational> need_rat_list(const json& cfg, const std::string& field) {
  const json& v = need(cfg, field);
  if (!v.is_array() || v.empty())
    bad_field("/" + field, "expected a nonempty array of \"p/q\" strings");
  std::vector<Rational> out;
  for (const auto& e : v)
    out.push_back(e.is_number_integer() ? Rational(e.get<long long>())
                                        : Rational::parse(e.get<std::string>()));
  return out;
}

Budget parse_budget(const json& cfg) {
  Budget b;
  if (cfg.contains("budgets")) {
    const json& j = cfg.at("budgets");
    b.element_cap = opt_int(j, "element_cap", b.element_cap);
    b.level_cap = static_cast<int>(opt_int(j, "n_max", b.level_cap));
    b.depth_cap = static_cast<int>(opt_int(j, "depth_cap", b.depth_cap));
    b.time_cap_ms = opt_int(j, "time_cap_ms", b.time_cap_ms);
  }
  return b;
}

std::uint64_t need_seed(const json& cfg,
                        const std::optional<std::uint64_t>& override_seed) {
  if (override_seed) return *override_seed;
  if (!cfg.contains("seed"))
    bad_field("/seed", "this task draws random samples and needs a seed");
  return cfg.at("seed").get<std::uint64_t>();
}

// --- element set descriptors (cover/tree tasks) ------------------------------

std::vector<int> parse_set(CoverageEngine& engine, const json& d,
                           const std::string& pointer) {
  if (!d.is_object() || !d.contains("kind"))
    bad_field(pointer, "set descriptor needs 'kind'");
  const std::string kind = d.at("kind").get<std::string>();
  if (kind == "all") {
    std::vector<int> out(engine.size());
    for (int i = 0; i < engine.size(); ++i) out[i] = i;
    return out;
  }
  if (kind == "identity") return {engine.identity_index()};
  if (kind == "elements") {
    std::vector<int> out;
    for (const auto& e : need(d, "elements"))
      out.push_back(engine.index_of(engine.group().element_from_json(e)));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  if (kind == "ball") {
    const Rational t = need_rat(d, "t");
    const bool strict = !d.contains("strict") || d.at("strict").get<bool>();
    return engine.ball(NormValue(t), strict);
  }
  if (kind == "class") {
    const int g = engine.index_of(engine.group().element_from_json(need(d, "g")));
    return engine.class_of(g);
  }
  if (kind == "conj_ball") {
    const int g = engine.index_of(engine.group().element_from_json(need(d, "g")));
    const int n = static_cast<int>(need_int(d, "n"));
    if (n < 0) bad_field(pointer + "/n", "level must be >= 0");
    if (n == 0) return {engine.identity_index()};
    const ConjChain& chain = engine.chain(g);
    std::vector<int> out;
    for (int x = 0; x < engine.size(); ++x)
      if (chain.level[x] >= 1 && chain.level[x] <= n) out.push_back(x);
    return out;
  }
  bad_field(pointer + "/kind", "unknown set kind '" + kind + "'");
}

// --- report plumbing ---------------------------------------------------------

ojson cert_to_json(const GroupAdapter& g, const ConjProduct<Element>& cert) {
  ojson factors = ojson::array();
  for (const auto& f : cert.factors)
    factors.push_back(ojson{{"sign", f.sign},
                            {"conjugator", g.element_to_json(f.conjugator)}});
  return ojson{{"base", g.element_to_json(cert.base)},
               {"factors", factors},
               {"claimed_product", g.element_to_json(cert.claimed)}};
}

ConjProduct<Element> cert_from_json(const GroupAdapter& g, const json& j) {
  ConjProduct<Element> cert;
  cert.base = g.element_from_json(need(j, "base"));
  cert.claimed = g.element_from_json(need(j, "claimed_product"));
  for (const auto& f : need(j, "factors")) {
    const int sign = need_int(f, "sign") >= 0 ? 1 : -1;
    cert.factors.push_back({sign, g.element_from_json(need(f, "conjugator"))});
  }
  return cert;
}

Element replay_cert(const GroupAdapter& g, const ConjProduct<Element>& cert) {
  return replay_conj_product(
      cert, [&](const Element& a, const Element& b) { return g.multiply(a, b); },
      [&](const Element& a) { return g.invert(a); });
}

struct TaskContext {
  ojson report;
  std::optional<bool> verdict;  // nullopt = inconclusive
  std::chrono::steady_clock::time_point started;
};

// --- the individual tasks ----------------------------------------------------

void run_axioms(const json& cfg, TaskContext& ctx,
                const std::optional<std::uint64_t>& seed_override, int jobs) {
  GroupPtr group = make_group(need(cfg, "group"), parse_budget(cfg).element_cap);
  const std::string mode_str =
      cfg.contains("mode") ? cfg.at("mode").get<std::string>() : "exhaustive";
  NormReport::Mode mode;
  if (mode_str == "exhaustive") mode = NormReport::Mode::Exhaustive;
  else if (mode_str == "sampled") mode = NormReport::Mode::Sampled;
  else bad_field("/mode", "expected 'exhaustive' or 'sampled'");

  ScanOptions opts;
  opts.jobs = jobs;
  opts.samples = opt_int(cfg, "samples", opts.samples);
  opts.word_length_bound =
      static_cast<int>(opt_int(cfg, "word_length_bound", opts.word_length_bound));
  std::uint64_t seed = 0;
  if (mode == NormReport::Mode::Sampled) seed = need_seed(cfg, seed_override);

  const NormReport nr = verify_norm_axioms(*group, mode, seed, opts);

  ojson axioms;
  for (const auto& [axiom, result] : nr.axioms) {
    ojson r{{"pass", result.pass}};
    if (!result.counterexample.empty()) {
      ojson ce = ojson::array();
      for (const auto& c : result.counterexample) ce.push_back(ojson(c));
      r["counterexample"] = ce;
    }
    axioms[std::to_string(axiom)] = r;
  }
  ctx.report["axioms"] = axioms;
  ctx.report["pairs_checked"] = nr.pairs_checked;
  ctx.report["mode"] = mode_str;
  if (mode == NormReport::Mode::Sampled) {
    ctx.report["word_length_bound"] = nr.word_length_bound;
    ctx.report["samples"] = nr.samples;
  }
  ctx.report["seed"] = seed;
  bool verdict = nr.all_pass();

  std::optional<std::pair<nlohmann::json, long long>> power_ce;
  if (cfg.contains("max_power")) {
    const long long max_power = need_int(cfg, "max_power");
    const auto pm = check_power_monotone(*group, max_power, mode, seed, opts);
    ojson pj{{"pass", pm.pass}, {"checked", pm.checked}};
    if (pm.counterexample)
      pj["counterexample"] = ojson{{"g", pm.counterexample->first},
                                   {"n", pm.counterexample->second}};
    ctx.report["power_monotone"] = pj;
    verdict = verdict && pm.pass;
    power_ce = pm.counterexample;
  }
  ctx.verdict = verdict;
  if (!verdict) {
    for (const auto& [axiom, result] : nr.axioms)
      if (!result.pass) {
        ctx.report["witness"] =
            ojson{{"axiom", axiom}, {"counterexample", result.counterexample}};
        break;
      }
    if (!ctx.report.contains("witness") && power_ce)
      ctx.report["witness"] = ojson{{"power_monotone",
                                     ojson{{"g", power_ce->first},
                                           {"n", power_ce->second}}}};
  }
}

void run_cover(const json& cfg, TaskContext& ctx) {
  Budget budget = parse_budget(cfg);
  CoverageEngine engine(make_group(need(cfg, "group"), budget.element_cap), budget);
  const json& sets_json = need(cfg, "sets");
  if (!sets_json.is_array() || sets_json.empty())
    bad_field("/sets", "expected a nonempty array of set descriptors");
  std::vector<std::vector<int>> sets;
  for (size_t i = 0; i < sets_json.size(); ++i)
    sets.push_back(parse_set(engine, sets_json[i],
                             "/sets/" + std::to_string(i)));
  const auto eps = need_rat_list(cfg, "eps");
  if (eps.size() != sets.size())
    bad_field("/eps", "need exactly one radius per set");

  const auto outcome = check_thickened_cover(engine, sets, eps);
  ojson levels = ojson::array();
  for (const auto& s : sets) levels.push_back(s.size());
  ctx.report["levels"] = levels;
  ctx.verdict = outcome.covered;
  if (outcome.witness)
    ctx.report["witness"] =
        engine.group().element_to_json(engine.element(*outcome.witness));
}

void run_brenner(const json& cfg, TaskContext& ctx,
                 const std::optional<std::uint64_t>& seed_override) {
  const std::string op =
      cfg.contains("op") ? cfg.at("op").get<std::string>() : "cycles";

  if (op == "cycles") {
    long long lo, hi;
    if (cfg.contains("m_range")) {
      const auto r = cfg.at("m_range").get<std::vector<long long>>();
      if (r.size() != 2) bad_field("/m_range", "expected [lo, hi]");
      lo = r[0], hi = r[1];
    } else {
      lo = hi = need_int(cfg, "m");
    }
    bool all_ok = true;
    ojson rows = ojson::array();
    for (long long m = lo; m <= hi; ++m) {
      const auto [rho, pi] = brenner_cycles(static_cast<int>(m));
      const Perm prod = rho * pi.inverse();
      Perm expected = Perm::parse("(" + std::to_string(m - 4) + " " +
                                      std::to_string(m - 2) + " " +
                                      std::to_string(m) + ")",
                                  static_cast<int>(m));
      const bool ok = prod == expected;
      all_ok = all_ok && ok;
      rows.push_back(ojson{{"m", m},
                           {"rho", rho.to_cycle_string()},
                           {"pi", pi.to_cycle_string()},
                           {"rho_pi_inverse", prod.to_cycle_string()},
                           {"pi_even", pi.is_even()},
                           {"ok", ok}});
    }
    ctx.report["rows"] = rows;
    ctx.verdict = all_ok;
    return;
  }

  if (op == "repair") {
    const int n = static_cast<int>(need_int(cfg, "n"));
    const Perm tau = Perm::parse(need_str(cfg, "tau"), n);
    const RepairResult rr = nearby_nonexceptional(tau);
    const bool ok = rr.sigma.support() == tau.support() &&
                    !is_exceptional(rr.sigma) && rr.distance <= 5;
    ctx.report["sigma"] = rr.sigma.one_line();
    ctx.report["sigma_cycles"] = rr.sigma.to_cycle_string();
    ctx.report["distance"] = rr.distance;
    ctx.report["even"] = rr.even;
    ctx.verdict = ok;
    return;
  }

  if (op == "sigma_infinity") {
    const int n = static_cast<int>(need_int(cfg, "n"));
    const Perm sigma = Perm::parse(need_str(cfg, "sigma"), n);
    const std::uint64_t seed = need_seed(cfg, seed_override);
    ctx.report["seed"] = seed;
    try {
      const auto res = sigma_infinity(sigma, n, seed);
      const int k = sigma.hamming_norm();
      const bool ok =
          res.sigma_infinity.hamming_norm() == n &&
          static_cast<long long>(res.certificate.factors.size()) <= 4 + n / k &&
          replay(res.certificate) == res.sigma_infinity;
      ctx.report["sigma_infinity"] = res.sigma_infinity.one_line();
      ojson factors = ojson::array();
      for (const auto& f : res.certificate.factors)
        factors.push_back(
            ojson{{"sign", f.sign}, {"conjugator", f.conjugator.one_line()}});
      ctx.report["certificate"] = ojson{
          {"base", res.certificate.base.one_line()},
          {"factors", factors},
          {"claimed_product", res.certificate.claimed.one_line()}};
      ctx.verdict = ok;
    } catch (const ConstructionIncomplete& e) {
      ctx.report["error"] = e.what();
      ojson factors = ojson::array();
      for (const auto& f : e.partial_certificate.factors)
        factors.push_back(
            ojson{{"sign", f.sign}, {"conjugator", f.conjugator.one_line()}});
      ctx.report["partial_certificate"] =
          ojson{{"base", e.partial_certificate.base.one_line()},
                {"factors", factors}};
      ctx.verdict = std::nullopt;  // inconclusive
    }
    return;
  }

  bad_field("/op", "unknown brenner op '" + op + "'");
}

void run_bigseq(const json& cfg, TaskContext& ctx) {
  Budget budget = parse_budget(cfg);
  CoverageEngine engine(make_group(need(cfg, "group"), budget.element_cap), budget);
  const auto eps = need_rat_list(cfg, "eps");
  const Rational r = need_rat(cfg, "r"), t = need_rat(cfg, "t");
  const int start = static_cast<int>(opt_int(cfg, "start_index", 0));
  const auto outcome = is_rt_big(engine, eps, r, t, start);
  ctx.verdict = outcome.big;
  if (outcome.witness) {
    ctx.report["witness"] = ojson{
        {"g", engine.group().element_to_json(engine.element(outcome.witness->first))},
        {"uncovered",
         engine.group().element_to_json(engine.element(outcome.witness->second))}};
    ctx.report["levels"] = engine.chain(outcome.witness->first).sizes;
  }
}

void run_scan(const json& cfg, TaskContext& ctx) {
  Budget budget = parse_budget(cfg);
  const json& groups = need(cfg, "groups");
  if (!groups.is_array() || groups.empty())
    bad_field("/groups", "expected a nonempty array of group descriptors");
  std::vector<std::shared_ptr<CoverageEngine>> family;
  for (const auto& d : groups)
    family.push_back(std::make_shared<CoverageEngine>(
        make_group(d, budget.element_cap), budget));
  const Rational r = need_rat(cfg, "r"), t = need_rat(cfg, "t");
  const Rational eps = need_rat(cfg, "eps");

  const auto outcome = uniformity_scan(family, r, t, eps);
  switch (outcome.status) {
    case UniformityOutcome::Status::Bound:
      ctx.report["N"] = outcome.bound;
      ctx.verdict = true;
      break;
    case UniformityOutcome::Status::Counterexample: {
      auto& engine = *family[outcome.group_index];
      ctx.report["witness"] = ojson{
          {"group_index", outcome.group_index},
          {"g", engine.group().element_to_json(engine.element(outcome.witness->first))},
          {"uncovered",
           engine.group().element_to_json(engine.element(outcome.witness->second))}};
      ctx.report["levels"] = engine.chain(outcome.witness->first).sizes;
      ctx.verdict = false;
      break;
    }
    case UniformityOutcome::Status::Inconclusive:
      ctx.report["partial_bound"] = outcome.bound;
      ctx.verdict = std::nullopt;
      break;
  }
}

void run_star(const json& cfg, TaskContext& ctx) {
  Budget budget = parse_budget(cfg);
  const json& groups = need(cfg, "groups");
  if (!groups.is_array() || groups.empty())
    bad_field("/groups", "expected a nonempty array of group descriptors");
  std::vector<std::shared_ptr<CoverageEngine>> family;
  for (const auto& d : groups)
    family.push_back(std::make_shared<CoverageEngine>(
        make_group(d, budget.element_cap), budget));
  std::vector<long long> k_list;
  if (cfg.contains("k_list")) k_list = cfg.at("k_list").get<std::vector<long long>>();

  const auto outcome = star_scan(family, k_list);
  ojson clause1{{"ok", outcome.clause1_ok}, {"N", outcome.clause1_n}};
  ojson witnesses = ojson::array();
  for (size_t i = 0; i < outcome.clause1_witness.size(); ++i) {
    const int w = outcome.clause1_witness[i];
    witnesses.push_back(w < 0 ? ojson(nullptr)
                              : ojson(family[i]->group().element_to_json(
                                    family[i]->element(w))));
  }
  clause1["witnesses"] = witnesses;
  ctx.report["clause1"] = clause1;

  ojson clause2 = ojson::array();
  bool all_found = true;
  for (const auto& row : outcome.clause2) {
    clause2.push_back(ojson{{"k", row.k},
                            {"l", row.l},
                            {"found", row.found},
                            {"vacuous", row.vacuous}});
    all_found = all_found && row.found;
  }
  ctx.report["clause2"] = clause2;
  ctx.verdict = outcome.clause1_ok && all_found;
}

void run_iet(const json& cfg, TaskContext& ctx) {
  const std::string op = need_str(cfg, "op");
  auto parse_map = [&](const std::string& field) {
    const json& j = need(cfg, field);
    std::vector<Rational> lengths;
    for (const auto& s : need(j, "lengths"))
      lengths.push_back(Rational::parse(s.get<std::string>()));
    std::vector<int> dest;
    for (const auto& d : need(j, "perm")) dest.push_back(d.get<int>() - 1);
    return IetMap(std::move(lengths), std::move(dest));
  };
  auto map_json = [&](const IetMap& m) {
    ojson lengths = ojson::array();
    for (const auto& l : m.lengths()) lengths.push_back(l.to_string());
    ojson perm = ojson::array();
    for (int d : m.destinations()) perm.push_back(d + 1);
    return ojson{{"lengths", lengths}, {"perm", perm}};
  };

  if (op == "compose") {
    const IetMap result = parse_map("f") * parse_map("g");
    ctx.report["result"] = map_json(result);
    ctx.report["support_norm"] = result.support_norm().to_string();
    ctx.verdict = true;
  } else if (op == "inverse") {
    const IetMap result = parse_map("f").inverse();
    ctx.report["result"] = map_json(result);
    ctx.verdict = true;
  } else if (op == "apply") {
    const Rational x = need_rat(cfg, "x");
    ctx.report["result"] = parse_map("f").apply(x).to_string();
    ctx.verdict = true;
  } else if (op == "support") {
    ctx.report["support_norm"] = parse_map("f").support_norm().to_string();
    ctx.verdict = true;
  } else if (op == "embed") {
    const int n = static_cast<int>(need_int(cfg, "n"));
    const Perm delta = Perm::parse(need_str(cfg, "perm"), n);
    const IetMap m = embed_perm(delta);
    ctx.report["result"] = map_json(m);
    ctx.report["support_norm"] = m.support_norm().to_string();
    // phi is an isometry against Hamming/n.
    ctx.verdict = m.support_norm() == Rational(delta.hamming_norm(), n);
  } else if (op == "discretize") {
    const int n = static_cast<int>(need_int(cfg, "resolution"));
    const auto res = discretize(parse_map("f"), n);
    ctx.report["grid_perm"] = res.grid_perm.one_line();
    ctx.report["snapped"] = map_json(res.snapped);
    ctx.report["distance"] = res.distance.to_string();
    ctx.verdict = true;
  } else {
    bad_field("/op", "unknown iet op '" + op + "'");
  }
}

void run_sl(const json& cfg, TaskContext& ctx) {
  const std::string op =
      cfg.contains("op") ? cfg.at("op").get<std::string>() : "probe";
  Budget budget = parse_budget(cfg);

  if (op == "probe") {
    const int n = static_cast<int>(need_int(cfg, "n"));
    const int p = static_cast<int>(need_int(cfg, "p"));
    CoverageEngine engine(
        make_group(json{{"type", "sl_fp"}, {"n", n}, {"p", p}, {"norm", "jordan"}},
                   budget.element_cap),
        budget);
    const auto outcome = ls_constant_probe(engine);
    ojson rows = ojson::array();
    for (const auto& row : outcome.rows) {
      ojson r{{"a", engine.group().element_to_json(engine.element(row.element))},
              {"jordan", row.norm_value.to_string()}};
      if (row.n) r["N"] = *row.n;
      else r["N"] = "infinite";
      rows.push_back(r);
    }
    ctx.report["rows"] = rows;
    ctx.report["noncentral_count"] = outcome.rows.size();
    ctx.report["c_emp"] = outcome.c_emp.to_string();
    ctx.report["all_finite"] = outcome.all_finite;
    ctx.report["consistent"] = outcome.consistent;
    if (!outcome.all_finite) {
      for (const auto& row : outcome.rows)
        if (!row.n) {
          ctx.report["witness"] =
              engine.group().element_to_json(engine.element(row.element));
          break;
        }
    }
    ctx.verdict = outcome.all_finite && outcome.consistent;
    return;
  }

  if (op == "enumerate") {
    const int n = static_cast<int>(need_int(cfg, "n"));
    const int p = static_cast<int>(need_int(cfg, "p"));
    const auto elems = sl_enumerate(n, p, budget.element_cap);
    ctx.report["count"] = elems.size();
    ctx.report["order_formula"] = sl_order(n, p);
    ctx.verdict = elems.size() == sl_order(n, p);
    return;
  }

  if (op == "jordan") {
    const json& a = need(cfg, "a");
    const int p = need_int(a, "p");
    MatFp m = MatFp::from_rows(a.at("rows").get<std::vector<std::vector<long long>>>(),
                               static_cast<int>(p));
    ctx.report["jordan_length"] = jordan_length(m).to_string();
    ctx.verdict = true;
    return;
  }

  if (op == "block_embed") {
    const json& a = need(cfg, "a");
    const int p = need_int(a, "p");
    MatFp m = MatFp::from_rows(a.at("rows").get<std::vector<std::vector<long long>>>(),
                               static_cast<int>(p));
    const int target = static_cast<int>(need_int(cfg, "m"));
    const MatFp embedded = block_embed(m, target);
    ojson rows = ojson::array();
    for (int i = 0; i < embedded.dim(); ++i) {
      ojson row = ojson::array();
      for (int j = 0; j < embedded.dim(); ++j) row.push_back(embedded.at(i, j));
      rows.push_back(row);
    }
    ctx.report["result"] = ojson{{"p", p}, {"n", target}, {"rows", rows}};
    ctx.report["jordan_preserved"] = jordan_length(embedded) == jordan_length(m);
    ctx.verdict = jordan_length(embedded) == jordan_length(m);
    return;
  }

  bad_field("/op", "unknown sl op '" + op + "'");
}

void run_ultra(const json& cfg, TaskContext& ctx) {
  SeqRulePtr rule = make_rule(cfg);
  const long long power = need_int(cfg, "power");
  const auto range = need(cfg, "range").get<std::vector<long long>>();
  if (range.size() != 2) bad_field("/range", "expected [lo, hi]");
  const Rational tol = need_rat(cfg, "tol");

  const auto outcome = infinitesimal_check(*rule, power, range[0], range[1], tol);
  ojson profile = ojson::array();
  for (const auto& p : outcome.profile)
    profile.push_back(ojson{{"n", p.stage}, {"norm", p.value.to_string()}});
  ctx.report["profile"] = profile;
  ctx.report["n0"] = outcome.n0;
  ctx.report["max_tail"] = outcome.max_tail.to_string();
  ctx.report["monotone_trend"] = outcome.monotone;
  if (outcome.analytic_bound_applicable)
    ctx.report["analytic_bound_ok"] = outcome.analytic_bound_ok;
  ctx.report["note"] =
      "finite-stage heuristic; no claim about any ultrafilter limit";
  ctx.verdict = outcome.verdict &&
                (!outcome.analytic_bound_applicable || outcome.analytic_bound_ok);
}

void run_tree(const json& cfg, TaskContext& ctx) {
  Budget budget = parse_budget(cfg);
  auto engine = std::make_shared<CoverageEngine>(
      make_group(need(cfg, "group"), budget.element_cap), budget);
  const auto grid = need_rat_list(cfg, "grid");
  const int depth_cap = static_cast<int>(opt_int(cfg, "depth_cap", budget.depth_cap));
  if (depth_cap < 1) bad_field("/depth_cap", "must be >= 1");

  const json& family_json = need(cfg, "family");
  const std::string kind = need_str(family_json, "kind");
  TreeFamily family;
  if (kind == "conj_chain") {
    const int g =
        engine->index_of(engine->group().element_from_json(need(family_json, "g")));
    family = [engine, g](int m) -> std::optional<std::vector<int>> {
      if (m == 0) return std::vector<int>{engine->identity_index()};
      const ConjChain& chain = engine->chain(g);
      std::vector<int> out;
      for (int x = 0; x < engine->size(); ++x)
        if (chain.level[x] >= 1 && chain.level[x] <= m) out.push_back(x);
      return out;
    };
  } else if (kind == "sets") {
    const json& sets_json = need(family_json, "sets");
    auto sets = std::make_shared<std::vector<std::vector<int>>>();
    for (size_t i = 0; i < sets_json.size(); ++i)
      sets->push_back(
          parse_set(*engine, sets_json[i], "/family/sets/" + std::to_string(i)));
    family = [sets](int m) -> std::optional<std::vector<int>> {
      if (m >= static_cast<int>(sets->size())) return std::nullopt;
      return (*sets)[m];
    };
  } else {
    bad_field("/family/kind", "expected 'conj_chain' or 'sets'");
  }

  const auto outcome = tree_rank(*engine, family, grid, depth_cap);
  if (outcome.conclusive) {
    ctx.report["rank"] = outcome.rank;
    ctx.verdict = true;
  } else {
    ojson path = ojson::array();
    for (const auto& e : outcome.cap_path) path.push_back(e.to_string());
    ctx.report["small_path_at_cap"] = path;
    ctx.verdict = std::nullopt;
  }
}

DirectSystem build_system(const json& cfg, std::uint64_t element_cap) {
  const json& sys = need(cfg, "system");
  const std::string kind = need_str(sys, "kind");
  DirectSystem out;
  if (kind == "sl_block") {
    const int p = static_cast<int>(need_int(sys, "p"));
    const auto dims = need(sys, "dims").get<std::vector<int>>();
    if (dims.size() < 2) bad_field("/system/dims", "need at least two stages");
    for (size_t i = 0; i + 1 < dims.size(); ++i)
      if (dims[i + 1] % dims[i] != 0)
        bad_field("/system/dims", "each dimension must divide the next");
    for (int d : dims)
      out.stages.push_back(make_group(
          json{{"type", "sl_fp"}, {"n", d}, {"p", p}, {"norm", "jordan"}},
          element_cap));
    for (size_t i = 0; i + 1 < dims.size(); ++i) {
      const int target = dims[i + 1];
      out.steps.emplace_back([target](const Element& e) -> Element {
        return block_embed(std::get<MatFp>(e), target);
      });
    }
    out.label = "sl_block(p=" + std::to_string(p) + ")";
    return out;
  }
  if (kind == "sym_fix") {
    const auto ns = need(sys, "ns").get<std::vector<int>>();
    if (ns.size() < 2) bad_field("/system/ns", "need at least two stages");
    const std::string norm =
        sys.contains("norm") ? sys.at("norm").get<std::string>() : "hamming";
    const bool alt = sys.contains("alt") && sys.at("alt").get<bool>();
    for (size_t i = 0; i + 1 < ns.size(); ++i)
      if (ns[i + 1] < ns[i]) bad_field("/system/ns", "degrees must not decrease");
    for (int n : ns)
      out.stages.push_back(make_group(
          json{{"type", alt ? "alt" : "sym"}, {"n", n}, {"norm", norm}},
          element_cap));
    for (size_t i = 0; i + 1 < ns.size(); ++i) {
      const int target = ns[i + 1];
      out.steps.emplace_back([target](const Element& e) -> Element {
        const Perm& p = std::get<Perm>(e);
        std::vector<int> img(target);
        for (int x = 0; x < target; ++x)
          img[x] = x < p.degree() ? p.image(x) : x;
        return Perm::from_images(std::move(img));
      });
    }
    out.label = "sym_fix(" + norm + ")";
    return out;
  }
  bad_field("/system/kind", "expected 'sl_block' or 'sym_fix'");
}

void run_dirlim(const json& cfg, TaskContext& ctx,
                const std::optional<std::uint64_t>& seed_override) {
  Budget budget = parse_budget(cfg);
  DirectSystem system = build_system(cfg, budget.element_cap);
  const Rational r = need_rat(cfg, "r"), t = need_rat(cfg, "t");
  const int N = static_cast<int>(need_int(cfg, "N"));
  const std::uint64_t samples = opt_int(cfg, "samples", 16);
  const std::uint64_t seed = need_seed(cfg, seed_override);
  ctx.report["seed"] = seed;
  ctx.report["system"] = system.label;

  const auto outcome = direct_limit_check(system, r, t, N, samples, seed, budget);
  ctx.report["samples_checked"] = outcome.samples_checked;
  ctx.report["max_level"] = outcome.max_level;
  if (outcome.failure) ctx.report["witness"] = *outcome.failure;
  ojson certs = ojson::array();
  for (const auto& c : outcome.certificates)
    certs.push_back(cert_to_json(*system.stages.back(), c));
  ctx.report["certificate"] = certs;
  ctx.verdict = outcome.ok;
}

}  // namespace

RunResult run_task(const json& config, std::optional<std::uint64_t> seed_override,
                   int jobs) {
  TaskContext ctx;
  ctx.started = std::chrono::steady_clock::now();
  RunResult result;

  std::string task;
  try {
    if (!config.is_object()) bad_field("", "config must be a JSON object");
    task = need_str(config, "task");

    ctx.report["schema_version"] = kSchemaVersion;
    ctx.report["task"] = task;
    if (config.contains("group")) ctx.report["group"] = config.at("group");
    if (config.contains("groups")) ctx.report["groups"] = config.at("groups");
    if (config.contains("rule")) ctx.report["rule"] = config.at("rule");
    if (config.contains("system")) ctx.report["system_config"] = config.at("system");
    {
      ojson params = ojson::object();
      for (const auto& [key, value] : config.items())
        if (key != "task" && key != "group" && key != "groups" && key != "seed")
          params[key] = ojson(value);
      ctx.report["parameters"] = params;
    }
    if (config.contains("seed"))
      ctx.report["seed"] = config.at("seed").get<std::uint64_t>();
    if (seed_override) ctx.report["seed"] = *seed_override;

    if (task == "axioms") run_axioms(config, ctx, seed_override, jobs);
    else if (task == "cover") run_cover(config, ctx);
    else if (task == "brenner") run_brenner(config, ctx, seed_override);
    else if (task == "bigseq") run_bigseq(config, ctx);
    else if (task == "scan") run_scan(config, ctx);
    else if (task == "star") run_star(config, ctx);
    else if (task == "iet") run_iet(config, ctx);
    else if (task == "sl") run_sl(config, ctx);
    else if (task == "ultra") run_ultra(config, ctx);
    else if (task == "tree") run_tree(config, ctx);
    else if (task == "dirlim") run_dirlim(config, ctx, seed_override);
    else bad_field("/task", "unknown task '" + task + "'");

    // Every report carries the full field set of the published schema.
    if (!ctx.report.contains("seed")) ctx.report["seed"] = 0;
    for (const char* key : {"witness", "levels", "certificate"})
      if (!ctx.report.contains(key)) ctx.report[key] = nullptr;

    if (ctx.verdict.has_value()) {
      ctx.report["verdict"] = *ctx.verdict;
      result.exit_code = *ctx.verdict ? 0 : 1;
    } else {
      ctx.report["verdict"] = "inconclusive";
      result.exit_code = 2;
    }
  } catch (const CapabilityError& e) {
    ctx.report["verdict"] = "inconclusive";
    ctx.report["error"] = e.what();
    result.exit_code = 2;
  } catch (const DomainError& e) {
    ctx.report["verdict"] = nullptr;
    ctx.report["error"] = e.what();
    result.exit_code = 3;
  }

  ctx.report["runtime_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - ctx.started)
          .count();
  result.report = std::move(ctx.report);
  return result;
}

nlohmann::ordered_json catalog() {
  ojson out;
  out["schema_version"] = kSchemaVersion;
  out["tasks"] = {"axioms", "cover",  "brenner", "bigseq", "scan", "star",
                  "iet",    "sl",     "ultra",   "tree",   "dirlim"};
  out["groups"] = adapter_catalog();
  out["sequence_rules"] = rule_catalog();
  out["set_kinds"] = {"all", "identity", "elements", "ball", "class", "conj_ball"};
  out["systems"] = {"sl_block", "sym_fix"};
  out["exit_codes"] = ojson{{"0", "verified true"},
                            {"1", "verified false, witness in report"},
                            {"2", "inconclusive (budget)"},
                            {"3", "config error"}};
  return out;
}

std::string report_to_csv(const nlohmann::ordered_json& report) {
  const std::string task = report.value("task", std::string());
  std::string csv;
  if (task == "sl" && report.contains("rows")) {
    csv = "element,jordan,N\n";
    for (const auto& row : report.at("rows")) {
      std::string a = row.at("a").dump();
      std::replace(a.begin(), a.end(), ',', ' ');  // keep one cell per column
      csv += a + "," + row.at("jordan").get<std::string>() + ",";
      csv += row.at("N").is_string() ? row.at("N").get<std::string>()
                                     : std::to_string(row.at("N").get<long long>());
      csv += "\n";
    }
    return csv;
  }
  if (task == "ultra" && report.contains("profile")) {
    csv = "n,norm\n";
    for (const auto& p : report.at("profile"))
      csv += std::to_string(p.at("n").get<long long>()) + "," +
             p.at("norm").get<std::string>() + "\n";
    return csv;
  }
  throw DomainError("csv export is only available for tabular reports (sl probe, ultra)");
}

RunResult verify_report(const json& report) {
  RunResult result;
  ojson& out = result.report;
  out["schema_version"] = kSchemaVersion;
  out["verify"] = true;

  try {
    const std::string task = need_str(report, "task");
    out["task"] = task;
    int checked = 0;
    bool ok = true;

    auto engine_for = [&](const json& desc) {
      return std::make_shared<CoverageEngine>(make_group(desc));
    };

    if (task == "axioms" && report.contains("witness") &&
        report.at("witness").contains("power_monotone")) {
      GroupPtr g = make_group(need(report, "group"));
      const json& w = report.at("witness").at("power_monotone");
      const Element base = g->element_from_json(w.at("g"));
      ++checked;
      ok = !(g->norm(g->power(base, w.at("n").get<long long>())) <=
             g->norm(base));
    } else if (task == "axioms" && report.contains("witness")) {
      GroupPtr g = make_group(need(report, "group"));
      const json& w = report.at("witness");
      const int axiom = need_int(w, "axiom");
      const auto ce = w.at("counterexample");
      ++checked;
      if (axiom == 1) {
        Element a = g->element_from_json(ce.at(0)), b = g->element_from_json(ce.at(1));
        ok = !(g->norm(g->multiply(a, b)) <= g->norm(a) + g->norm(b));
      } else if (axiom == 2) {
        Element a = g->element_from_json(ce.at(0));
        if (ce.size() == 1) {
          ok = g->norm(g->invert(a)) != g->norm(a);
        } else {
          Element b = g->element_from_json(ce.at(1));
          ok = g->norm(g->conjugate(a, b)) != g->norm(a);
        }
      } else if (axiom == 3) {
        Element a = g->element_from_json(ce.at(0));
        ok = g->norm(a).is_zero() && !g->is_identity(a);
      } else if (axiom == 0) {
        ok = !g->norm(g->identity()).is_zero();
      }
    } else if (task == "bigseq" && report.contains("witness")) {
      auto engine = engine_for(need(report, "group"));
      const json& params = need(report, "parameters");
      const auto eps = need_rat_list(params, "eps");
      const Rational r = need_rat(params, "r"), t = need_rat(params, "t");
      const json& w = report.at("witness");
      const int g = engine->index_of(engine->group().element_from_json(w.at("g")));
      const int h =
          engine->index_of(engine->group().element_from_json(w.at("uncovered")));
      ++checked;
      ok = engine->norm(g) > NormValue(r) && engine->norm(h) < NormValue(t);
      if (ok) {
        const ConjChain& chain = engine->chain(g);
        const int start = static_cast<int>(opt_int(params, "start_index", 0));
        bool covered = false;
        for (int idx = start; idx < static_cast<int>(eps.size()) && !covered;
             ++idx) {
          const NormValue ev{eps[idx]};
          if (idx == 0) {
            covered = engine->norm(h) < ev;
            continue;
          }
          for (int y = 0; y < engine->size() && !covered; ++y)
            if (chain.level[y] >= 1 && chain.level[y] <= idx &&
                engine->norm(engine->mul(engine->inv(y), h)) < ev)
              covered = true;
        }
        ok = !covered;  // the witness must really be uncovered
      }
    } else if (task == "scan" && report.contains("witness")) {
      const json& w = report.at("witness");
      const int gi = need_int(w, "group_index");
      auto engine = engine_for(report.at("groups").at(gi));
      const json& params = need(report, "parameters");
      const Rational eps = need_rat(params, "eps");
      const int g = engine->index_of(engine->group().element_from_json(w.at("g")));
      const int h =
          engine->index_of(engine->group().element_from_json(w.at("uncovered")));
      const ConjChain& chain = engine->chain(g);
      ++checked;
      if (eps.is_zero()) {
        ok = chain.level[h] < 0;
      } else {
        ok = true;
        const NormValue ev{eps};
        for (int y = 0; y < engine->size() && ok; ++y)
          if (chain.level[y] >= 1 &&
              engine->norm(engine->mul(engine->inv(y), h)) < ev)
            ok = false;
      }
    } else if (task == "cover" && report.contains("witness")) {
      auto engine = engine_for(need(report, "group"));
      const json& params = need(report, "parameters");
      const auto eps = need_rat_list(params, "eps");
      const json& sets_json = need(params, "sets");
      const int x =
          engine->index_of(engine->group().element_from_json(report.at("witness")));
      ++checked;
      ok = true;
      for (size_t i = 0; i < sets_json.size() && ok; ++i) {
        const auto set = parse_set(*engine, sets_json[i], "/sets");
        const NormValue ev{eps[i]};
        for (int y : set)
          if (engine->norm(engine->mul(engine->inv(y), x)) < ev) {
            ok = false;
            break;
          }
      }
    } else if (task == "brenner" && report.contains("certificate")) {
      const json& cj = report.at("certificate");
      const int n = static_cast<int>(cj.at("claimed_product").size());
      GroupPtr g = make_group(json{{"type", "sym"}, {"n", n}});
      auto cert = cert_from_json(*g, cj);
      ++checked;
      ok = element_equal(replay_cert(*g, cert), cert.claimed);
    } else if (task == "dirlim" && report.contains("certificate") &&
               report.at("certificate").is_array()) {
      const json& sys = need(report, "system_config");
      DirectSystem system = build_system(json{{"system", sys}}, kDefaultElementBudget);
      const GroupAdapter& top = *system.stages.back();
      const long long N = need_int(need(report, "parameters"), "N");
      for (const auto& cj : report.at("certificate")) {
        auto cert = cert_from_json(top, cj);
        ++checked;
        ok = ok && element_equal(replay_cert(top, cert), cert.claimed) &&
             static_cast<long long>(cert.factors.size()) <= N;
      }
    } else if (task == "sl" && report.contains("witness")) {
      const json& params = need(report, "parameters");
      auto engine = engine_for(json{{"type", "sl_fp"},
                                    {"n", need_int(params, "n")},
                                    {"p", need_int(params, "p")},
                                    {"norm", "jordan"}});
      const int g =
          engine->index_of(engine->group().element_from_json(report.at("witness")));
      ++checked;
      ok = !engine->normal_gen_number(g).has_value();
    } else if (task == "tree" && report.contains("small_path_at_cap")) {
      // Witness path must really be small: re-run the cover test once.
      const json& params = need(report, "parameters");
      auto engine = engine_for(need(report, "group"));
      std::vector<Rational> path;
      for (const auto& e : report.at("small_path_at_cap"))
        path.push_back(Rational::parse(e.get<std::string>()));
      const json& family_json = need(params, "family");
      std::vector<std::vector<int>> sets;
      for (size_t m = 0; m < path.size(); ++m) {
        if (need_str(family_json, "kind") == "conj_chain") {
          const int g = engine->index_of(
              engine->group().element_from_json(family_json.at("g")));
          if (m == 0) {
            sets.push_back({engine->identity_index()});
          } else {
            const ConjChain& chain = engine->chain(g);
            std::vector<int> s;
            for (int x = 0; x < engine->size(); ++x)
              if (chain.level[x] >= 1 && chain.level[x] <= static_cast<int>(m))
                s.push_back(x);
            sets.push_back(std::move(s));
          }
        } else {
          sets.push_back(parse_set(*engine, family_json.at("sets").at(m), "/sets"));
        }
      }
      ++checked;
      ok = !check_thickened_cover(*engine, sets, path).covered;
    } else if (task == "ultra" && report.contains("profile")) {
      SeqRulePtr rule = make_rule(need(report, "parameters"));
      const json& params = need(report, "parameters");
      const auto range = params.at("range").get<std::vector<long long>>();
      const auto profile =
          tail_norm_profile(*rule, need_int(params, "power"), range[0], range[1]);
      ++checked;
      ok = profile.size() == report.at("profile").size();
      for (size_t i = 0; i < profile.size() && ok; ++i)
        ok = profile[i].value.to_string() ==
             report.at("profile").at(i).at("norm").get<std::string>();
    } else {
      out["note"] = "report carries no witness or certificate to re-verify";
    }

    out["checked"] = checked;
    out["ok"] = ok;
    result.exit_code = ok ? 0 : 1;
  } catch (const DomainError& e) {
    out["error"] = e.what();
    result.exit_code = 3;
  } catch (const CapabilityError& e) {
    out["error"] = e.what();
    result.exit_code = 2;
  }
  return result;
}

}  // namespace ngv
