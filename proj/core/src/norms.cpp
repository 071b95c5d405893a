#include "ngv/norms.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <thread>

#include "ngv/adapters.hpp"
#include "ngv/errors.hpp"

namespace ngv {

namespace {

// Deterministic split of a pair scan across up to `jobs` threads. Each worker
// reports the least violating (i, j); the merge keeps the global least, so
// the result does not depend on the thread count.
template <class Check>
std::optional<std::pair<size_t, size_t>> least_violating_pair(size_t count,
                                                              int jobs,
                                                              Check check) {
  jobs = std::max(1, jobs);
  const size_t rows_per_job = (count + jobs - 1) / std::max<size_t>(1, jobs);
  if (jobs == 1 || rows_per_job == 0 || count < 64) {
    for (size_t i = 0; i < count; ++i)
      for (size_t j = 0; j < count; ++j)
        if (!check(i, j)) return std::make_pair(i, j);
    return std::nullopt;
  }
  std::vector<std::optional<std::pair<size_t, size_t>>> found(jobs);
  std::vector<std::thread> workers;
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w]() {
      const size_t lo = w * rows_per_job;
      const size_t hi = std::min(count, lo + rows_per_job);
      for (size_t i = lo; i < hi; ++i)
        for (size_t j = 0; j < count; ++j)
          if (!check(i, j)) {
            found[w] = std::make_pair(i, j);
            return;
          }
    });
  }
  for (auto& t : workers) t.join();
  std::optional<std::pair<size_t, size_t>> best;
  for (const auto& f : found)
    if (f && (!best || *f < *best)) best = f;
  return best;
}

Element random_word(const GroupAdapter& g, const std::vector<Element>& gens,
                    std::mt19937_64& rng, int max_len) {
  Element acc = g.identity();
  const int len = static_cast<int>(rng() % (max_len + 1));
  for (int i = 0; i < len; ++i) {
    const Element& s = gens[rng() % gens.size()];
    acc = rng() % 2 ? g.multiply(acc, s) : g.multiply(acc, g.invert(s));
  }
  return acc;
}

}  // namespace

bool NormReport::all_pass() const {
  for (const auto& [axiom, result] : axioms)
    if (!result.pass) return false;
  return true;
}

bool NormReport::pseudo_norm() const {
  return pass(0) && pass(1) && pass(2) && !pass(3);
}

NormReport verify_norm_axioms(const GroupAdapter& group, NormReport::Mode mode,
                              std::uint64_t seed, ScanOptions opts) {
  NormReport report;
  report.mode = mode;
  for (int axiom = 0; axiom < 4; ++axiom) report.axioms[axiom] = {};

  auto ex = [&](const Element& e) { return group.element_to_json(e); };

  report.axioms[0].pass = group.norm(group.identity()).is_zero();
  if (!report.axioms[0].pass)
    report.axioms[0].counterexample = {ex(group.identity())};

  if (mode == NormReport::Mode::Exhaustive) {
    if (!group.enumerable())
      throw CapabilityError("exhaustive axiom check needs an enumerable group");
    const auto elems = group.enumerate();
    const size_t n = elems.size();
    std::vector<NormValue> norms;
    norms.reserve(n);
    for (const auto& e : elems) norms.push_back(group.norm(e));
    report.pairs_checked = static_cast<std::uint64_t>(n) * n;

    // (1) subadditivity over all pairs.
    auto sub = least_violating_pair(n, opts.jobs, [&](size_t i, size_t j) {
      return group.norm(group.multiply(elems[i], elems[j])) <= norms[i] + norms[j];
    });
    if (sub) {
      report.axioms[1].pass = false;
      report.axioms[1].counterexample = {ex(elems[sub->first]), ex(elems[sub->second])};
    }

    // (2) inverse invariance, then conjugation invariance over all pairs.
    for (size_t i = 0; i < n && report.axioms[2].pass; ++i)
      if (group.norm(group.invert(elems[i])) != norms[i]) {
        report.axioms[2].pass = false;
        report.axioms[2].counterexample = {ex(elems[i])};
      }
    if (report.axioms[2].pass) {
      auto conj = least_violating_pair(n, opts.jobs, [&](size_t i, size_t j) {
        return group.norm(group.conjugate(elems[i], elems[j])) == norms[i];
      });
      if (conj) {
        report.axioms[2].pass = false;
        report.axioms[2].counterexample = {ex(elems[conj->first]),
                                           ex(elems[conj->second])};
      }
    }

    // (3) definiteness.
    for (size_t i = 0; i < n; ++i) {
      if (norms[i].is_zero() && !group.is_identity(elems[i])) {
        report.axioms[3].pass = false;
        report.axioms[3].counterexample = {ex(elems[i])};
        break;
      }
    }
    return report;
  }

  // Sampled mode: uniform words of bounded length over the generators.
  const auto gens = group.generators();
  if (gens.empty()) throw DomainError("sampled mode needs a generator set");
  std::mt19937_64 rng(seed);
  report.seed = seed;
  report.word_length_bound = opts.word_length_bound;
  report.samples = opts.samples;
  report.pairs_checked = opts.samples;
  for (std::uint64_t s = 0; s < opts.samples; ++s) {
    Element g = random_word(group, gens, rng, opts.word_length_bound);
    Element h = random_word(group, gens, rng, opts.word_length_bound);
    const NormValue ng = group.norm(g), nh = group.norm(h);
    if (report.axioms[1].pass &&
        !(group.norm(group.multiply(g, h)) <= ng + nh)) {
      report.axioms[1].pass = false;
      report.axioms[1].counterexample = {ex(g), ex(h)};
    }
    if (report.axioms[2].pass && group.norm(group.invert(g)) != ng) {
      report.axioms[2].pass = false;
      report.axioms[2].counterexample = {ex(g)};
    }
    if (report.axioms[2].pass && group.norm(group.conjugate(g, h)) != ng) {
      report.axioms[2].pass = false;
      report.axioms[2].counterexample = {ex(g), ex(h)};
    }
    if (report.axioms[3].pass && ng.is_zero() && !group.is_identity(g)) {
      report.axioms[3].pass = false;
      report.axioms[3].counterexample = {ex(g)};
    }
  }
  return report;
}

Rational lee_norm(long long g, long long m) {
  if (m < 2) throw DomainError("Lee norm needs modulus m >= 2");
  if (g < 0 || g >= m) throw DomainError("Lee norm argument out of [0, m)");
  return Rational(2 * std::min(g, m - g), m);
}

NormValue conjugacy_length_norm(const GroupAdapter& group, const Element& g) {
  auto order = group.order();
  if (!order || *order < 2)
    throw DomainError("conjugacy length norm needs |G| >= 2");
  const auto cls = conjugacy_class_of(group, g);
  return NormValue::log_ratio(static_cast<long long>(cls.size()),
                              static_cast<long long>(*order));
}

PowerMonotoneResult check_power_monotone(const GroupAdapter& group,
                                         long long max_power,
                                         NormReport::Mode mode,
                                         std::uint64_t seed, ScanOptions opts) {
  if (max_power < 1) throw DomainError("max_power must be >= 1");
  PowerMonotoneResult result;

  auto check_one = [&](const Element& g) -> bool {
    const NormValue bound = group.norm(g);
    Element x = g;
    for (long long n = 1; n <= max_power; ++n) {
      if (n > 1) x = group.multiply(x, g);
      ++result.checked;
      if (!(group.norm(x) <= bound)) {
        result.pass = false;
        result.counterexample = {group.element_to_json(g), n};
        return false;
      }
    }
    return true;
  };

  if (mode == NormReport::Mode::Exhaustive) {
    if (!group.enumerable())
      throw CapabilityError("exhaustive power check needs an enumerable group");
    for (const auto& g : group.enumerate())
      if (!check_one(g)) break;
  } else {
    const auto gens = group.generators();
    if (gens.empty()) throw DomainError("sampled mode needs a generator set");
    std::mt19937_64 rng(seed);
    for (std::uint64_t s = 0; s < opts.samples; ++s)
      if (!check_one(random_word(group, gens, rng, opts.word_length_bound)))
        break;
  }
  return result;
}

long long group_exponent(const GroupAdapter& group) {
  long long exponent = 1;
  for (const auto& g : group.enumerate()) {
    long long ord = 1;
    Element x = g;
    while (!group.is_identity(x)) {
      x = group.multiply(x, g);
      ++ord;
    }
    exponent = std::lcm(exponent, ord);
  }
  return exponent;
}

}  // namespace ngv
