#include "ngv/coverage.hpp"

#include <algorithm>
#include <deque>
#include <random>

#include "ngv/errors.hpp"

namespace ngv {

namespace {

constexpr std::uint64_t kMultTableLimit = 2600;  // |G|^2 ints of memory

// Deterministic substitute for std::uniform_int_distribution.
std::uint64_t rand_below(std::mt19937_64& rng, std::uint64_t n) {
  return rng() % n;
}

// Injective 64-bit packing for small elements; nullopt when it does not fit.
std::optional<std::uint64_t> pack_element(const Element& e) {
  if (const auto* p = std::get_if<Perm>(&e)) {
    if (p->degree() > 16) return std::nullopt;
    std::uint64_t key = 0;
    for (int x = 0; x < p->degree(); ++x)
      key |= static_cast<std::uint64_t>(p->image(x)) << (4 * x);
    return key;
  }
  if (const auto* r = std::get_if<long long>(&e))
    return static_cast<std::uint64_t>(*r);
  if (const auto* m = std::get_if<MatFp>(&e)) {
    const int n = m->dim();
    if (n * n > 16 || m->modulus() > 13) return std::nullopt;
    std::uint64_t key = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        key |= static_cast<std::uint64_t>(m->at(i, j)) << (4 * (i * n + j));
    return key;
  }
  return std::nullopt;
}

}  // namespace

CoverageEngine::CoverageEngine(GroupPtr group, Budget budget)
    : group_(std::move(group)), budget_(budget) {
  if (budget_.time_cap_ms > 0) {
    has_deadline_ = true;
    deadline_ = std::chrono::steady_clock::now() +
                std::chrono::milliseconds(budget_.time_cap_ms);
  }
  auto order = group_->order();
  if (order && *order > budget_.element_cap)
    throw CapabilityError(group_->name() + " exceeds the element budget");
  elems_ = group_->enumerate();
  const int n = static_cast<int>(elems_.size());
  packed_ = true;
  for (int i = 0; i < n && packed_; ++i) packed_ = pack_element(elems_[i]).has_value();
  if (packed_) {
    by_packed_.reserve(2 * n);
    for (int i = 0; i < n; ++i) by_packed_.emplace(*pack_element(elems_[i]), i);
    if (static_cast<int>(by_packed_.size()) != n)
      throw DomainError("adapter enumeration repeats elements");
  } else {
    for (int i = 0; i < n; ++i) by_elem_.emplace(elems_[i], i);
    if (static_cast<int>(by_elem_.size()) != n)
      throw DomainError("adapter enumeration repeats elements");
  }

  id_ = index_of(group_->identity());
  norms_.reserve(n);
  for (const auto& e : elems_) norms_.push_back(group_->norm(e));
  inv_.resize(n);
  for (int i = 0; i < n; ++i) inv_[i] = index_of(group_->invert(elems_[i]));

  if (static_cast<std::uint64_t>(n) <= kMultTableLimit) {
    mult_table_.resize(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        mult_table_[static_cast<size_t>(a) * n + b] =
            index_of(group_->multiply(elems_[a], elems_[b]));
  }

  for (const auto& g : group_->generators()) gens_.push_back(index_of(g));

  // Spot checks: the generators generate, and the norm passes axioms (0) and
  // (2) on a small sample.
  {
    std::vector<char> reached(n, 0);
    reached[id_] = 1;
    std::deque<int> todo{id_};
    int count = 1;
    while (!todo.empty()) {
      int x = todo.front();
      todo.pop_front();
      for (int s : gens_) {
        for (int y : {mul(x, s), mul(x, inv_[s])}) {
          if (!reached[y]) {
            reached[y] = 1;
            ++count;
            todo.push_back(y);
          }
        }
      }
    }
    if (count != n)
      throw DomainError(group_->name() + ": generators do not generate");
  }
  if (!norms_[id_].is_zero())
    throw DomainError(group_->name() + ": |e| != 0");
  for (int i = 0; i < std::min(n, 16); ++i) {
    if (norms_[inv_[i]] != norms_[i])
      throw DomainError(group_->name() + ": norm is not inverse invariant");
    for (int s : gens_)
      if (norms_[mul(mul(inv_[s], i), s)] != norms_[i])
        throw DomainError(group_->name() + ": norm is not conjugation invariant");
  }

  class_rep_.assign(n, -1);
  conj_to_rep_.assign(n, -1);
}

int CoverageEngine::index_of(const Element& e) const {
  if (packed_) {
    const auto key = pack_element(e);
    if (key) {
      auto it = by_packed_.find(*key);
      if (it != by_packed_.end() && element_equal(elems_[it->second], e))
        return it->second;
    }
    throw DomainError("element does not belong to " + group_->name());
  }
  auto it = by_elem_.find(e);
  if (it == by_elem_.end())
    throw DomainError("element does not belong to " + group_->name());
  return it->second;
}

int CoverageEngine::mul(int a, int b) const {
  if (!mult_table_.empty())
    return mult_table_[static_cast<size_t>(a) * elems_.size() + b];
  return index_of(group_->multiply(elems_[a], elems_[b]));
}

long long CoverageEngine::order_of(int i) const {
  long long ord = 1;
  int x = i;
  while (x != id_) {
    x = mul(x, i);
    ++ord;
  }
  return ord;
}

void CoverageEngine::check_deadline() const {
  if (has_deadline_ && std::chrono::steady_clock::now() > deadline_)
    throw CapabilityError("time cap exceeded");
}

void CoverageEngine::discover_class(int g) {
  if (class_rep_[g] >= 0) return;
  // Conjugation orbit under the generators, tracking g^{h} = x.
  std::vector<int> members{g};
  std::vector<std::pair<int, int>> conj_from_g{{g, id_}};
  std::vector<int> conj_of(elems_.size(), -1);
  conj_of[g] = id_;
  std::deque<int> todo{g};
  while (!todo.empty()) {
    check_deadline();
    int x = todo.front();
    todo.pop_front();
    for (int s : gens_) {
      int y = mul(mul(inv_[s], x), s);
      if (conj_of[y] < 0) {
        conj_of[y] = mul(conj_of[x], s);
        members.push_back(y);
        todo.push_back(y);
      }
    }
  }
  std::sort(members.begin(), members.end());
  const int rep = members.front();
  // Rebase conjugators at the representative: rep^{h0^{-1} h} = g^h.
  const int h0_inv = inv_[conj_of[rep]];
  for (int x : members) {
    class_rep_[x] = rep;
    conj_to_rep_[x] = mul(h0_inv, conj_of[x]);
  }
  class_members_[rep] = std::move(members);
}

int CoverageEngine::class_rep(int g) {
  discover_class(g);
  return class_rep_[g];
}

const std::vector<int>& CoverageEngine::class_of(int g) {
  discover_class(g);
  return class_members_.at(class_rep_[g]);
}

const ConjChain& CoverageEngine::chain(int g) {
  const int rep = class_rep(g);
  auto it = chains_.find(rep);
  if (it != chains_.end()) return it->second;

  const int n = size();
  ConjChain c;
  c.base = rep;
  c.level.assign(n, -1);
  c.pred.assign(n, -1);
  c.via.assign(n, -1);
  c.sign1.assign(n, 0);
  c.conj1.assign(n, -1);

  for (int x : class_members_.at(rep)) {
    c.level[x] = 1;
    c.sign1[x] = 1;
    c.conj1[x] = conj_to_rep_[x];
  }
  for (int x : class_members_.at(rep)) {
    const int xi = inv_[x];
    if (c.level[xi] < 0) {
      c.level[xi] = 1;
      c.sign1[xi] = -1;
      c.conj1[xi] = conj_to_rep_[x];
    }
  }
  std::vector<int> c1;
  for (int x = 0; x < n; ++x)
    if (c.level[x] == 1) c1.push_back(x);
  c.sizes.push_back(c1.size());

  std::vector<int> frontier = c1;
  std::size_t total = c1.size();
  int k = 1;
  while (!frontier.empty()) {
    check_deadline();
    std::vector<int> next;
    for (int x : frontier)
      for (int f : c1) {
        const int y = mul(x, f);
        if (c.level[y] < 0) {
          c.level[y] = k + 1;
          c.pred[y] = x;
          c.via[y] = f;
          next.push_back(y);
        }
      }
    if (next.empty()) break;
    std::sort(next.begin(), next.end());
    total += next.size();
    c.sizes.push_back(total);
    frontier = std::move(next);
    ++k;
  }
  c.stable_level = k;
  c.full = total == static_cast<std::size_t>(n);
  return chains_.emplace(rep, std::move(c)).first->second;
}

std::optional<int> CoverageEngine::normal_gen_number(int g) {
  const ConjChain& c = chain(g);
  if (!c.full) return std::nullopt;
  for (std::size_t k = 0; k < c.sizes.size(); ++k)
    if (c.sizes[k] == static_cast<std::size_t>(size()))
      return static_cast<int>(k + 1);
  return std::nullopt;  // unreachable
}

ConjProduct<Element> CoverageEngine::membership_certificate(int g, int x) {
  const int rep = class_rep(g);
  const ConjChain& c = chain(rep);
  ConjProduct<Element> cert;
  cert.base = element(g);
  cert.claimed = element(x);

  if (x != identity_index()) {
    if (c.level[x] < 0)
      throw DomainError("element is not in any conjugate ball of the base");
    std::vector<int> c1_factors;
    int cur = x;
    while (c.level[cur] > 1) {
      c1_factors.push_back(c.via[cur]);
      cur = c.pred[cur];
    }
    c1_factors.push_back(cur);
    std::reverse(c1_factors.begin(), c1_factors.end());
    // Conjugators are stored against the class representative; rebase them
    // to g via rep = g^{h0^{-1}}.
    const int h0_inv = inv_[conj_to_rep_[g]];
    for (int f : c1_factors)
      cert.factors.push_back(
          {c.sign1[f], element(mul(h0_inv, c.conj1[f]))});
  }

  Element check = replay_conj_product(
      cert,
      [&](const Element& a, const Element& b) { return group_->multiply(a, b); },
      [&](const Element& a) { return group_->invert(a); });
  if (!element_equal(check, cert.claimed))
    throw std::logic_error("membership certificate failed to replay");
  return cert;
}

std::vector<int> CoverageEngine::ball(const NormValue& t, bool strict) const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (strict ? norms_[i] < t : norms_[i] <= t) out.push_back(i);
  return out;
}

// ---------------------------------------------------------------------------

CoverOutcome check_thickened_cover(CoverageEngine& engine,
                                   const std::vector<std::vector<int>>& sets,
                                   const std::vector<Rational>& eps) {
  if (sets.size() != eps.size())
    throw DomainError("cover check needs one radius per set");
  const int n = engine.size();
  std::vector<char> covered(n, 0);
  for (size_t i = 0; i < sets.size(); ++i) {
    engine.check_deadline();
    const auto b = engine.ball(NormValue(eps[i]), /*strict=*/true);
    for (int y : sets[i])
      for (int x : b) covered[engine.mul(y, x)] = 1;
  }
  for (int x = 0; x < n; ++x)
    if (!covered[x]) return {false, x};
  return {true, std::nullopt};
}

RtBigOutcome is_rt_big(CoverageEngine& engine, const std::vector<Rational>& eps,
                       const Rational& r, const Rational& t, int start_index) {
  if (!(Rational(0) < r) || !(r < t)) throw DomainError("needs t > r > 0");
  if (start_index < 0 || start_index > 1)
    throw DomainError("start index must be 0 or 1");
  const int n = engine.size();
  const NormValue rv{r}, tv{t};
  const auto bt = engine.ball(tv, true);

  std::vector<char> seen_class(n, 0);
  for (int g = 0; g < n; ++g) {
    if (seen_class[g]) continue;
    if (!(engine.norm(g) > rv)) continue;
    const int rep = engine.class_rep(g);
    for (int x : engine.class_of(g)) seen_class[x] = 1;
    if (rep != g) continue;  // handled when the representative comes up

    engine.check_deadline();
    const ConjChain& chain = engine.chain(rep);
    std::vector<char> covered(n, 0);
    const int last = static_cast<int>(eps.size()) - 1;
    for (int idx = start_index; idx <= last; ++idx) {
      const auto b = engine.ball(NormValue(eps[idx]), true);
      if (idx == 0) {
        for (int x : b) covered[x] = 1;  // C_0 = {e}
        continue;
      }
      for (int y = 0; y < n; ++y) {
        if (!(chain.level[y] >= 1 && chain.level[y] <= idx)) continue;
        for (int x : b) covered[engine.mul(y, x)] = 1;
      }
    }
    for (int h : bt)
      if (!covered[h]) return {false, std::make_pair(rep, h)};
  }
  return {true, std::nullopt};
}

UniformityOutcome uniformity_scan(
    const std::vector<std::shared_ptr<CoverageEngine>>& family,
    const Rational& r, const Rational& t, const Rational& eps) {
  if (!(Rational(0) < r) || !(r < t)) throw DomainError("needs t > r > 0");
  if (eps.is_negative()) throw DomainError("thickening must be >= 0");
  UniformityOutcome out;
  int bound = 0;

  for (size_t gi = 0; gi < family.size(); ++gi) {
    CoverageEngine& engine = *family[gi];
    const int n = engine.size();
    const NormValue rv{r}, tv{t};
    const auto bt = engine.ball(tv, true);

    std::vector<char> seen_class(n, 0);
    for (int g = 0; g < n; ++g) {
      if (seen_class[g]) continue;
      const bool qualifies = engine.norm(g) > rv && engine.norm(g) <= tv;
      const int rep = engine.class_rep(g);
      for (int x : engine.class_of(g)) seen_class[x] = 1;
      if (!qualifies) continue;

      engine.check_deadline();
      const ConjChain& chain = engine.chain(rep);
      for (int h : bt) {
        int needed = -1;
        if (eps.is_zero()) {
          needed = chain.level[h];
        } else {
          const NormValue ev{eps};
          for (int y = 0; y < n; ++y) {
            if (chain.level[y] < 0) continue;
            if (engine.norm(engine.mul(engine.inv(y), h)) < ev)
              if (needed < 0 || chain.level[y] < needed) needed = chain.level[y];
          }
        }
        if (needed < 0) {
          out.status = UniformityOutcome::Status::Counterexample;
          out.group_index = static_cast<int>(gi);
          out.witness = std::make_pair(rep, h);
          return out;
        }
        bound = std::max(bound, needed);
      }
    }
    if (bound > engine.budget().level_cap) {
      out.status = UniformityOutcome::Status::Inconclusive;
      out.bound = bound;
      out.group_index = static_cast<int>(gi);
      return out;
    }
  }
  out.status = UniformityOutcome::Status::Bound;
  out.bound = bound;
  return out;
}

StarOutcome star_scan(const std::vector<std::shared_ptr<CoverageEngine>>& family,
                      const std::vector<long long>& k_list) {
  StarOutcome out;
  out.clause1_ok = true;

  // N(g) tables per group; -1 encodes infinity.
  std::vector<std::vector<int>> tables;
  int max_finite = 0;
  for (const auto& ep : family) {
    CoverageEngine& engine = *ep;
    std::vector<int> table(engine.size(), -1);
    for (int g = 0; g < engine.size(); ++g) {
      auto ng = engine.normal_gen_number(g);
      table[g] = ng ? *ng : -1;
      if (ng) max_finite = std::max(max_finite, *ng);
    }
    tables.push_back(std::move(table));
  }

  for (size_t gi = 0; gi < family.size(); ++gi) {
    int best = -1, witness = -1;
    for (int g = 0; g < family[gi]->size(); ++g)
      if (tables[gi][g] >= 0 && (best < 0 || tables[gi][g] < best)) {
        best = tables[gi][g];
        witness = g;
      }
    if (best < 0) {
      out.clause1_ok = false;
      out.clause1_witness.push_back(-1);
    } else {
      out.clause1_n = std::max(out.clause1_n, best);
      out.clause1_witness.push_back(witness);
    }
  }

  for (long long k : k_list) {
    StarOutcome::Clause2Row row;
    row.k = k;
    for (int l = 1; l <= max_finite + 1 && !row.found; ++l) {
      bool holds = true;
      for (size_t gi = 0; gi < family.size() && holds; ++gi) {
        CoverageEngine& engine = *family[gi];
        const auto& table = tables[gi];
        std::vector<int> big;
        for (int g = 0; g < engine.size(); ++g)
          if (table[g] < 0 || table[g] >= l) big.push_back(g);
        for (size_t a = 0; a < big.size() && holds; ++a) {
          engine.check_deadline();
          for (size_t b = 0; b < big.size(); ++b) {
            const int prod = engine.mul(big[a], big[b]);
            const int np = table[prod];
            if (np >= 0 && np < k) {
              holds = false;
              break;
            }
          }
        }
      }
      if (holds) {
        row.found = true;
        row.l = l;
        row.vacuous = l > max_finite;
      }
    }
    out.clause2.push_back(row);
  }
  return out;
}

CommutatorOutcome commutator_width(CoverageEngine& engine) {
  const int n = engine.size();
  CommutatorOutcome out;

  // All commutators; contains e and is closed under inversion.
  std::vector<char> is_comm(n, 0);
  std::vector<int> comms;
  for (int a = 0; a < n; ++a) {
    engine.check_deadline();
    for (int b = 0; b < n; ++b) {
      const int c = engine.mul(engine.mul(engine.inv(a), engine.inv(b)),
                               engine.mul(a, b));
      if (!is_comm[c]) {
        is_comm[c] = 1;
        comms.push_back(c);
      }
    }
  }
  std::sort(comms.begin(), comms.end());

  // Derived subgroup = closure of the commutators under products; track the
  // number of factors needed for the width.
  std::vector<int> level(n, -1);
  for (int c : comms) level[c] = 1;
  std::vector<int> frontier = comms;
  std::vector<int> members = comms;
  int depth = 1;
  while (!frontier.empty()) {
    engine.check_deadline();
    std::vector<int> next;
    for (int x : frontier)
      for (int c : comms) {
        const int y = engine.mul(x, c);
        if (level[y] < 0) {
          level[y] = depth + 1;
          next.push_back(y);
        }
      }
    if (next.empty()) break;
    std::sort(next.begin(), next.end());
    members.insert(members.end(), next.begin(), next.end());
    frontier = std::move(next);
    ++depth;
  }
  std::sort(members.begin(), members.end());
  out.derived = members;
  out.perfect = static_cast<int>(members.size()) == n;
  out.width = depth;
  for (int x : members)
    if (level[x] == depth) {
      out.width_witness = x;
      break;
    }
  return out;
}

std::vector<int> derived_subgroup(CoverageEngine& engine) {
  return commutator_width(engine).derived;
}

std::vector<int> eps_torsion_set(CoverageEngine& engine, long long m,
                                 const Rational& eps, bool closed) {
  if (m < 1) throw DomainError("torsion power must be >= 1");
  const NormValue ev{eps};
  std::vector<int> out;
  for (int g = 0; g < engine.size(); ++g) {
    int x = engine.identity_index();
    for (long long i = 0; i < m; ++i) x = engine.mul(x, g);
    const NormValue& nv = engine.norm(x);
    if (closed ? nv <= ev : nv < ev) out.push_back(g);
  }
  return out;
}

TorsionOutcome almost_uniform_torsion(CoverageEngine& engine, const Rational& eps,
                                      long long N) {
  if (N < 1) throw DomainError("torsion bound must be >= 1");
  TorsionOutcome out;
  out.ok = true;
  out.least_m.assign(engine.size(), 0);
  const NormValue ev{eps};
  for (int g = 0; g < engine.size(); ++g) {
    int x = engine.identity_index();
    for (long long m = 1; m <= N; ++m) {
      x = engine.mul(x, g);
      if (engine.norm(x) < ev) {
        out.least_m[g] = m;
        break;
      }
    }
    if (out.least_m[g] == 0 && out.ok) {
      out.ok = false;
      out.witness = g;
    }
  }
  return out;
}

PerturbationOutcome perturbation_check(CoverageEngine& engine, int g, int h,
                                       int n, const Rational& eps) {
  if (n < 0) throw DomainError("ball level must be >= 0");
  const NormValue gap = engine.norm(engine.mul(engine.inv(g), h));
  if (!(gap < NormValue(eps)))
    throw DomainError("perturbation check requires eps > |g^{-1} h|");
  if (n == 0) return {true, std::nullopt};  // C_0 = {e} on both sides

  const ConjChain& ch = engine.chain(h);
  const ConjChain& cg = engine.chain(g);
  const Rational radius = eps * Rational(n);
  const NormValue rv{radius};
  for (int x = 0; x < engine.size(); ++x) {
    if (!(ch.level[x] >= 1 && ch.level[x] <= n)) continue;
    bool inside = false;
    for (int y = 0; y < engine.size() && !inside; ++y) {
      if (!(cg.level[y] >= 1 && cg.level[y] <= n)) continue;
      const NormValue d = engine.norm(engine.mul(engine.inv(y), x));
      if (d < rv || d.is_zero()) inside = true;
    }
    if (!inside) return {false, x};
  }
  return {true, std::nullopt};
}

TreeOutcome tree_rank(CoverageEngine& engine, const TreeFamily& family,
                      std::vector<Rational> grid, int depth_cap) {
  if (grid.empty()) throw DomainError("tree exploration needs a nonempty grid");
  std::sort(grid.begin(), grid.end(),
            [](const Rational& a, const Rational& b) { return b < a; });
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  for (const auto& e : grid)
    if (!(Rational(0) < e)) throw DomainError("grid radii must be positive");

  const int n = engine.size();

  // Memoized internal sets.
  std::vector<std::optional<std::vector<int>>> sets;
  auto set_at = [&](int m) -> const std::optional<std::vector<int>>& {
    while (static_cast<int>(sets.size()) <= m) {
      sets.push_back(family(static_cast<int>(sets.size())));
    }
    return sets[m];
  };

  // Is G = X_0 B(e_0) u ... u X_j B(e_j)?
  auto big = [&](const std::vector<Rational>& path) {
    std::vector<char> covered(n, 0);
    int remaining = n;
    for (size_t i = 0; i < path.size(); ++i) {
      const auto& xs = set_at(static_cast<int>(i));
      if (!xs) throw CapabilityError("internal family exhausted");
      const auto b = engine.ball(NormValue(path[i]), true);
      for (int y : *xs)
        for (int x : b) {
          const int z = engine.mul(y, x);
          if (!covered[z]) {
            covered[z] = 1;
            --remaining;
          }
        }
      if (remaining == 0) return true;
    }
    return remaining == 0;
  };

  TreeOutcome out;
  out.conclusive = true;
  int rank = 0;
  std::vector<Rational> path;

  // Depth-first over non-increasing sequences, larger radii first.
  std::function<bool(void)> dfs = [&]() -> bool {
    engine.check_deadline();
    if (static_cast<int>(path.size()) >= depth_cap ||
        !set_at(static_cast<int>(path.size()))) {
      // Cannot extend further; a small path this long is inconclusive.
      out.conclusive = false;
      out.cap_path = path;
      return false;
    }
    for (const auto& e : grid) {
      if (!path.empty() && path.back() < e) continue;  // non-increasing only
      path.push_back(e);
      if (!big(path)) {
        rank = std::max(rank, static_cast<int>(path.size()));
        if (!dfs()) return false;
      }
      path.pop_back();
    }
    return true;
  };
  dfs();
  out.rank = rank;
  return out;
}

DirlimOutcome direct_limit_check(const DirectSystem& system, const Rational& r,
                                 const Rational& t, int N, std::uint64_t samples,
                                 std::uint64_t seed, const Budget& budget) {
  if (system.stages.size() < 2 ||
      system.steps.size() + 1 != system.stages.size())
    throw DomainError("direct system needs stages and one step per gap");
  if (!(Rational(0) < r) || !(r < t)) throw DomainError("needs t > r > 0");

  std::mt19937_64 rng(seed);

  // Embeddings must be isometric homomorphisms; check each step on all pairs
  // of a small stage or on seeded samples of a large one.
  for (size_t i = 0; i + 1 < system.stages.size(); ++i) {
    const GroupAdapter& lo = *system.stages[i];
    const GroupAdapter& hi = *system.stages[i + 1];
    const auto& f = system.steps[i];
    auto check_pair = [&](const Element& a, const Element& b) {
      if (!element_equal(f(lo.multiply(a, b)), hi.multiply(f(a), f(b))))
        throw DomainError("direct system step " + std::to_string(i) +
                          " is not a homomorphism");
      if (hi.norm(f(a)) != lo.norm(a))
        throw DomainError("direct system step " + std::to_string(i) +
                          " is not isometric: |f(" + lo.key(a) + ")| = " +
                          hi.norm(f(a)).to_string() + " != " +
                          lo.norm(a).to_string());
    };
    auto order = lo.order();
    if (order && *order <= 200 && lo.enumerable()) {
      const auto all = lo.enumerate();
      for (const auto& a : all)
        for (const auto& b : all) check_pair(a, b);
    } else {
      const auto gens = lo.generators();
      for (int s = 0; s < 200; ++s) {
        Element a = lo.identity(), b = lo.identity();
        for (int w = 0; w < 8; ++w) {
          a = lo.multiply(a, gens[rand_below(rng, gens.size())]);
          b = lo.multiply(b, gens[rand_below(rng, gens.size())]);
        }
        check_pair(a, b);
      }
    }
  }

  // Push an element of stage i to the top stage.
  auto lift = [&](Element e, size_t from) {
    for (size_t i = from; i + 1 < system.stages.size(); ++i)
      e = system.steps[i](e);
    return e;
  };

  auto top_engine = std::make_shared<CoverageEngine>(system.stages.back(), budget);

  DirlimOutcome out;
  out.ok = true;
  const NormValue rv{r}, tv{t};

  for (std::uint64_t s = 0; s < samples; ++s) {
    // Draw g with |g| > r and h with |h| < t from random stages.
    const size_t si = rand_below(rng, system.stages.size());
    const size_t sj = rand_below(rng, system.stages.size());
    const GroupAdapter& gi = *system.stages[si];
    const GroupAdapter& gj = *system.stages[sj];
    auto draw = [&](const GroupAdapter& g, auto pred) -> std::optional<Element> {
      const auto gens = g.generators();
      for (int attempt = 0; attempt < 64; ++attempt) {
        Element e = g.identity();
        const int len = 1 + static_cast<int>(rand_below(rng, 12));
        for (int w = 0; w < len; ++w)
          e = g.multiply(e, gens[rand_below(rng, gens.size())]);
        if (pred(e)) return e;
      }
      return std::nullopt;
    };
    auto g = draw(gi, [&](const Element& e) { return gi.norm(e) > rv; });
    auto h = draw(gj, [&](const Element& e) { return gj.norm(e) < tv; });
    if (!g || !h) continue;  // could not hit the norm window; skip sample
    ++out.samples_checked;

    const int top_g = top_engine->index_of(lift(*g, si));
    const int top_h = top_engine->index_of(lift(*h, sj));
    const ConjChain& chain = top_engine->chain(top_g);
    if (!(chain.level[top_h] >= 1 && chain.level[top_h] <= N) &&
        top_h != top_engine->identity_index()) {
      out.ok = false;
      out.failure = "f(h) not in C_" + std::to_string(N) +
                    "(f(g)) in the top stage; g = " + gi.key(*g) +
                    ", h = " + gj.key(*h);
      return out;
    }
    out.max_level =
        std::max(out.max_level, top_h == top_engine->identity_index()
                                    ? 0
                                    : chain.level[top_h]);
    if (out.certificates.size() < 3)
      out.certificates.push_back(
          top_engine->membership_certificate(top_g, top_h));
  }
  return out;
}

LsProbeOutcome ls_constant_probe(CoverageEngine& engine) {
  LsProbeOutcome out;
  out.all_finite = true;
  out.c_emp = Rational(0);

  for (int g = 0; g < engine.size(); ++g) {
    engine.check_deadline();
    if (engine.class_of(g).size() == 1) continue;  // central
    LsProbeRow row;
    row.element = g;
    row.norm_value = engine.norm(g).as_rational();
    row.n = engine.normal_gen_number(g);
    if (row.n)
      out.c_emp = Rational::max(out.c_emp, row.norm_value * Rational(*row.n));
    else
      out.all_finite = false;
    out.rows.push_back(std::move(row));
  }

  out.consistent = true;
  for (const auto& row : out.rows) {
    if (!row.n) continue;
    // N = ceil(c_emp / norm) conjugate factors must reach the whole group.
    const Rational q = out.c_emp / row.norm_value;
    const long long needed = q.num() / q.den() + (q.num() % q.den() ? 1 : 0);
    const ConjChain& chain = engine.chain(row.element);
    const bool ok = chain.full &&
                    *engine.normal_gen_number(row.element) <= needed;
    if (!ok) {
      out.consistent = false;
      out.inconsistent_witness = row.element;
      break;
    }
  }
  return out;
}

}  // namespace ngv
