#include "ngv/brenner.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "ngv/errors.hpp"

namespace ngv {

namespace {

Perm padded(const Perm& p, int degree) {
  if (p.degree() == degree) return p;
  if (p.degree() > degree)
    throw DomainError("permutation degree exceeds ambient degree");
  std::vector<int> img(degree);
  std::iota(img.begin(), img.end(), 0);
  for (int x = 0; x < p.degree(); ++x) img[x] = p.image(x);
  return Perm::from_images(std::move(img));
}

// Deterministic in-place Fisher-Yates; std::shuffle is implementation-defined.
template <class T>
void shuffle_det(std::vector<T>& v, std::mt19937_64& rng) {
  for (size_t i = v.size(); i > 1; --i) {
    size_t j = static_cast<size_t>(rng() % i);
    std::swap(v[i - 1], v[j]);
  }
}

Perm transposition(int degree, int a, int b) {
  std::vector<int> img(degree);
  std::iota(img.begin(), img.end(), 0);
  std::swap(img[a], img[b]);
  return Perm::from_images(std::move(img));
}

// Rewrites the cycle structure of p: each entry of `new_cycles` becomes a
// cycle (in the given point order); all listed points must currently be the
// union of the cycles being replaced.
Perm with_cycles_replaced(const Perm& p, const std::vector<std::vector<int>>& old_cycles,
                          const std::vector<std::vector<int>>& new_cycles) {
  std::vector<int> img(p.degree());
  for (int x = 0; x < p.degree(); ++x) img[x] = p.image(x);
  for (const auto& c : old_cycles)
    for (int x : c) img[x] = x;
  for (const auto& c : new_cycles)
    for (size_t i = 0; i < c.size(); ++i) img[c[i]] = c[(i + 1) % c.size()];
  return Perm::from_images(std::move(img));
}

}  // namespace

Perm replay(const PermConjProduct& cert) {
  return replay_conj_product(
      cert, [](const Perm& a, const Perm& b) { return a * b; },
      [](const Perm& a) { return a.inverse(); });
}

bool is_exceptional(const Perm& p) {
  auto type = p.cycle_type(/*include_fixed=*/true);
  std::set<int> seen;
  for (int len : type) {
    if (len % 2 == 0) return false;
    if (!seen.insert(len).second) return false;
  }
  return true;
}

std::optional<Perm> find_conjugator_min_support(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree())
    throw DomainError("conjugator search requires equal degrees");
  const int n = a.degree();
  auto ca = a.cycles(), cb = b.cycles();

  std::map<int, std::vector<const std::vector<int>*>> by_len_a, by_len_b;
  for (const auto& c : ca) by_len_a[static_cast<int>(c.size())].push_back(&c);
  for (const auto& c : cb) by_len_b[static_cast<int>(c.size())].push_back(&c);
  if (by_len_a.size() != by_len_b.size()) return std::nullopt;
  for (const auto& [len, list] : by_len_a) {
    auto it = by_len_b.find(len);
    if (it == by_len_b.end() || it->second.size() != list.size())
      return std::nullopt;
  }

  std::vector<int> img(n, -1);
  for (const auto& [len, list_a] : by_len_a) {
    const auto& list_b = by_len_b[len];
    for (size_t i = 0; i < list_a.size(); ++i)
      for (size_t j = 0; j < list_a[i]->size(); ++j)
        img[(*list_a[i])[j]] = (*list_b[i])[j];
  }
  // Leftovers: supp(b)\supp(a) maps onto supp(a)\supp(b) in ascending order;
  // everything outside both supports stays fixed.
  std::vector<char> in_supp_a(n, 0), is_image(n, 0);
  for (int x : a.support()) in_supp_a[x] = 1;
  for (int v : img)
    if (v >= 0) is_image[v] = 1;
  std::vector<int> spare_dom, spare_cod;
  for (int x = 0; x < n; ++x) {
    bool in_b = b.image(x) != x;
    if (!in_supp_a[x] && in_b) spare_dom.push_back(x);
    if (!is_image[x] && in_supp_a[x] && b.image(x) == x) spare_cod.push_back(x);
  }
  for (size_t i = 0; i < spare_dom.size(); ++i) img[spare_dom[i]] = spare_cod[i];
  for (int x = 0; x < n; ++x)
    if (img[x] < 0) img[x] = x;

  Perm h = Perm::from_images(std::move(img));
  if (a.conjugate_by(h) != b) return std::nullopt;  // unreachable for same type
  return h;
}

std::pair<Perm, Perm> brenner_cycles(int m) {
  if (m < 5) throw DomainError("brenner_cycles requires m >= 5");
  std::vector<int> rho_img(m), pi_img(m);
  for (int x = 0; x < m; ++x) rho_img[x] = (x + 1) % m;
  std::iota(pi_img.begin(), pi_img.end(), 0);
  for (int x = 0; x < m - 4; ++x) pi_img[x] = (x + 1) % (m - 4);
  std::swap(pi_img[m - 4], pi_img[m - 3]);
  std::swap(pi_img[m - 2], pi_img[m - 1]);
  return {Perm::from_images(std::move(rho_img)),
          Perm::from_images(std::move(pi_img))};
}

RepairResult nearby_nonexceptional(const Perm& tau) {
  if (tau.hamming_norm() < 5)
    throw DomainError("nearby_nonexceptional requires |supp(tau)| >= 5");

  auto finish = [&](const Perm& sigma) {
    return RepairResult{sigma, sigma.is_even(),
                        (tau * sigma.inverse()).hamming_norm()};
  };
  auto supp_equal = [&](const Perm& sigma) {
    return sigma.support() == tau.support();
  };

  if (tau.is_even() && !is_exceptional(tau)) return finish(tau);

  if (!tau.is_even()) {
    // One transposition inside the support flips parity; take the first that
    // keeps the support and lands nonexceptional.
    auto supp = tau.support();
    for (size_t i = 0; i < supp.size(); ++i)
      for (size_t j = i + 1; j < supp.size(); ++j) {
        Perm sigma = tau * transposition(tau.degree(), supp[i], supp[j]);
        if (supp_equal(sigma) && !is_exceptional(sigma)) return finish(sigma);
      }
    // No even repair exists (support of size 5 in degree <= 6). An odd
    // permutation always has an even-length cycle, so tau itself is
    // nonexceptional.
    return finish(tau);
  }

  // tau is even and exceptional: all cycle lengths distinct and odd, at most
  // one fixed point, longest cycle of length >= 5.
  auto cyc = tau.cycles();
  std::sort(cyc.begin(), cyc.end(), [](const auto& x, const auto& y) {
    return x.size() != y.size() ? x.size() > y.size() : x[0] < y[0];
  });
  const auto& longest = cyc[0];
  const int L = static_cast<int>(longest.size());

  if (L >= 7) {
    // Replace (c0..c_{L-1}) by (c0..c_{L-5})(c_{L-4} c_{L-3})(c_{L-2} c_{L-1});
    // differs from tau by a 3-cycle.
    std::vector<int> head(longest.begin(), longest.end() - 4);
    std::vector<int> mid{longest[L - 4], longest[L - 3]};
    std::vector<int> tail{longest[L - 2], longest[L - 1]};
    return finish(with_cycles_replaced(tau, {longest}, {head, mid, tail}));
  }

  if (cyc.size() >= 2) {
    // Longest cycle has length 5 and a second cycle D exists: merge the two
    // and split off a 2-cycle. Two transpositions, distance 3.
    const auto& second = cyc[1];
    std::vector<int> merged = longest;
    merged.insert(merged.end(), second.begin(), second.end());
    std::vector<int> head{merged[0], merged[1]};
    std::vector<int> rest(merged.begin() + 2, merged.end());
    return finish(with_cycles_replaced(tau, {longest, second}, {head, rest}));
  }

  // Single 5-cycle with at most one fixed point: no even nonexceptional
  // permutation has exactly this support, so return the odd repair
  // (c0 c1)(c2 c3 c4) at distance 2.
  std::vector<int> head{longest[0], longest[1]};
  std::vector<int> rest{longest[2], longest[3], longest[4]};
  return finish(with_cycles_replaced(tau, {longest}, {head, rest}));
}

SigmaInfinityResult sigma_infinity(const Perm& sigma_in, int degree,
                                   std::uint64_t seed) {
  Perm sigma = padded(sigma_in, degree);
  const int k = sigma.hamming_norm();
  if (k < 5) throw DomainError("sigma_infinity requires |supp(sigma)| >= 5");
  if (is_exceptional(sigma))
    throw DomainError("sigma_infinity requires a nonexceptional permutation");

  const int n = degree;
  const Perm id(n);
  auto supp = sigma.support();

  PermConjProduct cert;
  cert.base = sigma;

  if (k == n) {
    cert.factors.push_back({+1, id});
    cert.claimed = sigma;
    return {sigma, cert};
  }

  // Blocks X_2..X_m of size k from the complement of the support, leftover Y.
  std::vector<int> rest;
  {
    std::vector<char> in_supp(n, 0);
    for (int x : supp) in_supp[x] = 1;
    for (int x = 0; x < n; ++x)
      if (!in_supp[x]) rest.push_back(x);
  }
  const int m = n / k;
  std::vector<std::vector<int>> blocks;
  size_t pos = 0;
  for (int i = 1; i < m; ++i) {
    blocks.emplace_back(rest.begin() + pos, rest.begin() + pos + k);
    pos += k;
  }
  std::vector<int> leftover(rest.begin() + pos, rest.end());

  auto swap_conjugator = [&](const std::vector<int>& target) {
    // supp <-> target pointwise (disjoint sets), rest fixed.
    std::vector<int> img(n);
    std::iota(img.begin(), img.end(), 0);
    for (int j = 0; j < k; ++j) {
      img[supp[j]] = target[j];
      img[target[j]] = supp[j];
    }
    return Perm::from_images(std::move(img));
  };

  Perm product = sigma;
  cert.factors.push_back({+1, id});
  for (const auto& block : blocks) {
    Perm rho = swap_conjugator(block);
    product = product * sigma.conjugate_by(rho);
    cert.factors.push_back({+1, rho});
  }

  if (leftover.empty()) {
    cert.claimed = product;
    return {product, cert};
  }

  // Seeded search for at most 4 extra conjugates, each supported inside
  // Y u supp(sigma), whose tail product removes every fixed point in Y.
  std::mt19937_64 rng(seed);
  const int extra = k - static_cast<int>(leftover.size());
  std::vector<int> zone = supp;  // candidates to pad the target up to size k

  for (int factors = 1; factors <= 4; ++factors) {
    for (int attempt = 0; attempt < 400; ++attempt) {
      Perm candidate = product;
      std::vector<PermConjProduct::Factor> tail;
      for (int f = 0; f < factors; ++f) {
        std::vector<int> pad = zone;
        shuffle_det(pad, rng);
        std::vector<int> target = leftover;
        target.insert(target.end(), pad.begin(), pad.begin() + extra);
        std::sort(target.begin(), target.end());
        shuffle_det(target, rng);
        // Conjugator maps supp(sigma) onto target; complete the bijection by
        // matching the two leftovers ascending; everything else is fixed.
        std::vector<int> img(n, -1);
        for (int j = 0; j < k; ++j) img[supp[j]] = target[j];
        std::vector<char> is_target(n, 0), in_supp(n, 0);
        for (int t : target) is_target[t] = 1;
        for (int s : supp) in_supp[s] = 1;
        std::vector<int> dom, cod;
        for (int x = 0; x < n; ++x) {
          if (is_target[x] && !in_supp[x]) dom.push_back(x);
          if (in_supp[x] && !is_target[x]) cod.push_back(x);
        }
        for (size_t j = 0; j < dom.size(); ++j) img[dom[j]] = cod[j];
        for (int x = 0; x < n; ++x)
          if (img[x] < 0) img[x] = x;
        Perm h = Perm::from_images(std::move(img));
        candidate = candidate * sigma.conjugate_by(h);
        tail.push_back({+1, h});
      }
      if (candidate.hamming_norm() == n) {
        for (auto& f : tail) cert.factors.push_back(std::move(f));
        cert.claimed = candidate;
        return {candidate, cert};
      }
    }
  }

  cert.claimed = product;
  throw ConstructionIncomplete(
      "sigma_infinity: no product of <= 4 conjugates covering the leftover "
      "block was found",
      cert);
}

}  // namespace ngv
