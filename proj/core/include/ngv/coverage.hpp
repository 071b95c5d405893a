#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ngv/adapters.hpp"
#include "ngv/cert.hpp"
#include "ngv/group.hpp"

namespace ngv {

struct Budget {
  std::uint64_t element_cap = kDefaultElementBudget;
  int level_cap = 64;        // conjugate-ball levels explored per scan
  int depth_cap = 16;        // sequence-tree depth
  long long time_cap_ms = 0; // 0 = unlimited
};

/// Conjugate-ball chain C_1 <= C_2 <= ... of one conjugacy class,
/// C_1 = g^G u (g^{-1})^G and C_{k+1} = C_k u C_k*C_1, computed to
/// stabilization, with backtracking data for membership certificates.
struct ConjChain {
  int base = -1;                   // class representative (least index)
  std::vector<int> level;          // least k >= 1 with x in C_k; -1 never
  std::vector<int> pred, via;      // x = pred * via for level >= 2
  std::vector<int8_t> sign1;       // +-1 for level-1 members
  std::vector<int> conj1;          // conjugator index for level-1 members
  std::vector<std::size_t> sizes;  // sizes[k-1] = |C_k|
  int stable_level = 0;            // least k with C_k = C_{k+1}
  bool full = false;               // C_stable is the whole group

  /// x in C_k, with C_0 = {e}.
  bool contains(int x, int k, int identity_index) const {
    if (k <= 0) return x == identity_index;
    return level[x] >= 1 && level[x] <= k;
  }
};

/// Indexed view of one enumerable group: elements in canonical order, cached
/// norms and inverses, a multiplication table for small groups, and lazily
/// computed conjugacy classes and conjugate-ball chains (one per class; the
/// chain sets are conjugation invariants).
class CoverageEngine {
 public:
  explicit CoverageEngine(GroupPtr group, Budget budget = {});

  const GroupAdapter& group() const { return *group_; }
  GroupPtr group_ptr() const { return group_; }
  const Budget& budget() const { return budget_; }

  int size() const { return static_cast<int>(elems_.size()); }
  int identity_index() const { return id_; }
  const Element& element(int i) const { return elems_[i]; }
  int index_of(const Element& e) const;

  int mul(int a, int b) const;
  int inv(int a) const { return inv_[a]; }
  const NormValue& norm(int i) const { return norms_[i]; }
  long long order_of(int i) const;

  int class_rep(int g);
  const std::vector<int>& class_of(int g);  // ascending member indices
  const ConjChain& chain(int g);

  /// min{n : C_n(g) = G}; nullopt when the chain stabilizes below G.
  std::optional<int> normal_gen_number(int g);

  /// Certificate that element(x) is a product of at most level(x) conjugates
  /// of element(g)^{+-1}; replays exactly.
  ConjProduct<Element> membership_certificate(int g, int x);

  /// Indices with norm < t (strict) or <= t, ascending.
  std::vector<int> ball(const NormValue& t, bool strict = true) const;

  void check_deadline() const;

 private:
  void discover_class(int g);

  GroupPtr group_;
  Budget budget_;
  std::chrono::steady_clock::time_point deadline_{};
  bool has_deadline_ = false;

  std::vector<Element> elems_;
  // Lookup by packed 64-bit key when every element fits (permutations of
  // degree <= 16, matrices with <= 16 entries below 16, residues); otherwise
  // by ordered Element comparison.
  std::unordered_map<std::uint64_t, int> by_packed_;
  std::map<Element, int> by_elem_;
  bool packed_ = false;
  std::vector<NormValue> norms_;
  std::vector<int> inv_;
  int id_ = -1;
  std::vector<int> gens_;
  std::vector<int> mult_table_;  // empty when the group is too large

  std::vector<int> class_rep_;     // -1 until discovered
  std::vector<int> conj_to_rep_;   // h with rep^h = x
  std::map<int, std::vector<int>> class_members_;
  std::map<int, ConjChain> chains_;
};

// ---- scans ----------------------------------------------------------------

struct CoverOutcome {
  bool covered = false;
  std::optional<int> witness;  // least uncovered element
};

/// G = X_0*B(eps_0) u ... u X_N*B(eps_N), strict balls.
CoverOutcome check_thickened_cover(CoverageEngine& engine,
                                   const std::vector<std::vector<int>>& sets,
                                   const std::vector<Rational>& eps);

struct RtBigOutcome {
  bool big = false;
  std::optional<std::pair<int, int>> witness;  // (g, uncovered h)
};

/// (eps_start,...,eps_N) is (r,t)-big: for every g with |g| > r,
/// B_t(e) is inside the union over n of C_n(g)*B(eps_n), with C_0 = {e}.
RtBigOutcome is_rt_big(CoverageEngine& engine, const std::vector<Rational>& eps,
                       const Rational& r, const Rational& t, int start_index = 0);

struct UniformityOutcome {
  enum class Status { Bound, Counterexample, Inconclusive };
  Status status = Status::Bound;
  int bound = 0;
  int group_index = -1;                        // for witnesses
  std::optional<std::pair<int, int>> witness;  // (g, uncovered h)
};

/// Least common N with B_t(e) inside C_N(g)*B(eps) for every group in the
/// family and every g with |g| in (r, t]. eps = 0 means exact membership.
/// Counterexample: some chain stabilizes without covering. Inconclusive:
/// the true bound exceeds the engine level cap.
UniformityOutcome uniformity_scan(
    const std::vector<std::shared_ptr<CoverageEngine>>& family,
    const Rational& r, const Rational& t, const Rational& eps);

struct StarOutcome {
  bool clause1_ok = false;
  int clause1_n = 0;                  // max over groups of min_g N(g)
  std::vector<int> clause1_witness;   // element index per group
  struct Clause2Row {
    long long k = 0;
    int l = 0;
    bool found = false;
    bool vacuous = false;  // l exceeds every finite N(g) in the family
  };
  std::vector<Clause2Row> clause2;
};

/// Family-level bounded-generation profile: (1) a common N such that each
/// group has an element with C_N(g) = G; (2) for each k, the least l such
/// that N(g), N(h) >= l forces N(gh) >= k across the family.
StarOutcome star_scan(const std::vector<std::shared_ptr<CoverageEngine>>& family,
                      const std::vector<long long>& k_list);

struct CommutatorOutcome {
  bool perfect = false;
  int width = 0;                   // meaningful when perfect
  std::vector<int> derived;        // ascending indices of [G,G]
  std::optional<int> width_witness;  // element needing `width` commutators
};

CommutatorOutcome commutator_width(CoverageEngine& engine);

/// [G, G] as ascending element indices.
std::vector<int> derived_subgroup(CoverageEngine& engine);

/// T_{m,<=eps} = {g : |g^m| <= eps} (or strict).
std::vector<int> eps_torsion_set(CoverageEngine& engine, long long m,
                                 const Rational& eps, bool closed = true);

struct TorsionOutcome {
  bool ok = false;
  std::optional<int> witness;                    // g with no m <= N working
  std::vector<long long> least_m;                // per element, 0 when none
};

/// For every g there is m <= N with |g^m| < eps.
TorsionOutcome almost_uniform_torsion(CoverageEngine& engine, const Rational& eps,
                                      long long N);

struct PerturbationOutcome {
  bool holds = false;
  std::optional<int> witness;  // x in C_n(h) outside C_n(g)*B(n*eps)
};

/// C_n(h) inside C_n(g)*B(n*eps), for eps > |g^{-1}h|.
PerturbationOutcome perturbation_check(CoverageEngine& engine, int g, int h,
                                       int n, const Rational& eps);

/// Provider of the internal family X_0, X_1, ...; nullopt once exhausted.
using TreeFamily = std::function<std::optional<std::vector<int>>(int)>;

struct TreeOutcome {
  bool conclusive = false;
  int rank = 0;                       // max length of a small sequence
  std::vector<Rational> cap_path;     // small path at the cap when inconclusive
};

/// Explores non-increasing sequences over the grid; a sequence is small when
/// G != X_0*B(eps_0) u ... u X_j*B(eps_j). Rank = maximal small length.
TreeOutcome tree_rank(CoverageEngine& engine, const TreeFamily& family,
                      std::vector<Rational> grid, int depth_cap);

struct DirectSystem {
  std::vector<GroupPtr> stages;
  // steps[i] embeds stage i into stage i+1.
  std::vector<std::function<Element(const Element&)>> steps;
  std::string label;
};

struct DirlimOutcome {
  bool ok = false;
  std::uint64_t samples_checked = 0;
  int max_level = 0;                     // deepest conjugate ball used
  std::optional<std::string> failure;    // witness description
  std::vector<ConjProduct<Element>> certificates;  // spot certificates
};

/// Verifies the direct-system membership condition on seeded samples: for
/// (g, h) with |g| > r, |h| < t, the images in the top stage satisfy
/// f(h) in C_N(f(g)). The embeddings are first checked to be isometric
/// homomorphisms (exhaustive for small stages, sampled otherwise); a failure
/// there raises DomainError.
DirlimOutcome direct_limit_check(const DirectSystem& system, const Rational& r,
                                 const Rational& t, int N, std::uint64_t samples,
                                 std::uint64_t seed, const Budget& budget = {});

struct LsProbeRow {
  int element = -1;
  Rational norm_value;
  std::optional<int> n;  // normal generation number; nullopt = infinite
};

struct LsProbeOutcome {
  std::vector<LsProbeRow> rows;  // noncentral elements, ascending
  bool all_finite = false;
  Rational c_emp;                // max norm*N over finite rows
  bool consistent = false;       // C_ceil(c_emp/|A|)(A) = G for finite rows
  std::optional<int> inconsistent_witness;
};

/// Per-element profile of norm * normal-generation-number, the empirical
/// constant of the Liebeck-Shalev bound at this group's scale. Central
/// elements (singleton classes) are excluded from the table.
LsProbeOutcome ls_constant_probe(CoverageEngine& engine);

}  // namespace ngv
