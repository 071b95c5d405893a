#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "ngv/group.hpp"
#include "ngv/rational.hpp"

namespace ngv {

/// Outcome of checking the bi-invariant norm axioms on one group:
///   (0) |e| = 0
///   (1) |gh| <= |g| + |h|
///   (2) |g^{-1}| = |g| = |hgh^{-1}|
///   (3) |g| = 0 only for g = e
/// A pseudo-norm passes (0)-(2) and fails (3). Failures carry a
/// counterexample whose re-evaluation reproduces the violation.
struct NormReport {
  enum class Mode { Exhaustive, Sampled };

  struct AxiomResult {
    bool pass = true;
    // Element encodings; one entry for unary axioms, two for binary ones.
    std::vector<nlohmann::json> counterexample;
  };

  Mode mode = Mode::Exhaustive;
  std::map<int, AxiomResult> axioms;
  std::uint64_t pairs_checked = 0;
  std::uint64_t seed = 0;
  int word_length_bound = 0;
  std::uint64_t samples = 0;

  bool pass(int axiom) const { return axioms.at(axiom).pass; }
  bool all_pass() const;
  bool pseudo_norm() const;  // (0)-(2) pass, (3) fails
};

struct ScanOptions {
  std::uint64_t samples = 2000;
  int word_length_bound = 16;
  int jobs = 1;
};

/// Exhaustive mode loops over all |G|^2 pairs (lexicographically least
/// violation wins, independent of the job count). Sampled mode draws words of
/// bounded length over the generators and requires a seed.
NormReport verify_norm_axioms(const GroupAdapter& group, NormReport::Mode mode,
                              std::uint64_t seed = 0, ScanOptions opts = {});

/// Circular distance norm on Z_m normalized to maximum 1:
/// 2*min(g, m-g)/m. For m = 2^k this is min(g, m-g)/2^{k-1} exactly.
Rational lee_norm(long long g, long long m);

/// log(|g^G|)/log(|G|) as an exact log-ratio value. Requires |G| >= 2.
NormValue conjugacy_length_norm(const GroupAdapter& group, const Element& g);

struct PowerMonotoneResult {
  bool pass = true;
  std::optional<std::pair<nlohmann::json, long long>> counterexample;
  std::uint64_t checked = 0;
};

/// Checks |g^n| <= |g| for 1 <= n <= max_power.
PowerMonotoneResult check_power_monotone(const GroupAdapter& group,
                                         long long max_power,
                                         NormReport::Mode mode,
                                         std::uint64_t seed = 0,
                                         ScanOptions opts = {});

/// lcm of the element orders of an enumerable group.
long long group_exponent(const GroupAdapter& group);

}  // namespace ngv
