#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "ngv/rational.hpp"

namespace ngv {

struct StagePoint {
  long long stage;
  Rational value;  // exact norm of g_n^m at stage n
};

/// A builtin rule n -> (G_n, g_n) from the catalog. Only rules, never user
/// closures, so every profile is reproducible from the config alone.
class SeqRule {
 public:
  virtual ~SeqRule() = default;
  virtual std::string name() const = 0;
  virtual nlohmann::json descriptor() const = 0;
  virtual long long min_stage() const = 0;
  virtual long long max_stage() const = 0;
  /// Exact norm of g_n^m at stage n.
  virtual Rational power_norm(long long n, long long m) const = 0;
};

using SeqRulePtr = std::shared_ptr<const SeqRule>;

/// {"rule":"lee_third"} — g_n = floor(2^n/3) in (Z_{2^n}, Lee norm).
/// {"rule":"constant","group":...,"element":...} — one element at all stages.
/// {"rule":"hamming_block","block":k} — the k-cycle in (S_n, Hamming/n).
SeqRulePtr make_rule(const nlohmann::json& descriptor);

nlohmann::json rule_catalog();

std::vector<StagePoint> tail_norm_profile(const SeqRule& rule, long long power,
                                          long long lo, long long hi);

struct InfinitesimalOutcome {
  bool verdict = false;     // norms <= tol from n0 to the end of the range
  long long n0 = 0;
  Rational max_tail;        // max norm over [n0, hi]
  bool monotone = false;    // non-increasing across the whole range
  bool analytic_bound_applicable = false;
  bool analytic_bound_ok = false;  // lee_third cubes: |g_n^3| <= 2^{2-n}
  std::vector<StagePoint> profile;
};

/// Finite-stage infinitesimality heuristic; says nothing about any limit.
InfinitesimalOutcome infinitesimal_check(const SeqRule& rule, long long power,
                                         long long lo, long long hi,
                                         const Rational& tol);

}  // namespace ngv
