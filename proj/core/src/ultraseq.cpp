#include "ngv/ultraseq.hpp"

#include <algorithm>

#include "ngv/adapters.hpp"
#include "ngv/errors.hpp"

namespace ngv {

namespace {

class LeeThirdRule : public SeqRule {
 public:
  std::string name() const override { return "lee_third"; }
  nlohmann::json descriptor() const override { return {{"rule", "lee_third"}}; }
  long long min_stage() const override { return 2; }
  long long max_stage() const override { return 62; }

  Rational power_norm(long long n, long long m) const override {
    const long long mod = 1LL << n;
    const long long g = mod / 3;
    const long long r =
        static_cast<long long>((static_cast<__int128>(m) * g) % mod);
    return Rational(2 * std::min(r, mod - r), mod);
  }
};

class ConstantRule : public SeqRule {
 public:
  ConstantRule(GroupPtr group, Element element, nlohmann::json descriptor)
      : group_(std::move(group)),
        element_(std::move(element)),
        descriptor_(std::move(descriptor)) {}

  std::string name() const override { return "constant"; }
  nlohmann::json descriptor() const override { return descriptor_; }
  long long min_stage() const override { return 0; }
  long long max_stage() const override { return 1000000; }

  Rational power_norm(long long, long long m) const override {
    return group_->norm(group_->power(element_, m)).as_rational();
  }

 private:
  GroupPtr group_;
  Element element_;
  nlohmann::json descriptor_;
};

class HammingBlockRule : public SeqRule {
 public:
  explicit HammingBlockRule(long long block) : k_(block) {
    if (block < 2) throw DomainError("hamming_block needs block >= 2");
  }

  std::string name() const override { return "hamming_block"; }
  nlohmann::json descriptor() const override {
    return {{"rule", "hamming_block"}, {"block", k_}};
  }
  long long min_stage() const override { return k_; }
  long long max_stage() const override { return 1000000; }

  // The k-cycle to the m-th power either dies (k | m) or still moves all k
  // points; the stage-n norm is Hamming normalized by n.
  Rational power_norm(long long n, long long m) const override {
    return Rational(m % k_ == 0 ? 0 : k_, n);
  }

 private:
  long long k_;
};

}  // namespace

SeqRulePtr make_rule(const nlohmann::json& d) {
  if (!d.is_object() || !d.contains("rule") || !d["rule"].is_string())
    throw DomainError("sequence rule descriptor needs a string field 'rule'");
  const std::string rule = d["rule"].get<std::string>();
  if (rule == "lee_third") return std::make_shared<LeeThirdRule>();
  if (rule == "hamming_block") {
    if (!d.contains("block"))
      throw DomainError("hamming_block rule needs 'block'");
    return std::make_shared<HammingBlockRule>(d["block"].get<long long>());
  }
  if (rule == "constant") {
    if (!d.contains("group") || !d.contains("element"))
      throw DomainError("constant rule needs 'group' and 'element'");
    GroupPtr g = make_group(d["group"]);
    Element e = g->element_from_json(d["element"]);
    nlohmann::json desc = {
        {"rule", "constant"}, {"group", d["group"]}, {"element", d["element"]}};
    return std::make_shared<ConstantRule>(std::move(g), std::move(e),
                                          std::move(desc));
  }
  throw DomainError("unknown sequence rule '" + rule + "'");
}

nlohmann::json rule_catalog() {
  return nlohmann::json{
      {{"rule", "lee_third"}, {"stages", {2, 62}}},
      {{"rule", "constant"}, {"fields", {"group", "element"}}},
      {{"rule", "hamming_block"}, {"fields", {"block"}}}};
}

std::vector<StagePoint> tail_norm_profile(const SeqRule& rule, long long power,
                                          long long lo, long long hi) {
  if (power < 1) throw DomainError("profile power must be >= 1");
  if (lo > hi) throw DomainError("empty stage range");
  if (lo < rule.min_stage() || hi > rule.max_stage())
    throw DomainError("stage range exceeds the validity of rule '" +
                      rule.name() + "' [" + std::to_string(rule.min_stage()) +
                      ", " + std::to_string(rule.max_stage()) + "]");
  std::vector<StagePoint> out;
  out.reserve(hi - lo + 1);
  for (long long n = lo; n <= hi; ++n)
    out.push_back({n, rule.power_norm(n, power)});
  return out;
}

InfinitesimalOutcome infinitesimal_check(const SeqRule& rule, long long power,
                                         long long lo, long long hi,
                                         const Rational& tol) {
  InfinitesimalOutcome out;
  out.profile = tail_norm_profile(rule, power, lo, hi);

  // Least n0 with every later stage at or below tol.
  long long n0 = hi + 1;
  for (auto it = out.profile.rbegin(); it != out.profile.rend(); ++it) {
    if (it->value <= tol)
      n0 = it->stage;
    else
      break;
  }
  out.verdict = n0 <= hi;
  out.n0 = out.verdict ? n0 : lo;
  out.max_tail = Rational(0);
  for (const auto& p : out.profile)
    if (p.stage >= out.n0) out.max_tail = Rational::max(out.max_tail, p.value);

  out.monotone = true;
  for (size_t i = 1; i < out.profile.size(); ++i)
    if (out.profile[i - 1].value < out.profile[i].value) {
      out.monotone = false;
      break;
    }

  if (rule.name() == "lee_third" && power == 3) {
    out.analytic_bound_applicable = true;
    out.analytic_bound_ok = true;
    for (const auto& p : out.profile) {
      // 2^{2-n} at stage n.
      const Rational bound = p.stage >= 2 ? Rational(1, 1LL << (p.stage - 2))
                                          : Rational(1LL << (2 - p.stage));
      if (!(p.value <= bound)) {
        out.analytic_bound_ok = false;
        break;
      }
    }
  }
  return out;
}

}  // namespace ngv
