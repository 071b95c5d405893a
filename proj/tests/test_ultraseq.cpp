#include "ngv/ultraseq.hpp"

#include "doctest.h"
#include "ngv/errors.hpp"

using namespace ngv;
using nlohmann::json;

TEST_CASE("lee_third profile: reference values at stage 4") {
  auto rule = make_rule(json{{"rule", "lee_third"}});
  // g_4 = floor(16/3) = 5; |5|_16 = 5/8, |3*5|_16 = |15|_16 = 1/8.
  CHECK(rule->power_norm(4, 1) == Rational(5, 8));
  CHECK(rule->power_norm(4, 3) == Rational(1, 8));
}

TEST_CASE("lee_third cubes collapse stagewise") {
  auto rule = make_rule(json{{"rule", "lee_third"}});
  auto out = infinitesimal_check(*rule, 3, 3, 30, Rational(1, 2));
  CHECK(out.verdict);
  CHECK(out.n0 == 3);
  CHECK(out.max_tail == Rational(1, 2));
  CHECK(out.analytic_bound_applicable);
  CHECK(out.analytic_bound_ok);
  // The exact bound 2^{2-n} holds stage by stage.
  for (const auto& p : out.profile)
    CHECK(p.value <= Rational(4, 1LL << p.stage));
}

TEST_CASE("lee_third first powers do not collapse") {
  auto rule = make_rule(json{{"rule", "lee_third"}});
  auto out = infinitesimal_check(*rule, 1, 3, 30, Rational(1, 2));
  CHECK(!out.verdict);  // norms hover near 2/3
  for (const auto& p : out.profile) CHECK(p.value >= Rational(1, 2));
  CHECK(out.profile.back().value > Rational(3, 5));
}

TEST_CASE("constant identity sequence is zero at every power") {
  auto rule = make_rule(json{
      {"rule", "constant"},
      {"group", {{"type", "cyclic_lee"}, {"m", 8}}},
      {"element", 0}});
  auto profile = tail_norm_profile(*rule, 5, 0, 10);
  for (const auto& p : profile) CHECK(p.value == Rational(0));
  CHECK(infinitesimal_check(*rule, 3, 0, 10, Rational(0)).verdict);
}

TEST_CASE("constant nontrivial sequence keeps its norm") {
  auto rule = make_rule(json{
      {"rule", "constant"},
      {"group", {{"type", "cyclic_lee"}, {"m", 8}}},
      {"element", 2}});
  CHECK(rule->power_norm(0, 1) == Rational(1, 2));
  CHECK(rule->power_norm(5, 2) == Rational(1));  // |4|_8
  CHECK(rule->power_norm(9, 4) == Rational(0));  // |0|_8
}

TEST_CASE("hamming_block vanishes in the limit direction") {
  auto rule = make_rule(json{{"rule", "hamming_block"}, {"block", 3}});
  CHECK(rule->power_norm(6, 1) == Rational(1, 2));   // 3 of 6 points move
  CHECK(rule->power_norm(12, 1) == Rational(1, 4));
  CHECK(rule->power_norm(12, 3) == Rational(0));     // cube of a 3-cycle
  auto out = infinitesimal_check(*rule, 1, 3, 1000, Rational(1, 100));
  CHECK(out.verdict);
  CHECK(out.n0 == 300);
  CHECK(out.monotone);
}

TEST_CASE("profile ranges are validated") {
  auto rule = make_rule(json{{"rule", "lee_third"}});
  CHECK_THROWS_AS(tail_norm_profile(*rule, 3, 1, 10), DomainError);
  CHECK_THROWS_AS(tail_norm_profile(*rule, 3, 3, 63), DomainError);
  CHECK_THROWS_AS(tail_norm_profile(*rule, 0, 3, 10), DomainError);
  CHECK_THROWS_AS(make_rule(json{{"rule", "unknown"}}), DomainError);
}
