#include "ngv/brenner.hpp"

#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "ngv/errors.hpp"

using ngv::Perm;

namespace {

std::vector<Perm> symmetric_group(int n) {
  std::vector<Perm> all;
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = i;
  do {
    all.push_back(Perm::from_images(img));
  } while (std::next_permutation(img.begin(), img.end()));
  return all;
}

// Independent class-splitting oracle: sigma in A_n is exceptional iff its
// A_n-class is strictly smaller than its S_n-class.
bool splits_oracle(const Perm& sigma, const std::vector<Perm>& sn) {
  std::set<std::vector<int>> s_class, a_class;
  for (const auto& h : sn) {
    auto c = sigma.conjugate_by(h).one_line();
    s_class.insert(c);
    if (h.is_even()) a_class.insert(std::move(c));
  }
  return a_class.size() < s_class.size();
}

}  // namespace

TEST_CASE("exceptional = all cycle lengths distinct and odd") {
  CHECK(ngv::is_exceptional(Perm::parse("(1 2 3 4 5)", 5)));
  CHECK(!ngv::is_exceptional(Perm::parse("(1 2)(3 4 5)", 5)));
  CHECK(!ngv::is_exceptional(Perm::parse("(1 2 3)", 5)));  // two fixed points
  CHECK(ngv::is_exceptional(Perm::parse("(1 2 3)", 4)));   // lengths {3,1}
  CHECK(ngv::is_exceptional(Perm(1)));
  CHECK(!ngv::is_exceptional(Perm(2)));  // two length-1 cycles
}

TEST_CASE("exceptional agrees with the class-splitting oracle up to degree 7") {
  for (int n = 3; n <= 7; ++n) {
    const auto sn = symmetric_group(n);
    for (const auto& sigma : sn) {
      if (!sigma.is_even()) continue;
      CHECK(ngv::is_exceptional(sigma) == splits_oracle(sigma, sn));
    }
  }
}

TEST_CASE("conjugator with small support: reference cases") {
  const Perm a = Perm::parse("(1 2)", 5), b = Perm::parse("(3 4)", 5);
  auto h = ngv::find_conjugator_min_support(a, b);
  REQUIRE(h.has_value());
  CHECK(*h == Perm::parse("(1 3)(2 4)", 5));
  CHECK(a.conjugate_by(*h) == b);

  auto same = ngv::find_conjugator_min_support(Perm::parse("(1 2 3)", 4),
                                               Perm::parse("(1 2 3)", 4));
  REQUIRE(same.has_value());
  CHECK(same->is_identity());

  CHECK(!ngv::find_conjugator_min_support(Perm::parse("(1 2)", 4),
                                          Perm::parse("(1 2 3)", 4))
             .has_value());
}

TEST_CASE("conjugator support is contained in the union of supports") {
  const auto s5 = symmetric_group(5);
  for (const auto& a : s5)
    for (const auto& b : s5) {
      auto h = ngv::find_conjugator_min_support(a, b);
      if (a.cycle_type() == b.cycle_type()) {
        REQUIRE(h.has_value());
        CHECK(a.conjugate_by(*h) == b);
        auto sa = a.support(), sb = b.support(), sh = h->support();
        std::vector<int> allowed;
        std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(),
                       std::back_inserter(allowed));
        CHECK(std::includes(allowed.begin(), allowed.end(), sh.begin(), sh.end()));
      } else {
        CHECK(!h.has_value());
      }
    }
}

TEST_CASE("brenner cycles satisfy rho * pi^{-1} = (m-4, m-2, m)") {
  for (int m = 5; m <= 15; ++m) {
    const auto [rho, pi] = ngv::brenner_cycles(m);
    const Perm expected =
        Perm::parse("(" + std::to_string(m - 4) + " " + std::to_string(m - 2) +
                        " " + std::to_string(m) + ")",
                    m);
    CHECK(rho * pi.inverse() == expected);
  }
  // Spot values from direct evaluation.
  {
    const auto [rho, pi] = ngv::brenner_cycles(7);
    CHECK(rho * pi.inverse() == Perm::parse("(3 5 7)", 7));
  }
  {
    const auto [rho, pi] = ngv::brenner_cycles(5);
    CHECK(rho * pi.inverse() == Perm::parse("(1 3 5)", 5));
  }
  CHECK_THROWS_AS(ngv::brenner_cycles(4), ngv::DomainError);
}

TEST_CASE("pi(2m+1) is even") {
  for (int m = 2; m <= 7; ++m) {
    const auto [rho, pi] = ngv::brenner_cycles(2 * m + 1);
    CHECK(rho.is_even());
    CHECK(pi.is_even());
  }
}

TEST_CASE("nearby nonexceptional: no repair needed") {
  const Perm tau = Perm::parse("(1 2)(3 4)(5 6 7)", 7);
  REQUIRE(tau.is_even());
  REQUIRE(!ngv::is_exceptional(tau));
  const auto rr = ngv::nearby_nonexceptional(tau);
  CHECK(rr.sigma == tau);
  CHECK(rr.distance == 0);
  CHECK(rr.even);
}

TEST_CASE("nearby nonexceptional: odd nonexceptional input gets an even repair") {
  // (1 2)(3 4 5 6 7) is odd; the repair flips parity at distance 2 while
  // keeping support and nonexceptionality.
  const Perm tau = Perm::parse("(1 2)(3 4 5 6 7)", 7);
  REQUIRE(!tau.is_even());
  const auto rr = ngv::nearby_nonexceptional(tau);
  CHECK(rr.sigma.support() == tau.support());
  CHECK(!ngv::is_exceptional(rr.sigma));
  CHECK(rr.sigma.is_even());
  CHECK(rr.distance == 2);
}

TEST_CASE("nearby nonexceptional: the exceptional 5-cycle corner") {
  // In degree 5 every even permutation with full support is a 5-cycle, hence
  // exceptional; the repair must go odd but keeps support and distance <= 5.
  const Perm tau = Perm::parse("(1 2 3 4 5)", 5);
  const auto rr = ngv::nearby_nonexceptional(tau);
  CHECK(rr.sigma.support() == tau.support());
  CHECK(!ngv::is_exceptional(rr.sigma));
  CHECK(rr.distance <= 5);
  CHECK(!rr.even);
}

TEST_CASE("nearby nonexceptional: odd single 6-cycle") {
  const Perm tau = Perm::parse("(1 2 3 4 5 6)", 6);
  const auto rr = ngv::nearby_nonexceptional(tau);
  CHECK(rr.sigma.support() == tau.support());
  CHECK(!ngv::is_exceptional(rr.sigma));
  CHECK(rr.sigma.is_even());
  CHECK(rr.distance <= 5);
}

TEST_CASE("nearby nonexceptional: precondition") {
  CHECK_THROWS_AS(ngv::nearby_nonexceptional(Perm::parse("(1 2 3)", 5)),
                  ngv::DomainError);
}

TEST_CASE("sigma_infinity with full support already") {
  const Perm sigma = Perm::parse("(1 2)(3 4 5)", 5);
  const auto res = ngv::sigma_infinity(sigma, 5, 7);
  CHECK(res.sigma_infinity == sigma);
  CHECK(res.certificate.factors.size() == 1);
  CHECK(ngv::replay(res.certificate) == res.sigma_infinity);
}

TEST_CASE("sigma_infinity fills S_10 from a support-5 seed") {
  const Perm sigma = Perm::parse("(1 2)(3 4 5)", 10);
  const auto res = ngv::sigma_infinity(sigma, 10, 7);
  CHECK(res.sigma_infinity.hamming_norm() == 10);
  CHECK(res.certificate.factors.size() <= 4 + 10 / 5);
  CHECK(ngv::replay(res.certificate) == res.sigma_infinity);
}

TEST_CASE("sigma_infinity covers a leftover block") {
  // degree 13, support 5: two blocks of 5 plus a leftover of size 3.
  const Perm sigma = Perm::parse("(1 2)(3 4 5)", 13);
  const auto res = ngv::sigma_infinity(sigma, 13, 11);
  CHECK(res.sigma_infinity.hamming_norm() == 13);
  CHECK(res.certificate.factors.size() <= 4u + 13 / 5);
  CHECK(ngv::replay(res.certificate) == res.sigma_infinity);

  // Leftover of size 1 (degree 11): a single extra conjugate cannot have
  // support of size one, so the search runs over overlapping targets.
  const Perm sigma2 = Perm::parse("(1 2)(3 4 5)", 11);
  const auto res2 = ngv::sigma_infinity(sigma2, 11, 11);
  CHECK(res2.sigma_infinity.hamming_norm() == 11);
  CHECK(res2.certificate.factors.size() <= 4u + 11 / 5);
  CHECK(ngv::replay(res2.certificate) == res2.sigma_infinity);
}

TEST_CASE("sigma_infinity rejects exceptional seeds") {
  CHECK_THROWS_AS(ngv::sigma_infinity(Perm::parse("(1 2 3 4 5)", 5), 5, 1),
                  ngv::DomainError);
}
