#include "ngv/perm.hpp"

#include <algorithm>
#include <vector>

#include "doctest.h"
#include "ngv/errors.hpp"

using ngv::Perm;

TEST_CASE("right action composition: a is applied first") {
  const Perm a = Perm::parse("(1 2)", 3);
  const Perm b = Perm::parse("(2 3)", 3);
  const Perm ab = a * b;
  // 1 -> 2 -> 3 under a then b.
  CHECK(ab.image(0) == 2);
  CHECK(ab == Perm::parse("(1 3 2)", 3));
  CHECK(b * a == Perm::parse("(1 2 3)", 3));
}

TEST_CASE("inverse and conjugation") {
  const Perm c = Perm::parse("(1 2 3 4)", 5);
  CHECK(c * c.inverse() == Perm(5));
  CHECK(c.inverse() == Perm::parse("(1 4 3 2)", 5));
  const Perm h = Perm::parse("(4 5)", 5);
  // Support of a conjugate is the image of the support.
  auto supp = c.conjugate_by(h).support();
  CHECK(supp == std::vector<int>{0, 1, 2, 4});
}

TEST_CASE("hamming norm counts moved points") {
  CHECK(Perm(7).hamming_norm() == 0);
  CHECK(Perm::parse("(1 2 3)", 5).hamming_norm() == 3);
  CHECK(Perm::parse("(1 2)(3 4 5)", 6).hamming_norm() == 5);
  CHECK(Perm::parse("(1 2 3)", 5).hamming_normalized() == ngv::Rational(3, 5));
}

TEST_CASE("cycle structure") {
  const Perm p = Perm::parse("(1 2)(3 4 5)", 7);
  auto cyc = p.cycles();
  REQUIRE(cyc.size() == 2);
  CHECK(cyc[0] == std::vector<int>{0, 1});
  CHECK(cyc[1] == std::vector<int>{2, 3, 4});
  CHECK(p.cycle_type(true) == std::vector<int>{3, 2, 1, 1});
  CHECK(p.to_cycle_string() == "(1 2)(3 4 5)");
}

TEST_CASE("parity") {
  CHECK(Perm(4).is_even());
  CHECK(!Perm::parse("(1 2)", 4).is_even());
  CHECK(Perm::parse("(1 2 3)", 4).is_even());
  CHECK(Perm::parse("(1 2)(3 4)", 4).is_even());
  CHECK(!Perm::parse("(1 2 3 4)", 4).is_even());
}

TEST_CASE("one-line parsing and formatting round trip") {
  const Perm p = Perm::parse("[2,1,3]", 3);
  CHECK(p == Perm::parse("(1 2)", 3));
  CHECK(p.to_one_line_string() == "[2,1,3]");
  CHECK(p.one_line() == std::vector<int>{2, 1, 3});
  CHECK(Perm::parse("()", 4) == Perm(4));
  CHECK_THROWS_AS(Perm::parse("[1,1,2]", 3), ngv::DomainError);
  CHECK_THROWS_AS(Perm::parse("[2,1]", 3), ngv::DomainError);
  CHECK_THROWS_AS(Perm::parse("(1 9)", 3), ngv::DomainError);
}

TEST_CASE("bi-invariance of the hamming norm, exhaustive on S_4") {
  std::vector<Perm> all;
  std::vector<int> img{0, 1, 2, 3};
  do {
    all.push_back(Perm::from_images(img));
  } while (std::next_permutation(img.begin(), img.end()));
  REQUIRE(all.size() == 24);
  for (const auto& a : all)
    for (const auto& b : all) {
      CHECK((a * b).hamming_norm() <= a.hamming_norm() + b.hamming_norm());
      CHECK(a.conjugate_by(b).hamming_norm() == a.hamming_norm());
      CHECK(a.inverse().hamming_norm() == a.hamming_norm());
    }
}
