#include "ngv/iet.hpp"

#include <random>

#include "doctest.h"
#include "ngv/errors.hpp"

using ngv::IetMap;
using ngv::Perm;
using ngv::Rational;

namespace {

IetMap rotation(const Rational& c) {
  // x -> x + c mod 1 as the exchange of two intervals.
  if (c.is_zero()) return IetMap::identity();
  return IetMap({Rational(1) - c, c}, {1, 0});
}

// Seeded random exchange with small denominators; deterministic across runs.
IetMap random_iet(std::mt19937_64& rng) {
  const long long den = 12 + rng() % 49;  // 12..60
  const int pieces = 2 + rng() % 4;
  std::vector<long long> cuts{0, den};
  while (static_cast<int>(cuts.size()) < pieces + 1) {
    long long c = 1 + rng() % (den - 1);
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<Rational> lengths;
  for (size_t i = 0; i + 1 < cuts.size(); ++i)
    lengths.emplace_back(cuts[i + 1] - cuts[i], den);
  std::vector<int> dest(lengths.size());
  for (size_t i = 0; i < dest.size(); ++i) dest[i] = static_cast<int>(i);
  for (size_t i = dest.size(); i > 1; --i)
    std::swap(dest[i - 1], dest[rng() % i]);
  return IetMap(std::move(lengths), std::move(dest));
}

}  // namespace

TEST_CASE("identity and canonical form") {
  CHECK(IetMap::identity().pieces() == 1);
  CHECK(IetMap::identity().support_norm() == Rational(0));
  // Equal-offset neighbors merge: the trivial permutation of thirds is e.
  IetMap m({Rational(1, 3), Rational(1, 3), Rational(1, 3)}, {0, 1, 2});
  CHECK(m == IetMap::identity());
}

TEST_CASE("apply: reference values") {
  CHECK(rotation(Rational(1, 4)).apply(Rational(7, 8)) == Rational(1, 8));
  const IetMap swap_halves({Rational(1, 2), Rational(1, 2)}, {1, 0});
  CHECK(swap_halves.apply(Rational(1, 4)) == Rational(3, 4));
  CHECK_THROWS_AS(swap_halves.apply(Rational(1)), ngv::DomainError);
  CHECK_THROWS_AS(swap_halves.apply(Rational(-1, 2)), ngv::DomainError);
}

TEST_CASE("composition: rotations add, involutions cancel") {
  CHECK(rotation(Rational(1, 3)) * rotation(Rational(2, 3)) ==
        IetMap::identity());
  const IetMap swap_halves({Rational(1, 2), Rational(1, 2)}, {1, 0});
  CHECK(swap_halves * swap_halves == IetMap::identity());
  const IetMap g = rotation(Rational(1, 5));
  CHECK(IetMap::identity() * g == g);
  CHECK(g * IetMap::identity() == g);
  CHECK(g * g.inverse() == IetMap::identity());
  CHECK(IetMap::identity().inverse() == IetMap::identity());
}

TEST_CASE("support norm") {
  const IetMap swap_halves({Rational(1, 2), Rational(1, 2)}, {1, 0});
  CHECK(swap_halves.support_norm() == Rational(1));
  CHECK(ngv::embed_perm(Perm::parse("(1 2)", 4)).support_norm() ==
        Rational(1, 2));
}

TEST_CASE("embed_perm is an isometric homomorphism (exhaustive S_4)") {
  std::vector<Perm> all;
  std::vector<int> img{0, 1, 2, 3};
  do {
    all.push_back(Perm::from_images(img));
  } while (std::next_permutation(img.begin(), img.end()));
  for (const auto& a : all) {
    CHECK(ngv::embed_perm(a).support_norm() == Rational(a.hamming_norm(), 4));
    for (const auto& b : all)
      CHECK(ngv::embed_perm(a * b) == ngv::embed_perm(a) * ngv::embed_perm(b));
  }
  CHECK(ngv::embed_perm(Perm::parse("(1 2 3)", 3)).support_norm() == Rational(1));
  CHECK(ngv::embed_perm(Perm(5)) == IetMap::identity());
}

TEST_CASE("group axioms on seeded random exchanges") {
  std::mt19937_64 rng(20240817);
  for (int trial = 0; trial < 300; ++trial) {
    const IetMap f = random_iet(rng), g = random_iet(rng), h = random_iet(rng);
    CHECK((f * g) * h == f * (g * h));
    CHECK(f * f.inverse() == IetMap::identity());
    CHECK(f.inverse() * f == IetMap::identity());
    CHECK(f.inverse().inverse() == f);
    // Norm axioms: subadditive, inverse- and conjugation-invariant.
    CHECK((f * g).support_norm() <= f.support_norm() + g.support_norm());
    CHECK(f.inverse().support_norm() == f.support_norm());
    CHECK((g.inverse() * f * g).support_norm() == f.support_norm());
  }
}

TEST_CASE("discretize: grid-commensurate inputs return distance zero") {
  const IetMap swap_halves({Rational(1, 2), Rational(1, 2)}, {1, 0});
  auto res = ngv::discretize(swap_halves, 4);
  CHECK(res.distance == Rational(0));
  CHECK(res.snapped == swap_halves);
  CHECK(ngv::embed_perm(res.grid_perm) == res.snapped);

  // Denominators dividing 6 snap exactly onto the 1/12 grid.
  const IetMap m({Rational(1, 6), Rational(1, 2), Rational(1, 3)}, {2, 0, 1});
  CHECK(ngv::discretize(m, 12).distance == Rational(0));
}

TEST_CASE("discretize: incommensurate rotation lands at distance one") {
  auto res = ngv::discretize(rotation(Rational(1, 3)), 5);
  CHECK(res.snapped == rotation(Rational(2, 5)));
  CHECK(res.distance == Rational(1));
}

TEST_CASE("discretize: breakpoint collisions are rejected") {
  // Breakpoints 1/5 and 2/5 both floor to 0 on the 1/2 grid.
  const IetMap m({Rational(1, 5), Rational(1, 5), Rational(3, 5)}, {2, 0, 1});
  CHECK_THROWS_AS(ngv::discretize(m, 2), ngv::DomainError);
  // Rotation by 1/3 still snaps at n = 2: breakpoints 0 and 2/3 stay apart.
  CHECK(ngv::discretize(rotation(Rational(1, 3)), 2).snapped ==
        rotation(Rational(1, 2)));
}

TEST_CASE("grid exchanges at resolution <= 4 form the embedded subgroup") {
  for (int n = 2; n <= 4; ++n) {
    std::vector<IetMap> grid;
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = i;
    do {
      grid.push_back(ngv::embed_perm(Perm::from_images(img)));
    } while (std::next_permutation(img.begin(), img.end()));
    for (const auto& f : grid)
      for (const auto& g : grid) {
        const IetMap fg = f * g;
        CHECK(std::find(grid.begin(), grid.end(), fg) != grid.end());
        CHECK(std::find(grid.begin(), grid.end(), f.inverse()) != grid.end());
      }
  }
}

TEST_CASE("composition agrees with pointwise evaluation") {
  std::mt19937_64 rng(7771);
  for (int trial = 0; trial < 200; ++trial) {
    const IetMap f = random_iet(rng), g = random_iet(rng);
    const IetMap fg = f * g;
    const IetMap fi = f.inverse();
    for (int k = 0; k < 8; ++k) {
      const long long den = 2 + rng() % 97;
      const Rational x(static_cast<long long>(rng() % den), den);
      CHECK(fg.apply(x) == g.apply(f.apply(x)));
      CHECK(fi.apply(f.apply(x)) == x);
    }
  }
}

TEST_CASE("malformed exchanges are rejected") {
  CHECK_THROWS_AS(IetMap({Rational(1, 2)}, {0, 1}), ngv::DomainError);
  CHECK_THROWS_AS(IetMap({Rational(1, 2), Rational(1, 3)}, {1, 0}),
                  ngv::DomainError);
  CHECK_THROWS_AS(IetMap({Rational(1, 2), Rational(1, 2)}, {0, 0}),
                  ngv::DomainError);
  CHECK_THROWS_AS(IetMap({Rational(3, 2), Rational(-1, 2)}, {1, 0}),
                  ngv::DomainError);
}
