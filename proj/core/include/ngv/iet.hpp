#pragma once

#include <string>
#include <vector>

#include "ngv/perm.hpp"
#include "ngv/rational.hpp"

namespace ngv {

/// Interval exchange transformation of [0,1) with rational breakpoints.
///
/// Stored as the source interval lengths (left to right, summing to 1) and the
/// destination slot of each source interval. Values are kept in canonical
/// form: no two consecutive source intervals carry the same translation
/// offset, so equality is structural and the identity is the single interval
/// [0,1). Maps are right-continuous piecewise translations; composition is
/// the right action (apply the left factor first), matching the permutation
/// convention.
class IetMap {
 public:
  IetMap();  // identity

  /// lengths: positive rationals summing to 1; dest: 0-based destination slot
  /// per source interval. Canonicalizes.
  IetMap(std::vector<Rational> lengths, std::vector<int> dest);

  static IetMap identity() { return IetMap(); }

  size_t pieces() const { return len_.size(); }
  const std::vector<Rational>& lengths() const { return len_; }
  const std::vector<int>& destinations() const { return dest_; }

  /// Source start of piece i, and its translation offset.
  Rational source_start(size_t i) const;
  Rational offset(size_t i) const;

  Rational apply(const Rational& x) const;  // x in [0,1)

  IetMap operator*(const IetMap& o) const;  // apply *this first
  IetMap inverse() const;

  bool operator==(const IetMap& o) const {
    return len_ == o.len_ && dest_ == o.dest_;
  }
  bool operator!=(const IetMap& o) const { return !(*this == o); }
  bool operator<(const IetMap& o) const {
    if (len_ != o.len_) return len_ < o.len_;
    return dest_ < o.dest_;
  }

  bool is_identity() const { return len_.size() == 1; }

  /// Measure of the moved-point set: total length of pieces with a nonzero
  /// offset. Zero exactly on the identity.
  Rational support_norm() const;

  std::string key() const;

 private:
  friend IetMap iet_from_pieces(std::vector<std::pair<Rational, Rational>>);
  std::vector<Rational> len_;
  std::vector<int> dest_;
  std::vector<Rational> off_;  // derived, cached alongside
};

/// phi: S_n -> IET sending delta to the exchange of n equal cells by delta.
/// An injective homomorphism; support_norm(embed_perm(d)) = |d|_H / n.
IetMap embed_perm(const Perm& delta);

struct DiscretizeResult {
  Perm grid_perm;      // sigma' with snapped = embed_perm(sigma')
  IetMap snapped;      // h' on the 1/n grid
  Rational distance;   // |h' h^{-1}| in the support norm, exact
};

/// Snaps the breakpoints of h to the 1/n grid (floor) and reports the exact
/// distance between h and the snapped map. Requires the snapped breakpoints
/// to stay distinct, which the gap condition 1/n < (minimal piece length)
/// guarantees; inputs already on the grid always qualify and come back at
/// distance zero.
DiscretizeResult discretize(const IetMap& h, int n);

}  // namespace ngv
