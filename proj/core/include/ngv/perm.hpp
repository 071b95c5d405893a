#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ngv/rational.hpp"

namespace ngv {

/// Permutation of {1..n} in one-line notation (stored 0-based).
///
/// Composition is the right action throughout the library:
/// (a*b)(x) = b(a(x)), i.e. a is applied first. Under this convention the
/// Brenner identity rho(m)*pi(m)^{-1} = (m-4, m-2, m) holds literally.
class Perm {
 public:
  Perm() = default;           // degree-0 identity
  explicit Perm(int degree);  // identity

  static Perm identity(int degree) { return Perm(degree); }

  /// From 1-based one-line images, e.g. {2,1,3}.
  static Perm from_one_line(const std::vector<int>& images_one_based);

  /// From 0-based images (takes ownership).
  static Perm from_images(std::vector<int> images_zero_based);

  /// Parses cycle notation "(1 2)(3 4 5)" (degree given) or a one-line JSON
  /// array "[2,1,3]". "()" and "" denote the identity.
  static Perm parse(std::string_view text, int degree);

  int degree() const { return static_cast<int>(img_.size()); }
  int image(int x) const { return img_[x]; }  // 0-based

  Perm operator*(const Perm& o) const;   // apply *this first
  Perm inverse() const;
  Perm conjugate_by(const Perm& h) const;  // h^{-1} * (*this) * h

  bool operator==(const Perm& o) const { return img_ == o.img_; }
  bool operator!=(const Perm& o) const { return img_ != o.img_; }
  bool operator<(const Perm& o) const { return img_ < o.img_; }

  bool is_identity() const;
  bool is_even() const;

  /// Number of non-fixed points |supp|.
  int hamming_norm() const;
  Rational hamming_normalized() const { return Rational(hamming_norm(), degree()); }

  std::vector<int> support() const;  // 0-based, ascending

  /// Cycles sorted by least moved point, each starting at its least point.
  /// Fixed points are included as length-1 cycles when requested.
  std::vector<std::vector<int>> cycles(bool include_fixed = false) const;

  /// Multiset of cycle lengths, descending. Fixed points optional.
  std::vector<int> cycle_type(bool include_fixed = false) const;

  std::string to_cycle_string() const;   // "(1 2)(3 4 5)", "()" for identity
  std::string to_one_line_string() const;  // "[2,1,3]", 1-based
  std::vector<int> one_line() const;        // 1-based images

 private:
  std::vector<int> img_;
};

}  // namespace ngv
