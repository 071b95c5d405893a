#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ngv/rational.hpp"

namespace ngv {

/// Square matrix over the prime field F_p, entries reduced to [0, p).
class MatFp {
 public:
  MatFp() : n_(0), p_(2) {}
  MatFp(int n, int p);  // zero matrix; validates that p is prime

  static MatFp identity(int n, int p);
  static MatFp from_rows(const std::vector<std::vector<long long>>& rows, int p);

  int dim() const { return n_; }
  int modulus() const { return p_; }

  int at(int i, int j) const { return e_[i * n_ + j]; }
  void set(int i, int j, long long v);

  MatFp operator*(const MatFp& o) const;
  MatFp inverse() const;  // throws DomainError when singular
  MatFp pow(long long k) const;

  bool operator==(const MatFp& o) const {
    return n_ == o.n_ && p_ == o.p_ && e_ == o.e_;
  }
  bool operator!=(const MatFp& o) const { return !(*this == o); }
  /// Row-major lexicographic order on entries (same n, p).
  bool operator<(const MatFp& o) const { return e_ < o.e_; }

  int det() const;
  int rank() const;  // row-echelon rank over F_p
  bool is_identity() const;
  bool is_scalar() const;  // lambda * I

  std::string key() const;

 private:
  int n_;
  int p_;
  std::vector<int> e_;
};

/// Jordan length (1/n) * min over nonzero lambda of rank(A - lambda*I).
/// Exact rational with denominator dividing n; vanishes exactly on scalar
/// matrices, making this a pseudo-norm on GL_n(F_p).
Rational jordan_length(const MatFp& a);

/// Block-diagonal embedding with m/n copies of A on the diagonal. Requires
/// n | m. A multiplicative, injective, Jordan-length-preserving map.
MatFp block_embed(const MatFp& a, int m);

}  // namespace ngv
