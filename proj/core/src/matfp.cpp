#include "ngv/matfp.hpp"

#include <algorithm>

#include "ngv/errors.hpp"

namespace ngv {

namespace {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

int mod_pow(int base, int exp, int p) {
  long long r = 1, b = base % p;
  while (exp > 0) {
    if (exp & 1) r = r * b % p;
    b = b * b % p;
    exp >>= 1;
  }
  return static_cast<int>(r);
}

int mod_inv(int a, int p) {
  if (a % p == 0) throw DomainError("inverting zero in F_p");
  return mod_pow(a % p, p - 2, p);
}

}  // namespace

MatFp::MatFp(int n, int p) : n_(n), p_(p), e_(n * n, 0) {
  if (n <= 0) throw DomainError("matrix dimension must be positive");
  if (!is_prime(p)) throw DomainError("matrix modulus must be prime");
}

MatFp MatFp::identity(int n, int p) {
  MatFp m(n, p);
  for (int i = 0; i < n; ++i) m.e_[i * n + i] = 1;
  return m;
}

MatFp MatFp::from_rows(const std::vector<std::vector<long long>>& rows, int p) {
  const int n = static_cast<int>(rows.size());
  MatFp m(n, p);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      throw DomainError("matrix rows must form a square");
    for (int j = 0; j < n; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

void MatFp::set(int i, int j, long long v) {
  long long r = v % p_;
  if (r < 0) r += p_;
  e_[i * n_ + j] = static_cast<int>(r);
}

MatFp MatFp::operator*(const MatFp& o) const {
  if (n_ != o.n_ || p_ != o.p_)
    throw DomainError("multiplying incompatible matrices");
  MatFp r(n_, p_);
  for (int i = 0; i < n_; ++i)
    for (int k = 0; k < n_; ++k) {
      const long long a = e_[i * n_ + k];
      if (!a) continue;
      for (int j = 0; j < n_; ++j)
        r.e_[i * n_ + j] =
            static_cast<int>((r.e_[i * n_ + j] + a * o.e_[k * n_ + j]) % p_);
    }
  return r;
}

MatFp MatFp::pow(long long k) const {
  if (k < 0) return inverse().pow(-k);
  MatFp r = identity(n_, p_), b = *this;
  while (k > 0) {
    if (k & 1) r = r * b;
    b = b * b;
    k >>= 1;
  }
  return r;
}

int MatFp::det() const {
  std::vector<int> a = e_;
  long long det = 1;
  for (int col = 0, row = 0; col < n_ && row < n_; ++col) {
    int pivot = -1;
    for (int i = row; i < n_; ++i)
      if (a[i * n_ + col]) {
        pivot = i;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != row) {
      for (int j = 0; j < n_; ++j) std::swap(a[pivot * n_ + j], a[row * n_ + j]);
      det = (p_ - det % p_) % p_;
    }
    const int inv = mod_inv(a[row * n_ + col], p_);
    det = det * a[row * n_ + col] % p_;
    for (int i = row + 1; i < n_; ++i) {
      const long long f = static_cast<long long>(a[i * n_ + col]) * inv % p_;
      if (!f) continue;
      for (int j = col; j < n_; ++j)
        a[i * n_ + j] = static_cast<int>(
            ((a[i * n_ + j] - f * a[row * n_ + j]) % p_ + p_) % p_);
    }
    ++row;
  }
  return static_cast<int>(det % p_);
}

int MatFp::rank() const {
  std::vector<int> a = e_;
  int rank = 0;
  for (int col = 0; col < n_ && rank < n_; ++col) {
    int pivot = -1;
    for (int i = rank; i < n_; ++i)
      if (a[i * n_ + col]) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    for (int j = 0; j < n_; ++j) std::swap(a[pivot * n_ + j], a[rank * n_ + j]);
    const int inv = mod_inv(a[rank * n_ + col], p_);
    for (int i = rank + 1; i < n_; ++i) {
      const long long f = static_cast<long long>(a[i * n_ + col]) * inv % p_;
      if (!f) continue;
      for (int j = col; j < n_; ++j)
        a[i * n_ + j] = static_cast<int>(
            ((a[i * n_ + j] - f * a[rank * n_ + j]) % p_ + p_) % p_);
    }
    ++rank;
  }
  return rank;
}

MatFp MatFp::inverse() const {
  // Gauss-Jordan on [A | I].
  std::vector<int> a = e_;
  MatFp inv = identity(n_, p_);
  for (int col = 0; col < n_; ++col) {
    int pivot = -1;
    for (int i = col; i < n_; ++i)
      if (a[i * n_ + col]) {
        pivot = i;
        break;
      }
    if (pivot < 0) throw DomainError("matrix is singular");
    for (int j = 0; j < n_; ++j) {
      std::swap(a[pivot * n_ + j], a[col * n_ + j]);
      std::swap(inv.e_[pivot * n_ + j], inv.e_[col * n_ + j]);
    }
    const long long piv_inv = mod_inv(a[col * n_ + col], p_);
    for (int j = 0; j < n_; ++j) {
      a[col * n_ + j] = static_cast<int>(a[col * n_ + j] * piv_inv % p_);
      inv.e_[col * n_ + j] = static_cast<int>(inv.e_[col * n_ + j] * piv_inv % p_);
    }
    for (int i = 0; i < n_; ++i) {
      if (i == col || !a[i * n_ + col]) continue;
      const long long f = a[i * n_ + col];
      for (int j = 0; j < n_; ++j) {
        a[i * n_ + j] = static_cast<int>(
            ((a[i * n_ + j] - f * a[col * n_ + j]) % p_ + p_) % p_);
        inv.e_[i * n_ + j] = static_cast<int>(
            ((inv.e_[i * n_ + j] - f * inv.e_[col * n_ + j]) % p_ + p_) % p_);
      }
    }
  }
  return inv;
}

bool MatFp::is_identity() const { return *this == identity(n_, p_); }

bool MatFp::is_scalar() const {
  const int d = e_[0];
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (e_[i * n_ + j] != (i == j ? d : 0)) return false;
  return true;
}

std::string MatFp::key() const {
  std::string k;
  k.reserve(e_.size() * 2 + 8);
  for (int v : e_) {
    k += std::to_string(v);
    k += ',';
  }
  return k;
}

Rational jordan_length(const MatFp& a) {
  const int n = a.dim(), p = a.modulus();
  int best = n;
  for (int lambda = 1; lambda < p; ++lambda) {
    MatFp b = a;
    for (int i = 0; i < n; ++i) b.set(i, i, b.at(i, i) - lambda);
    best = std::min(best, b.rank());
    if (best == 0) break;
  }
  return Rational(best, n);
}

MatFp block_embed(const MatFp& a, int m) {
  const int n = a.dim();
  if (m <= 0 || m % n != 0)
    throw DomainError("block_embed requires the source dimension to divide the target");
  MatFp r(m, a.modulus());
  for (int b = 0; b < m / n; ++b)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r.set(b * n + i, b * n + j, a.at(i, j));
  return r;
}

}  // namespace ngv
