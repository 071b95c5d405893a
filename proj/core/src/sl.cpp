#include "ngv/sl.hpp"

#include <limits>
#include <string>

#include "ngv/errors.hpp"

namespace ngv {

namespace {

std::uint64_t checked_mul_u64(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    throw std::overflow_error("SL order exceeds uint64");
  return a * b;
}

std::uint64_t pow_u64(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r = checked_mul_u64(r, base);
  return r;
}

int mod_pow_int(long long base, int exp, int p) {
  long long r = 1;
  base %= p;
  for (int i = 0; i < exp; ++i) r = r * base % p;
  return static_cast<int>(r);
}

}  // namespace

std::uint64_t sl_order(int n, int p) {
  if (n < 1) throw DomainError("SL dimension must be positive");
  std::uint64_t order = pow_u64(p, n * (n - 1) / 2);
  for (int k = 2; k <= n; ++k)
    order = checked_mul_u64(order, pow_u64(p, k) - 1);
  return order;
}

std::vector<MatFp> sl_enumerate(int n, int p, std::uint64_t budget) {
  const std::uint64_t order = sl_order(n, p);
  if (order > budget)
    throw CapabilityError("SL_" + std::to_string(n) + "(F_" + std::to_string(p) +
                          ") has order " + std::to_string(order) +
                          ", above the element budget " + std::to_string(budget));
  std::vector<MatFp> out;
  out.reserve(order);

  const int cells = n * n;
  double scan_size = 1.0;
  for (int i = 0; i < cells; ++i) scan_size *= p;

  if (scan_size <= 1u << 26) {
    // Odometer scan of all p^(n^2) entry vectors, ascending row-major.
    std::vector<int> entries(cells, 0);
    MatFp m(n, p);
    for (;;) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.set(i, j, entries[i * n + j]);
      if (m.det() == 1) out.push_back(m);
      int pos = cells - 1;
      while (pos >= 0 && entries[pos] == p - 1) entries[pos--] = 0;
      if (pos < 0) break;
      ++entries[pos];
    }
  } else if (n == 2) {
    // ad - bc = 1 solved per (a,b,c); emitted in lexicographic (a,b,c,d).
    for (int a = 0; a < p; ++a)
      for (int b = 0; b < p; ++b) {
        if (a == 0) {
          if (b == 0) continue;
          const int c = mod_pow_int(p - b, p - 2, p);  // bc = -1
          for (int d = 0; d < p; ++d)
            out.push_back(MatFp::from_rows({{a, b}, {c, d}}, p));
        } else {
          const int a_inv = mod_pow_int(a, p - 2, p);
          for (int c = 0; c < p; ++c) {
            const int d =
                static_cast<int>((1LL + static_cast<long long>(b) * c) % p * a_inv % p);
            out.push_back(MatFp::from_rows({{a, b}, {c, d}}, p));
          }
        }
      }
  } else {
    throw CapabilityError("SL enumeration scan too large for n=" +
                          std::to_string(n) + ", p=" + std::to_string(p));
  }
  if (out.size() != order)
    throw std::logic_error("SL enumeration does not match the order formula");
  return out;
}

std::vector<MatFp> sl_transvections(int n, int p) {
  std::vector<MatFp> gens;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      for (int lambda = 1; lambda < p; ++lambda) {
        MatFp t = MatFp::identity(n, p);
        t.set(i, j, lambda);
        gens.push_back(t);
      }
    }
  return gens;
}

std::vector<MatFp> sl_center(int n, int p) {
  std::vector<MatFp> out;
  for (int lambda = 1; lambda < p; ++lambda) {
    if (mod_pow_int(lambda, n, p) != 1) continue;
    MatFp m = MatFp::identity(n, p);
    for (int i = 0; i < n; ++i) m.set(i, i, lambda);
    out.push_back(m);
  }
  return out;
}

}  // namespace ngv
