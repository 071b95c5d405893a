#pragma once

#include <cstdint>
#include <vector>

#include "ngv/matfp.hpp"

namespace ngv {

/// |SL_n(F_p)| = p^{n(n-1)/2} * prod_{k=2..n} (p^k - 1).
/// Throws std::overflow_error when the order exceeds uint64.
std::uint64_t sl_order(int n, int p);

/// All of SL_n(F_p) in row-major lexicographic order on the entry vector.
/// Throws CapabilityError when the order exceeds `budget`.
std::vector<MatFp> sl_enumerate(int n, int p, std::uint64_t budget = 1000000);

/// Elementary transvections I + lambda*E_{ij} (i != j, lambda != 0); a
/// standard generating set of SL_n(F_p).
std::vector<MatFp> sl_transvections(int n, int p);

/// The scalar matrices in SL_n(F_p) (lambda with lambda^n = 1).
std::vector<MatFp> sl_center(int n, int p);

}  // namespace ngv
