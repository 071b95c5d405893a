#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "ngv/cert.hpp"
#include "ngv/perm.hpp"

namespace ngv {

using PermConjProduct = ConjProduct<Perm>;

Perm replay(const PermConjProduct& cert);

/// True when the S_n-class of p splits into two A_n-classes: all cycle
/// lengths, counting fixed points as 1-cycles, are pairwise distinct and odd.
bool is_exceptional(const Perm& p);

/// Conjugator h with a^h = b and supp(h) inside supp(a) u supp(b), or nullopt
/// when a and b have different cycle types. Deterministic: cycles of equal
/// length are aligned in order of least moved point and mapped pointwise;
/// leftover points are matched in ascending order.
std::optional<Perm> find_conjugator_min_support(const Perm& a, const Perm& b);

/// rho(m) = (1 2 ... m) and pi(m) = (1 ... m-4)(m-3 m-2)(m-1 m), both of
/// degree m. Under the right-action convention rho(m)*pi(m)^{-1} is the
/// 3-cycle (m-4, m-2, m). Requires m >= 5.
std::pair<Perm, Perm> brenner_cycles(int m);

struct RepairResult {
  Perm sigma;
  bool even;      // false only in the corner noted below
  int distance;   // |tau * sigma^{-1}| in the Hamming norm
};

/// Nearby nonexceptional replacement for tau (|supp(tau)| >= 5): sigma with
/// supp(sigma) = supp(tau), sigma nonexceptional, |tau sigma^{-1}|_H <= 5.
///
/// sigma is even except when |supp(tau)| = 5 and degree <= 6: the only even
/// permutations with support of size 5 are 5-cycles, which are exceptional
/// there, so no even repair exists and an odd nonexceptional one is returned
/// with even=false.
RepairResult nearby_nonexceptional(const Perm& tau);

struct SigmaInfinityResult {
  Perm sigma_infinity;
  PermConjProduct certificate;
};

/// Thrown when the randomized search for the factor covering the leftover
/// block fails; carries the disjoint-block part of the certificate built so
/// far.
struct ConstructionIncomplete : std::runtime_error {
  ConstructionIncomplete(std::string what, PermConjProduct partial)
      : std::runtime_error(std::move(what)), partial_certificate(std::move(partial)) {}
  PermConjProduct partial_certificate;
};

/// Builds a full-support element of C_{4+floor(n/k)}(sigma, S_n) for a
/// nonexceptional sigma with support size k >= 5, together with a replayable
/// certificate. Partitions {1..n} into floor(n/k) blocks of size k plus a
/// leftover Y; conjugates of sigma fill the blocks, and a bounded seeded
/// search over products of at most 4 conjugates supported in Y u (first
/// block) covers Y. Throws ConstructionIncomplete if the search fails.
SigmaInfinityResult sigma_infinity(const Perm& sigma, int degree,
                                   std::uint64_t seed = 1);

}  // namespace ngv
