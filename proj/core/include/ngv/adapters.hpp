#pragma once

#include <cstdint>

#include "ngv/group.hpp"
#include "ngv/rational.hpp"

namespace ngv {

inline constexpr std::uint64_t kDefaultElementBudget = 1000000;

/// Builds a group from a JSON descriptor, e.g.
///   {"type":"sym","n":4,"norm":"hamming"}
///   {"type":"alt","n":5,"norm":"hamming_normalized"}
///   {"type":"cyclic_lee","m":8}
///   {"type":"sl_fp","n":2,"p":5,"norm":"jordan"}
///   {"type":"iet","resolution":4}
/// Any descriptor may carry "scale":"p/q" to multiply the norm by an exact
/// positive rational. Throws DomainError on malformed descriptors.
GroupPtr make_group(const nlohmann::json& descriptor,
                    std::uint64_t element_budget = kDefaultElementBudget);

/// Same group law, norm multiplied exactly by c > 0. Axioms (0)-(3) are
/// preserved under positive scaling.
GroupPtr scale_norm(GroupPtr base, const Rational& c);

/// Conjugation orbit of g under the subgroup generated by the adapter's
/// generators (= the full conjugacy class). Deterministic order: breadth
/// first from g, generators in adapter order.
std::vector<Element> conjugacy_class_of(const GroupAdapter& group, const Element& g,
                                        std::uint64_t budget = kDefaultElementBudget);

/// Group types, norm ids and their valid combinations, for the CLI catalog.
nlohmann::json adapter_catalog();

}  // namespace ngv
