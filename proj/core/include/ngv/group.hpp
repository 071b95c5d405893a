#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "ngv/iet.hpp"
#include "ngv/matfp.hpp"
#include "ngv/normvalue.hpp"
#include "ngv/perm.hpp"

namespace ngv {

/// One element of any group in the catalog. Cyclic residues are plain
/// integers; the adapter supplies the modulus.
using Element = std::variant<Perm, long long, MatFp, IetMap>;

bool element_equal(const Element& a, const Element& b);

/// Uniform handle on a finite normed group: group law, norm, generators and,
/// when feasible, exhaustive enumeration in a canonical deterministic order.
class GroupAdapter {
 public:
  virtual ~GroupAdapter() = default;

  virtual std::string name() const = 0;
  virtual nlohmann::json descriptor() const = 0;

  virtual Element identity() const = 0;
  virtual Element multiply(const Element& a, const Element& b) const = 0;
  virtual Element invert(const Element& a) const = 0;
  virtual NormValue norm(const Element& a) const = 0;
  virtual std::vector<Element> generators() const = 0;

  virtual std::optional<std::uint64_t> order() const = 0;
  virtual bool enumerable() const = 0;
  /// All elements in the adapter's canonical order (ascending one-line images
  /// for permutations, row-major entries for matrices, residues 0..m-1).
  /// Throws CapabilityError when not enumerable within the element budget.
  virtual std::vector<Element> enumerate() const = 0;

  /// Stable hashable encoding; equal keys iff equal elements.
  virtual std::string key(const Element& e) const;

  virtual nlohmann::json element_to_json(const Element& e) const;
  virtual Element element_from_json(const nlohmann::json& j) const = 0;

  Element conjugate(const Element& g, const Element& h) const {
    return multiply(multiply(invert(h), g), h);
  }
  Element commutator(const Element& g, const Element& h) const {
    return multiply(multiply(invert(g), invert(h)), multiply(g, h));
  }
  Element power(const Element& g, long long k) const;
  bool is_identity(const Element& g) const {
    return element_equal(g, identity());
  }
};

using GroupPtr = std::shared_ptr<const GroupAdapter>;

}  // namespace ngv
