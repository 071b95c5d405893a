#include "ngv/group.hpp"

namespace ngv {

bool element_equal(const Element& a, const Element& b) {
  return a == b;
}

std::string GroupAdapter::key(const Element& e) const {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Perm>) return v.to_one_line_string();
        if constexpr (std::is_same_v<T, long long>) return std::to_string(v);
        if constexpr (std::is_same_v<T, MatFp>) return v.key();
        if constexpr (std::is_same_v<T, IetMap>) return v.key();
      },
      e);
}

nlohmann::json GroupAdapter::element_to_json(const Element& e) const {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Perm>) {
          return v.one_line();
        } else if constexpr (std::is_same_v<T, long long>) {
          return v;
        } else if constexpr (std::is_same_v<T, MatFp>) {
          nlohmann::json rows = nlohmann::json::array();
          for (int i = 0; i < v.dim(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (int j = 0; j < v.dim(); ++j) row.push_back(v.at(i, j));
            rows.push_back(row);
          }
          return {{"p", v.modulus()}, {"n", v.dim()}, {"rows", rows}};
        } else {
          nlohmann::json lengths = nlohmann::json::array();
          for (const auto& l : v.lengths()) lengths.push_back(l.to_string());
          nlohmann::json perm = nlohmann::json::array();
          for (int d : v.destinations()) perm.push_back(d + 1);
          return {{"lengths", lengths}, {"perm", perm}};
        }
      },
      e);
}

Element GroupAdapter::power(const Element& g, long long k) const {
  if (k < 0) return power(invert(g), -k);
  Element acc = identity();
  Element base = g;
  while (k > 0) {
    if (k & 1) acc = multiply(acc, base);
    if (k >>= 1) base = multiply(base, base);
  }
  return acc;
}

}  // namespace ngv
