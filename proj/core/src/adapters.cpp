#include "ngv/adapters.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "ngv/errors.hpp"
#include "ngv/sl.hpp"

namespace ngv {

namespace {

using nlohmann::json;

std::uint64_t factorial_checked(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) {
    if (f > std::numeric_limits<std::uint64_t>::max() / i)
      throw std::overflow_error("factorial overflow");
    f *= i;
  }
  return f;
}

Perm perm_from_json(const json& j, int degree) {
  if (j.is_string()) return Perm::parse(j.get<std::string>(), degree);
  if (j.is_array()) {
    std::vector<int> images = j.get<std::vector<int>>();
    if (static_cast<int>(images.size()) != degree)
      throw DomainError("one-line permutation has wrong degree");
    return Perm::from_one_line(images);
  }
  throw DomainError("permutation must be a one-line array or a cycle string");
}

MatFp mat_from_json(const json& j, int n, int p) {
  if (!j.is_object() || !j.contains("rows"))
    throw DomainError("matrix element must be {\"p\",\"n\",\"rows\"}");
  if (j.contains("p") && j["p"].get<int>() != p)
    throw DomainError("matrix modulus does not match the group");
  if (j.contains("n") && j["n"].get<int>() != n)
    throw DomainError("matrix dimension does not match the group");
  auto rows = j["rows"].get<std::vector<std::vector<long long>>>();
  if (static_cast<int>(rows.size()) != n)
    throw DomainError("matrix dimension does not match the group");
  return MatFp::from_rows(rows, p);
}

IetMap iet_from_json(const json& j) {
  if (!j.is_object() || !j.contains("lengths") || !j.contains("perm"))
    throw DomainError("IET element must be {\"lengths\",\"perm\"}");
  std::vector<Rational> lengths;
  for (const auto& s : j["lengths"]) lengths.push_back(Rational::parse(s.get<std::string>()));
  std::vector<int> dest;
  for (const auto& d : j["perm"]) dest.push_back(d.get<int>() - 1);
  return IetMap(std::move(lengths), std::move(dest));
}

// Lazily fills a per-class size cache; a class is discovered all at once by
// its conjugation orbit, so every member gets the size in one shot.
class ClassSizeCache {
 public:
  std::uint64_t size_of(const GroupAdapter& g, const Element& e) const {
    const std::string k = g.key(e);
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache_.find(k);
      if (it != cache_.end()) return it->second;
    }
    auto cls = conjugacy_class_of(g, e);
    std::lock_guard<std::mutex> lock(mu_);
    for (const auto& x : cls) cache_.emplace(g.key(x), cls.size());
    return cls.size();
  }

 private:
  mutable std::mutex mu_;
  mutable std::unordered_map<std::string, std::uint64_t> cache_;
};

enum class PermNorm { Hamming, HammingNormalized, ConjugacyLength };

class SymAdapter : public GroupAdapter {
 public:
  SymAdapter(int n, bool alternating, PermNorm norm, std::uint64_t budget)
      : n_(n), alt_(alternating), norm_(norm), budget_(budget) {
    if (n < 1) throw DomainError("symmetric group degree must be >= 1");
    if (norm_ == PermNorm::ConjugacyLength && order().value() < 2)
      throw DomainError("conjugacy length norm needs |G| >= 2");
  }

  std::string name() const override {
    return (alt_ ? "A_" : "S_") + std::to_string(n_) + "(" + norm_id() + ")";
  }

  json descriptor() const override {
    return {{"type", alt_ ? "alt" : "sym"}, {"n", n_}, {"norm", norm_id()}};
  }

  Element identity() const override { return Perm(n_); }

  Element multiply(const Element& a, const Element& b) const override {
    return std::get<Perm>(a) * std::get<Perm>(b);
  }

  Element invert(const Element& a) const override {
    return std::get<Perm>(a).inverse();
  }

  NormValue norm(const Element& a) const override {
    const Perm& p = std::get<Perm>(a);
    switch (norm_) {
      case PermNorm::Hamming:
        return NormValue(Rational(p.hamming_norm()));
      case PermNorm::HammingNormalized:
        return NormValue(p.hamming_normalized());
      case PermNorm::ConjugacyLength:
        return NormValue::log_ratio(classes_.size_of(*this, a),
                                    static_cast<long long>(order().value()));
    }
    throw std::logic_error("unknown norm");
  }

  std::vector<Element> generators() const override {
    std::vector<Element> gens;
    if (n_ >= 2 && !alt_) {
      std::vector<int> t(n_);
      std::iota(t.begin(), t.end(), 0);
      std::swap(t[0], t[1]);
      gens.emplace_back(Perm::from_images(std::move(t)));
    }
    if (!alt_ && n_ >= 3) {
      std::vector<int> c(n_);
      for (int i = 0; i < n_; ++i) c[i] = (i + 1) % n_;
      gens.emplace_back(Perm::from_images(std::move(c)));
    }
    if (alt_ && n_ >= 3) {
      std::vector<int> t(n_);
      std::iota(t.begin(), t.end(), 0);
      t[0] = 1, t[1] = 2, t[2] = 0;
      gens.emplace_back(Perm::from_images(std::move(t)));
      if (n_ >= 4) {
        // (1 2 ... n) for odd n, (2 3 ... n) for even n.
        std::vector<int> c(n_);
        std::iota(c.begin(), c.end(), 0);
        if (n_ % 2 == 1) {
          for (int i = 0; i < n_; ++i) c[i] = (i + 1) % n_;
        } else {
          for (int i = 1; i < n_; ++i) c[i] = i % (n_ - 1) + 1;
        }
        gens.emplace_back(Perm::from_images(std::move(c)));
      }
    }
    if (gens.empty()) gens.push_back(identity());
    return gens;
  }

  std::optional<std::uint64_t> order() const override {
    std::uint64_t f = factorial_checked(n_);
    return alt_ && n_ >= 2 ? f / 2 : f;
  }

  bool enumerable() const override { return order().value() <= budget_; }

  std::vector<Element> enumerate() const override {
    if (!enumerable())
      throw CapabilityError(name() + " exceeds the element budget");
    std::vector<Element> out;
    std::vector<int> img(n_);
    std::iota(img.begin(), img.end(), 0);
    do {
      Perm p = Perm::from_images(std::vector<int>(img));
      if (!alt_ || p.is_even()) out.emplace_back(std::move(p));
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
  }

  Element element_from_json(const json& j) const override {
    Perm p = perm_from_json(j, n_);
    if (alt_ && !p.is_even())
      throw DomainError("odd permutation given for an alternating group");
    return p;
  }

 private:
  std::string norm_id() const {
    switch (norm_) {
      case PermNorm::Hamming: return "hamming";
      case PermNorm::HammingNormalized: return "hamming_normalized";
      case PermNorm::ConjugacyLength: return "conjugacy_length";
    }
    return "?";
  }

  int n_;
  bool alt_;
  PermNorm norm_;
  std::uint64_t budget_;
  ClassSizeCache classes_;
};

class CyclicAdapter : public GroupAdapter {
 public:
  CyclicAdapter(long long m, bool conj_length, std::uint64_t budget)
      : m_(m), conj_length_(conj_length), budget_(budget) {
    if (m < 2) throw DomainError("cyclic group modulus must be >= 2");
  }

  std::string name() const override {
    return "Z_" + std::to_string(m_) + "(" + (conj_length_ ? "conjugacy_length" : "lee") + ")";
  }

  json descriptor() const override {
    json d = {{"type", "cyclic_lee"}, {"m", m_}};
    if (conj_length_) d["norm"] = "conjugacy_length";
    return d;
  }

  Element identity() const override { return static_cast<long long>(0); }

  Element multiply(const Element& a, const Element& b) const override {
    return (std::get<long long>(a) + std::get<long long>(b)) % m_;
  }

  Element invert(const Element& a) const override {
    return (m_ - std::get<long long>(a)) % m_;
  }

  NormValue norm(const Element& a) const override {
    const long long g = std::get<long long>(a);
    if (conj_length_) return NormValue(Rational(0));  // singleton classes
    return NormValue(Rational(2 * std::min(g, m_ - g), m_));
  }

  std::vector<Element> generators() const override {
    return {static_cast<long long>(1 % m_)};
  }

  std::optional<std::uint64_t> order() const override {
    return static_cast<std::uint64_t>(m_);
  }

  bool enumerable() const override {
    return static_cast<std::uint64_t>(m_) <= budget_;
  }

  std::vector<Element> enumerate() const override {
    if (!enumerable())
      throw CapabilityError(name() + " exceeds the element budget");
    std::vector<Element> out;
    out.reserve(m_);
    for (long long g = 0; g < m_; ++g) out.emplace_back(g);
    return out;
  }

  Element element_from_json(const json& j) const override {
    if (!j.is_number_integer())
      throw DomainError("cyclic group element must be an integer residue");
    long long g = j.get<long long>();
    if (g < 0 || g >= m_) throw DomainError("residue out of range [0, m)");
    return g;
  }

 private:
  long long m_;
  bool conj_length_;
  std::uint64_t budget_;
};

class SlAdapter : public GroupAdapter {
 public:
  SlAdapter(int n, int p, bool conj_length, std::uint64_t budget)
      : n_(n), p_(p), conj_length_(conj_length), budget_(budget) {
    order_ = sl_order(n, p);
  }

  std::string name() const override {
    return "SL_" + std::to_string(n_) + "(F_" + std::to_string(p_) + ")(" +
           (conj_length_ ? "conjugacy_length" : "jordan") + ")";
  }

  json descriptor() const override {
    return {{"type", "sl_fp"},
            {"n", n_},
            {"p", p_},
            {"norm", conj_length_ ? "conjugacy_length" : "jordan"}};
  }

  Element identity() const override { return MatFp::identity(n_, p_); }

  Element multiply(const Element& a, const Element& b) const override {
    return std::get<MatFp>(a) * std::get<MatFp>(b);
  }

  Element invert(const Element& a) const override {
    return std::get<MatFp>(a).inverse();
  }

  NormValue norm(const Element& a) const override {
    if (conj_length_)
      return NormValue::log_ratio(classes_.size_of(*this, a),
                                  static_cast<long long>(order_));
    return NormValue(jordan_length(std::get<MatFp>(a)));
  }

  std::vector<Element> generators() const override {
    std::vector<Element> gens;
    for (auto& t : sl_transvections(n_, p_)) gens.emplace_back(std::move(t));
    return gens;
  }

  std::optional<std::uint64_t> order() const override { return order_; }

  bool enumerable() const override { return order_ <= budget_; }

  std::vector<Element> enumerate() const override {
    std::vector<Element> out;
    for (auto& m : sl_enumerate(n_, p_, budget_)) out.emplace_back(std::move(m));
    return out;
  }

  Element element_from_json(const json& j) const override {
    MatFp m = mat_from_json(j, n_, p_);
    if (m.det() != 1) throw DomainError("matrix is not in SL (det != 1)");
    return m;
  }

 private:
  int n_, p_;
  bool conj_length_;
  std::uint64_t budget_;
  std::uint64_t order_;
  ClassSizeCache classes_;
};

class IetGridAdapter : public GroupAdapter {
 public:
  IetGridAdapter(int resolution, std::uint64_t budget)
      : res_(resolution), budget_(budget) {
    if (resolution < 1) throw DomainError("grid resolution must be >= 1");
  }

  std::string name() const override {
    return "IET_grid_" + std::to_string(res_) + "(iet_support)";
  }

  json descriptor() const override {
    return {{"type", "iet"}, {"resolution", res_}, {"norm", "iet_support"}};
  }

  Element identity() const override { return IetMap::identity(); }

  Element multiply(const Element& a, const Element& b) const override {
    return std::get<IetMap>(a) * std::get<IetMap>(b);
  }

  Element invert(const Element& a) const override {
    return std::get<IetMap>(a).inverse();
  }

  NormValue norm(const Element& a) const override {
    return NormValue(std::get<IetMap>(a).support_norm());
  }

  std::vector<Element> generators() const override {
    SymAdapter sym(res_, false, PermNorm::Hamming, budget_);
    std::vector<Element> gens;
    for (const auto& g : sym.generators())
      gens.emplace_back(embed_perm(std::get<Perm>(g)));
    return gens;
  }

  std::optional<std::uint64_t> order() const override {
    return factorial_checked(res_);
  }

  bool enumerable() const override { return order().value() <= budget_; }

  std::vector<Element> enumerate() const override {
    if (!enumerable())
      throw CapabilityError(name() + " exceeds the element budget");
    SymAdapter sym(res_, false, PermNorm::Hamming, budget_);
    std::vector<Element> out;
    for (const auto& g : sym.enumerate())
      out.emplace_back(embed_perm(std::get<Perm>(g)));
    return out;
  }

  Element element_from_json(const json& j) const override {
    IetMap m = iet_from_json(j);
    for (const auto& l : m.lengths())
      if (res_ % l.den() != 0)
        throw DomainError("IET element is not on the 1/" + std::to_string(res_) +
                          " grid");
    return m;
  }

 private:
  int res_;
  std::uint64_t budget_;
};

class ScaledAdapter : public GroupAdapter {
 public:
  ScaledAdapter(GroupPtr base, Rational c) : base_(std::move(base)), c_(c) {
    if (!(Rational(0) < c)) throw DomainError("norm scale must be positive");
  }

  std::string name() const override {
    return base_->name() + "*scale(" + c_.to_string() + ")";
  }
  json descriptor() const override {
    json d = base_->descriptor();
    d["scale"] = c_.to_string();
    return d;
  }
  Element identity() const override { return base_->identity(); }
  Element multiply(const Element& a, const Element& b) const override {
    return base_->multiply(a, b);
  }
  Element invert(const Element& a) const override { return base_->invert(a); }
  NormValue norm(const Element& a) const override { return base_->norm(a) * c_; }
  std::vector<Element> generators() const override { return base_->generators(); }
  std::optional<std::uint64_t> order() const override { return base_->order(); }
  bool enumerable() const override { return base_->enumerable(); }
  std::vector<Element> enumerate() const override { return base_->enumerate(); }
  std::string key(const Element& e) const override { return base_->key(e); }
  json element_to_json(const Element& e) const override {
    return base_->element_to_json(e);
  }
  Element element_from_json(const json& j) const override {
    return base_->element_from_json(j);
  }

 private:
  GroupPtr base_;
  Rational c_;
};

int require_int(const json& d, const char* field, int lo, int hi) {
  if (!d.contains(field) || !d[field].is_number_integer())
    throw DomainError(std::string("group descriptor needs integer field '") +
                      field + "'");
  long long v = d[field].get<long long>();
  if (v < lo || v > hi)
    throw DomainError(std::string("group descriptor field '") + field +
                      "' out of range");
  return static_cast<int>(v);
}

}  // namespace

GroupPtr make_group(const json& d, std::uint64_t budget) {
  if (!d.is_object() || !d.contains("type") || !d["type"].is_string())
    throw DomainError("group descriptor needs a string field 'type'");
  const std::string type = d["type"].get<std::string>();
  const std::string norm =
      d.contains("norm") ? d["norm"].get<std::string>() : std::string();

  GroupPtr g;
  if (type == "sym" || type == "alt") {
    const int n = require_int(d, "n", 1, 20);
    PermNorm pn = PermNorm::Hamming;
    if (norm == "hamming_normalized") pn = PermNorm::HammingNormalized;
    else if (norm == "conjugacy_length") pn = PermNorm::ConjugacyLength;
    else if (!norm.empty() && norm != "hamming")
      throw DomainError("norm '" + norm + "' is not defined on " + type);
    g = std::make_shared<SymAdapter>(n, type == "alt", pn, budget);
  } else if (type == "cyclic_lee") {
    if (!d.contains("m")) throw DomainError("cyclic_lee descriptor needs 'm'");
    const long long m = d["m"].get<long long>();
    if (!norm.empty() && norm != "lee" && norm != "conjugacy_length")
      throw DomainError("norm '" + norm + "' is not defined on cyclic_lee");
    g = std::make_shared<CyclicAdapter>(m, norm == "conjugacy_length", budget);
  } else if (type == "sl_fp") {
    const int n = require_int(d, "n", 2, 8);
    const int p = require_int(d, "p", 2, 97);
    if (!norm.empty() && norm != "jordan" && norm != "conjugacy_length")
      throw DomainError("norm '" + norm + "' is not defined on sl_fp");
    g = std::make_shared<SlAdapter>(n, p, norm == "conjugacy_length", budget);
  } else if (type == "iet") {
    const int res = require_int(d, "resolution", 1, 12);
    if (!norm.empty() && norm != "iet_support")
      throw DomainError("norm '" + norm + "' is not defined on iet");
    g = std::make_shared<IetGridAdapter>(res, budget);
  } else {
    throw DomainError("unknown group type '" + type + "'");
  }

  if (d.contains("scale"))
    g = scale_norm(g, Rational::parse(d["scale"].get<std::string>()));
  return g;
}

GroupPtr scale_norm(GroupPtr base, const Rational& c) {
  return std::make_shared<ScaledAdapter>(std::move(base), c);
}

std::vector<Element> conjugacy_class_of(const GroupAdapter& group, const Element& g,
                                        std::uint64_t budget) {
  std::vector<Element> gens = group.generators();
  std::vector<Element> orbit{g};
  std::unordered_set<std::string> seen{group.key(g)};
  std::deque<Element> frontier{g};
  while (!frontier.empty()) {
    Element x = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& s : gens) {
      Element y = group.conjugate(x, s);
      if (seen.insert(group.key(y)).second) {
        if (orbit.size() >= budget)
          throw CapabilityError("conjugacy class exceeds the element budget");
        orbit.push_back(y);
        frontier.push_back(std::move(y));
      }
    }
  }
  return orbit;
}

nlohmann::json adapter_catalog() {
  return nlohmann::json{
      {"group_types",
       {{{"type", "sym"}, {"fields", {"n"}}, {"norms", {"hamming", "hamming_normalized", "conjugacy_length"}}},
        {{"type", "alt"}, {"fields", {"n"}}, {"norms", {"hamming", "hamming_normalized", "conjugacy_length"}}},
        {{"type", "cyclic_lee"}, {"fields", {"m"}}, {"norms", {"lee", "conjugacy_length"}}},
        {{"type", "sl_fp"}, {"fields", {"n", "p"}}, {"norms", {"jordan", "conjugacy_length"}}},
        {{"type", "iet"}, {"fields", {"resolution"}}, {"norms", {"iet_support"}}}}},
      {"norm_ids",
       {"hamming", "hamming_normalized", "lee", "conjugacy_length", "jordan",
        "iet_support"}},
      {"scale_wrapper", "any descriptor may set \"scale\":\"p/q\""}};
}

}  // namespace ngv
