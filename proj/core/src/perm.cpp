#include "ngv/perm.hpp"

#include <algorithm>
#include <numeric>

#include "ngv/errors.hpp"

namespace ngv {

Perm::Perm(int degree) {
  if (degree < 0) throw DomainError("negative permutation degree");
  img_.resize(degree);
  std::iota(img_.begin(), img_.end(), 0);
}

Perm Perm::from_images(std::vector<int> images) {
  const int n = static_cast<int>(images.size());
  std::vector<char> seen(n, 0);
  for (int v : images) {
    if (v < 0 || v >= n || seen[v])
      throw DomainError("one-line array is not a permutation");
    seen[v] = 1;
  }
  Perm p(n);
  p.img_ = std::move(images);
  return p;
}

Perm Perm::from_one_line(const std::vector<int>& images_one_based) {
  std::vector<int> img;
  img.reserve(images_one_based.size());
  for (int v : images_one_based) img.push_back(v - 1);
  return from_images(std::move(img));
}

Perm Perm::operator*(const Perm& o) const {
  if (degree() != o.degree())
    throw DomainError("composing permutations of different degrees");
  std::vector<int> img(img_.size());
  for (size_t x = 0; x < img_.size(); ++x) img[x] = o.img_[img_[x]];
  Perm p(degree());
  p.img_ = std::move(img);
  return p;
}

Perm Perm::inverse() const {
  std::vector<int> img(img_.size());
  for (size_t x = 0; x < img_.size(); ++x) img[img_[x]] = static_cast<int>(x);
  Perm p(degree());
  p.img_ = std::move(img);
  return p;
}

Perm Perm::conjugate_by(const Perm& h) const {
  return h.inverse() * (*this) * h;
}

bool Perm::is_identity() const {
  for (size_t x = 0; x < img_.size(); ++x)
    if (img_[x] != static_cast<int>(x)) return false;
  return true;
}

int Perm::hamming_norm() const {
  int count = 0;
  for (size_t x = 0; x < img_.size(); ++x)
    if (img_[x] != static_cast<int>(x)) ++count;
  return count;
}

std::vector<int> Perm::support() const {
  std::vector<int> s;
  for (size_t x = 0; x < img_.size(); ++x)
    if (img_[x] != static_cast<int>(x)) s.push_back(static_cast<int>(x));
  return s;
}

std::vector<std::vector<int>> Perm::cycles(bool include_fixed) const {
  std::vector<std::vector<int>> out;
  std::vector<char> done(img_.size(), 0);
  for (size_t start = 0; start < img_.size(); ++start) {
    if (done[start]) continue;
    std::vector<int> cyc;
    int x = static_cast<int>(start);
    do {
      done[x] = 1;
      cyc.push_back(x);
      x = img_[x];
    } while (x != static_cast<int>(start));
    if (cyc.size() > 1 || include_fixed) out.push_back(std::move(cyc));
  }
  return out;
}

std::vector<int> Perm::cycle_type(bool include_fixed) const {
  std::vector<int> type;
  for (const auto& c : cycles(include_fixed)) type.push_back(static_cast<int>(c.size()));
  std::sort(type.rbegin(), type.rend());
  return type;
}

bool Perm::is_even() const {
  int transpositions = 0;
  for (const auto& c : cycles()) transpositions += static_cast<int>(c.size()) - 1;
  return transpositions % 2 == 0;
}

std::string Perm::to_cycle_string() const {
  auto cs = cycles();
  if (cs.empty()) return "()";
  std::string out;
  for (const auto& c : cs) {
    out += '(';
    for (size_t i = 0; i < c.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(c[i] + 1);
    }
    out += ')';
  }
  return out;
}

std::vector<int> Perm::one_line() const {
  std::vector<int> out;
  out.reserve(img_.size());
  for (int v : img_) out.push_back(v + 1);
  return out;
}

std::string Perm::to_one_line_string() const {
  std::string out = "[";
  for (size_t i = 0; i < img_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(img_[i] + 1);
  }
  return out + "]";
}

Perm Perm::parse(std::string_view text, int degree) {
  // Strip whitespace at both ends.
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t'))
    text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t'))
    text.remove_suffix(1);
  if (text.empty() || text == "()") return Perm(degree);

  auto read_ints = [](std::string_view s, std::string_view seps) {
    std::vector<int> vals;
    int cur = 0;
    bool in_num = false, neg = false;
    for (char ch : s) {
      if (ch >= '0' && ch <= '9') {
        cur = cur * 10 + (ch - '0');
        in_num = true;
      } else if (ch == '-' && !in_num) {
        neg = true;
      } else if (seps.find(ch) != std::string_view::npos || ch == ' ') {
        if (in_num) vals.push_back(neg ? -cur : cur);
        cur = 0;
        in_num = false;
        neg = false;
      } else {
        throw DomainError("malformed permutation: '" + std::string(s) + "'");
      }
    }
    if (in_num) vals.push_back(neg ? -cur : cur);
    return vals;
  };

  if (text.front() == '[') {
    if (text.back() != ']') throw DomainError("unterminated one-line permutation");
    auto vals = read_ints(text.substr(1, text.size() - 2), ",");
    if (static_cast<int>(vals.size()) != degree)
      throw DomainError("one-line permutation has wrong degree");
    return from_one_line(vals);
  }
  if (text.front() == '(') {
    std::vector<int> img(degree);
    std::iota(img.begin(), img.end(), 0);
    size_t pos = 0;
    while (pos < text.size()) {
      if (text[pos] != '(') throw DomainError("malformed cycle notation");
      size_t close = text.find(')', pos);
      if (close == std::string_view::npos)
        throw DomainError("unterminated cycle");
      auto pts = read_ints(text.substr(pos + 1, close - pos - 1), ", ");
      for (size_t i = 0; i < pts.size(); ++i) {
        int from = pts[i] - 1;
        int to = pts[(i + 1) % pts.size()] - 1;
        if (from < 0 || from >= degree || to < 0 || to >= degree)
          throw DomainError("cycle point out of range");
        if (img[from] != from)
          throw DomainError("repeated point in cycle notation");
        img[from] = to;
      }
      pos = close + 1;
      while (pos < text.size() && text[pos] == ' ') ++pos;
    }
    return from_images(std::move(img));
  }
  throw DomainError("unrecognized permutation format: '" + std::string(text) + "'");
}

}  // namespace ngv
