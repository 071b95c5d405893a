#include "ngv/iet.hpp"

#include <algorithm>
#include <numeric>

#include "ngv/errors.hpp"

namespace ngv {

namespace {

std::vector<Rational> starts_of(const std::vector<Rational>& lengths) {
  std::vector<Rational> s;
  s.reserve(lengths.size());
  Rational acc(0);
  for (const auto& l : lengths) {
    s.push_back(acc);
    acc += l;
  }
  return s;
}

}  // namespace

// Builds a canonical map from (length, offset) pieces listed in source order.
IetMap iet_from_pieces(std::vector<std::pair<Rational, Rational>> pieces) {
  // Merge consecutive pieces with equal offsets.
  std::vector<std::pair<Rational, Rational>> merged;
  for (auto& pc : pieces) {
    if (pc.first.is_zero()) continue;
    if (!merged.empty() && merged.back().second == pc.second)
      merged.back().first += pc.first;
    else
      merged.push_back(pc);
  }
  if (merged.empty()) throw DomainError("empty interval exchange");

  // Destination slots follow the order of destination starts.
  std::vector<Rational> dest_start;
  Rational src(0);
  for (const auto& pc : merged) {
    dest_start.push_back(src + pc.second);
    src += pc.first;
  }
  if (src != Rational(1)) throw DomainError("interval lengths must sum to 1");

  std::vector<int> order(merged.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return dest_start[a] < dest_start[b]; });
  std::vector<int> dest(merged.size());
  for (size_t slot = 0; slot < order.size(); ++slot) dest[order[slot]] = static_cast<int>(slot);

  // Destination intervals must tile [0,1): same lengths, starts in slot order.
  Rational at(0);
  for (size_t slot = 0; slot < order.size(); ++slot) {
    const int i = order[slot];
    if (dest_start[i] != at)
      throw DomainError("interval exchange pieces do not tile [0,1)");
    at += merged[i].first;
  }

  IetMap m;
  m.len_.clear();
  m.dest_ = std::move(dest);
  m.off_.clear();
  for (auto& pc : merged) {
    m.len_.push_back(pc.first);
    m.off_.push_back(pc.second);
  }
  return m;
}

IetMap::IetMap() : len_{Rational(1)}, dest_{0}, off_{Rational(0)} {}

IetMap::IetMap(std::vector<Rational> lengths, std::vector<int> dest) {
  if (lengths.empty() || lengths.size() != dest.size())
    throw DomainError("interval exchange needs matching lengths and destinations");
  const size_t k = lengths.size();
  std::vector<char> seen(k, 0);
  for (int d : dest) {
    if (d < 0 || static_cast<size_t>(d) >= k || seen[d])
      throw DomainError("destination list is not a permutation");
    seen[d] = 1;
  }
  Rational sum(0);
  for (const auto& l : lengths) {
    if (!(Rational(0) < l)) throw DomainError("interval lengths must be positive");
    sum += l;
  }
  if (sum != Rational(1)) throw DomainError("interval lengths must sum to 1");

  // Destination start of piece i = total length of pieces with earlier slots.
  std::vector<Rational> dest_start(k, Rational(0));
  {
    std::vector<int> by_slot(k);
    for (size_t i = 0; i < k; ++i) by_slot[dest[i]] = static_cast<int>(i);
    Rational acc(0);
    for (size_t slot = 0; slot < k; ++slot) {
      dest_start[by_slot[slot]] = acc;
      acc += lengths[by_slot[slot]];
    }
  }
  auto src_start = starts_of(lengths);
  std::vector<std::pair<Rational, Rational>> pieces;
  pieces.reserve(k);
  for (size_t i = 0; i < k; ++i)
    pieces.emplace_back(lengths[i], dest_start[i] - src_start[i]);
  *this = iet_from_pieces(std::move(pieces));
}

Rational IetMap::source_start(size_t i) const {
  Rational acc(0);
  for (size_t j = 0; j < i; ++j) acc += len_[j];
  return acc;
}

Rational IetMap::offset(size_t i) const { return off_[i]; }

Rational IetMap::apply(const Rational& x) const {
  if (x < Rational(0) || !(x < Rational(1)))
    throw DomainError("interval exchange applied outside [0,1)");
  Rational start(0);
  for (size_t i = 0; i < len_.size(); ++i) {
    const Rational end = start + len_[i];
    if (x < end) return x + off_[i];
    start = end;
  }
  throw std::logic_error("interval lookup fell off [0,1)");
}

IetMap IetMap::operator*(const IetMap& o) const {
  // Cut at our own breakpoints and at preimages of o's breakpoints.
  const IetMap inv = inverse();
  std::vector<Rational> cuts;
  Rational acc(0);
  for (const auto& l : len_) {
    cuts.push_back(acc);
    acc += l;
  }
  acc = Rational(0);
  for (const auto& l : o.len_) {
    if (!acc.is_zero()) cuts.push_back(inv.apply(acc));
    acc += l;
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(Rational(1));

  std::vector<std::pair<Rational, Rational>> pieces;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Rational& x = cuts[i];
    const Rational mid = apply(x);
    pieces.emplace_back(cuts[i + 1] - x, (o.apply(mid) - mid) + (mid - x));
  }
  return iet_from_pieces(std::move(pieces));
}

IetMap IetMap::inverse() const {
  // Destination intervals become source intervals; offsets negate.
  std::vector<int> by_slot(len_.size());
  for (size_t i = 0; i < len_.size(); ++i) by_slot[dest_[i]] = static_cast<int>(i);
  std::vector<std::pair<Rational, Rational>> pieces;
  pieces.reserve(len_.size());
  for (size_t slot = 0; slot < by_slot.size(); ++slot) {
    const int i = by_slot[slot];
    pieces.emplace_back(len_[i], -off_[i]);
  }
  return iet_from_pieces(std::move(pieces));
}

Rational IetMap::support_norm() const {
  Rational total(0);
  for (size_t i = 0; i < len_.size(); ++i)
    if (!off_[i].is_zero()) total += len_[i];
  return total;
}

std::string IetMap::key() const {
  std::string k;
  for (size_t i = 0; i < len_.size(); ++i) {
    if (i) k += '|';
    k += len_[i].to_string();
    k += '>';
    k += std::to_string(dest_[i]);
  }
  return k;
}

IetMap embed_perm(const Perm& delta) {
  const int n = delta.degree();
  if (n == 0) return IetMap();
  std::vector<Rational> lengths(n, Rational(1, n));
  std::vector<int> dest(n);
  for (int i = 0; i < n; ++i) dest[i] = delta.image(i);
  return IetMap(std::move(lengths), std::move(dest));
}

DiscretizeResult discretize(const IetMap& h, int n) {
  if (n < 1) throw DomainError("grid resolution must be positive");
  const size_t k = h.pieces();
  std::vector<Rational> brk;
  {
    Rational acc(0);
    for (size_t i = 0; i <= k; ++i) {
      brk.push_back(acc);
      if (i < k) acc += h.lengths()[i];
    }
  }
  // Snap each breakpoint down to the grid.
  std::vector<long long> snapped(k + 1);
  for (size_t i = 0; i <= k; ++i) {
    const Rational scaled = brk[i] * Rational(n);
    snapped[i] = scaled.num() / scaled.den();  // floor of a nonnegative value
  }
  snapped[k] = n;
  for (size_t i = 0; i + 1 <= k; ++i)
    if (snapped[i] >= snapped[i + 1])
      throw DomainError(
          "grid too coarse: snapped breakpoints collide (gap condition "
          "1/n < min piece length fails)");

  std::vector<Rational> lengths(k);
  for (size_t i = 0; i < k; ++i)
    lengths[i] = Rational(snapped[i + 1] - snapped[i], n);
  std::vector<int> dest(h.destinations());
  IetMap hp(std::move(lengths), std::move(dest));

  // Read off the cell permutation of the snapped map.
  std::vector<int> img(n);
  for (int j = 0; j < n; ++j) {
    const Rational y = hp.apply(Rational(j, n)) * Rational(n);
    img[j] = static_cast<int>(y.num() / y.den());
  }
  Perm sigma = Perm::from_images(std::move(img));
  if (embed_perm(sigma) != hp)
    throw std::logic_error("snapped map is not a grid exchange");

  return {sigma, hp, (hp * h.inverse()).support_norm()};
}

}  // namespace ngv
