#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace ngv {

/// Exact rational number on int64 storage.
///
/// Every operation normalizes to lowest terms with a positive denominator.
/// Intermediate products are carried in __int128; results that do not fit in
/// int64 throw std::overflow_error instead of wrapping. Comparisons are always
/// exact (cross multiplication cannot overflow the 128-bit intermediates).
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}
  Rational(long long num, long long den);

  /// Parses "p/q" or a bare integer "p". Throws DomainError on junk.
  static Rational parse(std::string_view text);

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  bool is_integer() const { return den_ == 1; }

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  bool operator==(const Rational& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;
  bool operator<=(const Rational& o) const { return !(o < *this); }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return !(*this < o); }

  /// Lowest-terms "p/q" form, e.g. "3/4", "0/1", "7/1".
  std::string to_string() const;

  /// Decimal rendering for human-readable summaries only; never used in a
  /// verdict path.
  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  static Rational min(const Rational& a, const Rational& b) {
    return a < b ? a : b;
  }
  static Rational max(const Rational& a, const Rational& b) {
    return a < b ? b : a;
  }

 private:
  static Rational make(__int128 num, __int128 den);

  long long num_;
  long long den_;  // > 0
};

}  // namespace ngv

template <>
struct std::hash<ngv::Rational> {
  size_t operator()(const ngv::Rational& r) const {
    size_t h = std::hash<long long>{}(r.num());
    return h ^ (std::hash<long long>{}(r.den()) + 0x9e3779b97f4a7c15ULL +
                (h << 6) + (h >> 2));
  }
};
