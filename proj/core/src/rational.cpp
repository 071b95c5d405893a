#include "ngv/rational.hpp"

#include <charconv>
#include <limits>
#include <stdexcept>

#include "ngv/errors.hpp"

namespace ngv {

namespace {

__int128 abs128(__int128 x) { return x < 0 ? -x : x; }

__int128 gcd128(__int128 a, __int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr __int128 kInt64Max = std::numeric_limits<long long>::max();
constexpr __int128 kInt64Min = std::numeric_limits<long long>::min();

}  // namespace

Rational Rational::make(__int128 num, __int128 den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num > kInt64Max || num < kInt64Min || den > kInt64Max)
    throw std::overflow_error("rational out of int64 range");
  Rational r;
  r.num_ = static_cast<long long>(num);
  r.den_ = static_cast<long long>(den);
  return r;
}

Rational::Rational(long long num, long long den) {
  *this = make(static_cast<__int128>(num), static_cast<__int128>(den));
}

Rational Rational::operator-() const { return make(-__int128(num_), den_); }

Rational Rational::operator+(const Rational& o) const {
  return make(__int128(num_) * o.den_ + __int128(o.num_) * den_,
              __int128(den_) * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
  return make(__int128(num_) * o.den_ - __int128(o.num_) * den_,
              __int128(den_) * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
  return make(__int128(num_) * o.num_, __int128(den_) * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw DomainError("rational division by zero");
  return make(__int128(num_) * o.den_, __int128(den_) * o.num_);
}

bool Rational::operator<(const Rational& o) const {
  return __int128(num_) * o.den_ < __int128(o.num_) * den_;
}

std::string Rational::to_string() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [](std::string_view s) -> long long {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw DomainError("malformed rational: '" + std::string(s) + "'");
    return value;
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  long long num = parse_int(text.substr(0, slash));
  long long den = parse_int(text.substr(slash + 1));
  return Rational(num, den);
}

}  // namespace ngv
