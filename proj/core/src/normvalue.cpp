#include "ngv/normvalue.hpp"

#include <gmp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "ngv/errors.hpp"

namespace ngv {

namespace {

// RAII wrapper around a single mpz_t; just enough surface for the
// cross-multiplied power comparisons below.
class BigInt {
 public:
  BigInt() { mpz_init_set_ui(z_, 1); }
  ~BigInt() { mpz_clear(z_); }
  BigInt(const BigInt&) = delete;
  BigInt& operator=(const BigInt&) = delete;

  void mul_pow(long long base, long long exp) {
    if (base <= 0 || exp < 0) throw DomainError("invalid log factor");
    mpz_t p;
    mpz_init(p);
    mpz_ui_pow_ui(p, static_cast<unsigned long>(base),
                  static_cast<unsigned long>(exp));
    mpz_mul(z_, z_, p);
    mpz_clear(p);
  }

  int cmp(const BigInt& o) const { return mpz_cmp(z_, o.z_); }

 private:
  mpz_t z_;
};

long long checked_mul(long long a, long long b) {
  __int128 p = static_cast<__int128>(a) * b;
  if (p > std::numeric_limits<long long>::max() ||
      p < std::numeric_limits<long long>::min())
    throw std::overflow_error("norm value exponent overflow");
  return static_cast<long long>(p);
}

}  // namespace

NormValue NormValue::log_ratio(long long arg, long long base) {
  if (arg < 1 || base < 2) throw DomainError("log_ratio requires arg>=1, base>=2");
  NormValue v;
  v.factors_ = {{arg, 1}};
  v.scale_ = 1;
  v.base_ = base;
  v.normalize();
  return v;
}

void NormValue::normalize() {
  std::erase_if(factors_, [](const auto& f) { return f.first == 1; });
  std::sort(factors_.begin(), factors_.end());
  // Merge duplicate bases.
  std::vector<std::pair<long long, long long>> merged;
  for (const auto& f : factors_) {
    if (!merged.empty() && merged.back().first == f.first)
      merged.back().second += f.second;
    else
      merged.push_back(f);
  }
  factors_ = std::move(merged);
  if (factors_.empty()) {
    scale_ = 1;
    base_ = 0;
  }
}

Rational NormValue::as_rational() const {
  if (!is_rational()) throw DomainError("norm value has an irrational log part");
  return rat_;
}

NormValue NormValue::operator+(const NormValue& o) const {
  NormValue r;
  r.rat_ = rat_ + o.rat_;
  if (factors_.empty()) {
    r.factors_ = o.factors_;
    r.scale_ = o.scale_;
    r.base_ = o.base_;
  } else if (o.factors_.empty()) {
    r.factors_ = factors_;
    r.scale_ = scale_;
    r.base_ = base_;
  } else {
    if (base_ != o.base_)
      throw DomainError("cannot add norm values over different log bases");
    long long g = std::gcd(scale_, o.scale_);
    long long s = checked_mul(scale_ / g, o.scale_);
    r.scale_ = s;
    r.base_ = base_;
    for (const auto& f : factors_)
      r.factors_.emplace_back(f.first, checked_mul(f.second, s / scale_));
    for (const auto& f : o.factors_)
      r.factors_.emplace_back(f.first, checked_mul(f.second, s / o.scale_));
  }
  r.normalize();
  return r;
}

NormValue NormValue::operator*(const Rational& c) const {
  if (c.is_negative()) throw DomainError("norm values scale by positive rationals");
  NormValue r;
  r.rat_ = rat_ * c;
  if (!factors_.empty() && !c.is_zero()) {
    r.base_ = base_;
    r.scale_ = checked_mul(scale_, c.den());
    for (const auto& f : factors_)
      r.factors_.emplace_back(f.first, checked_mul(f.second, c.num()));
  }
  r.normalize();
  return r;
}

int NormValue::compare(const NormValue& o) const {
  if (factors_.empty() && o.factors_.empty()) {
    if (rat_ < o.rat_) return -1;
    return rat_ == o.rat_ ? 0 : 1;
  }
  long long base = factors_.empty() ? o.base_ : base_;
  if (!factors_.empty() && !o.factors_.empty() && base_ != o.base_)
    throw DomainError("cannot compare norm values over different log bases");

  // this - o = d + [log(K^{s2}) - log(M^{s1})]/(s1*s2*log base), d = p/q.
  // Sign equals sign of log(base^{p*S} * K^{q*s2} / M^{q*s1}) for p >= 0,
  // and similarly with the power of base moved across for p < 0.
  Rational d = rat_ - o.rat_;
  long long s1 = scale_, s2 = o.scale_;
  long long S = checked_mul(s1, s2);
  long long p = d.num(), q = d.den();

  BigInt lhs, rhs;
  for (const auto& f : factors_)
    lhs.mul_pow(f.first, checked_mul(f.second, checked_mul(q, s2)));
  for (const auto& f : o.factors_)
    rhs.mul_pow(f.first, checked_mul(f.second, checked_mul(q, s1)));
  if (p >= 0)
    lhs.mul_pow(base, checked_mul(p, S));
  else
    rhs.mul_pow(base, checked_mul(-p, S));
  return lhs.cmp(rhs);
}

double NormValue::to_double() const {
  double v = rat_.to_double();
  if (!factors_.empty()) {
    double lg = 0.0;
    for (const auto& f : factors_)
      lg += static_cast<double>(f.second) * std::log(static_cast<double>(f.first));
    v += lg / (static_cast<double>(scale_) * std::log(static_cast<double>(base_)));
  }
  return v;
}

std::string NormValue::to_decimal_string() const {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", to_double());
  return buf;
}

std::string NormValue::to_string() const {
  if (is_rational()) return rat_.to_string();
  return to_decimal_string();
}

}  // namespace ngv
