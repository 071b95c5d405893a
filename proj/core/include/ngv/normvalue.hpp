#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ngv/rational.hpp"

namespace ngv {

/// Exact value of a bi-invariant norm.
///
/// Most norms in the catalog are rational-valued. The conjugacy-length
/// pseudo-norm takes values log(a)/log(L) with integers a = |g^G| and L = |G|,
/// which are irrational in general. A NormValue is
///
///     rat + log(prod_i a_i^{e_i}) / (scale * log(base))
///
/// so that sums and positive rational multiples of log-ratio values stay
/// representable. Comparisons are decided exactly by cross-multiplying
/// exponentials (big-integer powers), never by floating point. Values from
/// groups with different log bases are incomparable and raise DomainError.
class NormValue {
 public:
  NormValue() = default;
  NormValue(const Rational& r) : rat_(r) {}
  NormValue(long long n) : rat_(n) {}

  /// log(arg)/log(base) with integer arg >= 1, base >= 2.
  static NormValue log_ratio(long long arg, long long base);

  bool is_rational() const { return factors_.empty(); }
  const Rational& rational_part() const { return rat_; }
  /// Rational value; throws DomainError when a log part is present.
  Rational as_rational() const;

  bool is_zero() const { return factors_.empty() && rat_.is_zero(); }

  NormValue operator+(const NormValue& o) const;
  NormValue operator*(const Rational& c) const;  // c > 0

  bool operator==(const NormValue& o) const { return compare(o) == 0; }
  bool operator!=(const NormValue& o) const { return compare(o) != 0; }
  bool operator<(const NormValue& o) const { return compare(o) < 0; }
  bool operator<=(const NormValue& o) const { return compare(o) <= 0; }
  bool operator>(const NormValue& o) const { return compare(o) > 0; }
  bool operator>=(const NormValue& o) const { return compare(o) >= 0; }

  /// -1 / 0 / +1, decided exactly.
  int compare(const NormValue& o) const;

  /// "p/q" for rational values; a fixed-precision decimal plus the exact
  /// log-ratio data otherwise. For reports and logs only.
  std::string to_string() const;

  /// Decimal at 12 significant digits; reporting only, never a verdict.
  std::string to_decimal_string() const;

  double to_double() const;

  long long log_base() const { return base_; }
  long long log_scale() const { return scale_; }
  const std::vector<std::pair<long long, long long>>& log_factors() const {
    return factors_;
  }

 private:
  void normalize();

  Rational rat_;
  // Product of arg^exp terms inside one log; empty means purely rational.
  std::vector<std::pair<long long, long long>> factors_;
  long long scale_ = 1;
  long long base_ = 0;
};

}  // namespace ngv
