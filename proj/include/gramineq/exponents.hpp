#pragma once

#include <span>
#include <string>

#include "gramineq/errors.hpp"

namespace gramineq {

/// A Holder exponent: 1, a finite value > 1, or infinity. The conjugate
/// (1/p + 1/q = 1) is always derived, with 1 <-> infinity.
class Exponent {
 public:
  enum class Kind { One, Finite, Infinity };

  static Exponent one() { return Exponent(Kind::One, 1.0); }
  static Exponent infinity() { return Exponent(Kind::Infinity, 0.0); }
  static Exponent finite(double v);

  Kind kind() const { return kind_; }
  bool is_one() const { return kind_ == Kind::One; }
  bool is_finite() const { return kind_ == Kind::Finite; }
  bool is_infinity() const { return kind_ == Kind::Infinity; }

  /// Finite value; only meaningful when is_finite().
  double value() const { return value_; }

  Exponent conjugate() const;

  /// 1/p: 1 for p=1, 1/v for finite v, 0 for p=infinity.
  double inverse() const;

  std::string str() const;

  bool operator==(const Exponent& o) const {
    return kind_ == o.kind_ && (kind_ != Kind::Finite || value_ == o.value_);
  }

 private:
  Exponent(Kind k, double v) : kind_(k), value_(v) {}
  Kind kind_;
  double value_;
};

/// The p-"norm" of a nonnegative sequence under the exponent trichotomy:
/// plain sum for p=1, (sum x^p)^(1/p) for finite p, max for p=infinity.
/// Empty input gives 0 in every case. Scaled internally so large exponents
/// do not overflow.
double holder_norm(std::span<const double> xs, const Exponent& e);

}  // namespace gramineq
