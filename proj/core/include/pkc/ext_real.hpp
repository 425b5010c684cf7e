#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace pkc {

/// Nonnegative real with a binary exponent wide enough for model counts far
/// outside double range. Value is mantissa * 2^exp2, mantissa in [1, 2), and
/// zero is stored as (0, 0).
class ExtReal {
 public:
  constexpr ExtReal() = default;

  /// `value` must be finite and >= 0.
  static ExtReal from_double(double value);
  static ExtReal pow2(std::int64_t k);
  /// Parses plain decimals ("24", "0.5") and E-notation ("5.62E+310").
  static ExtReal from_decimal(std::string_view text);

  double mantissa() const { return mantissa_; }
  std::int64_t exp2() const { return exp2_; }
  bool is_zero() const { return mantissa_ == 0.0; }

  /// Saturates to +inf / 0 outside double range.
  double to_double() const;
  /// log2 of the value; -inf for zero.
  long double log2() const;

  ExtReal& operator+=(const ExtReal& other);
  ExtReal& operator*=(const ExtReal& other);
  /// 0 / 0 is 0; nonzero / 0 throws std::domain_error.
  ExtReal& operator/=(const ExtReal& other);

  /// Multiply by a finite real r >= 0.
  ExtReal scaled(double r) const;

  friend ExtReal operator+(ExtReal a, const ExtReal& b) { return a += b; }
  friend ExtReal operator*(ExtReal a, const ExtReal& b) { return a *= b; }
  friend ExtReal operator/(ExtReal a, const ExtReal& b) { return a /= b; }

  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    return a.mantissa_ == b.mantissa_ && a.exp2_ == b.exp2_;
  }
  friend std::weak_ordering operator<=>(const ExtReal& a, const ExtReal& b);

  /// "d.ddE+xx" with `significant_digits` digits; zero prints as "0".
  std::string to_decimal(int significant_digits = 3) const;

  /// Relative difference |a-b| / max(|a|,|b|), 0 when both are zero.
  static double relative_difference(const ExtReal& a, const ExtReal& b);

 private:
  ExtReal(double mantissa, std::int64_t exp2) : mantissa_(mantissa), exp2_(exp2) {}
  static ExtReal normalized(double mantissa, std::int64_t exp2);

  double mantissa_ = 0.0;
  std::int64_t exp2_ = 0;
};

}  // namespace pkc
