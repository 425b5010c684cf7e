#include "pkc/ext_real.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace pkc {

ExtReal ExtReal::normalized(double mantissa, std::int64_t exp2) {
  if (mantissa == 0.0) return ExtReal{};
  if (!std::isfinite(mantissa) || mantissa < 0.0)
    throw std::domain_error("ExtReal: mantissa must be finite and nonnegative");
  int shift = 0;
  double m = std::frexp(mantissa, &shift);  // m in [0.5, 1)
  return ExtReal{m * 2.0, exp2 + shift - 1};
}

ExtReal ExtReal::from_double(double value) { return normalized(value, 0); }

ExtReal ExtReal::pow2(std::int64_t k) { return ExtReal{1.0, k}; }

ExtReal ExtReal::from_decimal(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("ExtReal: empty decimal");
  if (s == "0") return ExtReal{};
  auto epos = s.find_first_of("eE");
  std::string mant_text = s.substr(0, epos);
  long long dec_exp = 0;
  if (epos != std::string::npos) {
    std::size_t used = 0;
    dec_exp = std::stoll(s.substr(epos + 1), &used);
    if (used != s.size() - epos - 1) throw std::invalid_argument("ExtReal: bad exponent in '" + s + "'");
  }
  std::size_t used = 0;
  long double mant = std::stold(mant_text, &used);
  if (used != mant_text.size() || mant < 0 || !std::isfinite(mant))
    throw std::invalid_argument("ExtReal: bad mantissa in '" + s + "'");
  if (mant == 0) return ExtReal{};
  if (dec_exp == 0) {
    int shift = 0;
    long double m = std::frexp(mant, &shift);
    return normalized(static_cast<double>(m * 2), shift - 1);
  }
  long double lg = std::log2(mant) + static_cast<long double>(dec_exp) * std::log2(10.0L);
  long double whole = std::floor(lg);
  double m = static_cast<double>(std::exp2(lg - whole));
  return normalized(m, static_cast<std::int64_t>(whole));
}

double ExtReal::to_double() const {
  if (is_zero()) return 0.0;
  if (exp2_ > std::numeric_limits<double>::max_exponent) return std::numeric_limits<double>::infinity();
  if (exp2_ < std::numeric_limits<double>::min_exponent - 60) return 0.0;
  return std::ldexp(mantissa_, static_cast<int>(exp2_));
}

long double ExtReal::log2() const {
  if (is_zero()) return -std::numeric_limits<long double>::infinity();
  return std::log2(static_cast<long double>(mantissa_)) + static_cast<long double>(exp2_);
}

ExtReal& ExtReal::operator+=(const ExtReal& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) return *this = other;
  const ExtReal& big = exp2_ >= other.exp2_ ? *this : other;
  const ExtReal& small = exp2_ >= other.exp2_ ? other : *this;
  std::int64_t gap = big.exp2_ - small.exp2_;
  if (gap > 64) return *this = big;
  double sum = big.mantissa_ + std::ldexp(small.mantissa_, -static_cast<int>(gap));
  return *this = normalized(sum, big.exp2_);
}

ExtReal& ExtReal::operator*=(const ExtReal& other) {
  if (is_zero() || other.is_zero()) return *this = ExtReal{};
  return *this = normalized(mantissa_ * other.mantissa_, exp2_ + other.exp2_);
}

ExtReal& ExtReal::operator/=(const ExtReal& other) {
  if (other.is_zero()) {
    if (is_zero()) return *this;
    throw std::domain_error("ExtReal: division of a nonzero value by zero");
  }
  if (is_zero()) return *this;
  return *this = normalized(mantissa_ / other.mantissa_, exp2_ - other.exp2_);
}

ExtReal ExtReal::scaled(double r) const {
  if (!std::isfinite(r) || r < 0.0) throw std::domain_error("ExtReal: scale factor must be finite and nonnegative");
  if (is_zero() || r == 0.0) return ExtReal{};
  int shift = 0;
  double m = std::frexp(r, &shift);
  return normalized(mantissa_ * m, exp2_ + shift);
}

std::weak_ordering operator<=>(const ExtReal& a, const ExtReal& b) {
  if (a.is_zero() || b.is_zero()) {
    if (a.is_zero() && b.is_zero()) return std::weak_ordering::equivalent;
    return a.is_zero() ? std::weak_ordering::less : std::weak_ordering::greater;
  }
  if (a.exp2_ != b.exp2_) return a.exp2_ <=> b.exp2_;
  if (a.mantissa_ < b.mantissa_) return std::weak_ordering::less;
  if (a.mantissa_ > b.mantissa_) return std::weak_ordering::greater;
  return std::weak_ordering::equivalent;
}

std::string ExtReal::to_decimal(int significant_digits) const {
  if (is_zero()) return "0";
  if (significant_digits < 1) significant_digits = 1;
  // log10(value) split into an integer decade and a fraction; long double
  // keeps about 19 digits, enough for the fraction up to |exp2| ~ 1e6.
  long double lg10 = std::log10(static_cast<long double>(mantissa_)) +
                     static_cast<long double>(exp2_) * std::log10(2.0L);
  long double decade = std::floor(lg10);
  long double lead = std::pow(10.0L, lg10 - decade);
  long double unit = std::pow(10.0L, -(significant_digits - 1));
  lead = std::round(lead / unit) * unit;
  if (lead >= 10.0L) {
    lead /= 10.0L;
    decade += 1;
  }
  char buf[64];
  long long e = static_cast<long long>(decade);
  std::snprintf(buf, sizeof buf, "%.*LfE%c%02lld", significant_digits - 1, lead, e < 0 ? '-' : '+',
                e < 0 ? -e : e);
  return buf;
}

double ExtReal::relative_difference(const ExtReal& a, const ExtReal& b) {
  if (a.is_zero() && b.is_zero()) return 0.0;
  const ExtReal& hi = a < b ? b : a;
  const ExtReal& lo = a < b ? a : b;
  // (hi - lo) / hi computed without a subtraction operator on ExtReal.
  double ratio = (lo / hi).to_double();
  return 1.0 - ratio;
}

}  // namespace pkc
