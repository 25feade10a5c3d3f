/*
   Copyright 2026 The elop authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef ELOP_DYADIC_HPP
#define ELOP_DYADIC_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

#include "elop/errors.hpp"

namespace elop {

using BigInt = boost::multiprecision::cpp_int;

/// Exact scalar of the form mantissa * 2^exponent.
///
/// Invariants: the mantissa is odd or zero, and zero always carries exponent
/// 0, so every value has a unique representation and equality is structural.
/// Closed under +, -, * and multiplication by powers of two; general division
/// is deliberately absent (only signed powers of two are invertible).
class Dyadic {
 public:
  Dyadic() : mant_(0), exp_(0) {}
  Dyadic(long long value) : mant_(value), exp_(0) { normalize(); }  // NOLINT: implicit from int is intended

  static Dyadic from_parts(BigInt mantissa, std::int64_t exponent) {
    Dyadic d;
    d.mant_ = std::move(mantissa);
    d.exp_ = exponent;
    d.normalize();
    return d;
  }

  static Dyadic power_of_two(std::int64_t exponent) { return from_parts(1, exponent); }

  const BigInt& mantissa() const { return mant_; }
  std::int64_t exponent() const { return exp_; }

  bool is_zero() const { return mant_.is_zero(); }
  int sign() const { return mant_.sign(); }
  bool is_power_of_two() const { return mant_ == 1 || mant_ == -1; }

  Dyadic operator-() const { return from_parts(-mant_, exp_); }

  Dyadic abs() const { return sign() < 0 ? -*this : *this; }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const std::int64_t e = std::min(a.exp_, b.exp_);
    BigInt ma = a.mant_ << static_cast<unsigned>(a.exp_ - e);
    BigInt mb = b.mant_ << static_cast<unsigned>(b.exp_ - e);
    return from_parts(ma + mb, e);
  }

  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

  friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero() || b.is_zero()) return Dyadic();
    return from_parts(a.mant_ * b.mant_, a.exp_ + b.exp_);
  }

  Dyadic times_pow2(std::int64_t e) const {
    if (is_zero()) return Dyadic();
    return from_parts(mant_, exp_ + e);
  }

  /// Inverse restricted to signed powers of two.
  Dyadic inv2() const {
    if (!is_power_of_two()) {
      throw domain_error("inv2: value is not a signed power of two: " + to_text());
    }
    return from_parts(mant_, -exp_);
  }

  /// Three-way comparison: -1, 0, +1.
  static int compare(const Dyadic& a, const Dyadic& b) {
    const int sa = a.sign();
    const int sb = b.sign();
    if (sa != sb) return sa < sb ? -1 : 1;
    if (sa == 0) return 0;
    return (a - b).sign();
  }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exp_ == b.exp_ && a.mant_ == b.mant_;
  }
  friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }
  friend bool operator<(const Dyadic& a, const Dyadic& b) { return compare(a, b) < 0; }
  friend bool operator<=(const Dyadic& a, const Dyadic& b) { return compare(a, b) <= 0; }
  friend bool operator>(const Dyadic& a, const Dyadic& b) { return compare(a, b) > 0; }
  friend bool operator>=(const Dyadic& a, const Dyadic& b) { return compare(a, b) >= 0; }

  /// Binary64 conversion. Magnitudes at or beyond 2^±1024 are refused.
  double to_double() const {
    if (is_zero()) return 0.0;
    BigInt mag = boost::multiprecision::abs(mant_);
    const std::int64_t bits = static_cast<std::int64_t>(boost::multiprecision::msb(mag)) + 1;
    const std::int64_t top = exp_ + bits - 1;  // floor(log2 |value|) within 1
    if (top > 1023 || top < -1024) {
      throw conversion_overflow_error("dyadic magnitude outside the 2^±1024 float window: " + to_text());
    }
    std::int64_t shift = 0;
    if (bits > 62) {
      shift = bits - 62;
      mag >>= static_cast<unsigned>(shift);
    }
    double d = static_cast<double>(mag.convert_to<std::int64_t>());
    d = std::ldexp(d, static_cast<int>(exp_ + shift));
    return sign() < 0 ? -d : d;
  }

  /// Text form "m*2^e".
  std::string to_text() const { return mant_.str() + "*2^" + std::to_string(exp_); }

  /// Exact decimal expansion, available when exponent >= -64.
  std::optional<std::string> to_decimal() const {
    if (exp_ < -64) return std::nullopt;
    if (is_zero()) return std::string("0");
    if (exp_ >= 0) {
      BigInt v = mant_ << static_cast<unsigned>(exp_);
      return v.str();
    }
    const unsigned k = static_cast<unsigned>(-exp_);
    BigInt five = 1;
    for (unsigned i = 0; i < k; ++i) five *= 5;
    BigInt digits = boost::multiprecision::abs(mant_) * five;  // value = ±digits * 10^-k
    std::string s = digits.str();
    if (s.size() <= k) s.insert(0, k + 1 - s.size(), '0');
    s.insert(s.size() - k, ".");
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    return (sign() < 0 ? "-" : "") + s;
  }

  /// Accepts "123", "-5", "p/q" with q a power of two, and "m*2^e".
  static Dyadic parse(const std::string& text) {
    try {
      const auto star = text.find("*2^");
      if (star != std::string::npos) {
        BigInt m(text.substr(0, star));
        const std::int64_t e = std::stoll(text.substr(star + 3));
        return from_parts(m, e);
      }
      const auto slash = text.find('/');
      if (slash != std::string::npos) {
        BigInt p(text.substr(0, slash));
        BigInt q(text.substr(slash + 1));
        if (q <= 0 || (q & (q - 1)) != 0) {
          throw domain_error("dyadic denominator must be a positive power of two: " + text);
        }
        const std::int64_t e = static_cast<std::int64_t>(boost::multiprecision::msb(q));
        return from_parts(p, -e);
      }
      return from_parts(BigInt(text), 0);
    } catch (const std::exception& e) {
      throw domain_error("cannot parse dyadic value '" + text + "': " + e.what());
    }
  }

 private:
  void normalize() {
    if (mant_.is_zero()) {
      exp_ = 0;
      return;
    }
    const unsigned tz = boost::multiprecision::lsb(boost::multiprecision::abs(mant_));
    if (tz > 0) {
      mant_ >>= tz;
      exp_ += tz;
    }
  }

  BigInt mant_;
  std::int64_t exp_;
};

}  // namespace elop

#endif  // ELOP_DYADIC_HPP
