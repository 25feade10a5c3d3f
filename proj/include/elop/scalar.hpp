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

#ifndef ELOP_SCALAR_HPP
#define ELOP_SCALAR_HPP

#include <cmath>
#include <cstdio>
#include <string>

#include "elop/dyadic.hpp"
#include "elop/errors.hpp"

namespace elop {

enum class scalar_mode { exact, floating };

inline const char* to_string(scalar_mode m) { return m == scalar_mode::exact ? "exact" : "float"; }

/// Default absolute tolerance for comparisons between floating-mode scalars.
inline constexpr double kFloatTolerance = 1e-12;

/// Mode-tagged scalar: exact dyadic or binary64.  Arithmetic never mixes
/// modes; a mismatch raises configuration_error instead of converting
/// silently.
class Scalar {
 public:
  Scalar() : mode_(scalar_mode::exact), dy_(), fl_(0.0) {}

  static Scalar exact(Dyadic d) {
    Scalar s;
    s.mode_ = scalar_mode::exact;
    s.dy_ = std::move(d);
    return s;
  }
  static Scalar exact(long long v) { return exact(Dyadic(v)); }

  static Scalar real(double v) {
    Scalar s;
    s.mode_ = scalar_mode::floating;
    s.fl_ = v;
    return s;
  }

  static Scalar zero(scalar_mode m) { return m == scalar_mode::exact ? exact(0) : real(0.0); }
  static Scalar one(scalar_mode m) { return m == scalar_mode::exact ? exact(1) : real(1.0); }

  scalar_mode mode() const { return mode_; }
  bool is_exact() const { return mode_ == scalar_mode::exact; }

  const Dyadic& dyadic() const {
    if (!is_exact()) throw configuration_error("scalar is not in exact mode");
    return dy_;
  }

  bool is_zero() const { return is_exact() ? dy_.is_zero() : fl_ == 0.0; }
  int sign() const {
    if (is_exact()) return dy_.sign();
    return fl_ < 0.0 ? -1 : (fl_ > 0.0 ? 1 : 0);
  }

  Scalar operator-() const { return is_exact() ? exact(-dy_) : real(-fl_); }
  Scalar abs() const { return is_exact() ? exact(dy_.abs()) : real(std::fabs(fl_)); }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    check_modes(a, b, "+");
    return a.is_exact() ? exact(a.dy_ + b.dy_) : real(a.fl_ + b.fl_);
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    check_modes(a, b, "*");
    return a.is_exact() ? exact(a.dy_ * b.dy_) : real(a.fl_ * b.fl_);
  }

  /// Multiplicative inverse.  Exact mode accepts signed powers of two only.
  Scalar inverse() const {
    if (is_exact()) return exact(dy_.inv2());
    if (fl_ == 0.0) throw domain_error("inverse of zero");
    return real(1.0 / fl_);
  }

  /// Exact three-way comparison (exact mode) or plain double comparison.
  static int compare(const Scalar& a, const Scalar& b) {
    check_modes(a, b, "compare");
    if (a.is_exact()) return Dyadic::compare(a.dy_, b.dy_);
    if (a.fl_ < b.fl_) return -1;
    return a.fl_ > b.fl_ ? 1 : 0;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return compare(a, b) != 0; }
  friend bool operator<(const Scalar& a, const Scalar& b) { return compare(a, b) < 0; }
  friend bool operator<=(const Scalar& a, const Scalar& b) { return compare(a, b) <= 0; }
  friend bool operator>(const Scalar& a, const Scalar& b) { return compare(a, b) > 0; }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return compare(a, b) >= 0; }

  /// Tolerant equality; in exact mode this is exact equality.
  bool approx_equal(const Scalar& other, double tol = kFloatTolerance) const {
    check_modes(*this, other, "approx_equal");
    if (is_exact()) return dy_ == other.dy_;
    return std::fabs(fl_ - other.fl_) <= tol;
  }

  /// Strict binary64 value; exact mode errors outside the 2^±1024 window.
  double to_double() const { return is_exact() ? dy_.to_double() : fl_; }

  /// Reporting/threshold conversion: exact values below the window flush to
  /// signed zero, values above saturate to ±infinity.
  double to_double_clamped() const {
    if (!is_exact()) return fl_;
    try {
      return dy_.to_double();
    } catch (const conversion_overflow_error&) {
      if (dy_.is_zero()) return 0.0;
      const BigInt mag = boost::multiprecision::abs(dy_.mantissa());
      const std::int64_t top =
          dy_.exponent() + static_cast<std::int64_t>(boost::multiprecision::msb(mag));
      if (top < 0) return 0.0;
      return dy_.sign() < 0 ? -HUGE_VAL : HUGE_VAL;
    }
  }

  std::string text() const {
    if (is_exact()) return dy_.to_text();
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", fl_);
    return buf;
  }

  static Scalar parse(const std::string& text, scalar_mode mode) {
    if (mode == scalar_mode::exact) return exact(Dyadic::parse(text));
    // Floating mode accepts the dyadic grammar too, converted on the spot.
    try {
      return real(Dyadic::parse(text).to_double());
    } catch (const domain_error&) {
      std::size_t pos = 0;
      const double v = std::stod(text, &pos);
      if (pos != text.size()) throw domain_error("cannot parse scalar value '" + text + "'");
      return real(v);
    }
  }

 private:
  static void check_modes(const Scalar& a, const Scalar& b, const char* op) {
    if (a.mode_ != b.mode_) {
      throw configuration_error(std::string("scalar mode mismatch in '") + op + "'");
    }
  }

  scalar_mode mode_;
  Dyadic dy_;
  double fl_;
};

inline Scalar max(const Scalar& a, const Scalar& b) { return Scalar::compare(a, b) >= 0 ? a : b; }
inline Scalar min(const Scalar& a, const Scalar& b) { return Scalar::compare(a, b) <= 0 ? a : b; }

}  // namespace elop

#endif  // ELOP_SCALAR_HPP
