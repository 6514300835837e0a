#pragma once

// Uniform numeric vocabulary over the three scalar types used by the
// generic kernels: double, BigFloat and DecimalFloat.

#include <cmath>
#include <concepts>
#include <cstdlib>
#include <limits>
#include <cstdio>
#include <string>
#include <string_view>

#include "loewner/bigfloat.hpp"

namespace loewner {

template <class T>
concept Scalar = std::same_as<T, double> || std::same_as<T, BigFloat> || std::same_as<T, DecimalFloat>;

namespace num {

inline double log(double x) { return std::log(x); }
inline double exp(double x) { return std::exp(x); }
inline double sqrt(double x) { return std::sqrt(x); }
inline double pow(double x, double y) { return std::pow(x, y); }
inline double abs(double x) { return std::fabs(x); }
inline double to_double(double x) { return x; }
inline bool is_finite(double x) { return std::isfinite(x); }

inline BigFloat log(const BigFloat& x) { return loewner::log(x); }
inline BigFloat exp(const BigFloat& x) { return loewner::exp(x); }
inline BigFloat sqrt(const BigFloat& x) { return loewner::sqrt(x); }
inline BigFloat pow(const BigFloat& x, const BigFloat& y) { return loewner::pow(x, y); }
inline BigFloat abs(const BigFloat& x) { return loewner::abs(x); }
inline double to_double(const BigFloat& x) { return x.to_double(); }
inline bool is_finite(const BigFloat& x) { return x.is_finite(); }

inline DecimalFloat log(const DecimalFloat& x) { return loewner::log(x); }
inline DecimalFloat exp(const DecimalFloat& x) { return loewner::exp(x); }
inline DecimalFloat sqrt(const DecimalFloat& x) { return loewner::sqrt(x); }
inline DecimalFloat pow(const DecimalFloat& x, const DecimalFloat& y) { return loewner::pow(x, y); }
inline DecimalFloat abs(const DecimalFloat& x) { return loewner::abs(x); }
inline double to_double(const DecimalFloat& x) { return x.to_double(); }
inline bool is_finite(const DecimalFloat& x) { return x.value().is_finite(); }

/// Parse a decimal literal at the scalar's own precision (exact decimal in
/// big mode, nearest double otherwise).
template <Scalar T>
T from_string(std::string_view text) {
  if constexpr (std::same_as<T, double>) {
    return std::strtod(std::string(text).c_str(), nullptr);
  } else {
    return T(text);
  }
}

/// Unit roundoff of the current working precision.
template <Scalar T>
T epsilon() {
  if constexpr (std::same_as<T, double>) {
    return std::numeric_limits<double>::epsilon();
  } else if constexpr (std::same_as<T, BigFloat>) {
    return loewner::pow(BigFloat(10), BigFloat(-working_digits()));
  } else {
    return DecimalFloat(std::pow(10.0, 1 - DecimalFloat::digits()));
  }
}

/// Scientific notation at full precision: 17 digits for binary64, the
/// target digit count in big mode.
template <Scalar T>
std::string format(const T& x) {
  if constexpr (std::same_as<T, double>) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
  } else if constexpr (std::same_as<T, BigFloat>) {
    return x.to_string(target_digits());
  } else {
    return x.value().to_string(DecimalFloat::digits());
  }
}

}  // namespace num

/// binary64 or arbitrary precision with a decimal digit count.
struct PrecisionCfg {
  enum class Mode { Machine, Big };
  Mode mode = Mode::Machine;
  int digits = 60;

  static PrecisionCfg machine() { return {Mode::Machine, 60}; }
  static PrecisionCfg big(int digits = 60);

  [[nodiscard]] bool is_big() const { return mode == Mode::Big; }
  [[nodiscard]] std::string label() const;
};

/// Default big-float digits: 60, overridable by LOEWNER_LAB_DIGITS.
int default_big_digits();

}  // namespace loewner
