#pragma once

// Arbitrary-precision binary floating point backed by MPFR.
//
// Every arithmetic result is rounded to the calling thread's working
// precision, which is set with PrecisionScope. Copies keep the precision of
// their source, so values computed inside a wide scope survive unchanged when
// they are handed back to a narrower one.

#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace loewner {

/// Working precision (decimal digits) used for new BigFloat results on this thread.
int working_digits() noexcept;

/// Target precision (decimal digits) that adaptive evaluators try to deliver.
/// Usually somewhat below working_digits(), which carries guard digits.
int target_digits() noexcept;

class PrecisionScope {
 public:
  /// Sets target precision to `digits` and working precision to
  /// `digits + guard`. Restores the previous pair on destruction.
  explicit PrecisionScope(int digits, int guard = 20);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  int saved_working_;
  int saved_target_;
};

class BigFloat {
 public:
  BigFloat();
  BigFloat(double v);  // NOLINT: implicit, exact
  BigFloat(int v);     // NOLINT
  BigFloat(long v);    // NOLINT
  BigFloat(long long v);  // NOLINT
  BigFloat(unsigned long v);  // NOLINT
  explicit BigFloat(std::string_view decimal);

  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  BigFloat& operator+=(const BigFloat& rhs);
  BigFloat& operator-=(const BigFloat& rhs);
  BigFloat& operator*=(const BigFloat& rhs);
  BigFloat& operator/=(const BigFloat& rhs);

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a);

  friend bool operator==(const BigFloat& a, const BigFloat& b);
  friend std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b);

  [[nodiscard]] double to_double() const;
  [[nodiscard]] bool is_finite() const;
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] int sign() const;
  [[nodiscard]] mpfr_prec_t precision_bits() const;

  /// Scientific notation with `digits` significant digits, e.g. "-2.5000e-01".
  [[nodiscard]] std::string to_string(int digits) const;

  /// Round to `digits` significant decimal digits (round-to-nearest).
  [[nodiscard]] BigFloat round_decimal(int digits) const;

  mpfr_srcptr raw() const { return value_; }
  mpfr_ptr raw() { return value_; }

 private:
  struct Uninit {};
  explicit BigFloat(Uninit, mpfr_prec_t prec);

  friend BigFloat log(const BigFloat& x);
  friend BigFloat exp(const BigFloat& x);
  friend BigFloat sqrt(const BigFloat& x);
  friend BigFloat pow(const BigFloat& x, const BigFloat& y);
  friend BigFloat abs(const BigFloat& x);
  friend BigFloat pi_big();

  mpfr_t value_;
};

BigFloat log(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat pow(const BigFloat& x, const BigFloat& y);
BigFloat abs(const BigFloat& x);
BigFloat pi_big();

std::ostream& operator<<(std::ostream& os, const BigFloat& x);

/// Decimal-digit emulation: every operation rounds its result to a fixed
/// number of significant decimal digits (default 10), mimicking a
/// computer-algebra system run at a low fixed Digits setting.
class DecimalFloat {
 public:
  DecimalFloat() = default;
  DecimalFloat(double v);  // NOLINT
  DecimalFloat(int v);     // NOLINT
  explicit DecimalFloat(std::string_view decimal);
  explicit DecimalFloat(const BigFloat& v);

  static int digits() noexcept;
  static void set_digits(int d) noexcept;

  const BigFloat& value() const { return v_; }
  [[nodiscard]] double to_double() const { return v_.to_double(); }

  friend DecimalFloat operator+(const DecimalFloat& a, const DecimalFloat& b);
  friend DecimalFloat operator-(const DecimalFloat& a, const DecimalFloat& b);
  friend DecimalFloat operator*(const DecimalFloat& a, const DecimalFloat& b);
  friend DecimalFloat operator/(const DecimalFloat& a, const DecimalFloat& b);
  friend DecimalFloat operator-(const DecimalFloat& a);
  DecimalFloat& operator+=(const DecimalFloat& b) { return *this = *this + b; }
  DecimalFloat& operator-=(const DecimalFloat& b) { return *this = *this - b; }
  DecimalFloat& operator*=(const DecimalFloat& b) { return *this = *this * b; }
  DecimalFloat& operator/=(const DecimalFloat& b) { return *this = *this / b; }
  friend bool operator==(const DecimalFloat& a, const DecimalFloat& b) { return a.v_ == b.v_; }
  friend std::partial_ordering operator<=>(const DecimalFloat& a, const DecimalFloat& b) {
    return a.v_ <=> b.v_;
  }

  friend DecimalFloat log(const DecimalFloat& x);
  friend DecimalFloat exp(const DecimalFloat& x);
  friend DecimalFloat sqrt(const DecimalFloat& x);
  friend DecimalFloat pow(const DecimalFloat& x, const DecimalFloat& y);
  friend DecimalFloat abs(const DecimalFloat& x);

 private:
  static DecimalFloat rounded(const BigFloat& v);
  BigFloat v_;
};

DecimalFloat log(const DecimalFloat& x);
DecimalFloat exp(const DecimalFloat& x);
DecimalFloat sqrt(const DecimalFloat& x);
DecimalFloat pow(const DecimalFloat& x, const DecimalFloat& y);
DecimalFloat abs(const DecimalFloat& x);

}  // namespace loewner
