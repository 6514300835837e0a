#include "loewner/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace loewner {
namespace {

constexpr int kDefaultDigits = 60;
constexpr int kDefaultGuard = 20;

thread_local int tl_working_digits = kDefaultDigits + kDefaultGuard;
thread_local int tl_target_digits = kDefaultDigits;

mpfr_prec_t digits_to_bits(int digits) {
  // log2(10) ~ 3.3219; round up and add a couple of bits of slack.
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.32192809488736234787)) + 2;
}

mpfr_prec_t working_bits() { return digits_to_bits(tl_working_digits); }

}  // namespace

int working_digits() noexcept { return tl_working_digits; }
int target_digits() noexcept { return tl_target_digits; }

PrecisionScope::PrecisionScope(int digits, int guard)
    : saved_working_(tl_working_digits), saved_target_(tl_target_digits) {
  if (digits < 1 || guard < 0) throw std::invalid_argument("PrecisionScope: bad digit count");
  tl_target_digits = digits;
  tl_working_digits = digits + guard;
}

PrecisionScope::~PrecisionScope() {
  tl_working_digits = saved_working_;
  tl_target_digits = saved_target_;
}

BigFloat::BigFloat(Uninit, mpfr_prec_t prec) { mpfr_init2(value_, prec); }

BigFloat::BigFloat() : BigFloat(Uninit{}, working_bits()) { mpfr_set_zero(value_, 1); }

BigFloat::BigFloat(double v) : BigFloat(Uninit{}, std::max<mpfr_prec_t>(working_bits(), 53)) {
  mpfr_set_d(value_, v, MPFR_RNDN);
}

BigFloat::BigFloat(int v) : BigFloat(static_cast<long>(v)) {}

BigFloat::BigFloat(long v) : BigFloat(Uninit{}, std::max<mpfr_prec_t>(working_bits(), 64)) {
  mpfr_set_si(value_, v, MPFR_RNDN);
}

BigFloat::BigFloat(long long v) : BigFloat(static_cast<long>(v)) {}

BigFloat::BigFloat(unsigned long v)
    : BigFloat(Uninit{}, std::max<mpfr_prec_t>(working_bits(), 64)) {
  mpfr_set_ui(value_, v, MPFR_RNDN);
}

BigFloat::BigFloat(std::string_view decimal) : BigFloat(Uninit{}, working_bits()) {
  const std::string text(decimal);
  if (mpfr_set_str(value_, text.c_str(), 10, MPFR_RNDN) != 0) {
    mpfr_clear(value_);
    throw std::invalid_argument("BigFloat: not a decimal number: '" + text + "'");
  }
}

BigFloat::BigFloat(const BigFloat& other) : BigFloat(Uninit{}, mpfr_get_prec(other.value_)) {
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept : BigFloat(Uninit{}, MPFR_PREC_MIN) {
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat& BigFloat::operator+=(const BigFloat& rhs) { return *this = *this + rhs; }
BigFloat& BigFloat::operator-=(const BigFloat& rhs) { return *this = *this - rhs; }
BigFloat& BigFloat::operator*=(const BigFloat& rhs) { return *this = *this * rhs; }
BigFloat& BigFloat::operator/=(const BigFloat& rhs) { return *this = *this / rhs; }

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat r(BigFloat::Uninit{}, working_bits());
  mpfr_add(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat r(BigFloat::Uninit{}, working_bits());
  mpfr_sub(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat r(BigFloat::Uninit{}, working_bits());
  mpfr_mul(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  BigFloat r(BigFloat::Uninit{}, working_bits());
  mpfr_div(r.value_, a.value_, b.value_, MPFR_RNDN);
  return r;
}

BigFloat operator-(const BigFloat& a) {
  BigFloat r(a);
  mpfr_neg(r.value_, r.value_, MPFR_RNDN);
  return r;
}

bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }

std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

double BigFloat::to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
bool BigFloat::is_finite() const { return mpfr_number_p(value_) != 0; }
bool BigFloat::is_zero() const { return mpfr_zero_p(value_) != 0; }
int BigFloat::sign() const { return mpfr_sgn(value_); }
mpfr_prec_t BigFloat::precision_bits() const { return mpfr_get_prec(value_); }

std::string BigFloat::to_string(int digits) const {
  if (!is_finite()) {
    if (mpfr_nan_p(value_)) return "nan";
    return sign() < 0 ? "-inf" : "inf";
  }
  digits = std::max(digits, 2);
  const int n = mpfr_snprintf(nullptr, 0, "%.*Re", digits - 1, value_);
  std::string out(static_cast<std::size_t>(n) + 1, '\0');
  mpfr_snprintf(out.data(), out.size(), "%.*Re", digits - 1, value_);
  out.resize(static_cast<std::size_t>(n));
  return out;
}

BigFloat BigFloat::round_decimal(int digits) const {
  if (!is_finite() || is_zero()) return *this;
  // mpfr_get_str rounds correctly to the requested number of decimal digits.
  mpfr_exp_t exp10 = 0;
  char* mant = mpfr_get_str(nullptr, &exp10, 10, static_cast<std::size_t>(digits), value_, MPFR_RNDN);
  std::string text(mant);
  mpfr_free_str(mant);
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.erase(0, 1);
  }
  // value = 0.<text> * 10^exp10
  std::string literal = (negative ? "-0." : "0.") + text + "e" + std::to_string(exp10);
  BigFloat r(Uninit{}, mpfr_get_prec(value_));
  mpfr_set_str(r.value_, literal.c_str(), 10, MPFR_RNDN);
  return r;
}

BigFloat log(const BigFloat& x) {
  BigFloat r(BigFloat::Uninit{}, working_bits());
  mpfr_log(r.value_, x.value_, MPFR_RNDN);
  return r;
}

BigFloat exp(const BigFloat& x) {
  BigFloat r(BigFloat::Uninit{}, working_bits());
  mpfr_exp(r.value_, x.value_, MPFR_RNDN);
  return r;
}

BigFloat sqrt(const BigFloat& x) {
  BigFloat r(BigFloat::Uninit{}, working_bits());
  mpfr_sqrt(r.value_, x.value_, MPFR_RNDN);
  return r;
}

BigFloat pow(const BigFloat& x, const BigFloat& y) {
  BigFloat r(BigFloat::Uninit{}, working_bits());
  mpfr_pow(r.value_, x.value_, y.value_, MPFR_RNDN);
  return r;
}

BigFloat abs(const BigFloat& x) {
  BigFloat r(x);
  mpfr_abs(r.value_, r.value_, MPFR_RNDN);
  return r;
}

BigFloat pi_big() {
  BigFloat r(BigFloat::Uninit{}, working_bits());
  mpfr_const_pi(r.value_, MPFR_RNDN);
  return r;
}

std::ostream& operator<<(std::ostream& os, const BigFloat& x) {
  return os << x.to_string(std::max(2, target_digits()));
}

// ---------------------------------------------------------------------------
// DecimalFloat

namespace {
thread_local int tl_decimal_digits = 10;

// Internal precision: comfortably more than twice the emulated digits so a
// single exact-then-round step is faithful.
struct DecimalScope {
  PrecisionScope scope{2 * tl_decimal_digits + 20, 0};
};
}  // namespace

int DecimalFloat::digits() noexcept { return tl_decimal_digits; }
void DecimalFloat::set_digits(int d) noexcept { tl_decimal_digits = d; }

DecimalFloat DecimalFloat::rounded(const BigFloat& v) {
  DecimalFloat r;
  r.v_ = v.round_decimal(tl_decimal_digits);
  return r;
}

DecimalFloat::DecimalFloat(double v) {
  DecimalScope s;
  v_ = BigFloat(v).round_decimal(tl_decimal_digits);
}

DecimalFloat::DecimalFloat(int v) {
  DecimalScope s;
  v_ = BigFloat(v).round_decimal(tl_decimal_digits);
}

DecimalFloat::DecimalFloat(std::string_view decimal) {
  DecimalScope s;
  v_ = BigFloat(decimal).round_decimal(tl_decimal_digits);
}

DecimalFloat::DecimalFloat(const BigFloat& v) {
  DecimalScope s;
  v_ = v.round_decimal(tl_decimal_digits);
}

DecimalFloat operator+(const DecimalFloat& a, const DecimalFloat& b) {
  DecimalScope s;
  return DecimalFloat::rounded(a.v_ + b.v_);
}
DecimalFloat operator-(const DecimalFloat& a, const DecimalFloat& b) {
  DecimalScope s;
  return DecimalFloat::rounded(a.v_ - b.v_);
}
DecimalFloat operator*(const DecimalFloat& a, const DecimalFloat& b) {
  DecimalScope s;
  return DecimalFloat::rounded(a.v_ * b.v_);
}
DecimalFloat operator/(const DecimalFloat& a, const DecimalFloat& b) {
  DecimalScope s;
  return DecimalFloat::rounded(a.v_ / b.v_);
}
DecimalFloat operator-(const DecimalFloat& a) {
  DecimalFloat r;
  r.v_ = -a.v_;
  return r;
}
DecimalFloat log(const DecimalFloat& x) {
  DecimalScope s;
  return DecimalFloat::rounded(log(x.v_));
}
DecimalFloat exp(const DecimalFloat& x) {
  DecimalScope s;
  return DecimalFloat::rounded(exp(x.v_));
}
DecimalFloat sqrt(const DecimalFloat& x) {
  DecimalScope s;
  return DecimalFloat::rounded(sqrt(x.v_));
}
DecimalFloat pow(const DecimalFloat& x, const DecimalFloat& y) {
  DecimalScope s;
  return DecimalFloat::rounded(pow(x.v_, y.v_));
}
DecimalFloat abs(const DecimalFloat& x) {
  DecimalFloat r;
  r.v_ = abs(x.v_);
  return r;
}

}  // namespace loewner
