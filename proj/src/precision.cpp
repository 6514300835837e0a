#include <cstdlib>
#include <stdexcept>
#include <string>

#include "loewner/scalar.hpp"

namespace loewner {

PrecisionCfg PrecisionCfg::big(int digits) {
  if (digits < 20) throw std::invalid_argument("big precision needs at least 20 digits, got " + std::to_string(digits));
  return {Mode::Big, digits};
}

std::string PrecisionCfg::label() const {
  return is_big() ? "big(" + std::to_string(digits) + ")" : "machine";
}

int default_big_digits() {
  if (const char* env = std::getenv("LOEWNER_LAB_DIGITS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 20 && v <= 10000) return static_cast<int>(v);
  }
  return 60;
}

}  // namespace loewner
