#include <atomic>
#include <cassert>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include "loewner/kernels/kernels.hpp"

namespace loewner::kernels {
namespace {

const KernelTable kScalar{scalar::dot, scalar::dot3, scalar::rotate, scalar::multiply};
#if defined(__x86_64__) || defined(_M_X64)
const KernelTable kAvx2{avx2::dot, avx2::dot3, avx2::rotate, avx2::multiply};
#endif
#if defined(__aarch64__)
const KernelTable kNeon{neon::dot, neon::dot3, neon::rotate, neon::multiply};
#endif

Isa detect() {
  if (const char* env = std::getenv("LOEWNER_LAB_SIMD"); env && std::strcmp(env, "scalar") == 0) {
    return Isa::Scalar;
  }
  if (isa_available(Isa::Avx2)) return Isa::Avx2;
  if (isa_available(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

const KernelTable& active() { return table(current().load(std::memory_order_relaxed)); }

}  // namespace

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "?";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

bool force_isa(Isa isa) {
  if (!isa_available(isa)) return false;
  current().store(isa, std::memory_order_relaxed);
  return true;
}

const KernelTable& table(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return kScalar;
#if defined(__x86_64__) || defined(_M_X64)
    case Isa::Avx2:
      return kAvx2;
#endif
#if defined(__aarch64__)
    case Isa::Neon:
      return kNeon;
#endif
    default:
      throw std::invalid_argument(std::string("kernel variant not built: ") + isa_name(isa));
  }
}

double dot(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  return active().dot(x.data(), y.data(), x.size());
}

double dot3(std::span<const double> x, std::span<const double> w, std::span<const double> y) {
  assert(x.size() == w.size() && x.size() == y.size());
  return active().dot3(x.data(), w.data(), y.data(), x.size());
}

void rotate(std::span<double> x, std::span<double> y, double c, double s) {
  assert(x.size() == y.size());
  active().rotate(x.data(), y.data(), x.size(), c, s);
}

void multiply(std::span<const double> x, std::span<const double> y, std::span<double> out) {
  assert(x.size() == y.size() && x.size() == out.size());
  active().multiply(x.data(), y.data(), out.data(), x.size());
}

}  // namespace loewner::kernels
