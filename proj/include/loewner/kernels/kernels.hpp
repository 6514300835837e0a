#pragma once

// Data-parallel binary64 inner loops: dot products, plane rotations and
// elementwise products. Each kernel has a scalar reference implementation and
// vector variants (AVX2+FMA on x86-64, NEON on AArch64). The variant is picked
// once at first use from the running CPU; LOEWNER_LAB_SIMD=scalar forces the
// reference path.
//
// Vector variants reassociate sums and fuse multiply-adds, so results agree
// with the scalar path to rounding, not bit for bit.

#include <cstddef>
#include <span>

namespace loewner::kernels {

enum class Isa { Scalar, Avx2, Neon };

const char* isa_name(Isa isa);

/// Variant in use by the dispatching entry points below.
Isa active_isa();

/// Whether the running CPU (and this build) can execute `isa`.
bool isa_available(Isa isa);

/// Override dispatch; returns false and leaves dispatch unchanged when the
/// variant is unavailable.
bool force_isa(Isa isa);

struct KernelTable {
  double (*dot)(const double* x, const double* y, std::size_t n);
  double (*dot3)(const double* x, const double* w, const double* y, std::size_t n);
  void (*rotate)(double* x, double* y, std::size_t n, double c, double s);
  void (*multiply)(const double* x, const double* y, double* out, std::size_t n);
};

/// Kernel table for a specific variant (must be available).
const KernelTable& table(Isa isa);

/// sum_i x_i y_i
double dot(std::span<const double> x, std::span<const double> y);

/// sum_i x_i w_i y_i
double dot3(std::span<const double> x, std::span<const double> w, std::span<const double> y);

/// Plane rotation of two rows: x <- c x - s y, y <- s x + c y.
void rotate(std::span<double> x, std::span<double> y, double c, double s);

/// out_i = x_i y_i
void multiply(std::span<const double> x, std::span<const double> y, std::span<double> out);

namespace scalar {
double dot(const double* x, const double* y, std::size_t n);
double dot3(const double* x, const double* w, const double* y, std::size_t n);
void rotate(double* x, double* y, std::size_t n, double c, double s);
void multiply(const double* x, const double* y, double* out, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
double dot(const double* x, const double* y, std::size_t n);
double dot3(const double* x, const double* w, const double* y, std::size_t n);
void rotate(double* x, double* y, std::size_t n, double c, double s);
void multiply(const double* x, const double* y, double* out, std::size_t n);
}  // namespace avx2
#endif

#if defined(__aarch64__)
namespace neon {
double dot(const double* x, const double* y, std::size_t n);
double dot3(const double* x, const double* w, const double* y, std::size_t n);
void rotate(double* x, double* y, std::size_t n, double c, double s);
void multiply(const double* x, const double* y, double* out, std::size_t n);
}  // namespace neon
#endif

}  // namespace loewner::kernels
