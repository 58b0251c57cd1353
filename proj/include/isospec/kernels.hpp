#pragma once

// Dense double-precision inner-loop kernels.
//
// Every kernel has a scalar reference implementation and (on x86-64 with
// AVX2+FMA) a vectorized variant selected once at startup. The two paths are
// bit-identical by construction: the scalar reference uses the same 4-lane
// accumulator blocking, the same horizontal reduction order and the same
// fused-multiply-add semantics as the AVX2 code, so results do not depend on
// which path runs. The equivalence tests compare them bit for bit.

#include <cstddef>

namespace isospec::kern {

enum class Isa { scalar, avx2 };

// ISA selected for this process. Honors the ISOSPEC_ISA environment variable
// ("scalar" or "avx2") on first call, otherwise picks the best supported one.
Isa active_isa();

// Test hook: force a specific path. Throws if the ISA is unsupported here.
void force_isa(Isa isa);

bool avx2_supported();

// sum_i x[i]*y[i]
double dot(const double* x, const double* y, std::size_t n);

// y[i] += a*x[i]
void axpy(double a, const double* x, double* y, std::size_t n);

// Plane rotation: (x[i], y[i]) <- (c*x[i] - s*y[i], s*x[i] + c*y[i])
void rot(double* x, double* y, std::size_t n, double c, double s);

// x[i] *= a
void scale(double a, double* x, std::size_t n);

inline double nrm2sq(const double* x, std::size_t n) { return dot(x, x, n); }

namespace detail {
double dot_scalar(const double* x, const double* y, std::size_t n);
void axpy_scalar(double a, const double* x, double* y, std::size_t n);
void rot_scalar(double* x, double* y, std::size_t n, double c, double s);
void scale_scalar(double a, double* x, std::size_t n);
#if (defined(__x86_64__) || defined(_M_X64)) && !defined(ISOSPEC_NO_AVX2)
double dot_avx2(const double* x, const double* y, std::size_t n);
void axpy_avx2(double a, const double* x, double* y, std::size_t n);
void rot_avx2(double* x, double* y, std::size_t n, double c, double s);
void scale_avx2(double a, double* x, std::size_t n);
#endif
}  // namespace detail

}  // namespace isospec::kern
