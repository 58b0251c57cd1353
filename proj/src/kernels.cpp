#include "isospec/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace isospec::kern {

namespace detail {

// Reference semantics shared with the AVX2 path: blocks of 4 lanes, each lane
// an independent fma chain, reduced as (l0+l2)+(l1+l3), then a sequential fma
// tail. The AVX2 variant performs exactly these operations.
double dot_scalar(const double* x, const double* y, std::size_t n) {
    double l0 = 0.0, l1 = 0.0, l2 = 0.0, l3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        l0 = std::fma(x[i + 0], y[i + 0], l0);
        l1 = std::fma(x[i + 1], y[i + 1], l1);
        l2 = std::fma(x[i + 2], y[i + 2], l2);
        l3 = std::fma(x[i + 3], y[i + 3], l3);
    }
    double acc = (l0 + l2) + (l1 + l3);
    for (; i < n; ++i) acc = std::fma(x[i], y[i], acc);
    return acc;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = std::fma(a, x[i], y[i]);
}

void rot_scalar(double* x, double* y, std::size_t n, double c, double s) {
    for (std::size_t i = 0; i < n; ++i) {
        // fms(c,x,s*y) and fma(s,x,c*y): one rounding on the product pair,
        // mirrored exactly by vfmsub/vfmadd in the AVX2 path.
        const double xi = x[i], yi = y[i];
        x[i] = std::fma(c, xi, -(s * yi));
        y[i] = std::fma(s, xi, c * yi);
    }
}

void scale_scalar(double a, double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

}  // namespace detail

bool avx2_supported() {
#if (defined(__x86_64__) || defined(_M_X64)) && !defined(ISOSPEC_NO_AVX2)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

Isa detect_isa() {
    if (const char* env = std::getenv("ISOSPEC_ISA")) {
        if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
        if (std::strcmp(env, "avx2") == 0 && avx2_supported()) return Isa::avx2;
    }
    return avx2_supported() ? Isa::avx2 : Isa::scalar;
}

Isa& isa_slot() {
    static Isa isa = detect_isa();
    return isa;
}

}  // namespace

Isa active_isa() { return isa_slot(); }

void force_isa(Isa isa) {
    if (isa == Isa::avx2 && !avx2_supported())
        throw std::runtime_error("avx2 not supported on this cpu");
    isa_slot() = isa;
}

double dot(const double* x, const double* y, std::size_t n) {
#if (defined(__x86_64__) || defined(_M_X64)) && !defined(ISOSPEC_NO_AVX2)
    if (active_isa() == Isa::avx2) return detail::dot_avx2(x, y, n);
#endif
    return detail::dot_scalar(x, y, n);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
#if (defined(__x86_64__) || defined(_M_X64)) && !defined(ISOSPEC_NO_AVX2)
    if (active_isa() == Isa::avx2) return detail::axpy_avx2(a, x, y, n);
#endif
    detail::axpy_scalar(a, x, y, n);
}

void rot(double* x, double* y, std::size_t n, double c, double s) {
#if (defined(__x86_64__) || defined(_M_X64)) && !defined(ISOSPEC_NO_AVX2)
    if (active_isa() == Isa::avx2) return detail::rot_avx2(x, y, n, c, s);
#endif
    detail::rot_scalar(x, y, n, c, s);
}

void scale(double a, double* x, std::size_t n) {
#if (defined(__x86_64__) || defined(_M_X64)) && !defined(ISOSPEC_NO_AVX2)
    if (active_isa() == Isa::avx2) return detail::scale_avx2(a, x, n);
#endif
    detail::scale_scalar(a, x, n);
}

}  // namespace isospec::kern
