#include "igt/kernels.hpp"

#include <cmath>
#include <cstdlib>

namespace igt::kern {

namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

double nrm2sq_scalar(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
    return s;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

cplx dotc_rz_scalar(const double* x, const cplx* c, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += x[i] * c[i].real();
        im -= x[i] * c[i].imag();
    }
    return {re, im};
}

cplx dotc_zz_scalar(const cplx* z, const cplx* c, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += z[i].real() * c[i].real() + z[i].imag() * c[i].imag();
        im += z[i].imag() * c[i].real() - z[i].real() * c[i].imag();
    }
    return {re, im};
}

void zaxpy_scalar(cplx a, const cplx* x, cplx* y, std::size_t n) {
    const double ar = a.real(), ai = a.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] += cplx(ar * xr - ai * xi, ar * xi + ai * xr);
    }
}

void zmod_scalar(const cplx* z, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double r = z[i].real(), m = z[i].imag();
        out[i] = std::sqrt(r * r + m * m);
    }
}

} // namespace

const Ops& scalar_ops() {
    static const Ops table = {dot_scalar,     nrm2sq_scalar,  axpy_scalar,
                              dotc_rz_scalar, dotc_zz_scalar, zaxpy_scalar,
                              zmod_scalar};
    return table;
}

#if defined(__x86_64__)
const Ops& avx2_ops(); // kernels_avx2.cpp
#endif

bool using_avx2() {
#if defined(__x86_64__)
    if (const char* f = std::getenv("IGT_FORCE_SCALAR"); f && f[0] == '1') return false;
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Ops& ops() {
#if defined(__x86_64__)
    static const Ops& table = using_avx2() ? avx2_ops() : scalar_ops();
    return table;
#else
    return scalar_ops();
#endif
}

} // namespace igt::kern
