// AVX2/FMA variants of the inner-loop kernels. Compiled with -mavx2 -mfma
// and only ever called after a runtime cpuid check (see kernels.cpp).
#if defined(__x86_64__)

#include <immintrin.h>

#include <cmath>

#include "igt/kernels.hpp"

namespace igt::kern {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

double nrm2sq_avx2(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(x + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i] * x[i];
    return s;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
    __m256d av = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d yv = _mm256_loadu_pd(y + i);
        yv = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), yv);
        _mm256_storeu_pd(y + i, yv);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

cplx dotc_rz_avx2(const double* x, const cplx* c, std::size_t n) {
    const double* cd = reinterpret_cast<const double*>(c);
    __m256d acc0 = _mm256_setzero_pd(); // interleaved (x*re, x*im) pairs
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d xv = _mm256_loadu_pd(x + i);
        __m256d xlo = _mm256_permute4x64_pd(xv, 0x50); // x0 x0 x1 x1
        __m256d xhi = _mm256_permute4x64_pd(xv, 0xFA); // x2 x2 x3 x3
        acc0 = _mm256_fmadd_pd(xlo, _mm256_loadu_pd(cd + 2 * i), acc0);
        acc1 = _mm256_fmadd_pd(xhi, _mm256_loadu_pd(cd + 2 * i + 4), acc1);
    }
    __m256d acc = _mm256_add_pd(acc0, acc1);
    alignas(32) double t[4];
    _mm256_store_pd(t, acc);
    double re = t[0] + t[2];
    double im = t[1] + t[3];
    for (; i < n; ++i) {
        re += x[i] * c[i].real();
        im += x[i] * c[i].imag();
    }
    return {re, -im};
}

cplx dotc_zz_avx2(const cplx* z, const cplx* c, std::size_t n) {
    const double* zd = reinterpret_cast<const double*>(z);
    const double* cd = reinterpret_cast<const double*>(c);
    __m256d accA = _mm256_setzero_pd(); // zr*cr, zi*ci pairs -> real part
    __m256d accB = _mm256_setzero_pd(); // zi*cr, zr*ci pairs -> imag part
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d zv = _mm256_loadu_pd(zd + 2 * i);
        __m256d cv = _mm256_loadu_pd(cd + 2 * i);
        __m256d zs = _mm256_permute_pd(zv, 0x5); // swap re/im in each pair
        accA = _mm256_fmadd_pd(zv, cv, accA);
        accB = _mm256_fmadd_pd(zs, cv, accB);
    }
    alignas(32) double ta[4], tb[4];
    _mm256_store_pd(ta, accA);
    _mm256_store_pd(tb, accB);
    double re = ta[0] + ta[1] + ta[2] + ta[3];
    double im = tb[0] - tb[1] + tb[2] - tb[3];
    for (; i < n; ++i) {
        re += z[i].real() * c[i].real() + z[i].imag() * c[i].imag();
        im += z[i].imag() * c[i].real() - z[i].real() * c[i].imag();
    }
    return {re, im};
}

void zaxpy_avx2(cplx a, const cplx* x, cplx* y, std::size_t n) {
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    __m256d arv = _mm256_set1_pd(a.real());
    __m256d aiv = _mm256_set1_pd(a.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xd + 2 * i);
        __m256d xs = _mm256_permute_pd(xv, 0x5);
        __m256d t2 = _mm256_mul_pd(aiv, xs); // ai*xi, ai*xr
        // even lanes: ar*xr - ai*xi ; odd lanes: ar*xi + ai*xr
        __m256d prod = _mm256_fmaddsub_pd(arv, xv, t2);
        __m256d yv = _mm256_add_pd(_mm256_loadu_pd(yd + 2 * i), prod);
        _mm256_storeu_pd(yd + 2 * i, yv);
    }
    const double ar = a.real(), ai = a.imag();
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] += cplx(ar * xr - ai * xi, ar * xi + ai * xr);
    }
}

void zmod_avx2(const cplx* z, double* out, std::size_t n) {
    const double* zd = reinterpret_cast<const double*>(z);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v0 = _mm256_loadu_pd(zd + 2 * i);
        __m256d v1 = _mm256_loadu_pd(zd + 2 * i + 4);
        __m256d h = _mm256_hadd_pd(_mm256_mul_pd(v0, v0), _mm256_mul_pd(v1, v1));
        // hadd interleaves 128-bit halves: reorder to m0 m1 m2 m3
        h = _mm256_permute4x64_pd(h, 0xD8);
        _mm256_storeu_pd(out + i, _mm256_sqrt_pd(h));
    }
    for (; i < n; ++i) {
        const double r = z[i].real(), m = z[i].imag();
        out[i] = std::sqrt(r * r + m * m);
    }
}

} // namespace

const Ops& avx2_ops() {
    static const Ops table = {dot_avx2,     nrm2sq_avx2,  axpy_avx2, dotc_rz_avx2,
                              dotc_zz_avx2, zaxpy_avx2,   zmod_avx2};
    return table;
}

} // namespace igt::kern

#endif // __x86_64__
