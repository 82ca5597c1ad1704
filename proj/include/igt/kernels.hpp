#pragma once

#include <cstddef>

#include "igt/tensor.hpp"

namespace igt::kern {

// Hot inner loops behind a runtime-dispatched function table. Scalar
// reference implementations always exist; on x86-64 with AVX2 the table
// points at vectorized variants. Set IGT_FORCE_SCALAR=1 to pin the scalar
// path (used by the equivalence tests).
struct Ops {
    // sum_i x[i]*y[i]
    double (*dot)(const double* x, const double* y, std::size_t n);
    // sum_i x[i]^2
    double (*nrm2sq)(const double* x, std::size_t n);
    // y[i] += a*x[i]
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    // sum_i x[i] * conj(c[i]), x real
    cplx (*dotc_rz)(const double* x, const cplx* c, std::size_t n);
    // sum_i z[i] * conj(c[i])
    cplx (*dotc_zz)(const cplx* z, const cplx* c, std::size_t n);
    // y[i] += a * x[i], complex
    void (*zaxpy)(cplx a, const cplx* x, cplx* y, std::size_t n);
    // out[i] = |z[i]|
    void (*zmod)(const cplx* z, double* out, std::size_t n);
};

const Ops& ops();          // dispatched table (cached after first call)
const Ops& scalar_ops();   // reference implementations
bool using_avx2();

// convenience wrappers
inline double dot(const double* x, const double* y, std::size_t n) { return ops().dot(x, y, n); }
inline double nrm2sq(const double* x, std::size_t n) { return ops().nrm2sq(x, n); }
inline void axpy(double a, const double* x, double* y, std::size_t n) { ops().axpy(a, x, y, n); }
inline cplx dotc_rz(const double* x, const cplx* c, std::size_t n) { return ops().dotc_rz(x, c, n); }
inline cplx dotc_zz(const cplx* z, const cplx* c, std::size_t n) { return ops().dotc_zz(z, c, n); }
inline void zaxpy(cplx a, const cplx* x, cplx* y, std::size_t n) { ops().zaxpy(a, x, y, n); }
inline void zmod(const cplx* z, double* out, std::size_t n) { ops().zmod(z, out, n); }

} // namespace igt::kern
