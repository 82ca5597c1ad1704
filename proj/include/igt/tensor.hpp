#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace igt {

using cplx = std::complex<double>;

// Dense column-major real matrix.
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}
    double& operator()(std::size_t i, std::size_t j) { return a[j * rows + i]; }
    double operator()(std::size_t i, std::size_t j) const { return a[j * rows + i]; }
    double* col(std::size_t j) { return a.data() + j * rows; }
    const double* col(std::size_t j) const { return a.data() + j * rows; }
};

// Dense column-major complex matrix.
struct CMat {
    std::size_t rows = 0, cols = 0;
    std::vector<cplx> a;

    CMat() = default;
    CMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, cplx(0, 0)) {}
    cplx& operator()(std::size_t i, std::size_t j) { return a[j * rows + i]; }
    cplx operator()(std::size_t i, std::size_t j) const { return a[j * rows + i]; }
    cplx* col(std::size_t j) { return a.data() + j * rows; }
    const cplx* col(std::size_t j) const { return a.data() + j * rows; }
};

// Batch of real signals, node index fastest, then channel, then sample.
struct SignalBatch {
    std::size_t samples = 0, channels = 0, nodes = 0;
    std::vector<double> values;

    SignalBatch() = default;
    SignalBatch(std::size_t b, std::size_t q, std::size_t n)
        : samples(b), channels(q), nodes(n), values(b * q * n, 0.0) {}

    double* at(std::size_t s, std::size_t c) {
        return values.data() + (s * channels + c) * nodes;
    }
    const double* at(std::size_t s, std::size_t c) const {
        return values.data() + (s * channels + c) * nodes;
    }
};

// IGTM binary tensor format:
//   magic "IGTM", version u32, dtype u8 (0 = real64, 1 = complex128
//   interleaved re/im), ndim u32, dims as u64 each, little-endian payload.
namespace igtm {

constexpr std::uint32_t kVersion = 1;

void write_real(const std::string& path, const std::vector<std::uint64_t>& dims,
                const double* data);
void write_complex(const std::string& path, const std::vector<std::uint64_t>& dims,
                   const cplx* data);

struct Tensor {
    std::uint8_t dtype = 0; // 0 real64, 1 complex128
    std::vector<std::uint64_t> dims;
    std::vector<double> real;
    std::vector<cplx> complex;

    std::size_t elements() const {
        std::size_t n = 1;
        for (auto d : dims) n *= std::size_t(d);
        return dims.empty() ? 0 : n;
    }
};

Tensor read(const std::string& path);

void write_matrix(const std::string& path, const Mat& m);
void write_matrix(const std::string& path, const CMat& m);
Mat read_real_matrix(const std::string& path);
CMat read_complex_matrix(const std::string& path);

void write_batch(const std::string& path, const SignalBatch& b);
SignalBatch read_batch(const std::string& path);

} // namespace igtm
} // namespace igt
