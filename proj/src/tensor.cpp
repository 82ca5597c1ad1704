#include "igt/tensor.hpp"

#include <cstring>
#include <fstream>

#include "igt/error.hpp"

namespace igt::igtm {

namespace {

static_assert(sizeof(double) == 8);

void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = (unsigned char)(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64(std::ostream& os, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = (unsigned char)(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint32_t get_u32(std::istream& is, const std::string& path) {
    unsigned char b[4];
    if (!is.read(reinterpret_cast<char*>(b), 4))
        throw ParseError(path + ": truncated IGTM header");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(b[i]) << (8 * i);
    return v;
}

std::uint64_t get_u64(std::istream& is, const std::string& path) {
    unsigned char b[8];
    if (!is.read(reinterpret_cast<char*>(b), 8))
        throw ParseError(path + ": truncated IGTM header");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(b[i]) << (8 * i);
    return v;
}

void write_header(std::ostream& os, std::uint8_t dtype,
                  const std::vector<std::uint64_t>& dims) {
    os.write("IGTM", 4);
    put_u32(os, kVersion);
    os.put(char(dtype));
    put_u32(os, std::uint32_t(dims.size()));
    for (auto d : dims) put_u64(os, d);
}

// doubles are written little-endian; on LE hosts this is a plain memcpy
void put_doubles(std::ostream& os, const double* p, std::size_t n) {
    os.write(reinterpret_cast<const char*>(p), std::streamsize(n * 8));
}

void get_doubles(std::istream& is, double* p, std::size_t n, const std::string& path) {
    if (!is.read(reinterpret_cast<char*>(p), std::streamsize(n * 8)))
        throw ParseError(path + ": truncated IGTM payload");
}

} // namespace

void write_real(const std::string& path, const std::vector<std::uint64_t>& dims,
                const double* data) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open for writing: " + path);
    write_header(os, 0, dims);
    std::size_t n = 1;
    for (auto d : dims) n *= std::size_t(d);
    put_doubles(os, data, n);
    if (!os) throw Error("write failed: " + path);
}

void write_complex(const std::string& path, const std::vector<std::uint64_t>& dims,
                   const cplx* data) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open for writing: " + path);
    write_header(os, 1, dims);
    std::size_t n = 1;
    for (auto d : dims) n *= std::size_t(d);
    put_doubles(os, reinterpret_cast<const double*>(data), 2 * n);
    if (!os) throw Error("write failed: " + path);
}

Tensor read(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot open: " + path);
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, "IGTM", 4) != 0)
        throw ParseError(path + ": bad IGTM magic");
    std::uint32_t version = get_u32(is, path);
    if (version != kVersion)
        throw ParseError(path + ": unsupported IGTM version " + std::to_string(version));
    int dt = is.get();
    if (dt != 0 && dt != 1) throw ParseError(path + ": unknown IGTM dtype");
    std::uint32_t ndim = get_u32(is, path);
    if (ndim > 8) throw ParseError(path + ": implausible IGTM ndim");
    Tensor t;
    t.dtype = std::uint8_t(dt);
    t.dims.resize(ndim);
    for (auto& d : t.dims) d = get_u64(is, path);
    std::size_t n = t.elements();
    if (t.dtype == 0) {
        t.real.resize(n);
        get_doubles(is, t.real.data(), n, path);
    } else {
        t.complex.resize(n);
        get_doubles(is, reinterpret_cast<double*>(t.complex.data()), 2 * n, path);
    }
    return t;
}

void write_matrix(const std::string& path, const Mat& m) {
    write_real(path, {m.rows, m.cols}, m.a.data());
}

void write_matrix(const std::string& path, const CMat& m) {
    write_complex(path, {m.rows, m.cols}, m.a.data());
}

Mat read_real_matrix(const std::string& path) {
    Tensor t = read(path);
    if (t.dtype != 0 || t.dims.size() != 2)
        throw ParseError(path + ": expected a real64 matrix");
    Mat m(std::size_t(t.dims[0]), std::size_t(t.dims[1]));
    m.a = std::move(t.real);
    return m;
}

CMat read_complex_matrix(const std::string& path) {
    Tensor t = read(path);
    if (t.dtype != 1 || t.dims.size() != 2)
        throw ParseError(path + ": expected a complex128 matrix");
    CMat m(std::size_t(t.dims[0]), std::size_t(t.dims[1]));
    m.a = std::move(t.complex);
    return m;
}

void write_batch(const std::string& path, const SignalBatch& b) {
    write_real(path, {b.samples, b.channels, b.nodes}, b.values.data());
}

SignalBatch read_batch(const std::string& path) {
    Tensor t = read(path);
    if (t.dtype != 0 || t.dims.size() != 3)
        throw ParseError(path + ": expected a real64 rank-3 tensor");
    SignalBatch b(std::size_t(t.dims[0]), std::size_t(t.dims[1]), std::size_t(t.dims[2]));
    b.values = std::move(t.real);
    return b;
}

} // namespace igt::igtm
