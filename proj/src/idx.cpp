#include "igt/idx.hpp"

#include <fstream>

#include "igt/error.hpp"

namespace igt {

namespace {

std::uint32_t get_be32(const std::uint8_t* p) {
    return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
           (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
}

void put_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(std::uint8_t(v >> 24));
    out.push_back(std::uint8_t(v >> 16));
    out.push_back(std::uint8_t(v >> 8));
    out.push_back(std::uint8_t(v));
}

} // namespace

IdxTensor parse_idx(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 4) throw ParseError("idx: truncated header");
    std::uint32_t magic = get_be32(bytes.data());
    if ((magic >> 16) != 0 || ((magic >> 8) & 0xff) != 0x08)
        throw ParseError("idx: unsupported magic (expected an unsigned-byte tensor)");
    std::size_t ndim = magic & 0xff;
    if (ndim == 0) throw ParseError("idx: zero-dimensional tensor");
    if (bytes.size() < 4 + 4 * ndim) throw ParseError("idx: truncated dimension list");

    IdxTensor t;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < ndim; ++i) {
        std::uint32_t d = get_be32(bytes.data() + 4 + 4 * i);
        t.dims.push_back(d);
        total *= d;
        if (total > (std::uint64_t(1) << 34))
            throw ParseError("idx: dimension overflow");
    }
    if (bytes.size() != 4 + 4 * ndim + total)
        throw ParseError("idx: payload size does not match dimensions");
    t.data.assign(bytes.begin() + std::ptrdiff_t(4 + 4 * ndim), bytes.end());
    return t;
}

std::vector<std::uint8_t> serialize_idx(const IdxTensor& t) {
    if (t.dims.empty() || t.dims.size() > 255)
        throw Error("idx: dimension count must be in [1, 255]");
    std::uint64_t total = 1;
    for (std::uint32_t d : t.dims) total *= d;
    if (total != t.data.size()) throw Error("idx: data size does not match dimensions");
    std::vector<std::uint8_t> out;
    put_be32(out, 0x00000800u | std::uint32_t(t.dims.size()));
    for (std::uint32_t d : t.dims) put_be32(out, d);
    out.insert(out.end(), t.data.begin(), t.data.end());
    return out;
}

IdxImages parse_idx_images(const std::vector<std::uint8_t>& bytes) {
    IdxTensor t = parse_idx(bytes);
    if (t.dims.size() != 3)
        throw ParseError("idx: expected an image tensor (magic 0x00000803)");
    IdxImages im;
    im.count = t.dims[0];
    im.h = t.dims[1];
    im.w = t.dims[2];
    im.pixels.resize(t.data.size());
    for (std::size_t i = 0; i < t.data.size(); ++i)
        im.pixels[i] = double(t.data[i]) / 255.0;
    return im;
}

std::vector<std::uint8_t> parse_idx_labels(const std::vector<std::uint8_t>& bytes) {
    IdxTensor t = parse_idx(bytes);
    if (t.dims.size() != 1)
        throw ParseError("idx: expected a label vector (magic 0x00000801)");
    return t.data;
}

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in),
                                     std::istreambuf_iterator<char>());
}

} // namespace igt
