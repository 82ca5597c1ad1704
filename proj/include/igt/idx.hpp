#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "igt/tensor.hpp"

namespace igt {

// IDX byte tensor: big-endian magic 0x00000800 | (dtype << 8)... in practice
// the files here are unsigned-byte tensors, magic 0x0000080{1,3} for 1- and
// 3-dimensional data.
struct IdxTensor {
    std::vector<std::uint32_t> dims;
    std::vector<std::uint8_t> data;
};

IdxTensor parse_idx(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> serialize_idx(const IdxTensor& t);

struct IdxImages {
    std::size_t count = 0, h = 0, w = 0;
    std::vector<double> pixels; // count x (h*w), row-major per image, in [0,1]
};

// magic 0x00000803 (u8, 3 dims) required
IdxImages parse_idx_images(const std::vector<std::uint8_t>& bytes);
// magic 0x00000801 (u8, 1 dim) required
std::vector<std::uint8_t> parse_idx_labels(const std::vector<std::uint8_t>& bytes);

std::vector<std::uint8_t> read_file_bytes(const std::string& path);

} // namespace igt
