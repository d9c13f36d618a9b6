#pragma once

// Reader and writer for the big-endian IDX format used by the MNIST
// distribution: magic 0x00000803 for unsigned-byte image tensors of rank 3,
// 0x00000801 for unsigned-byte label vectors.

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>
#include <vector>

#include "twophase/dataset.hpp"

namespace twophase {

inline constexpr std::uint32_t kIdxImagesMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelsMagic = 0x00000801;

class IdxError : public std::runtime_error {
 public:
  enum class Kind { open_failed, bad_magic, truncated, count_mismatch, bad_label };

  IdxError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  [[nodiscard]] Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

struct IdxImages {
  std::uint32_t count = 0;
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<std::uint8_t> pixels;  // count * rows * cols, image-major
};

namespace detail {

inline std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IdxError(IdxError::Kind::open_failed, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::uint32_t read_be32(const std::vector<std::uint8_t>& bytes, std::size_t offset) {
  return (std::uint32_t{bytes[offset]} << 24) | (std::uint32_t{bytes[offset + 1]} << 16) |
         (std::uint32_t{bytes[offset + 2]} << 8) | std::uint32_t{bytes[offset + 3]};
}

inline void put_be32(std::ofstream& out, std::uint32_t v) {
  const std::array<char, 4> b{static_cast<char>(v >> 24), static_cast<char>(v >> 16),
                              static_cast<char>(v >> 8), static_cast<char>(v)};
  out.write(b.data(), b.size());
}

inline void check_header(const std::vector<std::uint8_t>& bytes, std::size_t header_size,
                         std::uint32_t magic, const std::filesystem::path& path) {
  if (bytes.size() >= 4 && read_be32(bytes, 0) != magic)
    throw IdxError(IdxError::Kind::bad_magic, "bad IDX magic in " + path.string());
  if (bytes.size() < header_size)
    throw IdxError(IdxError::Kind::truncated, "truncated IDX header in " + path.string());
}

}  // namespace detail

inline IdxImages read_idx_images(const std::filesystem::path& path) {
  const auto bytes = detail::read_file(path);
  detail::check_header(bytes, 16, kIdxImagesMagic, path);
  IdxImages img;
  img.count = detail::read_be32(bytes, 4);
  img.rows = detail::read_be32(bytes, 8);
  img.cols = detail::read_be32(bytes, 12);
  const std::uint64_t expected = std::uint64_t{img.count} * img.rows * img.cols;
  if (bytes.size() - 16 < expected)
    throw IdxError(IdxError::Kind::truncated, "truncated IDX image data in " + path.string());
  img.pixels.assign(bytes.begin() + 16, bytes.begin() + 16 + static_cast<std::ptrdiff_t>(expected));
  return img;
}

inline std::vector<std::uint8_t> read_idx_labels(const std::filesystem::path& path) {
  const auto bytes = detail::read_file(path);
  detail::check_header(bytes, 8, kIdxLabelsMagic, path);
  const std::uint32_t count = detail::read_be32(bytes, 4);
  if (bytes.size() - 8 < count)
    throw IdxError(IdxError::Kind::truncated, "truncated IDX label data in " + path.string());
  return {bytes.begin() + 8, bytes.begin() + 8 + count};
}

inline void write_idx_images(const std::filesystem::path& path, const IdxImages& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IdxError(IdxError::Kind::open_failed, "cannot write " + path.string());
  detail::put_be32(out, kIdxImagesMagic);
  detail::put_be32(out, img.count);
  detail::put_be32(out, img.rows);
  detail::put_be32(out, img.cols);
  out.write(reinterpret_cast<const char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
}

inline void write_idx_labels(const std::filesystem::path& path,
                             const std::vector<std::uint8_t>& labels) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IdxError(IdxError::Kind::open_failed, "cannot write " + path.string());
  detail::put_be32(out, kIdxLabelsMagic);
  detail::put_be32(out, static_cast<std::uint32_t>(labels.size()));
  out.write(reinterpret_cast<const char*>(labels.data()),
            static_cast<std::streamsize>(labels.size()));
}

/// Loads an image/label file pair into a Dataset: pixels divided by 255,
/// labels one-hot with `classes` columns.
inline Dataset load_idx(const std::filesystem::path& images_path,
                        const std::filesystem::path& labels_path, std::size_t classes = 10) {
  const IdxImages img = read_idx_images(images_path);
  const auto labels = read_idx_labels(labels_path);
  if (labels.size() != img.count)
    throw IdxError(IdxError::Kind::count_mismatch,
                   "image count " + std::to_string(img.count) + " != label count " +
                       std::to_string(labels.size()));
  for (auto l : labels)
    if (l >= classes)
      throw IdxError(IdxError::Kind::bad_label, "label " + std::to_string(l) + " out of range");

  const std::size_t width = std::size_t{img.rows} * img.cols;
  Dataset data{Matrix(img.count, width), one_hot(labels, classes)};
  for (std::size_t k = 0; k < img.count; ++k) {
    auto row = data.inputs.row(k);
    for (std::size_t i = 0; i < width; ++i) row[i] = img.pixels[k * width + i] / 255.0;
  }
  return data;
}

}  // namespace twophase
