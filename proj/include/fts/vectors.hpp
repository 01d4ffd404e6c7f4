#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace fts::vectors {

// Row-major float32 matrix with one key per row.
struct EmbeddingMatrix {
  std::uint32_t dim = 0;
  std::vector<float> data;
  std::vector<std::string> keys;

  std::size_t rows() const noexcept { return keys.size(); }
  std::span<const float> row(std::size_t r) const { return {data.data() + r * dim, dim}; }
  std::span<float> row(std::size_t r) { return {data.data() + r * dim, dim}; }

  // Throws DimensionMismatch / NaNDetected when the invariants do not hold.
  void validate() const;
};

inline constexpr char kMagic[8] = {'F', 'T', 'S', 'V', 'E', 'C', '0', '1'};

// FTSVEC01 layout, all little-endian:
//   8 bytes magic | u32 dim | u64 rows | rows*dim f32 | rows x (u32 len, utf-8 key)
void write_vectors(const EmbeddingMatrix& m, const std::filesystem::path& path);
EmbeddingMatrix read_vectors(const std::filesystem::path& path);

std::vector<std::uint8_t> encode(const EmbeddingMatrix& m);
EmbeddingMatrix decode(std::span<const std::uint8_t> bytes);

double cosine(std::span<const float> a, std::span<const float> b);
double cosine(std::span<const double> a, std::span<const double> b);

EmbeddingMatrix normalize_rows(EmbeddingMatrix m);

}  // namespace fts::vectors
