#include "fts/vectors.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>

#include "fts/error.hpp"

namespace fts::vectors {

namespace {

static_assert(sizeof(float) == 4 && std::numeric_limits<float>::is_iec559);

template <class T>
void put_le(std::vector<std::uint8_t>& out, T value) {
  using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
  const U bits = std::bit_cast<U>(value);
  for (std::size_t i = 0; i < sizeof(U); ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  template <class T>
  T get_le() {
    using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
    need(sizeof(U));
    U bits = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) bits |= static_cast<U>(bytes_[pos_ + i]) << (8 * i);
    pos_ += sizeof(U);
    return std::bit_cast<T>(bits);
  }

  std::span<const std::uint8_t> take(std::size_t n) {
    need(n);
    auto s = bytes_.subspan(pos_, n);
    pos_ += n;
    return s;
  }

  std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw Error(Errc::TruncatedFile, "unexpected end of vector data");
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

template <class T>
double cosine_impl(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "cosine of unequal lengths");
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = a[i];
    const double y = b[i];
    dot += x * y;
    na += x * x;
    nb += y * y;
  }
  if (na == 0.0 || nb == 0.0) throw Error(Errc::ZeroVector, "cosine with zero vector");
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace

void EmbeddingMatrix::validate() const {
  if (data.size() != keys.size() * static_cast<std::size_t>(dim)) {
    throw Error(Errc::DimensionMismatch, "data length does not equal rows * dim");
  }
  for (float v : data) {
    if (!std::isfinite(v)) throw Error(Errc::NaNDetected, "non-finite entry in embedding matrix");
  }
}

std::vector<std::uint8_t> encode(const EmbeddingMatrix& m) {
  m.validate();
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  put_le(out, m.dim);
  put_le(out, static_cast<std::uint64_t>(m.rows()));
  out.reserve(out.size() + m.data.size() * 4);
  for (float v : m.data) put_le(out, v);
  for (const auto& k : m.keys) {
    put_le(out, static_cast<std::uint32_t>(k.size()));
    out.insert(out.end(), k.begin(), k.end());
  }
  return out;
}

EmbeddingMatrix decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < sizeof(kMagic) || std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw Error(Errc::BadMagic, "not an FTSVEC01 file");
  }
  Reader r(bytes.subspan(sizeof(kMagic)));
  EmbeddingMatrix m;
  m.dim = r.get_le<std::uint32_t>();
  const auto rows = r.get_le<std::uint64_t>();
  if (m.dim != 0 && rows > r.remaining() / 4 / m.dim) {
    throw Error(Errc::TruncatedFile, "declared rows exceed file size");
  }
  m.data.resize(static_cast<std::size_t>(rows) * m.dim);
  for (auto& v : m.data) {
    v = r.get_le<float>();
    if (!std::isfinite(v)) throw Error(Errc::NaNDetected, "non-finite entry in vector file");
  }
  m.keys.reserve(rows);
  for (std::uint64_t i = 0; i < rows; ++i) {
    const auto len = r.get_le<std::uint32_t>();
    auto raw = r.take(len);
    m.keys.emplace_back(raw.begin(), raw.end());
  }
  return m;
}

void write_vectors(const EmbeddingMatrix& m, const std::filesystem::path& path) {
  const auto bytes = encode(m);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(Errc::IoError, "write failed for " + path.string());
}

EmbeddingMatrix read_vectors(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode(bytes);
}

double cosine(std::span<const float> a, std::span<const float> b) { return cosine_impl(a, b); }
double cosine(std::span<const double> a, std::span<const double> b) { return cosine_impl(a, b); }

EmbeddingMatrix normalize_rows(EmbeddingMatrix m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    double n = 0.0;
    for (float v : row) n += static_cast<double>(v) * v;
    if (n == 0.0) throw Error(Errc::ZeroVector, "zero row " + m.keys[r]);
    n = std::sqrt(n);
    for (auto& v : row) v = static_cast<float>(v / n);
  }
  return m;
}

}  // namespace fts::vectors
