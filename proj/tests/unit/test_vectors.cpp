#include <doctest.h>

#include <cmath>
#include <fstream>

#include "fts/error.hpp"
#include "fts/io.hpp"
#include "fts/vectors.hpp"
#include "synthetic.hpp"

using namespace fts::vectors;

namespace {

EmbeddingMatrix small() {
  EmbeddingMatrix m;
  m.dim = 3;
  m.data = {1, 2, 3, -4, 0.5f, 6};
  m.keys = {"a#0", "b\xc3\xa9#1"};
  return m;
}

fts::Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const fts::Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return fts::Errc::IoError;
}

}  // namespace

TEST_CASE("byte layout") {
  const auto bytes = encode(small());
  // 8 magic + 4 dim + 8 rows + 6*4 data + (4+3) + (4+5) keys
  REQUIRE(bytes.size() == 8 + 4 + 8 + 24 + 7 + 9);
  CHECK(std::string(bytes.begin(), bytes.begin() + 8) == "FTSVEC01");
  CHECK(bytes[8] == 3);
  CHECK(bytes[9] == 0);
  CHECK(bytes[12] == 2);
  CHECK(bytes[20] == 0x00);  // 1.0f = 0x3f800000, little-endian
  CHECK(bytes[23] == 0x3f);
  CHECK(bytes[44] == 3);
}

TEST_CASE("round trip") {
  const auto m = small();
  const auto back = decode(encode(m));
  CHECK(back.dim == m.dim);
  CHECK(back.keys == m.keys);
  CHECK(back.data == m.data);
  const auto dir = synth::temp_dir("vectors_io");
  write_vectors(m, dir / "v.ftsvec");
  CHECK(read_vectors(dir / "v.ftsvec").data == m.data);
}

TEST_CASE("malformed inputs") {
  auto bytes = encode(small());
  SUBCASE("bad magic") {
    bytes[0] = 'X';
    CHECK(code_of([&] { decode(bytes); }) == fts::Errc::BadMagic);
  }
  SUBCASE("truncated data") {
    bytes.resize(30);
    CHECK(code_of([&] { decode(bytes); }) == fts::Errc::TruncatedFile);
  }
  SUBCASE("truncated key") {
    bytes.pop_back();
    CHECK(code_of([&] { decode(bytes); }) == fts::Errc::TruncatedFile);
  }
  SUBCASE("nan entry") {
    auto m = small();
    m.data[1] = NAN;
    CHECK(code_of([&] { decode(encode(m)); }) == fts::Errc::NaNDetected);
    CHECK(code_of([&] { m.validate(); }) == fts::Errc::NaNDetected);
  }
  SUBCASE("shape mismatch") {
    auto m = small();
    m.data.pop_back();
    CHECK(code_of([&] { m.validate(); }) == fts::Errc::DimensionMismatch);
  }
  SUBCASE("missing file") {
    CHECK(code_of([&] { read_vectors("/nonexistent/x.ftsvec"); }) == fts::Errc::IoError);
  }
}

TEST_CASE("cosine and normalization") {
  const std::vector<float> a = {1, 0}, b = {0, 2}, c = {3, 0}, z = {0, 0};
  CHECK(cosine(std::span<const float>(a), std::span<const float>(b)) == doctest::Approx(0.0));
  CHECK(cosine(std::span<const float>(a), std::span<const float>(c)) == doctest::Approx(1.0));
  CHECK(code_of([&] { cosine(std::span<const float>(a), std::span<const float>(z)); }) == fts::Errc::ZeroVector);
  const auto n = normalize_rows(small());
  for (std::size_t r = 0; r < n.rows(); ++r) {
    double s = 0;
    for (float v : n.row(r)) s += double(v) * v;
    CHECK(std::sqrt(s) == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("bridge fixture interface") {
  const std::filesystem::path dir = FTS_FIXTURE_DIR;
  const auto m = read_vectors(dir / "bridge_sample.ftsvec");
  const auto rows = fts::io::read_jsonl(dir / "bridge_sample.jsonl");
  REQUIRE(m.rows() == rows.size());
  CHECK(m.rows() == 100);
  CHECK(m.dim == 16);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    CHECK(m.keys[r] == rows[r].at("key").get<std::string>());
    double s = 0;
    for (float v : m.row(r)) s += double(v) * v;
    CHECK(std::abs(std::sqrt(s) - 1.0) <= 1e-6);
  }
  // rows sharing a text share a vector
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t q = r + 1; q < m.rows(); ++q) {
      if (rows[r].at("text") != rows[q].at("text")) continue;
      for (std::size_t d = 0; d < m.dim; ++d) CHECK(m.row(r)[d] == m.row(q)[d]);
    }
  }
}
