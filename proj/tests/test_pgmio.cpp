#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <doctest.h>

#include "dwmk/errors.hpp"
#include "dwmk/pgmio.hpp"
#include "dwmk/rng.hpp"

using namespace dwmk;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& s) {
  return std::vector<std::uint8_t>(s.begin(), s.end());
}

std::filesystem::path temp_path(const char* name) {
  return std::filesystem::temp_directory_path() /
         (std::string("dwmk_pgmio_") + name);
}

}  // namespace

TEST_CASE("binary pgm parses") {
  auto data = bytes_of("P5\n2 2\n255\n");
  data.insert(data.end(), {0x00, 0xFF, 0x80, 0x01});
  const GrayImage img = parse_pgm(data);
  CHECK(img.width == 2);
  CHECK(img.height == 2);
  CHECK(img.pixels == std::vector<std::uint8_t>{0, 255, 128, 1});
}

TEST_CASE("header comments are skipped") {
  auto data = bytes_of("P5\n# c\n2 2\n255\n");
  data.insert(data.end(), {0x00, 0xFF, 0x80, 0x01});
  const GrayImage img = parse_pgm(data);
  CHECK(img.pixels == std::vector<std::uint8_t>{0, 255, 128, 1});

  auto tangled = bytes_of("P5 # trailing\n2 # width\n 2\t255\n");
  tangled.insert(tangled.end(), {9, 8, 7, 6});
  CHECK(parse_pgm(tangled).pixels == std::vector<std::uint8_t>{9, 8, 7, 6});
}

TEST_CASE("plain pgm parses with arbitrary whitespace") {
  const GrayImage img = parse_pgm(bytes_of("P2\n2 2\n255\n0 255\n\t128  1\n"));
  CHECK(img.width == 2);
  CHECK(img.height == 2);
  CHECK(img.pixels == std::vector<std::uint8_t>{0, 255, 128, 1});
}

TEST_CASE("malformed pgm payloads are rejected") {
  CHECK_THROWS_AS(parse_pgm(bytes_of("P6\n1 1\n255\nx")), BadMagicError);
  CHECK_THROWS_AS(parse_pgm(bytes_of("")), BadMagicError);
  CHECK_THROWS_AS(parse_pgm(bytes_of("P5\n0 2\n255\n")), BadHeaderError);
  CHECK_THROWS_AS(parse_pgm(bytes_of("P5\n2 2\nnope\n")), BadHeaderError);
  CHECK_THROWS_AS(parse_pgm(bytes_of("P5\n1 1\n254\n\0")),
                  UnsupportedMaxvalError);
  CHECK_THROWS_AS(parse_pgm(bytes_of("P5\n1 1\n65535\n\0\0")),
                  UnsupportedMaxvalError);

  auto truncated = bytes_of("P5\n2 2\n255\n");
  truncated.insert(truncated.end(), {1, 2, 3});
  CHECK_THROWS_AS(parse_pgm(truncated), TruncatedPayloadError);

  CHECK_THROWS_AS(parse_pgm(bytes_of("P2\n2 2\n255\n0 1 2")),
                  TruncatedPayloadError);
  CHECK_THROWS_AS(parse_pgm(bytes_of("P2\n1 1\n255\n300")), FormatError);
}

TEST_CASE("writer emits the canonical byte string") {
  GrayImage img;
  img.width = 2;
  img.height = 2;
  img.pixels = {0, 255, 128, 1};
  auto want = bytes_of("P5\n2 2\n255\n");
  want.insert(want.end(), {0x00, 0xFF, 0x80, 0x01});
  CHECK(serialize_pgm(img) == want);
}

TEST_CASE("pgm round trip is the identity") {
  GrayImage one;
  one.width = 1;
  one.height = 1;
  one.pixels = {0};
  CHECK(parse_pgm(serialize_pgm(one)).pixels == one.pixels);

  GrayImage big;
  big.width = 512;
  big.height = 512;
  big.pixels.resize(512 * 512);
  SplitMix64 rng(7);
  for (auto& p : big.pixels) p = static_cast<std::uint8_t>(rng.next());
  const GrayImage back = parse_pgm(serialize_pgm(big));
  CHECK(back.width == big.width);
  CHECK(back.height == big.height);
  CHECK(back.pixels == big.pixels);
}

TEST_CASE("float container round trips exact bit patterns") {
  RealImage img;
  img.width = 3;
  img.height = 2;
  img.samples = {0.0, -0.0, 1.5, -128.25, 1e-310, 255.0};
  const RealImage back = parse_f64(serialize_f64(img));
  CHECK(back.width == 3);
  CHECK(back.height == 2);
  for (std::size_t i = 0; i < img.samples.size(); ++i) {
    CHECK(back.samples[i] == img.samples[i]);
  }
  CHECK(std::signbit(back.samples[1]));
}

TEST_CASE("float container rejects malformed payloads") {
  CHECK_THROWS_AS(parse_f64(bytes_of("DWMKF63x........")), BadMagicError);
  CHECK_THROWS_AS(parse_f64(bytes_of("DWMK")), BadMagicError);

  RealImage img;
  img.width = 2;
  img.height = 1;
  img.samples = {1.0, 2.0};
  auto data = serialize_f64(img);
  data.pop_back();
  CHECK_THROWS_AS(parse_f64(data), TruncatedPayloadError);

  auto header_only = serialize_f64(img);
  header_only.resize(12);
  CHECK_THROWS_AS(parse_f64(header_only), BadHeaderError);
}

TEST_CASE("file io round trips and reports missing files") {
  const auto pgm_path = temp_path("a.pgm");
  GrayImage img;
  img.width = 2;
  img.height = 1;
  img.pixels = {42, 7};
  write_pgm_file(pgm_path.string(), img);
  CHECK(read_pgm_file(pgm_path.string()).pixels == img.pixels);
  std::filesystem::remove(pgm_path);

  CHECK_THROWS_AS(read_pgm_file("/nonexistent/dir/file.pgm"), IoError);
  CHECK_THROWS_AS(write_pgm_file("/nonexistent/dir/file.pgm", img), IoError);
}

TEST_CASE("generic loader sniffs the container") {
  GrayImage img;
  img.width = 2;
  img.height = 1;
  img.pixels = {3, 200};
  const auto pgm_path = temp_path("sniff.pgm");
  write_pgm_file(pgm_path.string(), img);
  const RealImage as_real = read_image_file(pgm_path.string());
  CHECK(as_real.samples == std::vector<double>{3.0, 200.0});
  std::filesystem::remove(pgm_path);

  RealImage real;
  real.width = 1;
  real.height = 2;
  real.samples = {-1.25, 300.75};
  const auto f64_path = temp_path("sniff.f64");
  write_f64_file(f64_path.string(), real);
  const RealImage back = read_image_file(f64_path.string());
  CHECK(back.samples == real.samples);
  CHECK(looks_like_f64(read_file(f64_path.string())));
  std::filesystem::remove(f64_path);
}
