#include "dwmk/pgmio.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <limits>

#include "dwmk/errors.hpp"

namespace dwmk {
namespace {

constexpr char kF64Magic[8] = {'D', 'W', 'M', 'K', 'F', '6', '4', '\0'};
constexpr std::size_t kF64HeaderSize = 16;
constexpr std::uint32_t kMaxDim = 1u << 20;

bool is_pgm_space(int c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' ||
         c == '\f';
}

// Cursor over header bytes that skips whitespace and '#' comments.
struct HeaderCursor {
  std::span<const std::uint8_t> bytes;
  std::size_t pos = 0;

  void skip_separators() {
    while (pos < bytes.size()) {
      if (is_pgm_space(bytes[pos])) {
        ++pos;
      } else if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  std::uint32_t read_number(const char* what) {
    skip_separators();
    if (pos >= bytes.size() || bytes[pos] < '0' || bytes[pos] > '9') {
      throw BadHeaderError(std::string("expected ") + what);
    }
    std::uint64_t value = 0;
    while (pos < bytes.size() && bytes[pos] >= '0' && bytes[pos] <= '9') {
      value = value * 10 + (bytes[pos] - '0');
      if (value > std::numeric_limits<std::uint32_t>::max()) {
        throw BadHeaderError(std::string(what) + " out of range");
      }
      ++pos;
    }
    return static_cast<std::uint32_t>(value);
  }
};

void check_dims(std::uint32_t w, std::uint32_t h) {
  if (w == 0 || h == 0 || w > kMaxDim || h > kMaxDim) {
    throw BadHeaderError("bad image dimensions " + std::to_string(w) + "x" +
                         std::to_string(h));
  }
}

std::uint32_t load_le32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) |
         static_cast<std::uint32_t>(p[1]) << 8 |
         static_cast<std::uint32_t>(p[2]) << 16 |
         static_cast<std::uint32_t>(p[3]) << 24;
}

void store_le32(std::uint32_t v, std::uint8_t* p) {
  p[0] = static_cast<std::uint8_t>(v);
  p[1] = static_cast<std::uint8_t>(v >> 8);
  p[2] = static_cast<std::uint8_t>(v >> 16);
  p[3] = static_cast<std::uint8_t>(v >> 24);
}

double load_le_f64(const std::uint8_t* p) {
  std::uint64_t bits = 0;
  for (int i = 7; i >= 0; --i) bits = bits << 8 | p[i];
  return std::bit_cast<double>(bits);
}

void store_le_f64(double v, std::uint8_t* p) {
  auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) {
    p[i] = static_cast<std::uint8_t>(bits);
    bits >>= 8;
  }
}

}  // namespace

GrayImage parse_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' ||
      (bytes[1] != '5' && bytes[1] != '2')) {
    throw BadMagicError("not a PGM payload");
  }
  const bool binary = bytes[1] == '5';
  HeaderCursor cur{bytes, 2};
  const std::uint32_t w = cur.read_number("width");
  const std::uint32_t h = cur.read_number("height");
  const std::uint32_t maxval = cur.read_number("maxval");
  check_dims(w, h);
  if (maxval != 255) {
    throw UnsupportedMaxvalError("maxval " + std::to_string(maxval) +
                                 " is not supported (need 255)");
  }

  GrayImage img;
  img.width = static_cast<int>(w);
  img.height = static_cast<int>(h);
  const std::size_t count = static_cast<std::size_t>(w) * h;
  img.pixels.resize(count);

  if (binary) {
    // Exactly one whitespace byte separates the header from the raster.
    if (cur.pos >= bytes.size() || !is_pgm_space(bytes[cur.pos])) {
      throw BadHeaderError("missing raster separator");
    }
    ++cur.pos;
    if (bytes.size() - cur.pos < count) {
      throw TruncatedPayloadError("raster has " +
                                  std::to_string(bytes.size() - cur.pos) +
                                  " of " + std::to_string(count) + " bytes");
    }
    std::memcpy(img.pixels.data(), bytes.data() + cur.pos, count);
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      cur.skip_separators();
      if (cur.pos >= bytes.size()) {
        throw TruncatedPayloadError("raster has " + std::to_string(i) +
                                    " of " + std::to_string(count) +
                                    " samples");
      }
      const std::uint32_t v = cur.read_number("sample");
      if (v > maxval) {
        throw FormatError("sample " + std::to_string(v) + " exceeds maxval");
      }
      img.pixels[i] = static_cast<std::uint8_t>(v);
    }
  }
  return img;
}

std::vector<std::uint8_t> serialize_pgm(const GrayImage& img) {
  check_dims(static_cast<std::uint32_t>(img.width),
             static_cast<std::uint32_t>(img.height));
  const std::size_t count =
      static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height);
  if (img.pixels.size() != count) {
    throw DimensionMismatchError("pixel buffer does not match dimensions");
  }
  std::string header = "P5\n" + std::to_string(img.width) + " " +
                       std::to_string(img.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.size() + count);
  std::memcpy(out.data(), header.data(), header.size());
  std::memcpy(out.data() + header.size(), img.pixels.data(), count);
  return out;
}

RealImage parse_f64(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8 || std::memcmp(bytes.data(), kF64Magic, 8) != 0) {
    throw BadMagicError("not a DWMKF64 payload");
  }
  if (bytes.size() < kF64HeaderSize) {
    throw BadHeaderError("header shorter than 16 bytes");
  }
  const std::uint32_t w = load_le32(bytes.data() + 8);
  const std::uint32_t h = load_le32(bytes.data() + 12);
  check_dims(w, h);
  const std::size_t count = static_cast<std::size_t>(w) * h;
  if (bytes.size() - kF64HeaderSize < count * 8) {
    throw TruncatedPayloadError(
        "payload has " + std::to_string(bytes.size() - kF64HeaderSize) +
        " of " + std::to_string(count * 8) + " bytes");
  }
  RealImage img;
  img.width = static_cast<int>(w);
  img.height = static_cast<int>(h);
  img.samples.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    img.samples[i] = load_le_f64(bytes.data() + kF64HeaderSize + 8 * i);
  }
  return img;
}

std::vector<std::uint8_t> serialize_f64(const RealImage& img) {
  check_dims(static_cast<std::uint32_t>(img.width),
             static_cast<std::uint32_t>(img.height));
  const std::size_t count =
      static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height);
  if (img.samples.size() != count) {
    throw DimensionMismatchError("sample buffer does not match dimensions");
  }
  std::vector<std::uint8_t> out(kF64HeaderSize + count * 8);
  std::memcpy(out.data(), kF64Magic, 8);
  store_le32(static_cast<std::uint32_t>(img.width), out.data() + 8);
  store_le32(static_cast<std::uint32_t>(img.height), out.data() + 12);
  for (std::size_t i = 0; i < count; ++i) {
    store_le_f64(img.samples[i], out.data() + kF64HeaderSize + 8 * i);
  }
  return out;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed for " + path);
  return bytes;
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path);
}

GrayImage read_pgm_file(const std::string& path) {
  const auto bytes = read_file(path);
  return parse_pgm(bytes);
}

void write_pgm_file(const std::string& path, const GrayImage& img) {
  write_file(path, serialize_pgm(img));
}

RealImage read_f64_file(const std::string& path) {
  const auto bytes = read_file(path);
  return parse_f64(bytes);
}

void write_f64_file(const std::string& path, const RealImage& img) {
  write_file(path, serialize_f64(img));
}

bool looks_like_f64(std::span<const std::uint8_t> bytes) {
  return bytes.size() >= 8 && std::memcmp(bytes.data(), kF64Magic, 8) == 0;
}

RealImage read_image_file(const std::string& path) {
  const auto bytes = read_file(path);
  if (looks_like_f64(bytes)) return parse_f64(bytes);
  const GrayImage img = parse_pgm(bytes);
  RealImage real;
  real.width = img.width;
  real.height = img.height;
  real.samples.assign(img.pixels.begin(), img.pixels.end());
  return real;
}

}  // namespace dwmk
