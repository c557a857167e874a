#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dwmk/imaging.hpp"

namespace dwmk {

// ===== PGM ==================================================================
// Reads both binary (P5) and plain (P2) variants, maxval 255 only. Writes
// the canonical binary form "P5\n<w> <h>\n255\n" followed by raw rows.

GrayImage parse_pgm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> serialize_pgm(const GrayImage& img);

GrayImage read_pgm_file(const std::string& path);
void write_pgm_file(const std::string& path, const GrayImage& img);

// ===== DWMKF64 ==============================================================
// Raw float container for unquantized marked images: a 16-byte header
// ("DWMKF64\0", then width and height as little-endian uint32) followed by
// width*height float64 samples, little-endian, row-major.

RealImage parse_f64(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> serialize_f64(const RealImage& img);

RealImage read_f64_file(const std::string& path);
void write_f64_file(const std::string& path, const RealImage& img);

// ===== Generic loading ======================================================

std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, std::span<const std::uint8_t> bytes);

bool looks_like_f64(std::span<const std::uint8_t> bytes);

// Loads a PGM or DWMKF64 file (sniffed by magic) as real-valued samples.
RealImage read_image_file(const std::string& path);

}  // namespace dwmk
