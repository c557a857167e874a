#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dwmk/dseq.hpp"
#include "dwmk/sscore.hpp"

namespace dwmk {

struct GrayImage {
  int width = 0, height = 0;
  std::vector<std::uint8_t> pixels;  // row-major

  std::size_t size() const { return pixels.size(); }
};

// Real-valued image, the unquantized marked form.
struct RealImage {
  int width = 0, height = 0;
  std::vector<double> samples;  // row-major
};

struct WatermarkBits {
  int width = 0, height = 0;
  std::vector<std::int8_t> bits;  // +1 / -1, row-major
};

// Contiguous row-major split of the cover: one block of block_len samples
// per bit, starting at the origin; the trailing remainder is never touched.
struct BlockLayout {
  std::size_t total = 0;
  std::size_t bit_count = 0;
  std::size_t block_len = 0;
  std::size_t remainder = 0;
};

BlockLayout layout(std::size_t total, std::size_t bit_count);

// Dark bitmap pixels (< 128) carry +1, light ones -1, and back.
WatermarkBits bits_from_bitmap(const GrayImage& bitmap);
GrayImage bitmap_from_bits(std::span<const std::int8_t> bits, int width,
                           int height);

// Marked cover. Samples stay real; quantized means they already hold
// integers in [0, 255] (rounded half away from zero, clamped).
struct MarkedImage {
  int width = 0, height = 0;
  bool quantized = false;
  std::vector<double> samples;

  GrayImage to_gray() const;  // requires quantized
  RealImage to_real() const;
};

struct EmbedOptions {
  EmbedParams params;
  // When set, params.mu is ignored and the gain is resolved from this
  // distortion budget against the cover's measured moments, with the full
  // embedded extent as the model length (the budget's own accounting).
  std::optional<double> budget_alpha;
  bool quantize = true;
  bool global_xbar = false;  // one shared host projection for all blocks
};

struct EmbedReport {
  std::uint64_t prime = 0;
  std::size_t bit_count = 0, block_len = 0, remainder = 0;
  double mu = 0.0, lambda = 1.0, sigma_u = 1.0;
  std::optional<double> alpha;  // set when mu came from a budget
  bool quantized = true;
  bool global_xbar = false;
  double cover_mean = 0.0, cover_var = 0.0;
  double measured_mse = 0.0, psnr_db = 0.0;
  // Expected distortion for the mode in use. The cover mean enters through
  // the per-block chip imbalance: blocks of a few hundred chips are not
  // locally balanced, so the DC level leaks into each host projection.
  double model_mse = 0.0, model_psnr_db = 0.0;
  std::vector<double> per_bit_g;
};

struct EmbedOutcome {
  MarkedImage marked;
  EmbedReport report;
};

EmbedOutcome embed_image(const GrayImage& cover, const WatermarkBits& wm,
                         std::uint64_t q, const EmbedOptions& opt);

struct DetectionReport {
  std::uint64_t prime = 0;
  std::size_t bit_count = 0;
  std::vector<double> r;
  std::vector<std::int8_t> decisions;
  std::optional<double> ber;  // only with a reference mark
  // Normalized correlation over the embedded extent: against the raw chips
  // without a reference (near zero for balanced marks), against the
  // bit-modulated chip signal with one (concentrates at +mu when present).
  double presence_c = 0.0;
  std::vector<std::size_t> ties;  // bit indexes where r was exactly zero
};

// Blind extraction: only the marked signal, the key, the bit count and the
// chip amplitude are needed. reference (if nonempty) must have bit_count
// entries and enables the error-rate field.
DetectionReport extract_image(std::span<const double> marked, std::uint64_t q,
                              std::size_t bit_count, double sigma_u,
                              std::span<const std::int8_t> reference = {});
DetectionReport extract_image(const GrayImage& marked, std::uint64_t q,
                              std::size_t bit_count, double sigma_u,
                              std::span<const std::int8_t> reference = {});

double mse(std::span<const double> a, std::span<const double> b);
double psnr_from_mse(double mse_value);  // +inf for mse 0
double psnr_db(const GrayImage& a, const GrayImage& b);

// Sequential stacking: each stage embeds into the previous stage's output
// with its own chips starting at the image origin. Stage PSNR is measured
// against the original cover. Keys must be distinct.
struct MarkSpec {
  WatermarkBits wm;
  std::uint64_t q = 0;
};

struct MultiEmbedOutcome {
  MarkedImage marked;
  std::vector<EmbedReport> stages;
  std::vector<PairReport> compatibility;  // all key pairs, i < j
};

MultiEmbedOutcome multi_embed(const GrayImage& cover,
                              std::span<const MarkSpec> marks,
                              const EmbedOptions& opt);

// JSON renderings with a stable field set.
std::string detection_report_json(const DetectionReport& rep);
std::string embed_report_json(const EmbedReport& rep);
std::string multi_embed_report_json(const MultiEmbedOutcome& out);

}  // namespace dwmk
