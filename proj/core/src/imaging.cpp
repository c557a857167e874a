#include "dwmk/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "dwmk/errors.hpp"

namespace dwmk {
namespace {

using json = nlohmann::ordered_json;

constexpr double kPeak = 255.0;

std::vector<double> to_doubles(const GrayImage& img) {
  return std::vector<double>(img.pixels.begin(), img.pixels.end());
}

void check_bits(const WatermarkBits& wm) {
  const std::size_t count =
      static_cast<std::size_t>(wm.width) * static_cast<std::size_t>(wm.height);
  if (wm.width <= 0 || wm.height <= 0 || wm.bits.size() != count) {
    throw DimensionMismatchError("watermark bits do not match dimensions");
  }
  for (std::int8_t b : wm.bits) {
    if (b != 1 && b != -1) throw DomainError("watermark bits must be +1 or -1");
  }
}

double quantize_sample(double v) {
  return std::clamp(std::round(v), 0.0, kPeak);
}

// Mean and population variance of the signal.
struct Moments {
  double mean = 0.0;
  double var = 0.0;
};

Moments moments(std::span<const double> x) {
  Moments m;
  if (x.empty()) return m;
  double sum = 0.0;
  for (double v : x) sum += v;
  m.mean = sum / static_cast<double>(x.size());
  double acc = 0.0;
  for (double v : x) {
    const double d = v - m.mean;
    acc += d * d;
  }
  m.var = acc / static_cast<double>(x.size());
  return m;
}

// Expected squared host projection of one block of chips against a host with
// the given mean and variance. The DC part is exact per block (the chips are
// known); the fluctuation part is statistical.
double expected_xbar2(std::span<const double> u, double mean, double var) {
  double chip_sum = 0.0;
  double chip_pow = 0.0;
  for (double c : u) {
    chip_sum += c;
    chip_pow += c * c;
  }
  const double dc = mean * chip_sum / chip_pow;
  return dc * dc + var / chip_pow;
}

// Shared embedding core. `x` is the stage input and `original` the pristine
// cover that distortion is measured against.
EmbedOutcome embed_core(std::span<const double> x, int width, int height,
                        const WatermarkBits& wm, std::uint64_t q,
                        const EmbedOptions& opt,
                        std::span<const double> original) {
  check_bits(wm);
  const std::size_t bit_count = wm.bits.size();
  const BlockLayout lay = layout(x.size(), bit_count);

  const DSequence seq = generate(q);
  const double sigma_u = opt.params.sigma_u;
  const std::size_t extent = lay.bit_count * lay.block_len;
  const ChipSequence carrier = chips(seq, extent, sigma_u);

  const Moments cov = moments(x);

  double lambda = opt.params.lambda;
  double mu = opt.params.mu;
  if (opt.budget_alpha) {
    // The budget spreads the host-rejection cost over the whole embedded
    // extent, so the model length here is every touched sample, not one
    // block.
    ModelStats stats;
    stats.sigma_x2 = cov.var;
    stats.sigma_n2 = 0.0;
    stats.n = extent;
    stats.sigma_u2 = sigma_u * sigma_u;
    mu = mu_for_budget(lambda, *opt.budget_alpha, stats);
  }
  EmbedParams params;
  params.mu = mu;
  params.lambda = lambda;
  params.sigma_u = sigma_u;

  MarkedImage marked;
  marked.width = width;
  marked.height = height;
  marked.quantized = opt.quantize;
  marked.samples.assign(x.begin(), x.end());

  const std::span<const double> chip_span(carrier.chips);
  double global_proj = 0.0;
  if (opt.global_xbar) {
    global_proj = host_projection(x.first(extent), chip_span);
  }

  std::vector<double> per_bit_g(bit_count);
  double xbar2_model = 0.0;
  for (std::size_t j = 0; j < bit_count; ++j) {
    const std::size_t off = j * lay.block_len;
    const std::span<const double> u = chip_span.subspan(off, lay.block_len);
    const std::span<const double> xb = x.subspan(off, lay.block_len);
    const double xbar = opt.global_xbar ? global_proj : host_projection(xb, u);
    const double g = mu * wm.bits[j] - lambda * xbar;
    per_bit_g[j] = g;
    for (std::size_t i = 0; i < lay.block_len; ++i) {
      marked.samples[off + i] += g * u[i];
    }
    xbar2_model += opt.global_xbar
                       ? global_proj * global_proj
                       : expected_xbar2(u, cov.mean, cov.var);
  }
  xbar2_model /= static_cast<double>(bit_count);

  if (opt.quantize) {
    for (double& v : marked.samples) v = quantize_sample(v);
  }

  EmbedReport rep;
  rep.prime = q;
  rep.bit_count = lay.bit_count;
  rep.block_len = lay.block_len;
  rep.remainder = lay.remainder;
  rep.mu = mu;
  rep.lambda = lambda;
  rep.sigma_u = sigma_u;
  rep.alpha = opt.budget_alpha;
  rep.quantized = opt.quantize;
  rep.global_xbar = opt.global_xbar;
  rep.cover_mean = cov.mean;
  rep.cover_var = cov.var;
  rep.measured_mse = mse(marked.samples, original);
  rep.psnr_db = psnr_from_mse(rep.measured_mse);
  const double per_sample =
      sigma_u * sigma_u * (mu * mu + lambda * lambda * xbar2_model);
  rep.model_mse =
      per_sample * static_cast<double>(extent) / static_cast<double>(x.size());
  rep.model_psnr_db = psnr_from_mse(rep.model_mse);
  rep.per_bit_g = std::move(per_bit_g);

  EmbedOutcome out;
  out.marked = std::move(marked);
  out.report = std::move(rep);
  return out;
}

json detection_to_json(const DetectionReport& rep) {
  json j;
  j["prime"] = rep.prime;
  j["bit_count"] = rep.bit_count;
  j["r"] = rep.r;
  json dec = json::array();
  for (std::int8_t d : rep.decisions) dec.push_back(static_cast<int>(d));
  j["decisions"] = dec;
  if (rep.ber) {
    j["ber"] = *rep.ber;
  } else {
    j["ber"] = nullptr;
  }
  j["presence_c"] = rep.presence_c;
  j["ties"] = rep.ties;
  return j;
}

json embed_to_json(const EmbedReport& rep) {
  json j;
  j["prime"] = rep.prime;
  j["bit_count"] = rep.bit_count;
  j["block_len"] = rep.block_len;
  j["remainder"] = rep.remainder;
  j["mu"] = rep.mu;
  j["lambda"] = rep.lambda;
  j["sigma_u"] = rep.sigma_u;
  if (rep.alpha) {
    j["alpha"] = *rep.alpha;
  } else {
    j["alpha"] = nullptr;
  }
  j["quantized"] = rep.quantized;
  j["global_xbar"] = rep.global_xbar;
  j["cover_mean"] = rep.cover_mean;
  j["cover_var"] = rep.cover_var;
  j["measured_mse"] = rep.measured_mse;
  j["psnr_db"] = rep.psnr_db;
  j["model_mse"] = rep.model_mse;
  j["model_psnr_db"] = rep.model_psnr_db;
  j["per_bit_g"] = rep.per_bit_g;
  return j;
}

json pair_to_json(const PairReport& rep) {
  json j;
  j["q1"] = rep.q1;
  j["q2"] = rep.q2;
  j["period1"] = rep.period1;
  j["period2"] = rep.period2;
  j["n1"] = rep.n1;
  j["n2"] = rep.n2;
  j["compatible"] = rep.compatible;
  j["max_length_warning"] = rep.max_length_warning;
  return j;
}

}  // namespace

BlockLayout layout(std::size_t total, std::size_t bit_count) {
  if (bit_count == 0) throw DomainError("bit count must be positive");
  BlockLayout lay;
  lay.total = total;
  lay.bit_count = bit_count;
  lay.block_len = total / bit_count;
  if (lay.block_len == 0) {
    throw TooManyBitsError(std::to_string(bit_count) +
                           " bits do not fit in " + std::to_string(total) +
                           " samples");
  }
  lay.remainder = total - lay.block_len * bit_count;
  return lay;
}

WatermarkBits bits_from_bitmap(const GrayImage& bitmap) {
  if (bitmap.width <= 0 || bitmap.height <= 0 ||
      bitmap.size() != static_cast<std::size_t>(bitmap.width) *
                           static_cast<std::size_t>(bitmap.height)) {
    throw DimensionMismatchError("bitmap pixels do not match dimensions");
  }
  WatermarkBits wm;
  wm.width = bitmap.width;
  wm.height = bitmap.height;
  wm.bits.resize(bitmap.size());
  for (std::size_t i = 0; i < bitmap.size(); ++i) {
    wm.bits[i] = bitmap.pixels[i] < 128 ? 1 : -1;
  }
  return wm;
}

GrayImage bitmap_from_bits(std::span<const std::int8_t> bits, int width,
                           int height) {
  const std::size_t count =
      static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  if (width <= 0 || height <= 0 || bits.size() != count) {
    throw DimensionMismatchError("bit buffer does not match dimensions");
  }
  GrayImage img;
  img.width = width;
  img.height = height;
  img.pixels.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (bits[i] != 1 && bits[i] != -1) {
      throw DomainError("watermark bits must be +1 or -1");
    }
    img.pixels[i] = bits[i] == 1 ? 0 : 255;
  }
  return img;
}

GrayImage MarkedImage::to_gray() const {
  if (!quantized) {
    throw DomainError("marked image is not quantized; write it as float64");
  }
  GrayImage img;
  img.width = width;
  img.height = height;
  img.pixels.resize(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    img.pixels[i] = static_cast<std::uint8_t>(samples[i]);
  }
  return img;
}

RealImage MarkedImage::to_real() const {
  RealImage img;
  img.width = width;
  img.height = height;
  img.samples = samples;
  return img;
}

EmbedOutcome embed_image(const GrayImage& cover, const WatermarkBits& wm,
                         std::uint64_t q, const EmbedOptions& opt) {
  if (cover.width <= 0 || cover.height <= 0 ||
      cover.size() != static_cast<std::size_t>(cover.width) *
                          static_cast<std::size_t>(cover.height)) {
    throw DimensionMismatchError("cover pixels do not match dimensions");
  }
  const std::vector<double> x = to_doubles(cover);
  return embed_core(x, cover.width, cover.height, wm, q, opt, x);
}

DetectionReport extract_image(std::span<const double> marked, std::uint64_t q,
                              std::size_t bit_count, double sigma_u,
                              std::span<const std::int8_t> reference) {
  const BlockLayout lay = layout(marked.size(), bit_count);
  if (!reference.empty() && reference.size() != bit_count) {
    throw LengthMismatchError("reference has " +
                              std::to_string(reference.size()) + " bits, " +
                              std::to_string(bit_count) + " expected");
  }
  const DSequence seq = generate(q);
  const std::size_t extent = lay.bit_count * lay.block_len;
  const ChipSequence carrier = chips(seq, extent, sigma_u);
  const std::span<const double> chip_span(carrier.chips);

  DetectionReport rep;
  rep.prime = q;
  rep.bit_count = bit_count;
  rep.r.resize(bit_count);
  rep.decisions.resize(bit_count);

  std::size_t errors = 0;
  for (std::size_t j = 0; j < bit_count; ++j) {
    const std::size_t off = j * lay.block_len;
    const Detection det = detect(marked.subspan(off, lay.block_len),
                                 chip_span.subspan(off, lay.block_len));
    rep.r[j] = det.r;
    rep.decisions[j] = static_cast<std::int8_t>(det.beta);
    if (det.tie) rep.ties.push_back(j);
    if (!reference.empty() && det.beta != reference[j]) ++errors;
  }
  if (!reference.empty()) {
    rep.ber = static_cast<double>(errors) / static_cast<double>(bit_count);
  }

  // Presence over the whole embedded extent: against the raw chips when the
  // mark is unknown, against the bit-modulated chips when it is.
  if (reference.empty()) {
    rep.presence_c = host_projection(marked.first(extent), chip_span);
  } else {
    std::vector<double> modulated(extent);
    for (std::size_t j = 0; j < bit_count; ++j) {
      const std::size_t off = j * lay.block_len;
      for (std::size_t i = 0; i < lay.block_len; ++i) {
        modulated[off + i] = reference[j] * carrier.chips[off + i];
      }
    }
    rep.presence_c = host_projection(marked.first(extent), modulated);
  }
  return rep;
}

DetectionReport extract_image(const GrayImage& marked, std::uint64_t q,
                              std::size_t bit_count, double sigma_u,
                              std::span<const std::int8_t> reference) {
  const std::vector<double> y = to_doubles(marked);
  return extract_image(y, q, bit_count, sigma_u, reference);
}

double mse(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) {
    throw LengthMismatchError("mse needs two equal nonempty signals");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc / static_cast<double>(a.size());
}

double psnr_from_mse(double mse_value) {
  if (mse_value <= 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(kPeak * kPeak / mse_value);
}

double psnr_db(const GrayImage& a, const GrayImage& b) {
  if (a.width != b.width || a.height != b.height) {
    throw DimensionMismatchError("images differ in size");
  }
  return psnr_from_mse(mse(to_doubles(a), to_doubles(b)));
}

MultiEmbedOutcome multi_embed(const GrayImage& cover,
                              std::span<const MarkSpec> marks,
                              const EmbedOptions& opt) {
  if (marks.empty()) throw DomainError("no watermarks given");
  for (std::size_t i = 0; i < marks.size(); ++i) {
    for (std::size_t k = i + 1; k < marks.size(); ++k) {
      if (marks[i].q == marks[k].q) {
        throw DuplicatePrimeError("key " + std::to_string(marks[i].q) +
                                  " used twice");
      }
    }
  }

  MultiEmbedOutcome out;
  for (std::size_t i = 0; i < marks.size(); ++i) {
    for (std::size_t k = i + 1; k < marks.size(); ++k) {
      out.compatibility.push_back(compatible_pair(marks[i].q, marks[k].q));
    }
  }

  const std::vector<double> original = to_doubles(cover);
  std::vector<double> current = original;
  // Each stage embeds into the previous stage's output, quantizing in
  // between when requested, exactly as chained single embeds would.
  for (const MarkSpec& mark : marks) {
    EmbedOutcome stage = embed_core(current, cover.width, cover.height,
                                    mark.wm, mark.q, opt, original);
    current = stage.marked.samples;
    out.stages.push_back(std::move(stage.report));
    out.marked = std::move(stage.marked);
  }
  return out;
}

std::string detection_report_json(const DetectionReport& rep) {
  return detection_to_json(rep).dump(2);
}

std::string embed_report_json(const EmbedReport& rep) {
  return embed_to_json(rep).dump(2);
}

std::string multi_embed_report_json(const MultiEmbedOutcome& out) {
  json j;
  json stages = json::array();
  for (const EmbedReport& rep : out.stages) stages.push_back(embed_to_json(rep));
  j["stages"] = stages;
  json pairs = json::array();
  for (const PairReport& rep : out.compatibility) pairs.push_back(pair_to_json(rep));
  j["compatibility"] = pairs;
  return j.dump(2);
}

}  // namespace dwmk
