#include <cmath>
#include <cstdint>
#include <vector>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "dwmk/analysis.hpp"
#include "dwmk/errors.hpp"
#include "dwmk/imaging.hpp"
#include "dwmk/sscore.hpp"

using namespace dwmk;
using json = nlohmann::json;

namespace {

GrayImage test_cover(int width, int height, std::uint64_t seed) {
  SyntheticCoverSpec spec;
  spec.width = width;
  spec.height = height;
  spec.seed = seed;
  return synthetic_cover(spec);
}

}  // namespace

TEST_CASE("layout splits the cover into per-bit blocks") {
  const BlockLayout a = layout(262144, 1024);
  CHECK(a.block_len == 256);
  CHECK(a.remainder == 0);

  const BlockLayout b = layout(100, 7);
  CHECK(b.block_len == 14);
  CHECK(b.remainder == 2);

  CHECK_THROWS_AS(layout(100, 0), DomainError);
  CHECK_THROWS_AS(layout(100, 101), TooManyBitsError);
}

TEST_CASE("bitmap conversion thresholds at mid-gray") {
  GrayImage bmp;
  bmp.width = 4;
  bmp.height = 1;
  bmp.pixels = {0, 127, 128, 255};
  const WatermarkBits wm = bits_from_bitmap(bmp);
  CHECK(wm.bits == std::vector<std::int8_t>{1, 1, -1, -1});

  const GrayImage back = bitmap_from_bits(wm.bits, 4, 1);
  CHECK(back.pixels == std::vector<std::uint8_t>{0, 0, 255, 255});
  CHECK(bits_from_bitmap(back).bits == wm.bits);

  CHECK_THROWS_AS(bitmap_from_bits(wm.bits, 3, 1), DimensionMismatchError);
  CHECK_THROWS_AS(bitmap_from_bits(std::vector<std::int8_t>{1, 0, 1, 1}, 4, 1),
                  DomainError);
}

TEST_CASE("quantized marked images convert to gray, real ones refuse") {
  MarkedImage m;
  m.width = 2;
  m.height = 1;
  m.quantized = true;
  m.samples = {0.0, 255.0};
  CHECK(m.to_gray().pixels == std::vector<std::uint8_t>{0, 255});
  CHECK(m.to_real().samples == m.samples);

  m.quantized = false;
  CHECK_THROWS_AS(m.to_gray(), DomainError);
}

TEST_CASE("unquantized noiseless round trip recovers every bit") {
  const GrayImage cover = test_cover(64, 64, 5);
  const WatermarkBits wm = random_watermark(16, 1, 9);

  EmbedOptions opt;
  opt.params.mu = 0.05;
  opt.params.lambda = 1.0;
  opt.params.sigma_u = 1.0;
  opt.quantize = false;

  const EmbedOutcome out = embed_image(cover, wm, 2467, opt);
  const DetectionReport det =
      extract_image(out.marked.samples, 2467, 16, 1.0, wm.bits);
  CHECK(*det.ber == 0.0);
  CHECK(det.ties.empty());

  // Full host rejection leaves the detector exactly mu times the bit.
  for (std::size_t j = 0; j < 16; ++j) {
    CHECK(det.r[j] == doctest::Approx(0.05 * wm.bits[j]).epsilon(1e-9));
  }
}

TEST_CASE("quantized round trip at image scale") {
  const GrayImage cover = test_cover(128, 128, 1);
  const WatermarkBits wm = random_watermark(64, 1, 2);

  EmbedOptions opt;
  opt.params.lambda = 1.0;
  opt.params.sigma_u = 16.0;
  opt.budget_alpha = 0.1;

  const EmbedOutcome out = embed_image(cover, wm, 2467, opt);
  CHECK(out.marked.quantized);
  for (double v : out.marked.samples) {
    CHECK(v == std::floor(v));
    CHECK(v >= 0.0);
    CHECK(v <= 255.0);
  }

  const DetectionReport det =
      extract_image(out.marked.to_gray(), 2467, 64, 16.0, wm.bits);
  CHECK(*det.ber == 0.0);
  // With a reference, presence concentrates at the applied gain.
  CHECK(det.presence_c == doctest::Approx(out.report.mu).epsilon(0.25));
}

TEST_CASE("embed report fields are internally consistent") {
  const GrayImage cover = test_cover(128, 128, 3);
  const WatermarkBits wm = random_watermark(32, 1, 4);

  EmbedOptions opt;
  opt.params.lambda = 1.0;
  opt.params.sigma_u = 8.0;
  opt.budget_alpha = 0.1;
  opt.quantize = false;

  const EmbedOutcome out = embed_image(cover, wm, 1019, opt);
  const EmbedReport& rep = out.report;

  CHECK(rep.prime == 1019);
  CHECK(rep.bit_count == 32);
  CHECK(rep.block_len == 512);
  CHECK(rep.remainder == 0);
  CHECK(rep.alpha.has_value());
  CHECK(rep.per_bit_g.size() == 32);

  // The resolved gain satisfies the budget against the measured moments
  // over the whole embedded extent.
  ModelStats stats;
  stats.sigma_x2 = rep.cover_var;
  stats.sigma_n2 = 0.0;
  stats.n = rep.bit_count * rep.block_len;
  stats.sigma_u2 = rep.sigma_u * rep.sigma_u;
  CHECK(rep.mu ==
        doctest::Approx(mu_for_budget(1.0, 0.1, stats)).epsilon(1e-12));

  // Measured distortion is the recomputed mean squared difference, and the
  // reported ratio holds exactly.
  std::vector<double> x(cover.pixels.begin(), cover.pixels.end());
  CHECK(rep.measured_mse ==
        doctest::Approx(mse(out.marked.samples, x)).epsilon(1e-12));
  CHECK(rep.psnr_db ==
        doctest::Approx(10.0 * std::log10(255.0 * 255.0 / rep.measured_mse))
            .epsilon(1e-12));

  // Unquantized and fully host-rejecting: the model tracks measurement.
  CHECK(rep.measured_mse ==
        doctest::Approx(rep.model_mse).epsilon(0.25));
}

TEST_CASE("fixed gain skips budget resolution") {
  const GrayImage cover = test_cover(32, 32, 8);
  const WatermarkBits wm = random_watermark(4, 1, 8);
  EmbedOptions opt;
  opt.params.mu = 0.75;
  opt.params.sigma_u = 4.0;
  const EmbedOutcome out = embed_image(cover, wm, 11, opt);
  CHECK(out.report.mu == 0.75);
  CHECK_FALSE(out.report.alpha.has_value());
}

TEST_CASE("global projection mode rejects only the shared mean component") {
  const GrayImage cover = test_cover(64, 64, 11);
  const WatermarkBits wm = random_watermark(8, 1, 12);
  EmbedOptions opt;
  opt.params.mu = 0.3;
  opt.params.sigma_u = 4.0;
  opt.quantize = false;
  opt.global_xbar = true;
  const EmbedOutcome out = embed_image(cover, wm, 13, opt);
  CHECK(out.report.global_xbar);
  // All blocks share one projection, so the applied gains differ only by
  // the bit sign.
  const double base = out.report.per_bit_g[0] - 0.3 * wm.bits[0];
  for (std::size_t j = 0; j < 8; ++j) {
    CHECK(out.report.per_bit_g[j] ==
          doctest::Approx(0.3 * wm.bits[j] + base).epsilon(1e-12));
  }
}

TEST_CASE("extraction flags exact-zero statistics as ties") {
  const std::vector<double> flat(60, 0.0);
  const DetectionReport det = extract_image(flat, 7, 4, 1.0);
  CHECK(det.ties.size() == 4);
  for (std::int8_t d : det.decisions) CHECK(d == 1);
  CHECK_FALSE(det.ber.has_value());
}

TEST_CASE("extraction validates the reference length") {
  const std::vector<double> y(64, 1.0);
  const std::vector<std::int8_t> ref(3, 1);
  CHECK_THROWS_AS(extract_image(y, 7, 4, 1.0, ref), LengthMismatchError);
}

TEST_CASE("error rate counts disagreeing bits exactly") {
  const GrayImage cover = test_cover(64, 64, 13);
  const WatermarkBits wm = random_watermark(16, 1, 14);
  EmbedOptions opt;
  opt.params.mu = 0.2;
  opt.params.sigma_u = 4.0;
  opt.quantize = false;
  const EmbedOutcome out = embed_image(cover, wm, 2467, opt);

  std::vector<std::int8_t> wrong = wm.bits;
  for (std::size_t j = 0; j < 4; ++j) {
    wrong[j] = static_cast<std::int8_t>(-wrong[j]);
  }
  const DetectionReport det =
      extract_image(out.marked.samples, 2467, 16, 4.0, wrong);
  CHECK(*det.ber == doctest::Approx(4.0 / 16.0));
}

TEST_CASE("mse and psnr basics") {
  const std::vector<double> a{0, 0, 0, 0};
  const std::vector<double> b{1, -1, 1, -1};
  CHECK(mse(a, b) == 1.0);
  CHECK(psnr_from_mse(0.0) == std::numeric_limits<double>::infinity());
  CHECK(psnr_from_mse(255.0 * 255.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(mse(a, std::vector<double>{1.0}), LengthMismatchError);

  GrayImage x;
  x.width = 2;
  x.height = 1;
  x.pixels = {10, 20};
  GrayImage y = x;
  CHECK(psnr_db(x, y) == std::numeric_limits<double>::infinity());
  y.pixels[0] = 11;
  CHECK(psnr_db(x, y) ==
        doctest::Approx(10.0 * std::log10(255.0 * 255.0 / 0.5)));
  y.width = 1;
  y.height = 2;
  CHECK_THROWS_AS(psnr_db(x, y), DimensionMismatchError);
}

TEST_CASE("stacked marks extract independently and stack distortion") {
  const GrayImage cover = test_cover(128, 128, 1);
  std::vector<MarkSpec> marks(2);
  marks[0].wm = random_watermark(64, 1, 21);
  marks[0].q = 2467;
  marks[1].wm = random_watermark(64, 1, 22);
  marks[1].q = 8069;

  EmbedOptions opt;
  opt.params.lambda = 1.0;
  opt.params.sigma_u = 16.0;
  opt.budget_alpha = 0.1;

  const MultiEmbedOutcome out = multi_embed(cover, marks, opt);
  CHECK(out.stages.size() == 2);
  CHECK(out.compatibility.size() == 1);
  CHECK(out.compatibility[0].compatible);
  CHECK(out.marked.quantized);

  // Later marks add distortion on top of earlier ones.
  CHECK(out.stages[1].psnr_db < out.stages[0].psnr_db);

  const GrayImage marked = out.marked.to_gray();
  const DetectionReport d1 =
      extract_image(marked, 2467, 64, 16.0, marks[0].wm.bits);
  const DetectionReport d2 =
      extract_image(marked, 8069, 64, 16.0, marks[1].wm.bits);
  CHECK(*d1.ber == 0.0);
  CHECK(*d2.ber == 0.0);
}

TEST_CASE("stacking validates its inputs") {
  const GrayImage cover = test_cover(32, 32, 2);
  std::vector<MarkSpec> marks(2);
  marks[0].wm = random_watermark(4, 1, 1);
  marks[0].q = 11;
  marks[1].wm = random_watermark(4, 1, 2);
  marks[1].q = 11;
  EmbedOptions opt;
  opt.params.mu = 0.5;
  CHECK_THROWS_AS(multi_embed(cover, marks, opt), DuplicatePrimeError);
  CHECK_THROWS_AS(multi_embed(cover, {}, opt), DomainError);
}

TEST_CASE("reports render as well-formed json") {
  const GrayImage cover = test_cover(64, 64, 6);
  const WatermarkBits wm = random_watermark(8, 1, 7);
  EmbedOptions opt;
  opt.params.mu = 0.4;
  opt.params.sigma_u = 4.0;

  const EmbedOutcome out = embed_image(cover, wm, 13, opt);
  const json emb = json::parse(embed_report_json(out.report));
  CHECK(emb["prime"] == 13);
  CHECK(emb["bit_count"] == 8);
  CHECK(emb["alpha"].is_null());
  CHECK(emb["mu"] == 0.4);
  CHECK(emb["per_bit_g"].size() == 8);

  const DetectionReport blind =
      extract_image(out.marked.samples, 13, 8, 4.0);
  const json det = json::parse(detection_report_json(blind));
  CHECK(det["ber"].is_null());
  CHECK(det["r"].size() == 8);
  CHECK(det["decisions"].size() == 8);

  std::vector<MarkSpec> marks(1);
  marks[0].wm = wm;
  marks[0].q = 13;
  const MultiEmbedOutcome multi = multi_embed(cover, marks, opt);
  const json mj = json::parse(multi_embed_report_json(multi));
  CHECK(mj["stages"].size() == 1);
  CHECK(mj["compatibility"].empty());
}
