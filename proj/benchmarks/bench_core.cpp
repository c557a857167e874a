#include <benchmark/benchmark.h>

#include <cstdint>

#include "dwmk/analysis.hpp"
#include "dwmk/channel.hpp"
#include "dwmk/dseq.hpp"
#include "dwmk/imaging.hpp"
#include "dwmk/sscore.hpp"

namespace {

void BM_key_period(benchmark::State& state) {
  const std::uint64_t q = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(dwmk::period(q));
}
BENCHMARK(BM_key_period)->Arg(2467)->Arg(8069);

void BM_sequence_digits(benchmark::State& state) {
  const std::uint64_t q = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    dwmk::DSequence seq = dwmk::generate(q);
    benchmark::DoNotOptimize(seq.digits.data());
  }
}
BENCHMARK(BM_sequence_digits)->Arg(2467)->Arg(8069);

void BM_chip_extension(benchmark::State& state) {
  const dwmk::DSequence seq = dwmk::generate(2467);
  const std::size_t len = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    dwmk::ChipSequence c = dwmk::chips(seq, len, 16.0);
    benchmark::DoNotOptimize(c.chips.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(len));
}
BENCHMARK(BM_chip_extension)->Arg(1 << 14)->Arg(1 << 18);

void BM_cross_correlation(benchmark::State& state) {
  const std::size_t len = static_cast<std::size_t>(state.range(0));
  const dwmk::ChipSequence a = dwmk::chips(dwmk::generate(2467), len, 1.0);
  const dwmk::ChipSequence b = dwmk::chips(dwmk::generate(8069), len, 1.0);
  std::int64_t shift = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(dwmk::cross_correlation(a, b, ++shift));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(len));
}
BENCHMARK(BM_cross_correlation)->Arg(1 << 16)->Arg(1 << 20);

void BM_image_embed(benchmark::State& state) {
  const dwmk::GrayImage cover = dwmk::synthetic_cover({});
  const dwmk::WatermarkBits wm = dwmk::random_watermark(1024, 1, 2);
  dwmk::EmbedOptions opt;
  opt.params = {0.0, 1.0, 16.0};
  opt.budget_alpha = 0.1;
  for (auto _ : state) {
    dwmk::EmbedOutcome out = dwmk::embed_image(cover, wm, 2467, opt);
    benchmark::DoNotOptimize(out.marked.samples.data());
  }
  state.SetItemsProcessed(state.iterations() * 512 * 512);
}
BENCHMARK(BM_image_embed);

void BM_image_extract(benchmark::State& state) {
  const dwmk::GrayImage cover = dwmk::synthetic_cover({});
  const dwmk::WatermarkBits wm = dwmk::random_watermark(1024, 1, 2);
  dwmk::EmbedOptions opt;
  opt.params = {0.0, 1.0, 16.0};
  opt.budget_alpha = 0.1;
  const dwmk::GrayImage marked =
      dwmk::embed_image(cover, wm, 2467, opt).marked.to_gray();
  for (auto _ : state) {
    dwmk::DetectionReport rep =
        dwmk::extract_image(marked, 2467, 1024, 16.0, wm.bits);
    benchmark::DoNotOptimize(rep.decisions.data());
  }
  state.SetItemsProcessed(state.iterations() * 512 * 512);
}
BENCHMARK(BM_image_extract);

void BM_monte_carlo(benchmark::State& state) {
  const dwmk::ModelStats stats{16.0, 4.0, 16, 1.0};
  const double lam = dwmk::lambda_opt(stats);
  const std::uint64_t trials = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    dwmk::MonteCarloResult res =
        dwmk::monte_carlo_ber(stats, lam, 1.0, trials, 1);
    benchmark::DoNotOptimize(res.errors);
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(trials));
}
BENCHMARK(BM_monte_carlo)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
