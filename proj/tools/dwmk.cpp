// Command-line front end for the dwmk watermarking library.
//
// Exit codes: 0 success, 1 usage error, 2 I/O or file-format error,
// 3 domain error (bad key, infeasible budget, size mismatch),
// 4 verification failure (--ref given and BER above --max-ber).

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dwmk/analysis.hpp"
#include "dwmk/channel.hpp"
#include "dwmk/dseq.hpp"
#include "dwmk/errors.hpp"
#include "dwmk/imaging.hpp"
#include "dwmk/pgmio.hpp"
#include "dwmk/sscore.hpp"

namespace {

using dwmk::GrayImage;
using dwmk::RealImage;
using dwmk::WatermarkBits;
using json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::string& path, const std::string& text) {
  dwmk::write_file(path, std::span<const std::uint8_t>(
                             reinterpret_cast<const std::uint8_t*>(text.data()),
                             text.size()));
}

// rec.pgm -> rec.q2467.pgm, for multi-key outputs.
std::string suffixed_path(const std::string& path, std::uint64_t q) {
  const std::string tag = ".q" + std::to_string(q);
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return path + tag;
  }
  return path.substr(0, dot) + tag + path.substr(dot);
}

// ===== info =================================================================

struct InfoArgs {
  std::uint64_t prime = 0;
  bool as_json = false;
};

int run_info(const InfoArgs& a) {
  const dwmk::DSequence seq = dwmk::generate(a.prime);
  const dwmk::Classification cls = dwmk::classify(seq);
  if (a.as_json) {
    json j;
    j["prime"] = seq.q;
    j["period"] = seq.period;
    j["n_divisor"] = seq.n_divisor;
    j["parity"] = cls.even ? "even" : "odd";
    j["max_length"] = seq.max_length;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "prime=" << seq.q << " period=" << seq.period
              << " n_divisor=" << seq.n_divisor
              << " parity=" << (cls.even ? "even" : "odd")
              << " max_length=" << (seq.max_length ? "true" : "false") << "\n";
  }
  return 0;
}

// ===== gen ==================================================================

struct GenArgs {
  std::uint64_t prime = 0;
  std::uint64_t len = 0;  // 0 means one full period
  bool as_chips = false;
  double sigma_u = 1.0;
  std::string out;
};

int run_gen(const GenArgs& a) {
  const dwmk::DSequence seq = dwmk::generate(a.prime);
  const std::uint64_t len = a.len == 0 ? seq.period : a.len;
  std::string text;
  if (a.as_chips) {
    const dwmk::ChipSequence cs = dwmk::chips(seq, len, a.sigma_u);
    for (double c : cs.chips) {
      text += fmt(c);
      text += '\n';
    }
  } else {
    text.reserve(len + 1);
    for (std::uint64_t i = 0; i < len; ++i) {
      text += static_cast<char>('0' + seq.digits[i % seq.period]);
    }
    text += '\n';
  }
  if (a.out.empty()) {
    std::cout << text;
  } else {
    write_text(a.out, text);
  }
  return 0;
}

// ===== pair =================================================================

struct PairArgs {
  std::uint64_t p1 = 0, p2 = 0;
  bool as_json = false;
};

int run_pair(const PairArgs& a) {
  const dwmk::PairReport rep = dwmk::compatible_pair(a.p1, a.p2);
  if (a.as_json) {
    json j;
    j["q1"] = rep.q1;
    j["q2"] = rep.q2;
    j["period1"] = rep.period1;
    j["period2"] = rep.period2;
    j["n1"] = rep.n1;
    j["n2"] = rep.n2;
    j["compatible"] = rep.compatible;
    j["max_length_warning"] = rep.max_length_warning;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "q1=" << rep.q1 << " period1=" << rep.period1
              << " q2=" << rep.q2 << " period2=" << rep.period2
              << " n1=" << rep.n1 << " n2=" << rep.n2
              << " compatible=" << (rep.compatible ? "true" : "false")
              << " max_length_warning="
              << (rep.max_length_warning ? "true" : "false") << "\n";
  }
  return 0;
}

// ===== embed ================================================================

struct EmbedArgs {
  std::string cover;
  std::vector<std::string> wm_paths;
  std::vector<std::uint64_t> primes;
  double mu = 0.0;
  bool mu_given = false;
  double budget = 0.1;
  double lambda = 1.0;
  bool lambda_opt = false;
  double sigma_n = 0.0;
  double sigma_u = 1.0;
  bool no_quantize = false;
  bool global_xbar = false;
  std::string out;
  std::string report;
  bool as_json = false;
};

int run_embed(const EmbedArgs& a) {
  if (a.wm_paths.size() != a.primes.size()) {
    std::cerr << "dwmk: embed needs one --prime per --wm\n";
    return 1;
  }
  const GrayImage cover = dwmk::read_pgm_file(a.cover);

  dwmk::EmbedOptions opt;
  opt.params.mu = a.mu;
  opt.params.sigma_u = a.sigma_u;
  opt.quantize = !a.no_quantize;
  opt.global_xbar = a.global_xbar;
  if (!a.mu_given) opt.budget_alpha = a.budget;

  std::vector<dwmk::MarkSpec> marks(a.primes.size());
  for (std::size_t i = 0; i < a.primes.size(); ++i) {
    marks[i].wm = dwmk::bits_from_bitmap(dwmk::read_pgm_file(a.wm_paths[i]));
    marks[i].q = a.primes[i];
  }

  if (a.lambda_opt) {
    if (marks.size() != 1) {
      std::cerr << "dwmk: --lambda-opt applies to single-watermark embeds\n";
      return 1;
    }
    std::vector<double> x(cover.pixels.begin(), cover.pixels.end());
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double var = 0.0;
    for (double v : x) var += (v - mean) * (v - mean);
    var /= static_cast<double>(x.size());
    const dwmk::BlockLayout lay =
        dwmk::layout(cover.size(), marks[0].wm.bits.size());
    dwmk::ModelStats stats;
    stats.sigma_x2 = var;
    stats.sigma_n2 = a.sigma_n * a.sigma_n;
    stats.n = lay.block_len;
    stats.sigma_u2 = a.sigma_u * a.sigma_u;
    opt.params.lambda = dwmk::lambda_opt(stats);
  } else {
    opt.params.lambda = a.lambda;
  }

  const dwmk::MultiEmbedOutcome out = dwmk::multi_embed(cover, marks, opt);
  for (const dwmk::PairReport& pr : out.compatibility) {
    if (!pr.compatible) {
      std::cerr << "dwmk: warning: keys " << pr.q1 << " and " << pr.q2
                << " are not cross-correlation compatible\n";
    }
  }

  if (opt.quantize) {
    dwmk::write_pgm_file(a.out, out.marked.to_gray());
  } else {
    dwmk::write_f64_file(a.out, out.marked.to_real());
  }

  const std::string report_text = marks.size() == 1
                                      ? dwmk::embed_report_json(out.stages[0])
                                      : dwmk::multi_embed_report_json(out);
  if (!a.report.empty()) write_text(a.report, report_text + "\n");
  if (a.as_json) {
    std::cout << report_text << "\n";
  } else {
    for (const dwmk::EmbedReport& st : out.stages) {
      std::cout << "embedded prime=" << st.prime << " bits=" << st.bit_count
                << " mu=" << fmt(st.mu) << " lambda=" << fmt(st.lambda)
                << " psnr_db=" << fmt(st.psnr_db) << "\n";
    }
    std::cout << "wrote " << a.out << "\n";
  }
  return 0;
}

// ===== extract ==============================================================

struct ExtractArgs {
  std::string image;
  std::vector<std::uint64_t> primes;
  std::vector<std::uint64_t> wm_width, wm_height;
  std::vector<std::string> refs;
  double sigma_u = 1.0;
  double max_ber = -1.0;
  bool max_ber_given = false;
  std::string out;
  std::string report;
  bool as_json = false;
};

// Index into a per-key option that may be given once and broadcast.
template <typename T>
const T& pick(const std::vector<T>& v, std::size_t i) {
  return v.size() == 1 ? v[0] : v[i];
}

int run_extract(const ExtractArgs& a) {
  const std::size_t keys = a.primes.size();
  const auto broadcastable = [keys](std::size_t n) {
    return n == 1 || n == keys;
  };
  if (!broadcastable(a.wm_width.size()) || !broadcastable(a.wm_height.size())) {
    std::cerr << "dwmk: --wm-width/--wm-height must be given once or once "
                 "per --prime\n";
    return 1;
  }
  if (!a.refs.empty() && !broadcastable(a.refs.size())) {
    std::cerr << "dwmk: --ref must be given once or once per --prime\n";
    return 1;
  }
  if (a.max_ber_given && a.refs.empty()) {
    std::cerr << "dwmk: --max-ber needs --ref\n";
    return 1;
  }

  const RealImage marked = dwmk::read_image_file(a.image);

  bool over_threshold = false;
  json reports = json::array();
  for (std::size_t i = 0; i < keys; ++i) {
    const int w = static_cast<int>(pick(a.wm_width, i));
    const int h = static_cast<int>(pick(a.wm_height, i));
    const std::size_t bits =
        static_cast<std::size_t>(w) * static_cast<std::size_t>(h);

    std::vector<std::int8_t> ref_bits;
    if (!a.refs.empty()) {
      const WatermarkBits ref =
          dwmk::bits_from_bitmap(dwmk::read_pgm_file(pick(a.refs, i)));
      if (ref.bits.size() != bits) {
        throw dwmk::LengthMismatchError(
            "reference bitmap does not match --wm-width/--wm-height");
      }
      ref_bits = ref.bits;
    }

    const dwmk::DetectionReport det = dwmk::extract_image(
        marked.samples, a.primes[i], bits, a.sigma_u, ref_bits);
    reports.push_back(json::parse(dwmk::detection_report_json(det)));

    if (!a.out.empty()) {
      const std::string path =
          keys == 1 ? a.out : suffixed_path(a.out, a.primes[i]);
      dwmk::write_pgm_file(path, dwmk::bitmap_from_bits(det.decisions, w, h));
    }
    if (a.max_ber_given && det.ber && *det.ber > a.max_ber) {
      over_threshold = true;
    }
    if (!a.as_json) {
      std::cout << "prime=" << det.prime << " bits=" << det.bit_count
                << " ber=" << (det.ber ? fmt(*det.ber) : "n/a")
                << " presence_c=" << fmt(det.presence_c)
                << " ties=" << det.ties.size() << "\n";
    }
  }

  const std::string report_text =
      keys == 1 ? reports[0].dump(2) : reports.dump(2);
  if (!a.report.empty()) write_text(a.report, report_text + "\n");
  if (a.as_json) std::cout << report_text << "\n";
  return over_threshold ? 4 : 0;
}

// ===== psnr =================================================================

struct PsnrArgs {
  std::string a, b;
  bool as_json = false;
};

int run_psnr(const PsnrArgs& args) {
  const RealImage a = dwmk::read_image_file(args.a);
  const RealImage b = dwmk::read_image_file(args.b);
  if (a.width != b.width || a.height != b.height) {
    throw dwmk::DimensionMismatchError("images differ in size");
  }
  const double m = dwmk::mse(a.samples, b.samples);
  const double p = dwmk::psnr_from_mse(m);
  if (args.as_json) {
    json j;
    j["mse"] = m;
    j["psnr_db"] = std::isfinite(p) ? json(p) : json(nullptr);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "mse=" << fmt(m) << " psnr_db=" << fmt(p) << "\n";
  }
  return 0;
}

// ===== sweep ================================================================

struct SweepArgs {
  std::uint64_t prime = 0;
  std::string cover;
  int width = 512, height = 512;
  double sigma_x = 45.22;
  double mean = 128.0;
  std::uint64_t cover_seed = 1;
  std::string wm;
  std::uint64_t bits = 1024;
  std::uint64_t wm_seed = 1;
  dwmk::SweepConfig cfg;
  bool no_quantize = false;
  std::string out;
  std::string summary;
};

int run_sweep(SweepArgs& a) {
  GrayImage cover;
  if (a.cover.empty()) {
    dwmk::SyntheticCoverSpec spec;
    spec.width = a.width;
    spec.height = a.height;
    spec.sigma_x = a.sigma_x;
    spec.mean = a.mean;
    spec.seed = a.cover_seed;
    cover = dwmk::synthetic_cover(spec);
  } else {
    cover = dwmk::read_pgm_file(a.cover);
  }

  WatermarkBits wm;
  if (a.wm.empty()) {
    wm = dwmk::random_watermark(static_cast<int>(a.bits), 1, a.wm_seed);
  } else {
    wm = dwmk::bits_from_bitmap(dwmk::read_pgm_file(a.wm));
  }

  a.cfg.quantize = !a.no_quantize;
  const dwmk::GainSweepResult res = dwmk::gain_sweep(cover, wm, a.prime, a.cfg);

  if (a.out.empty()) {
    std::cout << dwmk::sweep_csv(res);
  } else {
    write_text(a.out, dwmk::sweep_csv(res));
    std::cout << dwmk::sweep_summary_json(res) << "\n";
  }
  if (!a.summary.empty()) {
    write_text(a.summary, dwmk::sweep_summary_json(res) + "\n");
  }
  return 0;
}

// ===== montecarlo ===========================================================

struct MonteCarloArgs {
  std::uint64_t n = 0;
  double sigma_x = 0.0;
  double sigma_n = 0.0;
  double sigma_u = 1.0;
  double lambda = 1.0;
  bool lambda_given = false;
  bool lambda_opt = false;
  double alpha = 1.0;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::string report;
};

int run_montecarlo(const MonteCarloArgs& a) {
  dwmk::ModelStats stats;
  stats.sigma_x2 = a.sigma_x * a.sigma_x;
  stats.sigma_n2 = a.sigma_n * a.sigma_n;
  stats.n = a.n;
  stats.sigma_u2 = a.sigma_u * a.sigma_u;
  const double lambda = a.lambda_opt ? dwmk::lambda_opt(stats) : a.lambda;

  const dwmk::MonteCarloResult res =
      dwmk::monte_carlo_ber(stats, lambda, a.alpha, a.trials, a.seed);
  const std::string text =
      dwmk::monte_carlo_json(res, stats, lambda, a.alpha, a.seed);
  if (a.report.empty()) {
    std::cout << text << "\n";
  } else {
    write_text(a.report, text + "\n");
    std::cout << "trials=" << res.trials << " errors=" << res.errors
              << " ber=" << fmt(res.empirical_ber)
              << " predicted=" << fmt(res.predicted_p)
              << " z=" << fmt(res.z_score) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spread-spectrum grayscale image watermarking with binary "
               "decimal sequences"};
  app.require_subcommand(1);

  InfoArgs info_args;
  CLI::App* info = app.add_subcommand(
      "info", "Classify a prime key: period, divisor, parity, max-length");
  info->add_option("--prime", info_args.prime, "Prime key")->required();
  info->add_flag("--json", info_args.as_json, "Emit JSON");

  GenArgs gen_args;
  CLI::App* gen = app.add_subcommand(
      "gen", "Emit the binary sequence of a key, as digits or chips");
  gen->add_option("--prime", gen_args.prime, "Prime key")->required();
  gen->add_option("--len", gen_args.len,
                  "Output length (default: one full period)");
  CLI::Option* gen_chips = gen->add_flag(
      "--chips", gen_args.as_chips, "Antipodal chips, one value per line");
  gen->add_option("--sigma-u", gen_args.sigma_u, "Chip amplitude")
      ->needs(gen_chips);
  gen->add_option("-o,--out", gen_args.out, "Write to file instead of stdout");

  PairArgs pair_args;
  CLI::App* pair = app.add_subcommand(
      "pair", "Check two keys for zero full-period cross-correlation");
  pair->add_option("--p1", pair_args.p1, "First prime key")->required();
  pair->add_option("--p2", pair_args.p2, "Second prime key")->required();
  pair->add_flag("--json", pair_args.as_json, "Emit JSON");

  EmbedArgs embed_args;
  CLI::App* embed = app.add_subcommand(
      "embed", "Embed one or more watermarks into a grayscale cover");
  embed->add_option("--cover", embed_args.cover, "Cover image (PGM)")
      ->required();
  embed->add_option("--wm", embed_args.wm_paths,
                    "Watermark bitmap (PGM); repeat for multi-watermark")
      ->required();
  embed->add_option("--prime", embed_args.primes,
                    "Prime key; repeat to pair with each --wm")
      ->required();
  CLI::Option* mu_opt =
      embed->add_option("--mu", embed_args.mu, "Fixed watermark gain");
  CLI::Option* budget_opt = embed->add_option(
      "--budget", embed_args.budget,
      "Distortion budget alpha; resolves the gain (default 0.1)");
  mu_opt->excludes(budget_opt);
  budget_opt->excludes(mu_opt);
  CLI::Option* lambda_flag = embed->add_option(
      "--lambda", embed_args.lambda, "Host-rejection strength (default 1)");
  CLI::Option* lambda_opt_flag = embed->add_flag(
      "--lambda-opt", embed_args.lambda_opt,
      "Use the error-minimizing strength for the measured cover");
  lambda_flag->excludes(lambda_opt_flag);
  lambda_opt_flag->excludes(lambda_flag);
  embed
      ->add_option("--sigma-n", embed_args.sigma_n,
                   "Channel noise level assumed by --lambda-opt")
      ->needs(lambda_opt_flag);
  embed->add_option("--sigma-u", embed_args.sigma_u,
                    "Chip amplitude (default 1)");
  embed->add_flag("--no-quantize", embed_args.no_quantize,
                  "Keep real samples; write a DWMKF64 file");
  embed->add_flag("--global-xbar", embed_args.global_xbar,
                  "One shared host projection instead of per-block");
  embed->add_option("--out", embed_args.out, "Marked image path")->required();
  embed->add_option("--report", embed_args.report, "Write JSON report here");
  embed->add_flag("--json", embed_args.as_json, "Print the JSON report");

  ExtractArgs extract_args;
  CLI::App* extract = app.add_subcommand(
      "extract", "Recover watermark bits from a marked image");
  extract->add_option("--image", extract_args.image, "Marked image (PGM or DWMKF64)")
      ->required();
  extract->add_option("--prime", extract_args.primes,
                      "Prime key; repeat for multi-watermark")
      ->required();
  extract->add_option("--wm-width", extract_args.wm_width,
                      "Watermark width; once, or once per --prime")
      ->required();
  extract->add_option("--wm-height", extract_args.wm_height,
                      "Watermark height; once, or once per --prime")
      ->required();
  extract->add_option("--ref", extract_args.refs,
                      "Reference bitmap (PGM) for error-rate checks");
  extract->add_option("--sigma-u", extract_args.sigma_u,
                      "Chip amplitude (default 1)");
  CLI::Option* max_ber_opt =
      extract->add_option("--max-ber", extract_args.max_ber,
                          "Fail (exit 4) when a reference BER exceeds this");
  extract->add_option("--out", extract_args.out,
                      "Recovered bitmap path (multi-key adds .q<prime>)");
  extract->add_option("--report", extract_args.report,
                      "Write JSON report here");
  extract->add_flag("--json", extract_args.as_json, "Print the JSON report");

  PsnrArgs psnr_args;
  CLI::App* psnr = app.add_subcommand(
      "psnr", "Peak signal-to-noise ratio between two images");
  psnr->add_option("a", psnr_args.a, "First image")->required();
  psnr->add_option("b", psnr_args.b, "Second image")->required();
  psnr->add_flag("--json", psnr_args.as_json, "Emit JSON");

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Bit error rate across a gain grid on a test cover");
  sweep->add_option("--prime", sweep_args.prime, "Prime key")->required();
  sweep->add_option("--cover", sweep_args.cover,
                    "Cover image (PGM); default is a synthetic Gaussian one");
  sweep->add_option("--width", sweep_args.width, "Synthetic cover width");
  sweep->add_option("--height", sweep_args.height, "Synthetic cover height");
  sweep->add_option("--sigma-x", sweep_args.sigma_x,
                    "Synthetic cover deviation (default 45.22)");
  sweep->add_option("--mean", sweep_args.mean,
                    "Synthetic cover mean (default 128)");
  sweep->add_option("--cover-seed", sweep_args.cover_seed,
                    "Synthetic cover seed");
  sweep->add_option("--wm", sweep_args.wm,
                    "Watermark bitmap (PGM); default is a random payload");
  sweep->add_option("--bits", sweep_args.bits,
                    "Random payload size (default 1024)");
  sweep->add_option("--wm-seed", sweep_args.wm_seed, "Random payload seed");
  sweep->add_option("--mu-from", sweep_args.cfg.mu_from,
                    "Grid start (default 0.1)");
  sweep->add_option("--mu-to", sweep_args.cfg.mu_to, "Grid end (default 1.0)");
  sweep->add_option("--step", sweep_args.cfg.step, "Grid step (default 0.05)");
  sweep->add_option("--lambda", sweep_args.cfg.lambda,
                    "Host-rejection strength (default 1)");
  sweep->add_option("--sigma-u", sweep_args.cfg.sigma_u,
                    "Chip amplitude (default 1)");
  sweep->add_option("--sigma-n", sweep_args.cfg.sigma_n,
                    "Channel noise level (default 0)");
  sweep->add_option("--trials", sweep_args.cfg.trials,
                    "Noise draws per grid point (default 1)");
  sweep->add_option("--seed", sweep_args.cfg.seed, "Noise seed");
  sweep->add_flag("--no-quantize", sweep_args.no_quantize,
                  "Skip 8-bit quantization of the marked cover");
  sweep->add_option("--out", sweep_args.out,
                    "CSV path; when given, the JSON summary goes to stdout");
  sweep->add_option("--summary", sweep_args.summary,
                    "Write the JSON summary here");

  MonteCarloArgs mc_args;
  CLI::App* mc = app.add_subcommand(
      "montecarlo", "Empirical bit error rate against the model prediction");
  mc->add_option("--n", mc_args.n, "Samples per bit")->required();
  mc->add_option("--sigma-x", mc_args.sigma_x, "Host deviation")->required();
  mc->add_option("--sigma-n", mc_args.sigma_n, "Noise deviation (default 0)");
  mc->add_option("--sigma-u", mc_args.sigma_u, "Chip amplitude (default 1)");
  CLI::Option* mc_lambda =
      mc->add_option("--lambda", mc_args.lambda, "Host-rejection strength");
  CLI::Option* mc_lambda_opt = mc->add_flag(
      "--lambda-opt", mc_args.lambda_opt, "Use the error-minimizing strength");
  mc_lambda->excludes(mc_lambda_opt);
  mc_lambda_opt->excludes(mc_lambda);
  mc->add_option("--alpha", mc_args.alpha, "Distortion budget (default 1)");
  mc->add_option("--trials", mc_args.trials, "Trial count (default 100000)");
  mc->add_option("--seed", mc_args.seed, "Trial seed (default 1)");
  mc->add_option("--report", mc_args.report, "Write JSON report here");

  int rc = 0;
  info->callback([&] { rc = run_info(info_args); });
  gen->callback([&] { rc = run_gen(gen_args); });
  pair->callback([&] { rc = run_pair(pair_args); });
  embed->callback([&] {
    embed_args.mu_given = mu_opt->count() > 0;
    rc = run_embed(embed_args);
  });
  extract->callback([&] {
    extract_args.max_ber_given = max_ber_opt->count() > 0;
    rc = run_extract(extract_args);
  });
  psnr->callback([&] { rc = run_psnr(psnr_args); });
  sweep->callback([&] { rc = run_sweep(sweep_args); });
  mc->callback([&] {
    mc_args.lambda_given = mc_lambda->count() > 0;
    rc = run_montecarlo(mc_args);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const dwmk::DomainError& e) {
    std::cerr << "dwmk: " << e.what() << "\n";
    return 3;
  } catch (const dwmk::FormatError& e) {
    std::cerr << "dwmk: " << e.what() << "\n";
    return 2;
  } catch (const dwmk::IoError& e) {
    std::cerr << "dwmk: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "dwmk: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
