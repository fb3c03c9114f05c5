// src/cli.cc

// Copyright 2026 The monoalign Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "monoalign/cli.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "monoalign/align_dp.h"
#include "monoalign/binarize.h"
#include "monoalign/error.h"
#include "monoalign/io.h"
#include "monoalign/log_math.h"
#include "monoalign/metrics.h"
#include "monoalign/prior.h"
#include "monoalign/soft_align.h"

namespace monoalign::cli {
namespace {

using nlohmann::json;

// Flags shared across subcommands.
struct RunConfig {
  double omega = 1.0;
  double bin_weight = 1.0;
  std::size_t mcd_coeffs = kDefaultMcdCoeffs;
  bool renormalize = true;
  bool apply_prior = false;
  std::string output_format;  // empty: infer from the output extension
};

struct Args {
  RunConfig config;
  std::string logprobs, soft, attn, path, matrix, ref, hyp, pred, truth;
  std::string output, hard_out, list;
  std::size_t tokens = 0, frames = 0;
  std::optional<std::size_t> band;
  std::string mcd_input = "mel";
  std::optional<double> hop_length, sample_rate;
  unsigned jobs = 0;
};

// Usage problems detected after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

FileFormat OutputFormat(const Args& a, const std::string& path) {
  const auto& f = a.config.output_format;
  if (f.empty()) return FormatFromExtension(path);
  if (f == "npy") return FileFormat::kNpy;
  if (f == "tsv") return FileFormat::kTsv;
  return FileFormat::kJson;
}

std::vector<int> ReadIndexVector(const std::string& file) {
  const Matrix m = ReadMatrix(file).matrix;
  if (m.rows() != 1 && m.cols() != 1) {
    throw Error(ErrorKind::kInvalidShape, file + ": expected a vector, got " +
                                              std::to_string(m.rows()) + "x" +
                                              std::to_string(m.cols()));
  }
  std::vector<int> out;
  out.reserve(m.size());
  for (double v : m.data()) {
    if (!(v >= 0.0) || v != std::floor(v) || v > 2147483647.0) {
      throw Error(ErrorKind::kParseError,
                  file + ": entries must be nonnegative integers");
    }
    out.push_back(static_cast<int>(v));
  }
  return out;
}

Matrix IndexRow(const std::vector<int>& values) {
  return Matrix(1, values.size(), std::vector<double>(values.begin(), values.end()));
}

void WriteIndexVector(const Args& a, const std::string& file,
                      const std::vector<int>& values) {
  WriteMatrix(MatrixFile{Dtype::kFloat64, true, IndexRow(values)}, file,
              OutputFormat(a, file));
}

LogProbMatrix MaybeApplyPrior(const Args& a, const LogProbMatrix& lp) {
  if (!a.config.apply_prior) return lp;
  const Matrix prior = BuildPrior({lp.cols(), lp.rows(), a.config.omega});
  return ApplyPrior(lp, prior, a.config.renormalize);
}

json LossFor(const Args& a, const std::string& soft_file) {
  Matrix soft = ReadMatrix(soft_file).matrix;
  if (a.config.apply_prior) {
    LogProbMatrix lp(soft.rows(), soft.cols());
    for (std::size_t k = 0; k < soft.size(); ++k) {
      const double p = soft.data()[k];
      if (!(p >= 0.0) || !std::isfinite(p)) {
        throw Error(ErrorKind::kNonFinite,
                    soft_file + ": soft alignment entries must be finite and nonnegative");
      }
      lp.data()[k] = p == 0.0 ? kLogZero : std::log(p);
    }
    soft = MaybeApplyPrior(a, lp);
    for (double& v : soft.data()) v = std::exp(v);
  }
  const ParallelAlignLoss loss = AlignLossParallel(soft, a.config.bin_weight);
  if (!a.hard_out.empty()) WriteIndexVector(a, a.hard_out, loss.hard.path);
  return {{"forward_sum", loss.forward_sum}, {"bin", loss.bin}, {"total", loss.total}};
}

json ViterbiFor(const Args& a, const std::string& file) {
  const ViterbiResult v = Viterbi(MaybeApplyPrior(a, ReadMatrix(file).matrix));
  if (!a.output.empty()) WriteIndexVector(a, a.output, v.alignment.path);
  return {{"path", v.alignment.path}, {"score", v.score}};
}

McdResult McdFor(const Args& a, const std::string& ref_file,
                 const std::string& hyp_file, double* dtw_cost) {
  Matrix ref = ReadMatrix(ref_file).matrix;
  Matrix hyp = ReadMatrix(hyp_file).matrix;
  if (a.mcd_input == "mel") {
    ref = MelToCepstrum(ref, a.config.mcd_coeffs);
    hyp = MelToCepstrum(hyp, a.config.mcd_coeffs);
  }
  DtwOptions options{a.band};
  if (dtw_cost) *dtw_cost = Dtw(ref, hyp, options).cost;
  return Mcd(ref, hyp, options);
}

json McdJson(const Args& a, const std::string& ref_file, const std::string& hyp_file) {
  double cost = 0.0;
  const McdResult r = McdFor(a, ref_file, hyp_file, &cost);
  return {{"mcd", r.mcd}, {"path_length", r.path_length}, {"dtw_cost", cost}};
}

json DurDistJson(const std::string& pred_file, const std::string& truth_file) {
  const Durations pred{ReadIndexVector(pred_file)};
  const Durations truth{ReadIndexVector(truth_file)};
  const double l1 = DurationL1(pred, truth);
  return {{"duration_l1", l1}};
}

// Manifest lines hold one input path, or two tab-separated paths for paired
// commands. Items are processed concurrently; results keep manifest order.
json RunManifest(const Args& a, std::size_t fields,
                 const std::function<json(const std::vector<std::string>&)>& fn) {
  std::ifstream in(a.list);
  if (!in) throw Error(ErrorKind::kIoError, "cannot open manifest " + a.list);
  std::vector<std::vector<std::string>> items;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
      const std::size_t tab = line.find('\t', start);
      parts.push_back(line.substr(start, tab - start));
      if (tab == std::string::npos) break;
      start = tab + 1;
    }
    if (parts.size() != fields) {
      throw Error(ErrorKind::kParseError,
                  a.list + ": line " + std::to_string(line_no) + " has " +
                      std::to_string(parts.size()) + " fields, expected " +
                      std::to_string(fields));
    }
    items.push_back(std::move(parts));
  }

  std::vector<json> results(items.size());
  std::vector<std::exception_ptr> failures(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < items.size();) {
      try {
        results[k] = fn(items[k]);
        results[k]["input"] = items[k];
      } catch (...) {
        failures[k] = std::current_exception();
      }
    }
  };
  unsigned jobs = a.jobs ? a.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(items.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);
  return json(std::move(results));
}

void Require(bool ok, const char* message) {
  if (!ok) throw UsageError(message);
}

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNoValidPath:
    case ErrorKind::kPathUnsupported:
      return kExitNumeric;
    default:
      return kExitData;
  }
}

void AddConfigFlags(CLI::App* sub, Args& a, bool prior_flags) {
  sub->add_option("--format", a.config.output_format,
                  "Output file format (default: from extension)")
      ->check(CLI::IsMember({"npy", "tsv", "json"}));
  if (prior_flags) {
    sub->add_flag("--apply-prior", a.config.apply_prior,
                  "Multiply by the beta-binomial prior before aligning");
    sub->add_option("--omega", a.config.omega, "Prior width factor")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--renormalize,!--no-renormalize", a.config.renormalize,
                  "Renormalize rows after applying the prior");
  }
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monotonic speech-text alignment toolkit", "monoalign"};
  app.require_subcommand(1);
  Args a;
  std::function<void()> action;

  auto* loss = app.add_subcommand("loss", "Forward-sum + binarization loss of a soft alignment");
  loss->add_option("--soft", a.soft, "T x N soft alignment");
  loss->add_option("--bin-weight", a.config.bin_weight, "Weight of the binarization term")
      ->check(CLI::NonNegativeNumber);
  loss->add_option("--hard-out", a.hard_out, "Write the Viterbi path here");
  loss->add_option("--list", a.list, "Manifest of soft alignments");
  loss->add_option("--jobs", a.jobs, "Worker threads for --list");
  AddConfigFlags(loss, a, true);
  loss->callback([&] {
    action = [&] {
      if (!a.list.empty()) {
        Require(a.soft.empty() && a.hard_out.empty(), "--list excludes --soft and --hard-out");
        out << RunManifest(a, 1, [&](const auto& f) { return LossFor(a, f[0]); }).dump() << "\n";
        return;
      }
      Require(!a.soft.empty(), "loss requires --soft or --list");
      out << LossFor(a, a.soft).dump() << "\n";
    };
  });

  auto* grad = app.add_subcommand("grad", "Gradient of the forward-sum loss");
  grad->add_option("--logprobs", a.logprobs, "T x N log-probabilities")->required();
  grad->add_option("-o,--output", a.output, "Gradient matrix")->required();
  AddConfigFlags(grad, a, true);
  grad->callback([&] {
    action = [&] {
      const auto r = ForwardSumWithGrad(MaybeApplyPrior(a, ReadMatrix(a.logprobs).matrix));
      WriteMatrix(r.grad, a.output, OutputFormat(a, a.output));
      out << json{{"forward_sum", r.loss}}.dump() << "\n";
    };
  });

  auto* posterior = app.add_subcommand("posterior", "Forward-backward token posteriors");
  posterior->add_option("--logprobs", a.logprobs, "T x N log-probabilities")->required();
  posterior->add_option("-o,--output", a.output, "Posterior matrix")->required();
  AddConfigFlags(posterior, a, true);
  posterior->callback([&] {
    action = [&] {
      const Matrix gamma = Posteriors(MaybeApplyPrior(a, ReadMatrix(a.logprobs).matrix));
      WriteMatrix(gamma, a.output, OutputFormat(a, a.output));
    };
  });

  auto* viterbi = app.add_subcommand("viterbi", "Most likely monotonic path");
  viterbi->add_option("--logprobs", a.logprobs, "T x N log-probabilities");
  viterbi->add_option("-o,--output", a.output, "Write the path as a vector");
  viterbi->add_option("--list", a.list, "Manifest of log-probability matrices");
  viterbi->add_option("--jobs", a.jobs, "Worker threads for --list");
  AddConfigFlags(viterbi, a, true);
  viterbi->callback([&] {
    action = [&] {
      if (!a.list.empty()) {
        Require(a.logprobs.empty() && a.output.empty(), "--list excludes --logprobs and -o");
        out << RunManifest(a, 1, [&](const auto& f) { return ViterbiFor(a, f[0]); }).dump() << "\n";
        return;
      }
      Require(!a.logprobs.empty(), "viterbi requires --logprobs or --list");
      out << ViterbiFor(a, a.logprobs).dump() << "\n";
    };
  });

  auto* prior = app.add_subcommand("prior", "Static beta-binomial alignment prior");
  prior->add_option("--tokens", a.tokens, "Number of text tokens N")->required();
  prior->add_option("--frames", a.frames, "Number of mel frames T")->required();
  prior->add_option("--omega", a.config.omega, "Width factor (smaller is wider)")
      ->check(CLI::PositiveNumber);
  prior->add_option("-o,--output", a.output, "T x N prior matrix")->required();
  AddConfigFlags(prior, a, false);
  prior->callback([&] {
    action = [&] {
      const Matrix p = BuildPrior({a.tokens, a.frames, a.config.omega});
      WriteMatrix(p, a.output, OutputFormat(a, a.output));
    };
  });

  auto* binarize = app.add_subcommand("binarize", "Monotonic argmax of attention weights");
  binarize->add_option("--attn", a.attn, "T x N attention matrix")->required();
  binarize->add_option("-o,--output", a.output, "Write the path as a vector");
  AddConfigFlags(binarize, a, false);
  binarize->callback([&] {
    action = [&] {
      const Matrix attn = ReadMatrix(a.attn).matrix;
      const auto r = MonotonicArgmax(attn);
      if (!a.output.empty()) WriteIndexVector(a, a.output, r.alignment.path);
      const Durations d = DurationsFromHard(r.alignment, attn.cols());
      out << json{{"path", r.alignment.path},
                  {"durations", d.counts},
                  {"incomplete_coverage", r.incomplete_coverage}}
                 .dump()
          << "\n";
      if (r.incomplete_coverage) {
        err << "warning: monotonic argmax did not reach the last token\n";
      }
    };
  });

  auto* durations = app.add_subcommand("durations", "Per-token frame counts");
  auto* src_path = durations->add_option("--path", a.path, "Hard alignment vector");
  durations->add_option("--tokens", a.tokens, "Token count for --path (default: max index + 1)");
  auto* src_lp = durations->add_option("--logprobs", a.logprobs, "Viterbi over log-probabilities");
  auto* src_attn = durations->add_option("--attn", a.attn, "Monotonic argmax over attention");
  src_path->excludes(src_lp)->excludes(src_attn);
  src_lp->excludes(src_attn);
  durations->add_option("-o,--output", a.output, "Write durations as a vector");
  durations->add_option("--hop-length", a.hop_length, "Samples per frame")
      ->check(CLI::PositiveNumber);
  durations->add_option("--sample-rate", a.sample_rate, "Samples per second")
      ->check(CLI::PositiveNumber);
  AddConfigFlags(durations, a, true);
  durations->callback([&] {
    action = [&] {
      Durations d;
      if (!a.path.empty()) {
        HardAlignment hard{ReadIndexVector(a.path)};
        std::size_t n = a.tokens;
        if (n == 0 && !hard.path.empty()) {
          n = static_cast<std::size_t>(*std::max_element(hard.path.begin(), hard.path.end())) + 1;
        }
        d = DurationsFromHard(hard, n);
      } else if (!a.logprobs.empty()) {
        const LogProbMatrix lp = MaybeApplyPrior(a, ReadMatrix(a.logprobs).matrix);
        d = DurationsFromHard(Viterbi(lp).alignment, lp.cols());
      } else if (!a.attn.empty()) {
        const Matrix attn = ReadMatrix(a.attn).matrix;
        d = DurationsFromHard(MonotonicArgmax(attn).alignment, attn.cols());
      } else {
        throw UsageError("durations requires --path, --logprobs or --attn");
      }
      if (!a.output.empty()) WriteIndexVector(a, a.output, d.counts);
      json result{{"durations", d.counts}};
      Require(a.hop_length.has_value() == a.sample_rate.has_value(),
              "--hop-length and --sample-rate go together");
      if (a.hop_length) {
        std::vector<double> seconds;
        for (int c : d.counts) seconds.push_back(c * *a.hop_length / *a.sample_rate);
        result["seconds"] = seconds;
      }
      out << result.dump() << "\n";
    };
  });

  auto* mcd = app.add_subcommand("mcd", "DTW-aligned mel-cepstral distance");
  mcd->add_option("--ref", a.ref, "Reference sequence (T x M)");
  mcd->add_option("--hyp", a.hyp, "Hypothesis sequence (T x M)");
  mcd->add_option("--coeffs", a.config.mcd_coeffs, "Cepstral coefficients kept (c0 dropped)")
      ->check(CLI::PositiveNumber);
  mcd->add_option("--input", a.mcd_input, "Input kind")
      ->check(CLI::IsMember({"mel", "cepstrum"}));
  mcd->add_option("--band", a.band, "Sakoe-Chiba band radius in frames");
  mcd->add_option("--list", a.list, "Manifest of ref<TAB>hyp pairs");
  mcd->add_option("--jobs", a.jobs, "Worker threads for --list");
  mcd->callback([&] {
    action = [&] {
      if (!a.list.empty()) {
        Require(a.ref.empty() && a.hyp.empty(), "--list excludes --ref and --hyp");
        out << RunManifest(a, 2, [&](const auto& f) { return McdJson(a, f[0], f[1]); }).dump()
            << "\n";
        return;
      }
      Require(!a.ref.empty() && !a.hyp.empty(), "mcd requires --ref and --hyp or --list");
      out << McdJson(a, a.ref, a.hyp).dump() << "\n";
    };
  });

  auto* durdist = app.add_subcommand("durdist", "Mean absolute duration difference");
  durdist->add_option("--pred", a.pred, "Predicted durations vector");
  durdist->add_option("--truth", a.truth, "Reference durations vector");
  durdist->add_option("--list", a.list, "Manifest of pred<TAB>truth pairs");
  durdist->add_option("--jobs", a.jobs, "Worker threads for --list");
  durdist->callback([&] {
    action = [&] {
      if (!a.list.empty()) {
        Require(a.pred.empty() && a.truth.empty(), "--list excludes --pred and --truth");
        out << RunManifest(a, 2, [&](const auto& f) { return DurDistJson(f[0], f[1]); }).dump()
            << "\n";
        return;
      }
      Require(!a.pred.empty() && !a.truth.empty(), "durdist requires --pred and --truth or --list");
      out << DurDistJson(a.pred, a.truth).dump() << "\n";
    };
  });

  auto* heatmap = app.add_subcommand("heatmap", "Render a matrix as an 8-bit PGM image");
  heatmap->add_option("--matrix", a.matrix, "Nonnegative matrix")->required();
  heatmap->add_option("-o,--output", a.output, "PGM file")->required();
  heatmap->callback([&] {
    action = [&] { WriteHeatmap(ReadMatrix(a.matrix).matrix, a.output); };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (action) action();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace monoalign::cli
