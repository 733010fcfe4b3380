// Copyright 2026 vopkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vopkit/baselines.hpp"
#include "vopkit/config.hpp"
#include "vopkit/corpus.hpp"
#include "vopkit/cwt.hpp"
#include "vopkit/evaluation.hpp"
#include "vopkit/fusion.hpp"
#include "vopkit/report_io.hpp"
#include "vopkit/stm.hpp"
#include "vopkit/synth.hpp"

namespace {

namespace fs = std::filesystem;
using vopkit::config::RunConfig;

constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

// Usage and configuration mistakes exit with 2; data and IO failures with 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

RunConfig load_config_arg(const std::string& config_path) {
  if (config_path.empty()) return RunConfig{};
  try {
    return vopkit::config::load_run_config(config_path);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

vopkit::eval::Detector make_detector(const std::string& method,
                                     const RunConfig& config) {
  if (method == "proposed") {
    return [config](const vopkit::Signal& s) {
      return vopkit::fusion::detect_vops(s, config.wavelet, config.stm,
                                         config.fusion, config.mfcc);
    };
  }
  if (method == "cwt-only") {
    return [config](const vopkit::Signal& s) {
      return vopkit::cwt::detect_vops_cwt(s, config.wavelet);
    };
  }
  if (method == "comb-esm") {
    return [config](const vopkit::Signal& s) {
      return vopkit::baselines::detect_vops_comb_esm(s, config.baseline);
    };
  }
  if (method == "se-gci") {
    return [config](const vopkit::Signal& s) {
      return vopkit::baselines::detect_vops_se_gci(s, config.baseline);
    };
  }
  throw UsageError("unknown method: " + method);
}

vopkit::io::Format parse_format(const std::string& name) {
  try {
    return vopkit::io::format_from_string(name);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

void emit(const std::string& body, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << body;
  } else {
    vopkit::io::write_text_file(out_path, body);
  }
}

std::vector<vopkit::eval::LabeledUtterance> load_labeled_corpus(
    const std::string& manifest_path, const RunConfig& config) {
  const auto items = vopkit::corpus::load_manifest(manifest_path);
  if (items.empty()) throw std::runtime_error("manifest lists no items");
  std::vector<vopkit::eval::LabeledUtterance> corpus;
  corpus.reserve(items.size());
  for (const auto& item : items) {
    if (!item.annotation_path)
      throw std::runtime_error("item '" + item.id +
                               "' carries no annotation; evaluation needs "
                               "reference onsets");
    vopkit::eval::LabeledUtterance u;
    u.signal =
        vopkit::corpus::load_waveform(item.audio_path, config.target_rate);
    const auto segments =
        vopkit::corpus::load_phone_annotation(*item.annotation_path);
    u.actual = vopkit::corpus::derive_ground_truth_vops(
        segments, config.vowels, config.target_rate);
    u.mode_tag = item.mode_tag;
    corpus.push_back(std::move(u));
  }
  return corpus;
}

int cmd_detect(const std::string& audio, const std::string& method,
               const RunConfig& config, const std::string& out,
               const std::string& format_name) {
  const auto format = parse_format(format_name);
  const auto detector = make_detector(method, config);
  const vopkit::Signal signal =
      vopkit::corpus::load_waveform(audio, config.target_rate);
  const vopkit::EventList events = detector(signal);
  emit(vopkit::io::events_text(events, format), out);
  return 0;
}

int cmd_boundaries(const std::string& audio, const RunConfig& config,
                   const std::string& out, const std::string& format_name) {
  const auto format = parse_format(format_name);
  const vopkit::Signal signal =
      vopkit::corpus::load_waveform(audio, config.target_rate);
  const vopkit::EventList events =
      vopkit::stm::detect_phone_boundaries(signal, config.stm, config.mfcc);
  emit(vopkit::io::events_text(events, format), out);
  return 0;
}

int cmd_eval(const std::string& manifest, std::vector<std::string> methods,
             const RunConfig& config, const std::string& out,
             const std::string& format_name, int threads) {
  const auto format = parse_format(format_name);
  if (threads < 1) throw UsageError("--threads must be at least 1");
  if (methods.empty()) methods = {"proposed"};
  std::vector<vopkit::eval::NamedDetector> detectors;
  for (const std::string& m : methods)
    detectors.push_back({m, make_detector(m, config)});

  const auto corpus = load_labeled_corpus(manifest, config);
  bool multi_mode = false;
  for (const auto& u : corpus)
    if (!u.mode_tag.empty() && u.mode_tag != corpus.front().mode_tag)
      multi_mode = true;

  std::vector<vopkit::io::ReportRow> rows;
  if (multi_mode) {
    const auto by_mode = vopkit::eval::evaluate_by_mode(
        corpus, detectors, config.tolerances_ms, threads);
    for (const auto& [mode, reports] : by_mode)
      for (const auto& [name, report] : reports)
        rows.push_back({mode, name, report});
  } else {
    const auto reports = vopkit::eval::evaluate_detectors(
        corpus, detectors, config.tolerances_ms, threads);
    for (const auto& [name, report] : reports)
      rows.push_back({"", name, report});
  }
  emit(vopkit::io::report_text(rows, config.tolerances_ms, format), out);
  return 0;
}

int cmd_sweep(const std::string& manifest, std::vector<double> fractions,
              const RunConfig& config, const std::string& out,
              const std::string& format_name, int threads) {
  const auto format = parse_format(format_name);
  if (threads < 1) throw UsageError("--threads must be at least 1");
  if (fractions.empty()) fractions = {0.11, 0.13, 0.15, 0.17, 0.19};
  for (double f : fractions)
    if (!(f > 0.0) || !(f < 1.0))
      throw UsageError("sweep fractions must sit in (0, 1)");
  const auto corpus = load_labeled_corpus(manifest, config);
  const auto rows = vopkit::eval::threshold_sweep(corpus, config.wavelet,
                                                  fractions, 0.040, threads);
  emit(vopkit::io::sweep_text(rows, format), out);
  return 0;
}

int cmd_export_contours(const std::string& audio, const RunConfig& config,
                        const std::string& out_dir) {
  const vopkit::Signal signal =
      vopkit::corpus::load_waveform(audio, config.target_rate);
  const auto analysis = vopkit::fusion::analyze(
      signal, config.wavelet, config.stm, config.fusion, config.mfcc);
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);

  vopkit::Contour mean;
  mean.values = analysis.stage1.mean;
  mean.hop = 1.0 / signal.sample_rate;
  mean.origin = 0.0;
  vopkit::io::write_text_file((dir / "mean_signal.csv").string(),
                              vopkit::io::contour_csv(mean));
  vopkit::io::write_text_file((dir / "aam_raw.csv").string(),
                              vopkit::io::contour_csv(analysis.stage1.aam));
  vopkit::io::write_text_file(
      (dir / "aam_smooth.csv").string(),
      vopkit::io::contour_csv(analysis.stage1.aam_smoothed));
  vopkit::io::write_text_file((dir / "stm_raw.csv").string(),
                              vopkit::io::contour_csv(analysis.stage2.stm));
  vopkit::io::write_text_file(
      (dir / "stm_smooth.csv").string(),
      vopkit::io::contour_csv(analysis.stage2.stm_smoothed));
  vopkit::io::write_text_file(
      (dir / "events.csv").string(),
      vopkit::io::events_csv({analysis.stage1.vops,
                              analysis.stage2.boundaries, analysis.vops}));
  return 0;
}

int cmd_synth(const std::string& out_dir, int count, std::uint32_t seed,
              int rate) {
  if (count < 1) throw UsageError("--count must be at least 1");
  if (rate < 1000) throw UsageError("--rate must be at least 1000");
  const std::string manifest =
      vopkit::synth::build_corpus(out_dir, count, seed, rate);
  std::cout << manifest << '\n';
  return 0;
}

int cmd_config(const RunConfig& config, const std::string& out) {
  emit(vopkit::config::resolved_json(config), out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vowel onset point detection toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "JSON configuration file")
      ->envname("VOPKIT_CONFIG");

  std::string audio;
  std::string method = "proposed";
  std::string manifest;
  std::string out;
  std::string out_dir = ".";
  std::string format = "csv";
  std::vector<std::string> methods;
  std::vector<double> fractions;
  int threads = 1;
  int count = 50;
  std::uint32_t seed = 1;
  int rate = 16000;

  auto* detect = app.add_subcommand("detect", "detect vowel onsets");
  detect->add_option("audio", audio, "input WAV file")->required();
  detect->add_option("--method", method,
                     "proposed, cwt-only, comb-esm or se-gci");
  detect->add_option("--out", out, "output file (stdout when omitted)");
  detect->add_option("--format", format, "csv, json or table");

  auto* boundaries =
      app.add_subcommand("boundaries", "detect phone boundaries");
  boundaries->add_option("audio", audio, "input WAV file")->required();
  boundaries->add_option("--out", out, "output file (stdout when omitted)");
  boundaries->add_option("--format", format, "csv, json or table");

  auto* eval = app.add_subcommand("eval", "evaluate detectors on a corpus");
  eval->add_option("--manifest", manifest, "corpus manifest")->required();
  eval->add_option("--method", methods, "detectors to run (repeatable)");
  eval->add_option("--out", out, "output file (stdout when omitted)");
  eval->add_option("--format", format, "csv, json or table");
  eval->add_option("--threads", threads, "worker threads");

  auto* sweep =
      app.add_subcommand("sweep", "candidate threshold sweep at 40 ms");
  sweep->add_option("--manifest", manifest, "corpus manifest")->required();
  sweep->add_option("--fractions", fractions, "threshold fractions");
  sweep->add_option("--out", out, "output file (stdout when omitted)");
  sweep->add_option("--format", format, "csv, json or table");
  sweep->add_option("--threads", threads, "worker threads");

  auto* export_contours = app.add_subcommand(
      "export-contours", "dump per-stage contours and events");
  export_contours->add_option("audio", audio, "input WAV file")->required();
  export_contours->add_option("--out-dir", out_dir, "output directory");

  auto* synth =
      app.add_subcommand("synth", "write a synthetic labeled corpus");
  synth->add_option("--out-dir", out_dir, "output directory")->required();
  synth->add_option("--count", count, "utterance count");
  synth->add_option("--seed", seed, "base seed");
  synth->add_option("--rate", rate, "sample rate");

  auto* config_cmd =
      app.add_subcommand("config", "echo the resolved configuration");
  config_cmd->add_option("--out", out, "output file (stdout when omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const RunConfig run_config = load_config_arg(config_path);
    if (detect->parsed())
      return cmd_detect(audio, method, run_config, out, format);
    if (boundaries->parsed())
      return cmd_boundaries(audio, run_config, out, format);
    if (eval->parsed())
      return cmd_eval(manifest, methods, run_config, out, format, threads);
    if (sweep->parsed())
      return cmd_sweep(manifest, fractions, run_config, out, format, threads);
    if (export_contours->parsed())
      return cmd_export_contours(audio, run_config, out_dir);
    if (synth->parsed()) return cmd_synth(out_dir, count, seed, rate);
    if (config_cmd->parsed()) return cmd_config(run_config, out);
    std::cerr << "no subcommand\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
}
