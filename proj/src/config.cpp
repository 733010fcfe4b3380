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

#include "vopkit/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace vopkit::config {

namespace {

using nlohmann::json;

[[noreturn]] void bad_key(const std::string& section, const std::string& key) {
  throw std::runtime_error("config: unknown key '" +
                           (section.empty() ? key : section + "." + key) +
                           "'");
}

void check_keys(const json& obj, const std::string& section,
                const std::set<std::string>& allowed) {
  if (!obj.is_object())
    throw std::runtime_error("config: section '" + section +
                             "' must be an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key)) bad_key(section, key);
  }
}

double get_number(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number())
    throw std::runtime_error(std::string("config: '") + key +
                             "' must be a number");
  return obj[key].get<double>();
}

int get_int(const json& obj, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer())
    throw std::runtime_error(std::string("config: '") + key +
                             "' must be an integer");
  return obj[key].get<int>();
}

bool get_bool(const json& obj, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_boolean())
    throw std::runtime_error(std::string("config: '") + key +
                             "' must be a boolean");
  return obj[key].get<bool>();
}

void parse_wavelet(const json& obj, cwt::WaveletConfig& out) {
  check_keys(obj, "wavelet",
             {"mother", "scales", "frame_len", "hop", "smooth_window",
              "threshold_fraction", "min_peak_gap"});
  if (obj.contains("mother")) {
    if (!obj["mother"].is_string())
      throw std::runtime_error("config: 'mother' must be a string");
    out.mother = cwt::mother_from_string(obj["mother"].get<std::string>());
  }
  if (obj.contains("scales")) {
    if (!obj["scales"].is_array())
      throw std::runtime_error("config: 'scales' must be an array");
    out.scales.clear();
    for (const auto& v : obj["scales"]) {
      if (!v.is_number())
        throw std::runtime_error("config: 'scales' entries must be numbers");
      out.scales.push_back(v.get<double>());
    }
  }
  out.frame_len = get_number(obj, "frame_len", out.frame_len);
  out.hop = get_number(obj, "hop", out.hop);
  out.smooth_window = get_number(obj, "smooth_window", out.smooth_window);
  out.threshold_fraction =
      get_number(obj, "threshold_fraction", out.threshold_fraction);
  out.min_peak_gap = get_number(obj, "min_peak_gap", out.min_peak_gap);
}

void parse_mfcc(const json& obj, stm::MfccConfig& out) {
  check_keys(obj, "mfcc",
             {"frame_len", "hop", "filter_count", "mel_low_hz", "mel_high_hz",
              "log_floor"});
  out.frame_len = get_number(obj, "frame_len", out.frame_len);
  out.hop = get_number(obj, "hop", out.hop);
  out.filter_count = get_int(obj, "filter_count", out.filter_count);
  out.mel_low_hz = get_number(obj, "mel_low_hz", out.mel_low_hz);
  out.mel_high_hz = get_number(obj, "mel_high_hz", out.mel_high_hz);
  out.log_floor = get_number(obj, "log_floor", out.log_floor);
}

void parse_stm(const json& obj, stm::StmConfig& out) {
  check_keys(obj, "stm",
             {"regression_half_width", "smooth_window", "threshold_fraction"});
  out.regression_half_width =
      get_int(obj, "regression_half_width", out.regression_half_width);
  out.smooth_window = get_number(obj, "smooth_window", out.smooth_window);
  out.threshold_fraction =
      get_number(obj, "threshold_fraction", out.threshold_fraction);
}

void parse_fusion(const json& obj, fusion::FusionConfig& out) {
  check_keys(obj, "fusion", {"max_snap_window", "dedupe"});
  out.max_snap_window =
      get_number(obj, "max_snap_window", out.max_snap_window);
  out.dedupe = get_bool(obj, "dedupe", out.dedupe);
}

void parse_baseline(const json& obj, baselines::BaselineConfig& out) {
  check_keys(obj, "baseline",
             {"lp_order", "band_low_hz", "band_high_hz",
              "gci_region_fraction", "smooth_window", "fogd_size",
              "evidence_weights", "peak_threshold_fraction"});
  out.lp_order = get_int(obj, "lp_order", out.lp_order);
  out.band_low_hz = get_number(obj, "band_low_hz", out.band_low_hz);
  out.band_high_hz = get_number(obj, "band_high_hz", out.band_high_hz);
  out.gci_region_fraction =
      get_number(obj, "gci_region_fraction", out.gci_region_fraction);
  out.smooth_window = get_number(obj, "smooth_window", out.smooth_window);
  out.fogd_size = get_number(obj, "fogd_size", out.fogd_size);
  if (obj.contains("evidence_weights")) {
    if (!obj["evidence_weights"].is_array() ||
        obj["evidence_weights"].size() != 3)
      throw std::runtime_error(
          "config: 'evidence_weights' must hold three numbers");
    for (int i = 0; i < 3; ++i) {
      if (!obj["evidence_weights"][i].is_number())
        throw std::runtime_error(
            "config: 'evidence_weights' must hold three numbers");
      out.evidence_weights[i] = obj["evidence_weights"][i].get<double>();
    }
  }
  out.peak_threshold_fraction =
      get_number(obj, "peak_threshold_fraction", out.peak_threshold_fraction);
}

void parse_evaluation(const json& obj, std::vector<int>& tolerances) {
  check_keys(obj, "evaluation", {"tolerances_ms"});
  if (obj.contains("tolerances_ms")) {
    if (!obj["tolerances_ms"].is_array())
      throw std::runtime_error("config: 'tolerances_ms' must be an array");
    tolerances.clear();
    for (const auto& v : obj["tolerances_ms"]) {
      if (!v.is_number_integer())
        throw std::runtime_error(
            "config: 'tolerances_ms' entries must be integers");
      tolerances.push_back(v.get<int>());
    }
    if (tolerances.empty())
      throw std::runtime_error("config: 'tolerances_ms' must not be empty");
  }
}

void parse_corpus(const json& obj, RunConfig& out) {
  check_keys(obj, "corpus", {"target_rate", "vowels"});
  out.target_rate = get_int(obj, "target_rate", out.target_rate);
  if (obj.contains("vowels")) {
    if (!obj["vowels"].is_array())
      throw std::runtime_error("config: 'vowels' must be an array");
    out.vowels.labels.clear();
    for (const auto& v : obj["vowels"]) {
      if (!v.is_string())
        throw std::runtime_error("config: 'vowels' entries must be strings");
      out.vowels.labels.insert(v.get<std::string>());
    }
  }
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("config: invalid JSON: ") + e.what());
  }
  check_keys(root, "",
             {"wavelet", "mfcc", "stm", "fusion", "baseline", "evaluation",
              "corpus"});
  RunConfig out;
  if (root.contains("wavelet")) parse_wavelet(root["wavelet"], out.wavelet);
  if (root.contains("mfcc")) parse_mfcc(root["mfcc"], out.mfcc);
  if (root.contains("stm")) parse_stm(root["stm"], out.stm);
  if (root.contains("fusion")) parse_fusion(root["fusion"], out.fusion);
  if (root.contains("baseline")) parse_baseline(root["baseline"], out.baseline);
  if (root.contains("evaluation"))
    parse_evaluation(root["evaluation"], out.tolerances_ms);
  if (root.contains("corpus")) parse_corpus(root["corpus"], out);
  return out;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

std::string resolved_json(const RunConfig& config) {
  json root;
  json& wavelet = root["wavelet"];
  wavelet["mother"] = cwt::to_string(config.wavelet.mother);
  wavelet["scales"] =
      config.wavelet.scales.empty()
          ? cwt::default_scales(config.wavelet.mother, config.target_rate)
          : config.wavelet.scales;
  wavelet["frame_len"] = config.wavelet.frame_len;
  wavelet["hop"] = config.wavelet.hop;
  wavelet["smooth_window"] = config.wavelet.smooth_window;
  wavelet["threshold_fraction"] = config.wavelet.threshold_fraction;
  wavelet["min_peak_gap"] = config.wavelet.min_peak_gap;

  json& mfcc = root["mfcc"];
  mfcc["frame_len"] = config.mfcc.frame_len;
  mfcc["hop"] = config.mfcc.hop;
  mfcc["filter_count"] = config.mfcc.filter_count;
  mfcc["mel_low_hz"] = config.mfcc.mel_low_hz;
  mfcc["mel_high_hz"] = config.mfcc.mel_high_hz;
  mfcc["log_floor"] = config.mfcc.log_floor;

  json& stm = root["stm"];
  stm["regression_half_width"] = config.stm.regression_half_width;
  stm["smooth_window"] = config.stm.smooth_window;
  stm["threshold_fraction"] = config.stm.threshold_fraction;

  json& fusion = root["fusion"];
  fusion["max_snap_window"] = config.fusion.max_snap_window;
  fusion["dedupe"] = config.fusion.dedupe;

  json& baseline = root["baseline"];
  baseline["lp_order"] = config.baseline.lp_order;
  baseline["band_low_hz"] = config.baseline.band_low_hz;
  baseline["band_high_hz"] = config.baseline.band_high_hz;
  baseline["gci_region_fraction"] = config.baseline.gci_region_fraction;
  baseline["smooth_window"] = config.baseline.smooth_window;
  baseline["fogd_size"] = config.baseline.fogd_size;
  baseline["evidence_weights"] = config.baseline.evidence_weights;
  baseline["peak_threshold_fraction"] =
      config.baseline.peak_threshold_fraction;

  root["evaluation"]["tolerances_ms"] = config.tolerances_ms;

  json& corpus = root["corpus"];
  corpus["target_rate"] = config.target_rate;
  corpus["vowels"] = config.vowels.labels;

  return root.dump(2) + "\n";
}

}  // namespace vopkit::config
