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

// End-to-end checks that drive the installed binary through std::system.
// Everything here observes only the public command surface: exit statuses,
// stdout/stderr text and files left on disk.

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "vopkit/corpus.hpp"
#include "vopkit/synth.hpp"
#include "vopkit/types.hpp"

namespace fs = std::filesystem;
namespace synth = vopkit::synth;
using nlohmann::json;
using vopkit::Signal;

namespace {

constexpr double kPi = std::numbers::pi;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("vopkit-cli-test-" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

TempDir& tmp() {
  static TempDir dir;
  return dir;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

// Runs the CLI with the given argument string, capturing both streams.
RunResult run_cli(const std::string& args) {
  static int serial = 0;
  const std::string out_path = tmp().file("stdout" + std::to_string(serial));
  const std::string err_path = tmp().file("stderr" + std::to_string(serial));
  ++serial;
  const std::string cmd = std::string(VOPKIT_CLI_PATH) + " " + args + " >" +
                          out_path + " 2>" + err_path;
  const int status = std::system(cmd.c_str());
  RunResult result;
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  return result;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

std::string silence_wav() {
  static std::string path;
  if (path.empty()) {
    Signal s;
    s.sample_rate = 16000;
    s.samples.assign(16000, 0.0);
    path = tmp().file("silence.wav");
    vopkit::corpus::write_wav_pcm16(path, s);
  }
  return path;
}

struct SpeechFixture {
  std::string path;
  std::vector<double> truth;
};

// A deterministic utterance with a handful of vowel onsets.
const SpeechFixture& speech_wav() {
  static SpeechFixture fixture;
  if (fixture.path.empty()) {
    const auto specs = synth::random_utterance(201);
    const auto result = synth::synthesize(specs, 16000);
    fixture.path = tmp().file("speech.wav");
    vopkit::corpus::write_wav_pcm16(fixture.path, result.signal);
    for (const auto& e : result.ground_truth.events)
      fixture.truth.push_back(e.time);
  }
  return fixture;
}

std::string two_tone_wav() {
  static std::string path;
  if (path.empty()) {
    Signal s;
    s.sample_rate = 16000;
    s.samples.resize(9600);
    for (std::size_t i = 0; i < s.samples.size(); ++i) {
      const double t = (double)i / s.sample_rate;
      const double f = i < 4800 ? 300.0 : 1500.0;
      s.samples[i] = 0.5 * std::sin(2.0 * kPi * f * t);
    }
    path = tmp().file("two_tone.wav");
    vopkit::corpus::write_wav_pcm16(path, s);
  }
  return path;
}

// Two labeled utterances with no mode tags, manifest rows using filenames.
std::string flat_manifest() {
  static std::string path;
  if (path.empty()) {
    const fs::path dir = tmp().path / "flat";
    fs::create_directories(dir);
    std::ostringstream manifest;
    for (int i = 0; i < 2; ++i) {
      const auto specs = synth::random_utterance(41 + i);
      const auto result = synth::synthesize(specs, 16000);
      const std::string id = "u" + std::to_string(i);
      const auto item = synth::write_item(dir.string(), id, result, "");
      manifest << id << ' ' << fs::path(item.wav_path).filename().string()
               << ' ' << fs::path(item.phn_path).filename().string()
               << " -\n";
    }
    path = (dir / "manifest.tsv").string();
    std::ofstream out(path);
    out << manifest.str();
  }
  return path;
}

// Four utterances whose mode tags alternate between read and conversation.
std::string tagged_manifest() {
  static std::string path;
  if (path.empty())
    path = synth::build_corpus(tmp().file("tagged"), 4, 100, 16000);
  return path;
}

}  // namespace

TEST_CASE("detect on silence writes only the header") {
  const auto run = run_cli("detect " + silence_wav());
  CHECK(run.code == 0);
  CHECK(run.out == "time_s,kind,source_time_s\n");
  CHECK(run.err.empty());
}

TEST_CASE("an unknown method is a usage error") {
  const auto run = run_cli("detect " + silence_wav() + " --method nope");
  CHECK(run.code == 2);
  CHECK(run.err.find("unknown method") != std::string::npos);
}

TEST_CASE("a missing audio file is a data error") {
  const auto run = run_cli("detect " + tmp().file("absent.wav"));
  CHECK(run.code == 1);
  CHECK(run.err.find("cannot open") != std::string::npos);
}

TEST_CASE("a missing required argument is a usage error") {
  const auto run = run_cli("detect");
  CHECK(run.code == 2);
  CHECK(!run.err.empty());
}

TEST_CASE("detect emits corrected onsets tied to stage-one candidates") {
  const auto proposed = run_cli("detect " + speech_wav().path);
  const auto stage1 =
      run_cli("detect " + speech_wav().path + " --method cwt-only");
  REQUIRE(proposed.code == 0);
  REQUIRE(stage1.code == 0);

  const auto rows = lines_of(proposed.out);
  const auto candidate_rows = lines_of(stage1.out);
  REQUIRE(rows.size() >= 2);
  CHECK(rows[0] == "time_s,kind,source_time_s");

  std::set<std::string> candidate_times;
  for (std::size_t i = 1; i < candidate_rows.size(); ++i)
    candidate_times.insert(split_csv(candidate_rows[i])[0]);

  const std::vector<double>& truth = speech_wav().truth;
  REQUIRE(truth.size() >= 2);
  REQUIRE(rows.size() - 1 == truth.size());
  CHECK(rows.size() <= candidate_rows.size());
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto cells = split_csv(rows[i]);
    REQUIRE(cells.size() == 3);
    CHECK(cells[1] == "vop_corrected");
    const double time = std::stod(cells[0]);
    const double source = std::stod(cells[2]);
    CHECK(time <= source + 1e-9);
    CHECK(candidate_times.count(cells[2]) == 1);
    CHECK(std::abs(time - truth[i - 1]) <= 0.05);
  }
}

TEST_CASE("detect json carries one event object per run") {
  const auto csv = run_cli("detect " + speech_wav().path);
  const auto run = run_cli("detect " + speech_wav().path + " --format json");
  REQUIRE(run.code == 0);
  const json root = json::parse(run.out);
  REQUIRE(root.is_array());
  REQUIRE(root.size() == 1);
  CHECK(root[0]["kind"] == "vop_corrected");
  const json& events = root[0]["events"];
  CHECK(events.size() == lines_of(csv.out).size() - 1);
  for (const json& e : events) {
    CHECK(e["time_s"].is_number());
    CHECK(e["source_time_s"].is_number());
  }
}

TEST_CASE("boundaries locates a spectrum change") {
  const auto run = run_cli("boundaries " + two_tone_wav());
  REQUIRE(run.code == 0);
  const auto rows = lines_of(run.out);
  REQUIRE(rows.size() == 2);
  const auto cells = split_csv(rows[1]);
  REQUIRE(cells.size() == 3);
  CHECK(cells[1] == "phone_boundary");
  CHECK(cells[2].empty());
  CHECK(std::abs(std::stod(cells[0]) - 0.3) < 0.03);
}

TEST_CASE("synth builds a corpus eval can consume") {
  const std::string dir = tmp().file("synthcli");
  const auto run = run_cli("synth --out-dir " + dir + " --count 3 --seed 5");
  REQUIRE(run.code == 0);
  std::string manifest = run.out;
  REQUIRE(!manifest.empty());
  REQUIRE(manifest.back() == '\n');
  manifest.pop_back();
  CHECK(fs::path(manifest).filename() == "manifest.tsv");
  const auto items = vopkit::corpus::load_manifest(manifest);
  REQUIRE(items.size() == 3);
  for (const auto& item : items) {
    CHECK(fs::exists(item.audio_path));
    REQUIRE(item.annotation_path.has_value());
    CHECK(fs::exists(*item.annotation_path));
  }
}

TEST_CASE("synth validates the utterance count") {
  const auto run = run_cli("synth --out-dir " + tmp().file("x") + " --count 0");
  CHECK(run.code == 2);
  CHECK(run.err.find("at least 1") != std::string::npos);
}

TEST_CASE("eval reports one row per requested method") {
  const auto run = run_cli("eval --manifest " + flat_manifest() +
                           " --method proposed --method cwt-only"
                           " --format json");
  REQUIRE(run.code == 0);
  const json root = json::parse(run.out);
  CHECK(root["pooling"] == "corpus");
  CHECK(root["tolerances_ms"] == json({10, 20, 30, 40}));
  const json& rows = root["rows"];
  REQUIRE(rows.size() == 2);
  CHECK(rows[0]["method"] == "proposed");
  CHECK(rows[1]["method"] == "cwt-only");
  for (const json& row : rows) {
    CHECK(!row.contains("mode"));
    CHECK(row["utterances"] == 2);
    CHECK(row["actual_events"].get<int>() >= 2);
    const double ir40 = row["ir_at"]["40"].get<double>();
    CHECK(ir40 >= 0.0);
    CHECK(ir40 <= 100.0);
  }
  CHECK(rows[0]["ir_at"]["40"].get<double>() >= 50.0);
}

TEST_CASE("eval splits rows by mode when tags differ") {
  const auto run =
      run_cli("eval --manifest " + tagged_manifest() + " --format csv");
  REQUIRE(run.code == 0);
  const auto rows = lines_of(run.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "mode,method,IR@10,IR@20,IR@30,IR@40,AD_ms,MR,SR");
  std::set<std::string> modes;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto cells = split_csv(rows[i]);
    REQUIRE(cells.size() == 9);
    modes.insert(cells[0]);
    CHECK(cells[1] == "proposed");
  }
  CHECK(modes == std::set<std::string>{"conversation", "read"});
}

TEST_CASE("eval rejects an unlabeled corpus") {
  const fs::path dir = tmp().path / "bare";
  fs::create_directories(dir);
  Signal s;
  s.sample_rate = 16000;
  s.samples.assign(8000, 0.0);
  vopkit::corpus::write_wav_pcm16((dir / "a.wav").string(), s);
  std::ofstream(dir / "manifest.tsv") << "a a.wav - -\n";
  const auto run =
      run_cli("eval --manifest " + (dir / "manifest.tsv").string());
  CHECK(run.code == 1);
  CHECK(run.err.find("carries no annotation") != std::string::npos);
}

TEST_CASE("eval validates the thread count") {
  const auto run =
      run_cli("eval --manifest " + flat_manifest() + " --threads 0");
  CHECK(run.code == 2);
  CHECK(run.err.find("--threads must be at least 1") != std::string::npos);
}

TEST_CASE("sweep echoes one row per fraction") {
  const auto run = run_cli("sweep --manifest " + flat_manifest() +
                           " --fractions 0.11 0.15");
  REQUIRE(run.code == 0);
  const auto rows = lines_of(run.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == "fraction,MR,SR");
  CHECK(split_csv(rows[1])[0] == "0.11");
  CHECK(split_csv(rows[2])[0] == "0.15");
}

TEST_CASE("sweep rejects fractions outside the open unit interval") {
  const auto run =
      run_cli("sweep --manifest " + flat_manifest() + " --fractions 1.5");
  CHECK(run.code == 2);
  CHECK(run.err.find("must sit in (0, 1)") != std::string::npos);
}

TEST_CASE("export-contours writes the six analysis files") {
  const std::string dir = tmp().file("contours");
  const auto run =
      run_cli("export-contours " + speech_wav().path + " --out-dir " + dir);
  REQUIRE(run.code == 0);

  std::set<std::string> names;
  for (const auto& entry : fs::directory_iterator(dir))
    names.insert(entry.path().filename().string());
  CHECK(names == std::set<std::string>{"aam_raw.csv", "aam_smooth.csv",
                                       "events.csv", "mean_signal.csv",
                                       "stm_raw.csv", "stm_smooth.csv"});
  CHECK(lines_of(slurp(dir + "/aam_raw.csv")).size() ==
        lines_of(slurp(dir + "/aam_smooth.csv")).size());
  const auto mean_rows = lines_of(slurp(dir + "/mean_signal.csv"));
  REQUIRE(mean_rows.size() > 1);
  CHECK(mean_rows[0] == "time_s,value");

  const std::string dir2 = tmp().file("contours2");
  const auto rerun =
      run_cli("export-contours " + speech_wav().path + " --out-dir " + dir2);
  REQUIRE(rerun.code == 0);
  CHECK(slurp(dir + "/events.csv") == slurp(dir2 + "/events.csv"));
}

TEST_CASE("config echoes every resolved section") {
  const auto run = run_cli("config");
  REQUIRE(run.code == 0);
  const json root = json::parse(run.out);
  for (const char* key :
       {"wavelet", "mfcc", "stm", "fusion", "baseline", "evaluation",
        "corpus"})
    CHECK(root.contains(key));
  CHECK(root["wavelet"]["scales"].size() == 16);
  CHECK(root["evaluation"]["tolerances_ms"] == json({10, 20, 30, 40}));
}

TEST_CASE("a configuration file shows up in the echo") {
  const std::string path = tmp().file("override.json");
  std::ofstream(path) << "{\"wavelet\": {\"threshold_fraction\": 0.2},\n"
                         " \"evaluation\": {\"tolerances_ms\": [40]}}\n";
  const auto run = run_cli("--config " + path + " config");
  REQUIRE(run.code == 0);
  const json root = json::parse(run.out);
  CHECK(root["wavelet"]["threshold_fraction"] == 0.2);
  CHECK(root["evaluation"]["tolerances_ms"] == json({40}));
}

TEST_CASE("a missing configuration file is a usage error") {
  const auto run = run_cli("--config " + tmp().file("no.json") + " config");
  CHECK(run.code == 2);
  CHECK(run.err.find("cannot open") != std::string::npos);
}
