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

#include "vopkit/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace vopkit::corpus {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

long long parse_sample_index(const std::string& tok, std::size_t line_no,
                             const char* what) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size())
    throw std::runtime_error("annotation line " + std::to_string(line_no) +
                             ": " + what + " is not an integer: " + tok);
  return v;
}

}  // namespace

std::vector<PhoneSegment> parse_phone_annotation(const std::string& body) {
  std::vector<PhoneSegment> out;
  std::istringstream stream(body);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    const std::string line = strip_cr(raw);
    const std::vector<std::string> tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok.size() != 3)
      throw std::runtime_error("annotation line " + std::to_string(line_no) +
                               ": expected '<start> <end> <label>'");
    PhoneSegment seg;
    seg.start = parse_sample_index(tok[0], line_no, "start");
    seg.end = parse_sample_index(tok[1], line_no, "end");
    seg.label = tok[2];
    if (seg.start < 0)
      throw std::runtime_error("annotation line " + std::to_string(line_no) +
                               ": negative start");
    if (seg.start >= seg.end)
      throw std::runtime_error("annotation line " + std::to_string(line_no) +
                               ": start >= end");
    out.push_back(std::move(seg));
  }
  std::sort(out.begin(), out.end(),
            [](const PhoneSegment& a, const PhoneSegment& b) {
              return a.start < b.start;
            });
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i].start < out[i - 1].end)
      throw std::runtime_error("annotation: segments '" + out[i - 1].label +
                               "' and '" + out[i].label + "' overlap");
  }
  return out;
}

std::vector<PhoneSegment> load_phone_annotation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open annotation: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_phone_annotation(ss.str());
}

std::string serialize_phone_annotation(
    const std::vector<PhoneSegment>& segments) {
  std::ostringstream out;
  for (const PhoneSegment& seg : segments)
    out << seg.start << ' ' << seg.end << ' ' << seg.label << '\n';
  return out.str();
}

EventList derive_ground_truth_vops(const std::vector<PhoneSegment>& segments,
                                   const VowelSet& vowels, int sample_rate) {
  if (sample_rate <= 0)
    throw std::invalid_argument(
        "derive_ground_truth_vops: sample rate must be positive");
  if (vowels.empty())
    throw std::invalid_argument("derive_ground_truth_vops: empty vowel set");
  EventList out;
  out.kind = EventKind::vop_candidate;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const bool is_vowel = vowels.contains(segments[i].label);
    const bool prev_vowel = i > 0 && vowels.contains(segments[i - 1].label);
    if (is_vowel && !prev_vowel)
      out.events.push_back(Event{
          static_cast<double>(segments[i].start) / sample_rate, std::nullopt});
  }
  return out;
}

std::vector<CorpusItem> load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest: " + path);
  const std::filesystem::path base =
      std::filesystem::absolute(std::filesystem::path(path)).parent_path();

  auto resolve = [&base](const std::string& p) {
    std::filesystem::path fp(p);
    if (fp.is_relative()) fp = base / fp;
    return fp.lexically_normal().string();
  };

  std::vector<CorpusItem> out;
  std::set<std::string> seen;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = strip_cr(raw);
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::vector<std::string> tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok.size() < 2 || tok.size() > 4)
      throw std::runtime_error(
          "manifest line " + std::to_string(line_no) +
          ": expected '<id> <audio> [<annotation>|-] [<mode>]'");
    CorpusItem item;
    item.id = tok[0];
    if (!seen.insert(item.id).second)
      throw std::runtime_error("manifest line " + std::to_string(line_no) +
                               ": duplicate id '" + item.id + "'");
    item.audio_path = resolve(tok[1]);
    if (tok.size() >= 3 && tok[2] != "-")
      item.annotation_path = resolve(tok[2]);
    if (tok.size() == 4 && tok[3] != "-") item.mode_tag = tok[3];
    if (!std::filesystem::exists(item.audio_path))
      throw std::runtime_error("manifest line " + std::to_string(line_no) +
                               ": missing audio file for id '" + item.id +
                               "': " + item.audio_path);
    if (item.annotation_path &&
        !std::filesystem::exists(*item.annotation_path))
      throw std::runtime_error("manifest line " + std::to_string(line_no) +
                               ": missing annotation for id '" + item.id +
                               "': " + *item.annotation_path);
    out.push_back(std::move(item));
  }
  return out;
}

}  // namespace vopkit::corpus
