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

#ifndef VOPKIT_TYPES_HPP
#define VOPKIT_TYPES_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace vopkit {

// Mono waveform. Amplitude is dimensionless; loaders normalize peak to 1.
struct Signal {
  std::vector<double> samples;
  int sample_rate = 0;  // Hz

  double duration() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate
                           : 0.0;
  }
};

// Uniformly sampled value sequence at a frame rate. The i-th value is
// anchored at time origin + i * hop seconds.
struct Contour {
  std::vector<double> values;
  double hop = 0.0;     // seconds between frames
  double origin = 0.0;  // time of frame 0

  std::size_t size() const { return values.size(); }
  double time_at(std::size_t i) const {
    return origin + static_cast<double>(i) * hop;
  }
};

// Frame indices into a Contour, ascending.
struct PeakSet {
  std::vector<std::size_t> indices;
};

enum class EventKind { vop_candidate, vop_corrected, phone_boundary };

const char* to_string(EventKind kind);
EventKind event_kind_from_string(const std::string& name);

struct Event {
  double time = 0.0;  // seconds
  // For corrected events: where the candidate sat before correction.
  std::optional<double> source_time;
};

struct EventList {
  EventKind kind = EventKind::vop_candidate;
  std::vector<Event> events;

  std::size_t size() const { return events.size(); }
  std::vector<double> times() const;
};

EventList make_event_list(EventKind kind, const std::vector<double>& times);

// Labeled interval of an annotation, bounds in samples, start < end.
struct PhoneSegment {
  long long start = 0;
  long long end = 0;
  std::string label;
};

// One manifest row. Paths are absolute after manifest loading.
struct CorpusItem {
  std::string id;
  std::string audio_path;
  std::optional<std::string> annotation_path;
  std::string mode_tag;
};

// Phone labels counted as vowels when deriving reference onsets.
struct VowelSet {
  std::set<std::string> labels;

  bool contains(const std::string& label) const {
    return labels.count(label) != 0;
  }
  bool empty() const { return labels.empty(); }
};

const VowelSet& default_vowel_set();

// Throws std::invalid_argument when the signal is empty, has a
// non-positive rate, or contains non-finite samples.
void ensure_valid(const Signal& signal, const char* context);

}  // namespace vopkit

#endif  // VOPKIT_TYPES_HPP
