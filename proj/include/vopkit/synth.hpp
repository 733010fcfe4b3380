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

#ifndef VOPKIT_SYNTH_HPP
#define VOPKIT_SYNTH_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vopkit/types.hpp"

namespace vopkit::synth {

enum class SegmentKind { silence, noise, harmonic, chirp };

struct SegmentSpec {
  SegmentKind kind = SegmentKind::silence;
  double duration = 0.0;   // seconds, > 0
  double amplitude = 0.0;  // peak, in [0, 1]
  double f0 = 0.0;         // Hz, harmonic and chirp segments
  std::uint32_t seed = 0;  // noise segments
};

struct SynthResult {
  Signal signal;
  // Reference onsets: the start of every harmonic segment not preceded by
  // another harmonic segment. Kind vop_candidate.
  EventList ground_truth;
  // One segment per spec: h# silence, s noise, aa harmonic, w chirp.
  std::vector<PhoneSegment> segments;
};

// Deterministic synthesis. Harmonic segments carry eight 1/k harmonics with
// a short attack and a mild decay so their amplitude peak hugs the onset;
// 5 ms raised-cosine fades guard every internal junction. Segment sample
// counts are rounded independently, so junction times are exact.
SynthResult synthesize(std::span<const SegmentSpec> specs, int sample_rate);

// Deterministic pseudo-random utterance: low-level room tone, then a few
// noise + harmonic alternations, room tone again. Same seed, same spec.
std::vector<SegmentSpec> random_utterance(std::uint32_t seed);

// Writes <id>.wav / <id>.phn under dir and returns the manifest row paths.
struct PersistedItem {
  std::string id;
  std::string wav_path;
  std::string phn_path;
  std::string mode_tag;
};

PersistedItem write_item(const std::string& dir, const std::string& id,
                         const SynthResult& result,
                         const std::string& mode_tag);

// count random utterances plus manifest.tsv under dir; mode tags alternate
// between "read" and "conversation". Returns the manifest path.
std::string build_corpus(const std::string& dir, int count,
                         std::uint32_t base_seed, int sample_rate);

}  // namespace vopkit::synth

#endif  // VOPKIT_SYNTH_HPP
