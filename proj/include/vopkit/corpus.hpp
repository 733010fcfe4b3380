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

#ifndef VOPKIT_CORPUS_HPP
#define VOPKIT_CORPUS_HPP

#include <string>
#include <vector>

#include "vopkit/types.hpp"

namespace vopkit::corpus {

// Raw RIFF/WAVE decode: PCM16, PCM24 or float32, mono only. No resampling,
// no gain change. Multi-channel input raises an error.
Signal read_wav(const std::string& path);

// Samples clipped to [-1, 1] and quantized to 16-bit PCM.
void write_wav_pcm16(const std::string& path, const Signal& signal);

// Rational-ratio resampling with a windowed-sinc kernel. Output length is
// round(n * target_rate / rate); a no-op when rates already match.
Signal resample(const Signal& in, int target_rate);

// read_wav + resample + peak normalization to 1.0 (silence is left as is).
Signal load_waveform(const std::string& path, int target_rate);

// One segment per line: "<start> <end> <label>" in samples. Segments are
// sorted by start and must not overlap; start must be below end.
std::vector<PhoneSegment> parse_phone_annotation(const std::string& body);
std::vector<PhoneSegment> load_phone_annotation(const std::string& path);
std::string serialize_phone_annotation(
    const std::vector<PhoneSegment>& segments);

// Reference onsets: the start of every maximal vowel run. A vowel segment
// at index 0 opens a run.
EventList derive_ground_truth_vops(const std::vector<PhoneSegment>& segments,
                                   const VowelSet& vowels, int sample_rate);

// Manifest rows: "<id> <audio> [<annotation>|-] [<mode>]", whitespace
// separated, '#' starts a comment. Relative paths resolve against the
// manifest directory. Duplicate ids and missing audio files are errors.
std::vector<CorpusItem> load_manifest(const std::string& path);

}  // namespace vopkit::corpus

#endif  // VOPKIT_CORPUS_HPP
