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

#ifndef VOPKIT_STM_HPP
#define VOPKIT_STM_HPP

#include <cstddef>
#include <vector>

#include "vopkit/types.hpp"

namespace vopkit::stm {

inline constexpr int kNumStatic = 13;  // c0..c12
inline constexpr int kNumCoeffs = 39;  // static + delta + delta-delta

struct MfccConfig {
  double frame_len = 0.025;    // seconds, Hamming window
  double hop = 0.010;          // seconds
  int filter_count = 26;       // mel filters
  double mel_low_hz = 0.0;
  double mel_high_hz = 8000.0; // clipped at Nyquist
  double log_floor = 1e-10;    // energy floor before the log
};

// Row-major frame matrix of 39 cepstral features: c0..c12, their deltas
// and delta-deltas, each delta a +/-2 frame regression with edge frames
// replicated.
struct FeatureSequence {
  std::vector<double> data;  // frames * kNumCoeffs
  std::size_t frames = 0;
  double hop = 0.0;
  double origin = 0.0;  // frame center time of frame 0

  double at(std::size_t frame, int coeff) const {
    return data[frame * kNumCoeffs + coeff];
  }
};

FeatureSequence mfcc_39(const Signal& signal, const MfccConfig& config = {});

// Least-squares slope of coefficient coeff across frames
// [frame - half_width, frame + half_width], indices clamped to the edges:
// sum_n f(frame + n) * n / sum_n n^2.
double regression_rate(const FeatureSequence& features, std::size_t frame,
                       int coeff, int half_width);

struct StmConfig {
  int regression_half_width = 2;
  double smooth_window = 0.020;      // seconds
  double threshold_fraction = 0.12;  // of the smoothed contour maximum
};

// Mean squared regression slope across all 39 tracks, per frame. Needs at
// least 2 * half_width + 1 frames.
Contour stm_contour(const FeatureSequence& features, const StmConfig& config);

struct StmAnalysis {
  Contour stm;
  Contour stm_smoothed;
  EventList boundaries;  // kind phone_boundary
};

StmAnalysis analyze(const Signal& signal, const StmConfig& config,
                    const MfccConfig& mfcc = {});

// Phone boundary times: smoothed transition-measure peaks over
// threshold_fraction of the contour maximum. No merging. The signal must
// cover at least 100 ms. Numerically flat contours yield no boundaries.
EventList detect_phone_boundaries(const Signal& signal, const StmConfig& config,
                                  const MfccConfig& mfcc = {});

}  // namespace vopkit::stm

#endif  // VOPKIT_STM_HPP
