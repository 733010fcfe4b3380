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

#ifndef VOPKIT_DSP_HPP
#define VOPKIT_DSP_HPP

#include <cstddef>

#include "vopkit/types.hpp"

namespace vopkit::dsp {

// Frame layout over a sample buffer; the trailing partial frame is dropped.
struct FrameSpec {
  std::size_t frame_len = 0;  // samples per frame
  std::size_t hop = 0;        // samples between frame starts
  std::size_t count = 0;

  std::size_t start(std::size_t i) const { return i * hop; }
};

// Throws when the buffer is shorter than one frame or the geometry is
// degenerate (hop <= 0, frame_len < hop after rounding to samples).
FrameSpec make_frames(std::size_t n_samples, int sample_rate,
                      double frame_len_s, double hop_s);
FrameSpec frame_signal(const Signal& signal, double frame_len_s, double hop_s);

// Centered moving average over round(window_s / hop) frames, forced odd by
// rounding up. The window shrinks at the edges; hop and origin are kept.
Contour mean_smooth(const Contour& contour, double window_s);

// Strict local maxima; a plateau that rises then falls reports its leftmost
// index. Endpoints never qualify. Contours under three frames yield no peaks.
PeakSet find_local_peaks(const Contour& contour);

// Keeps peaks whose value is at least fraction * max(contour values).
// fraction must sit in (0, 1).
PeakSet threshold_peaks(const PeakSet& peaks, const Contour& contour,
                        double fraction);

// Left-to-right sweep: whenever two surviving neighbors are closer than
// min_gap_s, the lower-valued one is dropped (ties drop the right one);
// repeats until no violation remains. Spacing of exactly min_gap_s survives.
PeakSet merge_close_peaks(const PeakSet& peaks, const Contour& contour,
                          double min_gap_s);

// Convolution with the first derivative of a Gaussian whose support spans
// op_size_s seconds (sigma = op_size_s / 6), zero-padded at the edges. A
// rising step maps to a positive lobe at the step. Length is preserved.
Contour fogd_convolve(const Contour& contour, double op_size_s);

// out[i] = in[i + 1] - in[i]; length shrinks by one and the origin moves
// forward half a hop.
Contour first_order_diff(const Contour& contour);

}  // namespace vopkit::dsp

#endif  // VOPKIT_DSP_HPP
