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

#ifndef VOPKIT_CWT_HPP
#define VOPKIT_CWT_HPP

#include <vector>

#include "vopkit/types.hpp"

namespace vopkit::cwt {

enum class MotherWavelet { real_morlet, mexican_hat };

const char* to_string(MotherWavelet mother);
MotherWavelet mother_from_string(const std::string& name);

// Mother wavelet sampled at dimensionless argument u.
double wavelet_value(MotherWavelet mother, double u);

// Center frequency in cycles per unit argument; a scale of q samples at
// rate fs concentrates on fs * center / q Hz.
double wavelet_center_frequency(MotherWavelet mother);

// count scales, log-spaced so center frequencies span [lo_hz, hi_hz],
// ascending in scale (descending in frequency).
std::vector<double> default_scales(MotherWavelet mother, int sample_rate,
                                   double lo_hz = 100.0, double hi_hz = 1000.0,
                                   int count = 16);

struct WaveletConfig {
  MotherWavelet mother = MotherWavelet::real_morlet;
  // Scales in samples; empty selects default_scales for the input rate.
  std::vector<double> scales;
  double frame_len = 0.020;           // seconds
  double hop = 0.010;                 // seconds
  double smooth_window = 0.040;       // seconds
  double threshold_fraction = 0.15;   // of the smoothed contour maximum
  double min_peak_gap = 0.050;        // seconds
};

// coefficients[s][p]: scale s response at sample p. Rows keep the input
// length; the input is zero-padded at both ends for the convolution.
struct CwtMatrix {
  std::vector<std::vector<double>> coefficients;
  std::vector<double> scales;
  int sample_rate = 0;
};

CwtMatrix compute_cwt(const Signal& signal, const WaveletConfig& config);

// Across-scale mean at every sample position.
std::vector<double> mean_signal(const CwtMatrix& matrix);

// Frame-wise average absolute amplitude of the mean signal.
Contour aam_contour(const std::vector<double>& mean, int sample_rate,
                    double frame_len_s, double hop_s);

// Every stage of the candidate detector, exposed for inspection tools.
struct CwtAnalysis {
  std::vector<double> mean;
  Contour aam;
  Contour aam_smoothed;
  PeakSet surviving_peaks;
  EventList vops;  // kind vop_candidate
};

CwtAnalysis analyze(const Signal& signal, const WaveletConfig& config);

// Candidate onsets: smoothed AAM peaks over threshold_fraction of the
// contour maximum, closer pairs than min_peak_gap merged. The signal must
// cover at least 100 ms. Silence yields an empty list.
EventList detect_vops_cwt(const Signal& signal, const WaveletConfig& config);

}  // namespace vopkit::cwt

#endif  // VOPKIT_CWT_HPP
