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

#include "vopkit/cwt.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "vopkit/dsp.hpp"
#include "vopkit/fft.hpp"

namespace vopkit::cwt {

namespace {

constexpr double kMorletOmega0 = 5.0;
// Half support of the sampled kernel in units of scale. Both mothers decay
// as exp(-u^2 / 2); eight sigmas push the truncation error well below the
// accuracy the FFT path is held to.
constexpr double kKernelHalfSupport = 8.0;
constexpr double kMinSignalSeconds = 0.100;

}  // namespace

const char* to_string(MotherWavelet mother) {
  switch (mother) {
    case MotherWavelet::real_morlet:
      return "real-morlet";
    case MotherWavelet::mexican_hat:
      return "mexican-hat";
  }
  return "unknown";
}

MotherWavelet mother_from_string(const std::string& name) {
  if (name == "real-morlet") return MotherWavelet::real_morlet;
  if (name == "mexican-hat") return MotherWavelet::mexican_hat;
  throw std::invalid_argument("unknown mother wavelet: " + name);
}

double wavelet_value(MotherWavelet mother, double u) {
  switch (mother) {
    case MotherWavelet::real_morlet:
      return std::cos(kMorletOmega0 * u) * std::exp(-0.5 * u * u);
    case MotherWavelet::mexican_hat:
      return (1.0 - u * u) * std::exp(-0.5 * u * u);
  }
  throw std::invalid_argument("unknown mother wavelet");
}

double wavelet_center_frequency(MotherWavelet mother) {
  switch (mother) {
    case MotherWavelet::real_morlet:
      return kMorletOmega0 / (2.0 * M_PI);
    case MotherWavelet::mexican_hat:
      // Peak of |u^2 exp(-u^2/2)| in the frequency domain.
      return std::sqrt(2.0) / (2.0 * M_PI);
  }
  throw std::invalid_argument("unknown mother wavelet");
}

std::vector<double> default_scales(MotherWavelet mother, int sample_rate,
                                   double lo_hz, double hi_hz, int count) {
  if (sample_rate <= 0)
    throw std::invalid_argument("default_scales: sample rate must be positive");
  if (!(lo_hz > 0.0) || !(hi_hz > lo_hz))
    throw std::invalid_argument("default_scales: bad frequency span");
  if (count < 1) throw std::invalid_argument("default_scales: count < 1");
  const double fc = wavelet_center_frequency(mother);
  std::vector<double> scales(count);
  for (int i = 0; i < count; ++i) {
    // Descend in frequency so scales ascend.
    const double frac = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    const double f = hi_hz * std::pow(lo_hz / hi_hz, frac);
    scales[i] = sample_rate * fc / f;
  }
  return scales;
}

CwtMatrix compute_cwt(const Signal& signal, const WaveletConfig& config) {
  ensure_valid(signal, "compute_cwt");
  std::vector<double> scales = config.scales;
  if (scales.empty())
    scales = default_scales(config.mother, signal.sample_rate);
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (!(scales[i] > 0.0))
      throw std::invalid_argument("compute_cwt: scales must be positive");
    if (i > 0 && scales[i] <= scales[i - 1])
      throw std::invalid_argument("compute_cwt: scales must ascend");
  }

  const std::size_t n = signal.samples.size();
  const double dt = 1.0 / signal.sample_rate;
  const auto max_half = static_cast<std::size_t>(
      std::ceil(kKernelHalfSupport * scales.back()));
  const std::size_t m = fft::next_pow2(n + 2 * max_half + 1);

  std::vector<std::complex<double>> spectrum(m);
  for (std::size_t i = 0; i < n; ++i) spectrum[i] = signal.samples[i];
  fft::forward(spectrum);

  CwtMatrix out;
  out.sample_rate = signal.sample_rate;
  out.scales = scales;
  out.coefficients.resize(scales.size());

  std::vector<std::complex<double>> work(m);
  for (std::size_t s = 0; s < scales.size(); ++s) {
    const double q = scales[s];
    const auto half = static_cast<std::size_t>(
        std::ceil(kKernelHalfSupport * q));
    const double norm = dt / std::sqrt(q);
    // Correlation against the scaled mother, realized as convolution with
    // the index-reversed kernel; both mothers are even so the reversal is
    // cosmetic.
    std::fill(work.begin(), work.end(), std::complex<double>(0.0, 0.0));
    const std::size_t taps = 2 * half + 1;
    for (std::size_t j = 0; j < taps; ++j) {
      const double offset =
          static_cast<double>(half) - static_cast<double>(j);
      work[j] = wavelet_value(config.mother, offset / q) * norm;
    }
    fft::forward(work);
    for (std::size_t i = 0; i < m; ++i) work[i] *= spectrum[i];
    fft::inverse(work);
    auto& row = out.coefficients[s];
    row.resize(n);
    for (std::size_t p = 0; p < n; ++p) row[p] = work[p + half].real();
  }
  return out;
}

std::vector<double> mean_signal(const CwtMatrix& matrix) {
  if (matrix.coefficients.empty())
    throw std::invalid_argument("mean_signal: empty matrix");
  const std::size_t n = matrix.coefficients.front().size();
  for (const auto& row : matrix.coefficients)
    if (row.size() != n)
      throw std::invalid_argument("mean_signal: ragged matrix");
  std::vector<double> mean(n, 0.0);
  for (const auto& row : matrix.coefficients)
    for (std::size_t p = 0; p < n; ++p) mean[p] += row[p];
  const double inv = 1.0 / static_cast<double>(matrix.coefficients.size());
  for (double& v : mean) v *= inv;
  return mean;
}

Contour aam_contour(const std::vector<double>& mean, int sample_rate,
                    double frame_len_s, double hop_s) {
  const dsp::FrameSpec frames =
      dsp::make_frames(mean.size(), sample_rate, frame_len_s, hop_s);
  Contour out;
  out.hop = static_cast<double>(frames.hop) / sample_rate;
  out.origin = 0.5 * static_cast<double>(frames.frame_len) / sample_rate;
  out.values.resize(frames.count);
  for (std::size_t f = 0; f < frames.count; ++f) {
    const std::size_t start = frames.start(f);
    double acc = 0.0;
    for (std::size_t i = 0; i < frames.frame_len; ++i)
      acc += std::abs(mean[start + i]);
    out.values[f] = acc / static_cast<double>(frames.frame_len);
  }
  return out;
}

CwtAnalysis analyze(const Signal& signal, const WaveletConfig& config) {
  ensure_valid(signal, "cwt::analyze");
  if (signal.duration() < kMinSignalSeconds - 1e-12)
    throw std::invalid_argument("cwt::analyze: signal shorter than 100 ms");
  CwtAnalysis out;
  const CwtMatrix matrix = compute_cwt(signal, config);
  out.mean = mean_signal(matrix);
  out.aam = aam_contour(out.mean, signal.sample_rate, config.frame_len,
                        config.hop);
  out.aam_smoothed = dsp::mean_smooth(out.aam, config.smooth_window);
  PeakSet peaks = dsp::find_local_peaks(out.aam_smoothed);
  peaks = dsp::threshold_peaks(peaks, out.aam_smoothed,
                               config.threshold_fraction);
  out.surviving_peaks =
      dsp::merge_close_peaks(peaks, out.aam_smoothed, config.min_peak_gap);
  out.vops.kind = EventKind::vop_candidate;
  for (std::size_t idx : out.surviving_peaks.indices)
    out.vops.events.push_back(
        Event{out.aam_smoothed.time_at(idx), std::nullopt});
  return out;
}

EventList detect_vops_cwt(const Signal& signal, const WaveletConfig& config) {
  return analyze(signal, config).vops;
}

}  // namespace vopkit::cwt
