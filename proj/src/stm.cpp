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

#include "vopkit/stm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "vopkit/dsp.hpp"
#include "vopkit/fft.hpp"

namespace vopkit::stm {

namespace {

constexpr double kMinSignalSeconds = 0.100;
// Transition measures under this level are representation noise (the
// measure is gain invariant, so an absolute floor is safe); peaks there
// carry no phonetic content.
constexpr double kFlatFloor = 1e-9;

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

// Triangular filters with edges uniform on the mel axis; weights evaluated
// per FFT bin in mel units.
std::vector<std::vector<double>> mel_filterbank(int filter_count,
                                                double lo_hz, double hi_hz,
                                                std::size_t nfft,
                                                int sample_rate) {
  const double lo_mel = hz_to_mel(lo_hz);
  const double hi_mel = hz_to_mel(hi_hz);
  std::vector<double> edges(filter_count + 2);
  for (int i = 0; i < filter_count + 2; ++i)
    edges[i] = lo_mel + (hi_mel - lo_mel) * i / (filter_count + 1);

  const std::size_t bins = nfft / 2 + 1;
  std::vector<std::vector<double>> bank(filter_count,
                                        std::vector<double>(bins, 0.0));
  for (std::size_t k = 0; k < bins; ++k) {
    const double f = static_cast<double>(k) * sample_rate / nfft;
    const double mel = hz_to_mel(f);
    for (int j = 0; j < filter_count; ++j) {
      const double left = edges[j];
      const double center = edges[j + 1];
      const double right = edges[j + 2];
      if (mel <= left || mel >= right) continue;
      bank[j][k] = mel < center ? (mel - left) / (center - left)
                                : (right - mel) / (right - center);
    }
  }
  return bank;
}

}  // namespace

FeatureSequence mfcc_39(const Signal& signal, const MfccConfig& config) {
  ensure_valid(signal, "mfcc_39");
  if (config.filter_count < kNumStatic)
    throw std::invalid_argument("mfcc_39: need at least 13 mel filters");
  const dsp::FrameSpec frames =
      dsp::frame_signal(signal, config.frame_len, config.hop);
  const std::size_t nfft = fft::next_pow2(frames.frame_len);
  const double hi_hz =
      std::min(config.mel_high_hz, 0.5 * signal.sample_rate);
  if (!(hi_hz > config.mel_low_hz))
    throw std::invalid_argument("mfcc_39: empty mel span");
  const auto bank = mel_filterbank(config.filter_count, config.mel_low_hz,
                                   hi_hz, nfft, signal.sample_rate);

  std::vector<double> window(frames.frame_len);
  for (std::size_t i = 0; i < frames.frame_len; ++i)
    window[i] = 0.54 - 0.46 * std::cos(2.0 * M_PI * i /
                                       (frames.frame_len - 1));

  // Orthonormal DCT-II over the log filter energies.
  const int nf = config.filter_count;
  std::vector<double> dct(static_cast<std::size_t>(kNumStatic) * nf);
  for (int i = 0; i < kNumStatic; ++i) {
    const double scale =
        i == 0 ? std::sqrt(1.0 / nf) : std::sqrt(2.0 / nf);
    for (int j = 0; j < nf; ++j)
      dct[static_cast<std::size_t>(i) * nf + j] =
          scale * std::cos(M_PI * i * (j + 0.5) / nf);
  }

  FeatureSequence out;
  out.frames = frames.count;
  out.hop = static_cast<double>(frames.hop) / signal.sample_rate;
  out.origin = 0.5 * static_cast<double>(frames.frame_len) /
               signal.sample_rate;
  out.data.assign(frames.count * kNumCoeffs, 0.0);

  std::vector<double> buf(frames.frame_len);
  std::vector<double> energies(nf);
  for (std::size_t f = 0; f < frames.count; ++f) {
    const std::size_t start = frames.start(f);
    for (std::size_t i = 0; i < frames.frame_len; ++i)
      buf[i] = signal.samples[start + i] * window[i];
    const std::vector<double> power = fft::power_spectrum(buf, nfft);
    for (int j = 0; j < nf; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < power.size(); ++k)
        acc += power[k] * bank[j][k];
      energies[j] = std::log(std::max(acc, config.log_floor));
    }
    for (int i = 0; i < kNumStatic; ++i) {
      double acc = 0.0;
      for (int j = 0; j < nf; ++j)
        acc += energies[j] * dct[static_cast<std::size_t>(i) * nf + j];
      out.data[f * kNumCoeffs + i] = acc;
    }
  }

  // Deltas and delta-deltas: +/-2 frame regression slopes, edges replicated.
  const int half = 2;
  const double denom = 2.0 * (1.0 + 4.0);  // sum of n^2 over -2..2
  auto clamp_frame = [&](std::ptrdiff_t f) {
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(
        f, 0, static_cast<std::ptrdiff_t>(frames.count) - 1));
  };
  for (int block = 0; block < 2; ++block) {
    const int src = block * kNumStatic;
    const int dst = src + kNumStatic;
    for (std::size_t f = 0; f < frames.count; ++f) {
      for (int c = 0; c < kNumStatic; ++c) {
        double acc = 0.0;
        for (int n = -half; n <= half; ++n) {
          const std::size_t g =
              clamp_frame(static_cast<std::ptrdiff_t>(f) + n);
          acc += out.data[g * kNumCoeffs + src + c] * n;
        }
        out.data[f * kNumCoeffs + dst + c] = acc / denom;
      }
    }
  }
  return out;
}

double regression_rate(const FeatureSequence& features, std::size_t frame,
                       int coeff, int half_width) {
  if (half_width < 1)
    throw std::invalid_argument("regression_rate: half width below 1");
  if (coeff < 0 || coeff >= kNumCoeffs)
    throw std::invalid_argument("regression_rate: coefficient outside 0..38");
  if (frame >= features.frames)
    throw std::out_of_range("regression_rate: frame outside sequence");
  double num = 0.0;
  double den = 0.0;
  for (int n = -half_width; n <= half_width; ++n) {
    const auto g = std::clamp<std::ptrdiff_t>(
        static_cast<std::ptrdiff_t>(frame) + n, 0,
        static_cast<std::ptrdiff_t>(features.frames) - 1);
    num += features.at(static_cast<std::size_t>(g), coeff) * n;
    den += static_cast<double>(n) * n;
  }
  return num / den;
}

Contour stm_contour(const FeatureSequence& features, const StmConfig& config) {
  const int half = config.regression_half_width;
  if (half < 1)
    throw std::invalid_argument("stm_contour: regression half width below 1");
  if (features.frames < static_cast<std::size_t>(2 * half + 1))
    throw std::invalid_argument("stm_contour: too few frames");
  Contour out;
  out.hop = features.hop;
  out.origin = features.origin;
  out.values.resize(features.frames);
  for (std::size_t g = 0; g < features.frames; ++g) {
    double acc = 0.0;
    for (int i = 0; i < kNumCoeffs; ++i) {
      const double r = regression_rate(features, g, i, half);
      acc += r * r;
    }
    out.values[g] = acc / kNumCoeffs;
  }
  return out;
}

StmAnalysis analyze(const Signal& signal, const StmConfig& config,
                    const MfccConfig& mfcc) {
  ensure_valid(signal, "stm::analyze");
  if (signal.duration() < kMinSignalSeconds - 1e-12)
    throw std::invalid_argument("stm::analyze: signal shorter than 100 ms");
  StmAnalysis out;
  const FeatureSequence features = mfcc_39(signal, mfcc);
  out.stm = stm_contour(features, config);
  out.stm_smoothed = dsp::mean_smooth(out.stm, config.smooth_window);
  PeakSet peaks = dsp::find_local_peaks(out.stm_smoothed);
  peaks = dsp::threshold_peaks(peaks, out.stm_smoothed,
                               config.threshold_fraction);
  out.boundaries.kind = EventKind::phone_boundary;
  for (std::size_t idx : peaks.indices) {
    if (out.stm_smoothed.values[idx] < kFlatFloor) continue;
    out.boundaries.events.push_back(
        Event{out.stm_smoothed.time_at(idx), std::nullopt});
  }
  return out;
}

EventList detect_phone_boundaries(const Signal& signal, const StmConfig& config,
                                  const MfccConfig& mfcc) {
  return analyze(signal, config, mfcc).boundaries;
}

}  // namespace vopkit::stm
