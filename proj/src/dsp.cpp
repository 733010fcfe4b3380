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

#include "vopkit/dsp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vopkit::dsp {

namespace {
// Guard against representation noise when frame spacings are compared
// against second-valued gaps.
constexpr double kTimeEps = 1e-9;
}  // namespace

FrameSpec make_frames(std::size_t n_samples, int sample_rate,
                      double frame_len_s, double hop_s) {
  if (sample_rate <= 0)
    throw std::invalid_argument("framing: sample rate must be positive");
  if (!(hop_s > 0.0) || !(frame_len_s > 0.0))
    throw std::invalid_argument("framing: frame and hop must be positive");
  const auto frame_len =
      static_cast<std::size_t>(std::llround(frame_len_s * sample_rate));
  const auto hop = static_cast<std::size_t>(std::llround(hop_s * sample_rate));
  if (frame_len == 0 || hop == 0)
    throw std::invalid_argument("framing: frame or hop rounds to zero samples");
  if (frame_len < hop)
    throw std::invalid_argument("framing: frame length below hop");
  if (n_samples < frame_len)
    throw std::invalid_argument("framing: signal shorter than one frame");
  FrameSpec spec;
  spec.frame_len = frame_len;
  spec.hop = hop;
  spec.count = (n_samples - frame_len) / hop + 1;
  return spec;
}

FrameSpec frame_signal(const Signal& signal, double frame_len_s, double hop_s) {
  return make_frames(signal.samples.size(), signal.sample_rate, frame_len_s,
                     hop_s);
}

Contour mean_smooth(const Contour& contour, double window_s) {
  if (!(contour.hop > 0.0))
    throw std::invalid_argument("mean_smooth: contour hop must be positive");
  if (window_s < contour.hop - kTimeEps)
    throw std::invalid_argument("mean_smooth: window below one hop");
  std::size_t w =
      static_cast<std::size_t>(std::llround(window_s / contour.hop));
  if (w == 0) w = 1;
  if (w % 2 == 0) ++w;
  const std::size_t half = w / 2;
  const std::size_t n = contour.values.size();
  Contour out;
  out.hop = contour.hop;
  out.origin = contour.origin;
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t from = i >= half ? i - half : 0;
    const std::size_t to = std::min(n - 1, i + half);
    double sum = 0.0;
    for (std::size_t j = from; j <= to; ++j) sum += contour.values[j];
    out.values[i] = sum / static_cast<double>(to - from + 1);
  }
  return out;
}

PeakSet find_local_peaks(const Contour& contour) {
  PeakSet out;
  const auto& v = contour.values;
  const std::size_t n = v.size();
  if (n < 3) return out;
  std::size_t i = 1;
  while (i < n - 1) {
    if (v[i] > v[i - 1]) {
      std::size_t j = i;
      while (j < n - 1 && v[j + 1] == v[i]) ++j;
      // Plateau spans [i, j]; it peaks only when it falls afterwards.
      if (j < n - 1 && v[j + 1] < v[i]) out.indices.push_back(i);
      i = j + 1;
    } else {
      ++i;
    }
  }
  return out;
}

PeakSet threshold_peaks(const PeakSet& peaks, const Contour& contour,
                        double fraction) {
  if (!(fraction > 0.0) || !(fraction < 1.0))
    throw std::invalid_argument("threshold_peaks: fraction outside (0, 1)");
  PeakSet out;
  if (contour.values.empty()) return out;
  const double mx =
      *std::max_element(contour.values.begin(), contour.values.end());
  const double threshold = fraction * mx;
  for (std::size_t idx : peaks.indices) {
    if (idx >= contour.values.size())
      throw std::out_of_range("threshold_peaks: peak index outside contour");
    if (contour.values[idx] >= threshold) out.indices.push_back(idx);
  }
  return out;
}

PeakSet merge_close_peaks(const PeakSet& peaks, const Contour& contour,
                          double min_gap_s) {
  if (!(min_gap_s > 0.0))
    throw std::invalid_argument("merge_close_peaks: gap must be positive");
  if (!(contour.hop > 0.0))
    throw std::invalid_argument("merge_close_peaks: contour hop must be positive");
  std::vector<std::size_t> idx = peaks.indices;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] >= contour.values.size())
      throw std::out_of_range("merge_close_peaks: peak index outside contour");
    if (k > 0 && idx[k] <= idx[k - 1])
      throw std::invalid_argument("merge_close_peaks: peaks not ascending");
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
      const double gap =
          static_cast<double>(idx[k + 1] - idx[k]) * contour.hop;
      if (gap + kTimeEps < min_gap_s) {
        const double left = contour.values[idx[k]];
        const double right = contour.values[idx[k + 1]];
        // Ties keep the earlier peak.
        idx.erase(idx.begin() + (left < right ? k : k + 1));
        changed = true;
        break;
      }
    }
  }
  PeakSet out;
  out.indices = std::move(idx);
  return out;
}

Contour fogd_convolve(const Contour& contour, double op_size_s) {
  if (!(contour.hop > 0.0))
    throw std::invalid_argument("fogd_convolve: contour hop must be positive");
  if (op_size_s < 2.0 * contour.hop - kTimeEps)
    throw std::invalid_argument("fogd_convolve: operator below two hops");
  const auto half =
      static_cast<std::size_t>(std::llround(op_size_s / (2.0 * contour.hop)));
  const double sigma = op_size_s / 6.0;
  // k[m] = g'(m * hop): antisymmetric, negative lobe on the right so a
  // rising step convolves to a positive response at the step.
  std::vector<double> kernel(2 * half + 1, 0.0);
  for (std::size_t d = 1; d <= half; ++d) {
    const double t = static_cast<double>(d) * contour.hop;
    const double v = t * std::exp(-0.5 * t * t / (sigma * sigma));
    kernel[half + d] = -v;
    kernel[half - d] = v;
  }
  const std::size_t n = contour.values.size();
  Contour out;
  out.hop = contour.hop;
  out.origin = contour.origin;
  out.values.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < kernel.size(); ++j) {
      const std::ptrdiff_t src = static_cast<std::ptrdiff_t>(i) -
                                 (static_cast<std::ptrdiff_t>(j) -
                                  static_cast<std::ptrdiff_t>(half));
      if (src < 0 || src >= static_cast<std::ptrdiff_t>(n)) continue;
      acc += contour.values[static_cast<std::size_t>(src)] * kernel[j];
    }
    out.values[i] = acc;
  }
  return out;
}

Contour first_order_diff(const Contour& contour) {
  if (contour.values.size() < 2)
    throw std::invalid_argument("first_order_diff: need at least two frames");
  Contour out;
  out.hop = contour.hop;
  out.origin = contour.origin + contour.hop / 2.0;
  out.values.resize(contour.values.size() - 1);
  for (std::size_t i = 0; i + 1 < contour.values.size(); ++i)
    out.values[i] = contour.values[i + 1] - contour.values[i];
  return out;
}

}  // namespace vopkit::dsp
