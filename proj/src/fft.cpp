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

#include "vopkit/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace vopkit::fft {

namespace {

// FFTW planning is not thread safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

void transform(std::vector<std::complex<double>>& data, int sign) {
  if (data.empty()) return;
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    // FFTW_ESTIMATE keeps planning deterministic and leaves the buffer
    // untouched.
    plan = fftw_plan_dft_1d(static_cast<int>(data.size()), buf, buf, sign,
                            FFTW_ESTIMATE);
  }
  if (!plan) throw std::runtime_error("fft: planning failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
}

}  // namespace

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void forward(std::vector<std::complex<double>>& data) {
  transform(data, FFTW_FORWARD);
}

void inverse(std::vector<std::complex<double>>& data) {
  transform(data, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto& v : data) v *= scale;
}

std::vector<double> convolve(std::span<const double> a,
                             std::span<const double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("convolve: empty input");
  const std::size_t out_len = a.size() + b.size() - 1;
  const std::size_t m = next_pow2(out_len);
  std::vector<std::complex<double>> fa(m), fb(m);
  for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i];
  forward(fa);
  forward(fb);
  for (std::size_t i = 0; i < m; ++i) fa[i] *= fb[i];
  inverse(fa);
  std::vector<double> out(out_len);
  for (std::size_t i = 0; i < out_len; ++i) out[i] = fa[i].real();
  return out;
}

std::vector<std::complex<double>> analytic_signal(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("analytic_signal: empty input");
  const std::size_t n = x.size();
  std::vector<std::complex<double>> spec(n);
  for (std::size_t i = 0; i < n; ++i) spec[i] = x[i];
  forward(spec);
  // Keep DC and (for even n) Nyquist as is, double positives, zero negatives.
  const std::size_t half = n / 2;
  const std::size_t last_positive = (n % 2 == 0) ? half - 1 : half;
  for (std::size_t k = 1; k <= last_positive && k < n; ++k) spec[k] *= 2.0;
  for (std::size_t k = half + 1; k < n; ++k) spec[k] = 0.0;
  inverse(spec);
  return spec;
}

std::vector<std::complex<double>> band_analytic(std::span<const double> x,
                                                double sample_rate,
                                                double lo_hz, double hi_hz) {
  if (x.empty()) throw std::invalid_argument("band_analytic: empty input");
  if (!(sample_rate > 0.0) || !(lo_hz >= 0.0) || !(hi_hz > lo_hz))
    throw std::invalid_argument("band_analytic: bad band");
  const std::size_t n = x.size();
  std::vector<std::complex<double>> spec(n);
  for (std::size_t i = 0; i < n; ++i) spec[i] = x[i];
  forward(spec);
  for (std::size_t k = 0; k < n; ++k) {
    const double f = static_cast<double>(k) * sample_rate / n;
    const bool positive_half = k > 0 && k <= n / 2;
    if (positive_half && f >= lo_hz && f <= hi_hz) {
      spec[k] *= 2.0;
    } else {
      spec[k] = 0.0;
    }
  }
  inverse(spec);
  return spec;
}

std::vector<double> bandpass(std::span<const double> x, double sample_rate,
                             double lo_hz, double hi_hz) {
  if (x.empty()) throw std::invalid_argument("bandpass: empty input");
  if (!(sample_rate > 0.0) || !(lo_hz >= 0.0) || !(hi_hz > lo_hz))
    throw std::invalid_argument("bandpass: bad band");
  const std::size_t n = x.size();
  std::vector<std::complex<double>> spec(n);
  for (std::size_t i = 0; i < n; ++i) spec[i] = x[i];
  forward(spec);
  spec[0] = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    const std::size_t mirror = n - k;
    const double f = static_cast<double>(std::min(k, mirror)) * sample_rate / n;
    if (f < lo_hz || f > hi_hz) spec[k] = 0.0;
  }
  inverse(spec);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = spec[i].real();
  return out;
}

std::vector<double> power_spectrum(std::span<const double> frame,
                                   std::size_t nfft) {
  if (frame.empty()) throw std::invalid_argument("power_spectrum: empty frame");
  if (nfft < frame.size())
    throw std::invalid_argument("power_spectrum: nfft below frame length");
  std::vector<std::complex<double>> spec(nfft);
  for (std::size_t i = 0; i < frame.size(); ++i) spec[i] = frame[i];
  forward(spec);
  std::vector<double> out(nfft / 2 + 1);
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = std::norm(spec[k]);
  }
  return out;
}

}  // namespace vopkit::fft
