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

#ifndef VOPKIT_FFT_HPP
#define VOPKIT_FFT_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace vopkit::fft {

std::size_t next_pow2(std::size_t n);

// In-place complex DFT, any length. forward uses the negative exponent;
// inverse includes the 1/N factor. Thread safe (planning is serialized).
void forward(std::vector<std::complex<double>>& data);
void inverse(std::vector<std::complex<double>>& data);

// Full linear convolution, length a.size() + b.size() - 1.
std::vector<double> convolve(std::span<const double> a,
                             std::span<const double> b);

// Analytic signal: positive frequencies doubled, negatives zeroed.
std::vector<std::complex<double>> analytic_signal(std::span<const double> x);

// Analytic signal restricted to [lo_hz, hi_hz]; bins outside are zeroed.
std::vector<std::complex<double>> band_analytic(std::span<const double> x,
                                                double sample_rate,
                                                double lo_hz, double hi_hz);

// Zero-phase band-pass by spectral masking, DC always removed.
std::vector<double> bandpass(std::span<const double> x, double sample_rate,
                             double lo_hz, double hi_hz);

// One-sided power spectrum (nfft / 2 + 1 bins) of a frame zero-padded
// to nfft samples.
std::vector<double> power_spectrum(std::span<const double> frame,
                                   std::size_t nfft);

}  // namespace vopkit::fft

#endif  // VOPKIT_FFT_HPP
