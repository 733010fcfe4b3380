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

#ifndef VOPKIT_BASELINES_HPP
#define VOPKIT_BASELINES_HPP

#include <array>

#include "vopkit/types.hpp"

namespace vopkit::baselines {

struct BaselineConfig {
  int lp_order = 10;
  double band_low_hz = 500.0;    // GCI-anchored band energy
  double band_high_hz = 2500.0;
  double gci_region_fraction = 0.30;  // of the local glottal cycle
  double smooth_window = 0.050;       // seconds
  double fogd_size = 0.100;           // seconds
  // excitation, spectral peaks, modulation
  std::array<double, 3> evidence_weights{1.0 / 3, 1.0 / 3, 1.0 / 3};
  double peak_threshold_fraction = 0.15;
};

// Linear prediction residual e[n] = x[n] + sum_k a_k x[n - k], coefficients
// refreshed every 10 ms from 25 ms autocorrelation frames.
std::vector<double> lp_residual(const Signal& signal, int order);

// Smoothed frame energy of the residual Hilbert envelope. Input must cover
// at least 50 ms.
Contour excitation_evidence(const Signal& signal, const BaselineConfig& config);

// Per frame: sum of the ten largest local-maximum powers of the DFT
// magnitude spectrum, smoothed.
Contour spectral_peaks_evidence(const Signal& signal,
                                const BaselineConfig& config);

// Slow amplitude modulation energy: compressed subband envelope sum,
// band-passed to 4-16 Hz at the contour rate, squared. Input must cover at
// least 250 ms.
Contour modulation_spectrum_evidence(const Signal& signal,
                                     const BaselineConfig& config);

// Weighted combination of the three evidences (each normalized to peak 1),
// differenced, convolved with a Gaussian first derivative; positive peaks
// over peak_threshold_fraction of the maximum, merged at 50 ms.
EventList detect_vops_comb_esm(const Signal& signal,
                               const BaselineConfig& config);

// Glottal closure instants from a zero-frequency resonator pair: cascaded
// double integrators with mean-subtraction detrending at the mean pitch
// period; positive-going zero crossings. Unvoiced input yields an empty
// list. Input must cover at least 100 ms.
EventList detect_gcis(const Signal& signal);

// Dominant-resonance band energy sampled only around GCIs, interpolated,
// smoothed, differenced and FOGD-convolved; peaks must sit within 50 ms of
// a GCI.
EventList detect_vops_se_gci(const Signal& signal,
                             const BaselineConfig& config);

}  // namespace vopkit::baselines

#endif  // VOPKIT_BASELINES_HPP
