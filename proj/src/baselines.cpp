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

#include "vopkit/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "vopkit/dsp.hpp"
#include "vopkit/fft.hpp"

namespace vopkit::baselines {

namespace {

constexpr double kEvidenceFrameLen = 0.020;  // seconds
constexpr double kEvidenceHop = 0.010;
constexpr double kLpFrameLen = 0.025;
constexpr double kLpHop = 0.010;
constexpr double kMinPeakGap = 0.050;
constexpr int kSpectralPeakCount = 10;
constexpr double kModLowHz = 4.0;
constexpr double kModHighHz = 16.0;
// Mean-pitch search span and the voicing gate on the normalized
// autocorrelation maximum.
constexpr double kPitchLowHz = 50.0;
constexpr double kPitchHighHz = 500.0;
constexpr double kVoicingThreshold = 0.30;
// Resonator output slope gate, relative to the strongest crossing.
constexpr double kGciStrengthFraction = 0.05;
constexpr double kGciMatchWindow = 0.050;

double contour_max(const std::vector<double>& v) {
  double mx = 0.0;
  for (double x : v) mx = std::max(mx, x);
  return mx;
}

void normalize_to_peak(std::vector<double>& v) {
  const double mx = contour_max(v);
  if (mx > 0.0)
    for (double& x : v) x /= mx;
}

std::vector<double> hamming(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i)
    w[i] = 0.54 - 0.46 * std::cos(2.0 * M_PI * i / (n - 1));
  return w;
}

// Levinson-Durbin on autocorrelation r[0..order]; returns a[1..order] for
// the error filter e[n] = x[n] + sum_k a_k x[n-k]. Empty when r[0] is not
// positive (an all-zero frame).
std::vector<double> levinson(const std::vector<double>& r, int order) {
  std::vector<double> a(order + 1, 0.0);
  if (!(r[0] > 0.0)) return {};
  double err = r[0];
  for (int i = 1; i <= order; ++i) {
    double acc = r[i];
    for (int j = 1; j < i; ++j) acc += a[j] * r[i - j];
    const double k = -acc / err;
    a[i] = k;
    for (int j = 1; j <= i / 2; ++j) {
      const double tmp = a[j] + k * a[i - j];
      a[i - j] += k * a[j];
      a[j] = tmp;
    }
    err *= 1.0 - k * k;
    if (!(err > 0.0)) break;
  }
  return std::vector<double>(a.begin() + 1, a.end());
}

// Frame-wise mean over the 20 ms / 10 ms evidence grid.
Contour frame_mean(const std::vector<double>& samples, int rate) {
  const dsp::FrameSpec frames =
      dsp::make_frames(samples.size(), rate, kEvidenceFrameLen, kEvidenceHop);
  Contour out;
  out.hop = static_cast<double>(frames.hop) / rate;
  out.origin = 0.5 * static_cast<double>(frames.frame_len) / rate;
  out.values.resize(frames.count);
  for (std::size_t f = 0; f < frames.count; ++f) {
    double acc = 0.0;
    for (std::size_t i = 0; i < frames.frame_len; ++i)
      acc += samples[frames.start(f) + i];
    out.values[f] = acc / static_cast<double>(frames.frame_len);
  }
  return out;
}

// Normalized autocorrelation peak over the pitch lag span: (lag, value).
std::pair<std::size_t, double> pitch_autocorrelation(
    const std::vector<double>& x, int rate) {
  const auto lag_lo = static_cast<std::size_t>(rate / kPitchHighHz);
  const auto lag_hi = static_cast<std::size_t>(rate / kPitchLowHz);
  if (lag_lo == 0 || x.size() < 2 * lag_lo + 1) return {0, 0.0};
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] - mean;
  double r0 = 0.0;
  for (double v : y) r0 += v * v;
  if (!(r0 > 0.0)) return {0, 0.0};
  std::size_t best_lag = 0;
  double best = -1.0;
  const std::size_t max_lag = std::min(lag_hi, y.size() - 1);
  for (std::size_t lag = lag_lo; lag <= max_lag; ++lag) {
    double acc = 0.0;
    for (std::size_t i = 0; i + lag < y.size(); ++i) acc += y[i] * y[i + lag];
    const double norm = acc / r0;
    if (norm > best) {
      best = norm;
      best_lag = lag;
    }
  }
  return {best_lag, best};
}

// Subtract a centered moving average (window 2 * half + 1, shrinking at the
// edges). Accumulates in long double; the double integrators upstream grow
// large.
void detrend(std::vector<double>& s, std::size_t half) {
  const std::size_t n = s.size();
  std::vector<long double> prefix(n + 1, 0.0L);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + s[i];
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t from = i >= half ? i - half : 0;
    const std::size_t to = std::min(n - 1, i + half);
    const long double sum = prefix[to + 1] - prefix[from];
    out[i] = static_cast<double>(
        static_cast<long double>(s[i]) - sum / (to - from + 1));
  }
  s = std::move(out);
}

struct GciSet {
  std::vector<double> times;      // seconds, interpolated crossings
  std::size_t pitch_lag = 0;      // samples
};

GciSet zero_frequency_gcis(const Signal& signal) {
  const auto [lag, voicing] =
      pitch_autocorrelation(signal.samples, signal.sample_rate);
  GciSet out;
  out.pitch_lag = lag;
  if (lag == 0 || voicing < kVoicingThreshold) return out;  // unvoiced

  const std::size_t n = signal.samples.size();
  std::vector<double> s(n);
  s[0] = signal.samples[0];
  for (std::size_t i = 1; i < n; ++i)
    s[i] = signal.samples[i] - signal.samples[i - 1];

  const std::size_t half = std::max<std::size_t>(1, lag / 2);
  auto integrate_twice = [&]() {
    for (int pass = 0; pass < 2; ++pass) {
      long double acc = 0.0L;
      for (std::size_t i = 0; i < n; ++i) {
        acc += s[i];
        s[i] = static_cast<double>(acc);
      }
    }
  };
  integrate_twice();
  detrend(s, half);
  integrate_twice();
  detrend(s, half);
  detrend(s, half);

  // Positive-going zero crossings; sub-sample position by interpolation.
  std::vector<double> times;
  std::vector<double> strengths;
  const std::size_t margin = half;  // detrend edges are biased
  for (std::size_t i = std::max<std::size_t>(1, margin);
       i + margin < n; ++i) {
    if (s[i - 1] < 0.0 && s[i] >= 0.0) {
      const double frac = s[i - 1] / (s[i - 1] - s[i]);
      times.push_back((static_cast<double>(i - 1) + frac) /
                      signal.sample_rate);
      strengths.push_back(s[i] - s[i - 1]);
    }
  }
  if (times.empty()) return out;
  const double strongest = *std::max_element(strengths.begin(),
                                             strengths.end());
  for (std::size_t i = 0; i < times.size(); ++i)
    if (strengths[i] >= kGciStrengthFraction * strongest)
      out.times.push_back(times[i]);
  return out;
}

EventList empty_list() {
  EventList list;
  list.kind = EventKind::vop_candidate;
  return list;
}

void require_duration(const Signal& signal, double seconds,
                      const char* what) {
  if (signal.duration() < seconds - 1e-12)
    throw std::invalid_argument(std::string(what) + ": signal shorter than " +
                                std::to_string(static_cast<int>(
                                    seconds * 1000.0)) + " ms");
}

}  // namespace

std::vector<double> lp_residual(const Signal& signal, int order) {
  ensure_valid(signal, "lp_residual");
  if (order < 1) throw std::invalid_argument("lp_residual: order below 1");
  const dsp::FrameSpec frames =
      dsp::frame_signal(signal, kLpFrameLen, kLpHop);
  if (frames.frame_len <= static_cast<std::size_t>(order))
    throw std::invalid_argument("lp_residual: order too high for frame");
  const std::vector<double> window = hamming(frames.frame_len);
  const std::vector<double>& x = signal.samples;
  const std::size_t n = x.size();
  std::vector<double> residual(n, 0.0);
  std::vector<double> windowed(frames.frame_len);
  std::vector<double> r(order + 1);

  for (std::size_t f = 0; f < frames.count; ++f) {
    const std::size_t fstart = frames.start(f);
    for (std::size_t i = 0; i < frames.frame_len; ++i)
      windowed[i] = x[fstart + i] * window[i];
    for (int lag = 0; lag <= order; ++lag) {
      double acc = 0.0;
      for (std::size_t i = lag; i < frames.frame_len; ++i)
        acc += windowed[i] * windowed[i - lag];
      r[lag] = acc;
    }
    const std::vector<double> a = levinson(r, order);

    // Inverse-filter the hop block owned by this frame; the final frame
    // also covers the tail.
    const std::size_t block_start = fstart;
    const std::size_t block_end =
        f + 1 == frames.count ? n : fstart + frames.hop;
    for (std::size_t i = block_start; i < block_end; ++i) {
      if (a.empty()) {
        residual[i] = 0.0;  // silent frame
        continue;
      }
      double e = x[i];
      for (int k = 1; k <= order; ++k) {
        if (i >= static_cast<std::size_t>(k)) e += a[k - 1] * x[i - k];
      }
      residual[i] = e;
    }
  }
  return residual;
}

Contour excitation_evidence(const Signal& signal,
                            const BaselineConfig& config) {
  ensure_valid(signal, "excitation_evidence");
  require_duration(signal, 0.050, "excitation_evidence");
  const std::vector<double> residual = lp_residual(signal, config.lp_order);
  const auto analytic = fft::analytic_signal(residual);
  std::vector<double> energy(residual.size());
  for (std::size_t i = 0; i < residual.size(); ++i)
    energy[i] = std::norm(analytic[i]);  // squared envelope
  Contour contour = frame_mean(energy, signal.sample_rate);
  return dsp::mean_smooth(contour, config.smooth_window);
}

Contour spectral_peaks_evidence(const Signal& signal,
                                const BaselineConfig& config) {
  ensure_valid(signal, "spectral_peaks_evidence");
  require_duration(signal, 0.050, "spectral_peaks_evidence");
  const dsp::FrameSpec frames =
      dsp::frame_signal(signal, kEvidenceFrameLen, kEvidenceHop);
  const std::size_t nfft = fft::next_pow2(frames.frame_len);
  const std::vector<double> window = hamming(frames.frame_len);
  Contour out;
  out.hop = static_cast<double>(frames.hop) / signal.sample_rate;
  out.origin = 0.5 * static_cast<double>(frames.frame_len) /
               signal.sample_rate;
  out.values.resize(frames.count);

  std::vector<double> buf(frames.frame_len);
  std::vector<double> peaks;
  for (std::size_t f = 0; f < frames.count; ++f) {
    for (std::size_t i = 0; i < frames.frame_len; ++i)
      buf[i] = signal.samples[frames.start(f) + i] * window[i];
    const std::vector<double> power = fft::power_spectrum(buf, nfft);
    peaks.clear();
    for (std::size_t k = 1; k + 1 < power.size(); ++k)
      if (power[k] > power[k - 1] && power[k] > power[k + 1])
        peaks.push_back(power[k]);
    std::sort(peaks.begin(), peaks.end(), std::greater<>());
    const std::size_t take =
        std::min(peaks.size(), static_cast<std::size_t>(kSpectralPeakCount));
    out.values[f] = std::accumulate(peaks.begin(), peaks.begin() + take, 0.0);
  }
  return dsp::mean_smooth(out, config.smooth_window);
}

Contour modulation_spectrum_evidence(const Signal& signal,
                                     const BaselineConfig& config) {
  ensure_valid(signal, "modulation_spectrum_evidence");
  require_duration(signal, 0.250, "modulation_spectrum_evidence");
  const double rate = signal.sample_rate;
  const double top = std::min(6000.0, 0.45 * rate);
  const double band_edges[5] = {100.0, 400.0, 1200.0, 3000.0, top};

  // Compressed envelope sum across the four subbands.
  std::vector<double> env_sum(signal.samples.size(), 0.0);
  for (int b = 0; b < 4; ++b) {
    const double lo = band_edges[b];
    const double hi = band_edges[b + 1];
    if (!(hi > lo)) continue;  // degenerate top band at very low rates
    const auto analytic =
        fft::band_analytic(signal.samples, rate, lo, hi);
    for (std::size_t i = 0; i < env_sum.size(); ++i) {
      const double mag = std::sqrt(std::norm(analytic[i]));
      env_sum[i] += std::sqrt(mag);
    }
  }

  Contour env = frame_mean(env_sum, signal.sample_rate);
  const double mean =
      std::accumulate(env.values.begin(), env.values.end(), 0.0) /
      env.values.size();
  for (double& v : env.values) v -= mean;
  const double contour_rate = 1.0 / env.hop;
  const std::vector<double> slow =
      fft::bandpass(env.values, contour_rate, kModLowHz, kModHighHz);
  Contour out;
  out.hop = env.hop;
  out.origin = env.origin;
  out.values.resize(slow.size());
  for (std::size_t i = 0; i < slow.size(); ++i)
    out.values[i] = slow[i] * slow[i];
  // The squared band-limited contour ripples at twice the modulation
  // frequency; the same smoothing the other evidences use removes it.
  return dsp::mean_smooth(out, config.smooth_window);
}

EventList detect_vops_comb_esm(const Signal& signal,
                               const BaselineConfig& config) {
  ensure_valid(signal, "detect_vops_comb_esm");
  require_duration(signal, 0.250, "detect_vops_comb_esm");
  Contour e1 = excitation_evidence(signal, config);
  Contour e2 = spectral_peaks_evidence(signal, config);
  Contour e3 = modulation_spectrum_evidence(signal, config);
  const std::size_t n =
      std::min({e1.values.size(), e2.values.size(), e3.values.size()});
  e1.values.resize(n);
  e2.values.resize(n);
  e3.values.resize(n);
  normalize_to_peak(e1.values);
  normalize_to_peak(e2.values);
  normalize_to_peak(e3.values);

  const Contour d1 = dsp::first_order_diff(e1);
  const Contour d2 = dsp::first_order_diff(e2);
  const Contour d3 = dsp::first_order_diff(e3);
  Contour comb;
  comb.hop = d1.hop;
  comb.origin = d1.origin;
  comb.values.resize(d1.values.size());
  for (std::size_t i = 0; i < comb.values.size(); ++i)
    comb.values[i] = config.evidence_weights[0] * d1.values[i] +
                     config.evidence_weights[1] * d2.values[i] +
                     config.evidence_weights[2] * d3.values[i];

  const Contour conv = dsp::fogd_convolve(comb, config.fogd_size);
  PeakSet peaks = dsp::find_local_peaks(conv);
  PeakSet positive;
  for (std::size_t idx : peaks.indices)
    if (conv.values[idx] > 0.0) positive.indices.push_back(idx);
  positive = dsp::threshold_peaks(positive, conv,
                                  config.peak_threshold_fraction);
  positive = dsp::merge_close_peaks(positive, conv, kMinPeakGap);

  EventList out = empty_list();
  for (std::size_t idx : positive.indices)
    out.events.push_back(Event{conv.time_at(idx), std::nullopt});
  return out;
}

EventList detect_gcis(const Signal& signal) {
  ensure_valid(signal, "detect_gcis");
  require_duration(signal, 0.100, "detect_gcis");
  const GciSet gcis = zero_frequency_gcis(signal);
  EventList out = empty_list();
  for (double t : gcis.times) out.events.push_back(Event{t, std::nullopt});
  return out;
}

EventList detect_vops_se_gci(const Signal& signal,
                             const BaselineConfig& config) {
  ensure_valid(signal, "detect_vops_se_gci");
  require_duration(signal, 0.100, "detect_vops_se_gci");
  if (!(config.band_high_hz > config.band_low_hz))
    throw std::invalid_argument("detect_vops_se_gci: bad band");
  const GciSet gcis = zero_frequency_gcis(signal);
  if (gcis.times.empty()) return empty_list();

  // Local glottal cycle length per GCI; the last one copies its neighbor.
  const std::size_t ng = gcis.times.size();
  std::vector<double> cycle(ng);
  for (std::size_t i = 0; i < ng; ++i) {
    if (i + 1 < ng)
      cycle[i] = gcis.times[i + 1] - gcis.times[i];
    else if (ng >= 2)
      cycle[i] = gcis.times[i] - gcis.times[i - 1];
    else
      cycle[i] = gcis.pitch_lag > 0
                     ? static_cast<double>(gcis.pitch_lag) / signal.sample_rate
                     : 0.010;
  }

  // Mean band power over the slice of each glottal cycle around its GCI.
  const double rate = signal.sample_rate;
  const std::size_t n = signal.samples.size();
  std::vector<double> gci_energy(ng, 0.0);
  for (std::size_t i = 0; i < ng; ++i) {
    const double reach = 0.5 * config.gci_region_fraction * cycle[i];
    auto lo = static_cast<long long>(std::llround((gcis.times[i] - reach) * rate));
    auto hi = static_cast<long long>(std::llround((gcis.times[i] + reach) * rate));
    lo = std::max(lo, 0LL);
    hi = std::min(hi, static_cast<long long>(n) - 1);
    if (hi <= lo) continue;
    const std::size_t len = static_cast<std::size_t>(hi - lo + 1);
    std::vector<double> slice(signal.samples.begin() + lo,
                              signal.samples.begin() + hi + 1);
    const std::vector<double> win = hamming(slice.size());
    for (std::size_t k = 0; k < slice.size(); ++k) slice[k] *= win[k];
    const std::size_t nfft = std::max<std::size_t>(256, fft::next_pow2(len));
    const std::vector<double> power = fft::power_spectrum(slice, nfft);
    const double bin_hz = rate / nfft;
    double acc = 0.0;
    for (std::size_t k = 0; k < power.size(); ++k) {
      const double fhz = k * bin_hz;
      if (fhz >= config.band_low_hz && fhz <= config.band_high_hz)
        acc += power[k];
    }
    gci_energy[i] = acc / len;
  }

  // Uniform contour: linear interpolation between per-GCI energies inside a
  // voiced run; grid points further than kGciMatchWindow from the bracketing
  // GCIs have no glottal excitation and read zero, so a voicing onset shows
  // up as a step.
  const dsp::FrameSpec frames =
      dsp::frame_signal(signal, kEvidenceFrameLen, kEvidenceHop);
  Contour contour;
  contour.hop = static_cast<double>(frames.hop) / rate;
  contour.origin = 0.5 * static_cast<double>(frames.frame_len) / rate;
  contour.values.assign(frames.count, 0.0);
  for (std::size_t f = 0; f < frames.count; ++f) {
    const double center = contour.origin + f * contour.hop;
    const auto next =
        std::lower_bound(gcis.times.begin(), gcis.times.end(), center);
    if (next == gcis.times.begin() || next == gcis.times.end()) {
      const std::size_t near =
          next == gcis.times.begin() ? 0 : ng - 1;
      if (std::abs(center - gcis.times[near]) <= 0.5 * cycle[near])
        contour.values[f] = gci_energy[near];
      continue;
    }
    const std::size_t hi = static_cast<std::size_t>(next - gcis.times.begin());
    const std::size_t lo = hi - 1;
    if (gcis.times[hi] - gcis.times[lo] > kGciMatchWindow) continue;
    const double w =
        (center - gcis.times[lo]) / (gcis.times[hi] - gcis.times[lo]);
    contour.values[f] = (1.0 - w) * gci_energy[lo] + w * gci_energy[hi];
  }

  const Contour smooth = dsp::mean_smooth(contour, config.smooth_window);
  const Contour diff = dsp::first_order_diff(smooth);
  const Contour conv = dsp::fogd_convolve(diff, config.fogd_size);
  PeakSet peaks = dsp::find_local_peaks(conv);
  PeakSet positive;
  for (std::size_t idx : peaks.indices)
    if (conv.values[idx] > 0.0) positive.indices.push_back(idx);
  positive = dsp::threshold_peaks(positive, conv,
                                  config.peak_threshold_fraction);
  positive = dsp::merge_close_peaks(positive, conv, kMinPeakGap);

  EventList out = empty_list();
  for (std::size_t idx : positive.indices) {
    const double t = conv.time_at(idx);
    // Onsets must have glottal activity nearby.
    const auto it =
        std::lower_bound(gcis.times.begin(), gcis.times.end(), t);
    double nearest = std::numeric_limits<double>::infinity();
    if (it != gcis.times.end()) nearest = std::min(nearest, *it - t);
    if (it != gcis.times.begin())
      nearest = std::min(nearest, t - *std::prev(it));
    if (nearest <= kGciMatchWindow)
      out.events.push_back(Event{t, std::nullopt});
  }
  return out;
}

}  // namespace vopkit::baselines
