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

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "vopkit/baselines.hpp"
#include "vopkit/synth.hpp"

namespace baselines = vopkit::baselines;
using baselines::BaselineConfig;
using vopkit::Contour;
using vopkit::EventList;
using vopkit::Signal;

namespace {

constexpr double kPi = std::numbers::pi;

Signal silence(double seconds, int rate = 16000) {
  Signal s;
  s.sample_rate = rate;
  s.samples.assign(static_cast<std::size_t>(std::lround(seconds * rate)), 0.0);
  return s;
}

Signal tone(double f, double seconds, double amp = 0.5, int rate = 16000) {
  Signal s;
  s.sample_rate = rate;
  const auto n = static_cast<std::size_t>(std::lround(seconds * rate));
  for (std::size_t i = 0; i < n; ++i)
    s.samples.push_back(amp *
                        std::sin(2.0 * kPi * f * static_cast<double>(i) / rate));
  return s;
}

Signal white_noise(double seconds, double amp, unsigned seed,
                   int rate = 16000) {
  Signal s;
  s.sample_rate = rate;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-amp, amp);
  const auto n = static_cast<std::size_t>(std::lround(seconds * rate));
  for (std::size_t i = 0; i < n; ++i) s.samples.push_back(dist(rng));
  return s;
}

Signal impulse_train(double period_s, double seconds, double amp = 0.8,
                     int rate = 16000) {
  Signal s = silence(seconds, rate);
  const double step = period_s * rate;
  for (double p = 0.0; p < static_cast<double>(s.samples.size()); p += step)
    s.samples[static_cast<std::size_t>(std::llround(p))] = amp;
  return s;
}

// Noise then voicing: the canonical probe for all onset detectors.
Signal noise_then_voicing() {
  const std::vector<vopkit::synth::SegmentSpec> specs{
      {vopkit::synth::SegmentKind::noise, 0.4, 0.05, 0.0, 7},
      {vopkit::synth::SegmentKind::harmonic, 0.8, 0.7, 150.0, 0},
  };
  return vopkit::synth::synthesize(specs, 16000).signal;
}

double total(const Contour& c) {
  double acc = 0.0;
  for (double v : c.values) acc += v;
  return acc;
}

}  // namespace

TEST_CASE("lp residual deflates predictable signals but not noise") {
  const Signal harmonic = noise_then_voicing();
  const std::vector<double> res = baselines::lp_residual(harmonic, 10);
  REQUIRE(res.size() == harmonic.samples.size());

  // Compare residual-to-signal energy inside the voiced region against the
  // noise region: voiced speech is far more linearly predictable.
  auto energy_ratio = [&](std::size_t from, std::size_t to) {
    double se = 0.0, re = 0.0;
    for (std::size_t i = from; i < to; ++i) {
      se += harmonic.samples[i] * harmonic.samples[i];
      re += res[i] * res[i];
    }
    return re / se;
  };
  const double noise_ratio = energy_ratio(1600, 6000);
  const double voiced_ratio = energy_ratio(8000, 16000);
  CHECK(voiced_ratio < 0.5 * noise_ratio);
  CHECK(noise_ratio > 0.5);  // noise stays essentially unpredicted

  CHECK_THROWS_AS(baselines::lp_residual(harmonic, 0), std::invalid_argument);
}

TEST_CASE("lp residual is homogeneous in the input gain") {
  const Signal s = noise_then_voicing();
  Signal quiet = s;
  for (double& v : quiet.samples) v *= 0.25;
  const auto a = baselines::lp_residual(s, 10);
  const auto b = baselines::lp_residual(quiet, 10);
  double peak = 0.0;
  for (double v : a) peak = std::max(peak, std::abs(v));
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(std::abs(b[i] - 0.25 * a[i]) <= 1e-9 * peak);
}

TEST_CASE("all evidences are zero on silence and non-negative elsewhere") {
  const Signal z = silence(0.5);
  const BaselineConfig config;
  for (const Contour& c : {baselines::excitation_evidence(z, config),
                           baselines::spectral_peaks_evidence(z, config),
                           baselines::modulation_spectrum_evidence(z, config)})
    for (double v : c.values) CHECK(v == 0.0);

  const Signal s = noise_then_voicing();
  for (const Contour& c :
       {baselines::excitation_evidence(s, config),
        baselines::spectral_peaks_evidence(s, config),
        baselines::modulation_spectrum_evidence(s, config)}) {
    CHECK(c.hop == doctest::Approx(0.010));
    CHECK(!c.values.empty());
    for (double v : c.values) CHECK(v >= 0.0);
  }
}

TEST_CASE("excitation evidence steps up at the voicing onset") {
  const Signal s = noise_then_voicing();
  const Contour e = baselines::excitation_evidence(s, {});
  // Voiced excitation is impulsive: right after the onset the residual
  // envelope energy clearly exceeds anything the noise region produced.
  // (The margin is moderate: voiced speech is also far more predictable,
  // which deflates its residual.)
  double noise_max = 0.0, onset_mean = 0.0;
  std::size_t no = 0;
  for (std::size_t i = 0; i < e.values.size(); ++i) {
    const double t = e.time_at(i);
    if (t < 0.35) noise_max = std::max(noise_max, e.values[i]);
    if (t > 0.40 && t < 0.55) {
      onset_mean += e.values[i];
      ++no;
    }
  }
  REQUIRE(no > 0);
  onset_mean /= static_cast<double>(no);
  CHECK(onset_mean > 1.4 * noise_max);

  CHECK_THROWS_AS(baselines::excitation_evidence(silence(0.030), {}),
                  std::invalid_argument);
}

TEST_CASE("spectral peak evidence reads total tonal power") {
  // One tone versus ten equal tones with the same total power: the sum of
  // the ten largest spectral maxima should come out comparable.
  const int rate = 16000;
  Signal one = tone(500.0, 0.4, 0.5, rate);
  Signal ten;
  ten.sample_rate = rate;
  const double amp10 = 0.5 / std::sqrt(10.0);
  for (std::size_t i = 0; i < one.samples.size(); ++i) {
    double v = 0.0;
    for (int k = 1; k <= 10; ++k)
      v += amp10 * std::sin(2.0 * kPi * (400.0 + 300.0 * k) * i / rate);
    ten.samples.push_back(v);
  }
  const Contour e1 = baselines::spectral_peaks_evidence(one, {});
  const Contour e10 = baselines::spectral_peaks_evidence(ten, {});
  const double t1 = total(e1) / e1.size();
  const double t10 = total(e10) / e10.size();
  CHECK(t10 / t1 > 0.5);
  CHECK(t10 / t1 < 2.0);

  // A stationary tone reads as near-constant evidence away from the edges.
  for (std::size_t i = 10; i + 10 < e1.size(); ++i)
    CHECK(e1.values[i] == doctest::Approx(e1.values[10]).epsilon(0.05));
}

TEST_CASE("modulation evidence picks out syllable-rate amplitude modulation") {
  const int rate = 16000;
  const double seconds = 2.0;
  auto modulated = [&](double mod_hz) {
    Signal s;
    s.sample_rate = rate;
    const auto n = static_cast<std::size_t>(seconds * rate);
    for (std::size_t i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) / rate;
      const double env = 0.5 * (1.0 + std::sin(2.0 * kPi * mod_hz * t));
      s.samples.push_back(0.6 * env * std::sin(2.0 * kPi * 300.0 * t));
    }
    return s;
  };
  const double in_band = total(baselines::modulation_spectrum_evidence(
      modulated(8.0), {}));
  const double out_band = total(baselines::modulation_spectrum_evidence(
      modulated(45.0), {}));
  const double steady = total(baselines::modulation_spectrum_evidence(
      tone(300.0, seconds, 0.6), {}));
  CHECK(in_band > 5.0 * out_band);
  CHECK(in_band > 5.0 * steady);

  CHECK_THROWS_AS(
      baselines::modulation_spectrum_evidence(silence(0.2), {}),
      std::invalid_argument);
}

TEST_CASE("combined-evidence detection fires at a voicing onset") {
  const EventList out = baselines::detect_vops_comb_esm(noise_then_voicing(),
                                                        {});
  REQUIRE(out.size() >= 1);
  bool near_onset = false;
  for (const auto& e : out.events)
    if (std::abs(e.time - 0.4) <= 0.040) near_onset = true;
  CHECK(near_onset);
  // Merged peaks keep their spacing.
  for (std::size_t i = 1; i < out.size(); ++i)
    CHECK(out.events[i].time - out.events[i - 1].time >= 0.050 - 1e-9);
}

TEST_CASE("combined-evidence detection stays quiet on silence") {
  CHECK(baselines::detect_vops_comb_esm(silence(0.6), {}).size() == 0);
  CHECK_THROWS_AS(baselines::detect_vops_comb_esm(silence(0.1), {}),
                  std::invalid_argument);
}

TEST_CASE("glottal closure instants track the excitation period") {
  // 8 ms impulse train: one GCI per period, spaced 8 +/- 1 ms.
  const EventList gcis =
      baselines::detect_gcis(impulse_train(0.008, 0.5));
  REQUIRE(gcis.size() >= 40);
  for (std::size_t i = 1; i < gcis.size(); ++i)
    CHECK(std::abs((gcis.events[i].time - gcis.events[i - 1].time) - 0.008) <
          0.001);

  // A 120 Hz tone over 0.5 s carries about 60 cycles.
  const EventList tonal = baselines::detect_gcis(tone(120.0, 0.5, 0.7));
  CHECK(tonal.size() >= 57);
  CHECK(tonal.size() <= 63);
  for (std::size_t i = 1; i < tonal.size(); ++i)
    CHECK(std::abs((tonal.events[i].time - tonal.events[i - 1].time) -
                   1.0 / 120.0) < 0.002);
}

TEST_CASE("unvoiced input yields no glottal closure instants") {
  CHECK(baselines::detect_gcis(white_noise(0.5, 0.3, 17)).size() == 0);
  CHECK(baselines::detect_gcis(silence(0.5)).size() == 0);
  CHECK_THROWS_AS(baselines::detect_gcis(silence(0.05)),
                  std::invalid_argument);
}

TEST_CASE("gci-anchored detection finds the voicing onset and only it") {
  const Signal s = noise_then_voicing();
  const EventList out = baselines::detect_vops_se_gci(s, {});
  REQUIRE(out.size() == 1);
  CHECK(std::abs(out.events[0].time - 0.4) <= 0.040);

  // Every reported onset sits within 50 ms of a detected GCI.
  const EventList gcis = baselines::detect_gcis(s);
  REQUIRE(gcis.size() > 0);
  for (const auto& e : out.events) {
    double nearest = 1e9;
    for (const auto& g : gcis.events)
      nearest = std::min(nearest, std::abs(e.time - g.time));
    CHECK(nearest <= 0.050 + 1e-9);
  }
}

TEST_CASE("gci-anchored detection stays quiet without voicing") {
  CHECK(baselines::detect_vops_se_gci(white_noise(0.5, 0.3, 29), {}).size() ==
        0);
  CHECK(baselines::detect_vops_se_gci(silence(0.5), {}).size() == 0);
}

TEST_CASE("baseline detections are unchanged by a quarter gain") {
  const auto r = vopkit::synth::synthesize(
      vopkit::synth::random_utterance(9), 16000);
  Signal quiet = r.signal;
  for (double& v : quiet.samples) v *= 0.25;

  const EventList c1 = baselines::detect_vops_comb_esm(r.signal, {});
  const EventList c2 = baselines::detect_vops_comb_esm(quiet, {});
  REQUIRE(c1.size() == c2.size());
  for (std::size_t i = 0; i < c1.size(); ++i)
    CHECK(c1.events[i].time == c2.events[i].time);

  const EventList g1 = baselines::detect_vops_se_gci(r.signal, {});
  const EventList g2 = baselines::detect_vops_se_gci(quiet, {});
  REQUIRE(g1.size() == g2.size());
  for (std::size_t i = 0; i < g1.size(); ++i)
    CHECK(g1.events[i].time == g2.events[i].time);
}
