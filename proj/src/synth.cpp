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

#include "vopkit/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "vopkit/corpus.hpp"

namespace vopkit::synth {

namespace {

constexpr double kJunctionFade = 0.005;  // seconds
constexpr int kHarmonics = 8;
// Voiced segments open with a short rise into an amplitude overshoot that
// settles to the sustain level. The overshoot keeps the frame-averaged
// amplitude peak pinned at the onset; without it, smoothing drags the peak
// tens of milliseconds into the vowel.
constexpr double kAttackSeconds = 0.012;
constexpr double kSettleSeconds = 0.035;
constexpr double kOvershoot = 1.15;
// Exponential decay to this level at segment end. The per-frame slope has
// to dominate the amplitude ripple that frame averaging over a non-integer
// number of pitch cycles produces, or the ripple mints its own peaks.
constexpr double kDecayFloor = 0.50;
// Per-period excitation click mixed into voiced segments. A pure harmonic
// sum is almost perfectly linear-predictable, which leaves the LP residual
// of a vowel quieter than the surrounding noise; real voicing is impulsive.
constexpr double kGlottalClick = 0.35;

const char* label_for(SegmentKind kind) {
  switch (kind) {
    case SegmentKind::silence:
      return "h#";
    case SegmentKind::noise:
      return "s";
    case SegmentKind::harmonic:
      return "aa";
    case SegmentKind::chirp:
      return "w";
  }
  return "h#";
}

// Engine output mapped to [0, 1) explicitly; distribution classes differ
// between standard libraries.
double uniform01(std::mt19937& rng) {
  return static_cast<double>(rng()) / 4294967296.0;
}

double uniform_in(std::mt19937& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

std::vector<double> render_segment(const SegmentSpec& spec, int rate,
                                   std::size_t n) {
  std::vector<double> out(n, 0.0);
  switch (spec.kind) {
    case SegmentKind::silence:
      break;
    case SegmentKind::noise: {
      std::mt19937 rng(spec.seed);
      for (std::size_t i = 0; i < n; ++i)
        out[i] = spec.amplitude * (2.0 * uniform01(rng) - 1.0);
      break;
    }
    case SegmentKind::harmonic: {
      const double duration = static_cast<double>(n) / rate;
      // Raw eight-harmonic shape first, then exact peak scaling.
      double peak = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / rate;
        double v = 0.0;
        for (int h = 1; h <= kHarmonics; ++h)
          v += std::sin(2.0 * M_PI * h * spec.f0 * t) / h;
        out[i] = v;
        peak = std::max(peak, std::abs(v));
      }
      if (spec.f0 > 0.0) {
        const double period = rate / spec.f0;  // samples, fractional
        for (double p = 0.0; p < static_cast<double>(n); p += period) {
          const auto idx = static_cast<std::size_t>(std::llround(p));
          if (idx < n) out[idx] += kGlottalClick * peak;
        }
        peak = 0.0;
        for (double v : out) peak = std::max(peak, std::abs(v));
      }
      const double scale = peak > 0.0 ? spec.amplitude / peak : 0.0;
      const double attack = std::min(kAttackSeconds, duration / 6.0);
      const double settle = std::min(kSettleSeconds, duration / 3.0);
      for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / rate;
        double env;
        if (t < attack) {
          env = kOvershoot * (0.5 - 0.5 * std::cos(M_PI * t / attack));
        } else if (t < settle) {
          const double w = (t - attack) / (settle - attack);
          env = 1.0 + (kOvershoot - 1.0) * (0.5 + 0.5 * std::cos(M_PI * w));
        } else {
          const double frac = duration > settle
                                  ? (t - settle) / (duration - settle)
                                  : 0.0;
          env = std::pow(kDecayFloor, frac);
        }
        out[i] *= scale * env;
      }
      break;
    }
    case SegmentKind::chirp: {
      const double duration = static_cast<double>(n) / rate;
      for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / rate;
        // Linear sweep from f0 to 2 * f0 across the segment.
        const double phase =
            2.0 * M_PI * (spec.f0 * t + 0.5 * spec.f0 * t * t / duration);
        out[i] = spec.amplitude * std::sin(phase);
      }
      break;
    }
  }
  return out;
}

}  // namespace

SynthResult synthesize(std::span<const SegmentSpec> specs, int sample_rate) {
  if (sample_rate <= 0)
    throw std::invalid_argument("synthesize: sample rate must be positive");
  if (specs.empty()) throw std::invalid_argument("synthesize: no segments");
  for (const SegmentSpec& spec : specs) {
    if (!(spec.duration > 0.0))
      throw std::invalid_argument("synthesize: segment duration must be positive");
    if (spec.amplitude < 0.0 || spec.amplitude > 1.0)
      throw std::invalid_argument("synthesize: amplitude outside [0, 1]");
    if ((spec.kind == SegmentKind::harmonic ||
         spec.kind == SegmentKind::chirp) &&
        !(spec.f0 > 0.0))
      throw std::invalid_argument("synthesize: f0 must be positive");
  }

  SynthResult out;
  out.signal.sample_rate = sample_rate;
  out.ground_truth.kind = EventKind::vop_candidate;

  const auto fade_len = static_cast<std::size_t>(
      std::llround(kJunctionFade * sample_rate));
  long long cursor = 0;
  for (std::size_t k = 0; k < specs.size(); ++k) {
    const SegmentSpec& spec = specs[k];
    const auto n = static_cast<std::size_t>(
        std::max<long long>(1, std::llround(spec.duration * sample_rate)));
    std::vector<double> seg = render_segment(spec, sample_rate, n);

    // Raised-cosine guards inside the segment at internal junctions.
    const std::size_t fade = std::min(fade_len, n / 2);
    if (k > 0 && fade > 0) {
      for (std::size_t i = 0; i < fade; ++i)
        seg[i] *= 0.5 - 0.5 * std::cos(M_PI * (i + 1.0) / (fade + 1.0));
    }
    if (k + 1 < specs.size() && fade > 0) {
      for (std::size_t i = 0; i < fade; ++i)
        seg[n - 1 - i] *=
            0.5 - 0.5 * std::cos(M_PI * (i + 1.0) / (fade + 1.0));
    }

    out.signal.samples.insert(out.signal.samples.end(), seg.begin(),
                              seg.end());
    PhoneSegment ps;
    ps.start = cursor;
    ps.end = cursor + static_cast<long long>(n);
    ps.label = label_for(spec.kind);
    out.segments.push_back(ps);

    const bool prev_harmonic =
        k > 0 && specs[k - 1].kind == SegmentKind::harmonic;
    if (spec.kind == SegmentKind::harmonic && !prev_harmonic)
      out.ground_truth.events.push_back(Event{
          static_cast<double>(cursor) / sample_rate, std::nullopt});
    cursor += static_cast<long long>(n);
  }
  return out;
}

std::vector<SegmentSpec> random_utterance(std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<SegmentSpec> specs;
  // Room tone instead of digital zero keeps spectral floors realistic.
  SegmentSpec lead;
  lead.kind = SegmentKind::noise;
  lead.duration = uniform_in(rng, 0.10, 0.18);
  lead.amplitude = uniform_in(rng, 0.002, 0.004);
  lead.seed = rng();
  specs.push_back(lead);
  // Consonant+vowel pairs at a syllabic cadence (roughly 3-6 Hz).
  const int onsets = 2 + static_cast<int>(rng() % 4);  // 2..5
  for (int i = 0; i < onsets; ++i) {
    SegmentSpec noise;
    noise.kind = SegmentKind::noise;
    noise.duration = uniform_in(rng, 0.06, 0.11);
    noise.amplitude = uniform_in(rng, 0.03, 0.08);
    noise.seed = rng();
    specs.push_back(noise);

    SegmentSpec vowel;
    vowel.kind = SegmentKind::harmonic;
    vowel.duration = uniform_in(rng, 0.10, 0.17);
    vowel.amplitude = uniform_in(rng, 0.50, 0.85);
    vowel.f0 = uniform_in(rng, 110.0, 220.0);
    specs.push_back(vowel);
  }
  SegmentSpec tail;
  tail.kind = SegmentKind::noise;
  tail.duration = uniform_in(rng, 0.08, 0.15);
  tail.amplitude = uniform_in(rng, 0.002, 0.004);
  tail.seed = rng();
  specs.push_back(tail);
  return specs;
}

PersistedItem write_item(const std::string& dir, const std::string& id,
                         const SynthResult& result,
                         const std::string& mode_tag) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  PersistedItem item;
  item.id = id;
  item.mode_tag = mode_tag;
  item.wav_path = (fs::path(dir) / (id + ".wav")).string();
  item.phn_path = (fs::path(dir) / (id + ".phn")).string();
  corpus::write_wav_pcm16(item.wav_path, result.signal);
  std::ofstream phn(item.phn_path);
  if (!phn)
    throw std::runtime_error("cannot open for write: " + item.phn_path);
  phn << corpus::serialize_phone_annotation(result.segments);
  if (!phn) throw std::runtime_error("write failed: " + item.phn_path);
  return item;
}

std::string build_corpus(const std::string& dir, int count,
                         std::uint32_t base_seed, int sample_rate) {
  namespace fs = std::filesystem;
  if (count < 1) throw std::invalid_argument("build_corpus: count below 1");
  fs::create_directories(dir);
  std::ostringstream manifest;
  for (int i = 0; i < count; ++i) {
    const auto specs = random_utterance(base_seed + i);
    const SynthResult result = synthesize(specs, sample_rate);
    char id[32];
    std::snprintf(id, sizeof(id), "utt%03d", i);
    const std::string mode = i % 2 == 0 ? "read" : "conversation";
    const PersistedItem item = write_item(dir, id, result, mode);
    manifest << item.id << ' ' << fs::path(item.wav_path).filename().string()
             << ' ' << fs::path(item.phn_path).filename().string() << ' '
             << mode << '\n';
  }
  const std::string manifest_path =
      (fs::path(dir) / "manifest.tsv").string();
  std::ofstream out(manifest_path);
  if (!out)
    throw std::runtime_error("cannot open for write: " + manifest_path);
  out << manifest.str();
  if (!out) throw std::runtime_error("write failed: " + manifest_path);
  return manifest_path;
}

}  // namespace vopkit::synth
