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

#include "vopkit/fusion.hpp"

#include <algorithm>
#include <stdexcept>

namespace vopkit::fusion {

namespace {

constexpr double kTimeEps = 1e-12;

void ensure_sorted(const EventList& list, const char* what) {
  for (std::size_t i = 1; i < list.events.size(); ++i)
    if (list.events[i].time < list.events[i - 1].time)
      throw std::invalid_argument(std::string("snap_vops: ") + what +
                                  " not sorted");
}

}  // namespace

EventList snap_vops(const EventList& vops, const EventList& boundaries,
                    const FusionConfig& config) {
  if (!(config.max_snap_window > 0.0))
    throw std::invalid_argument("snap_vops: window must be positive");
  ensure_sorted(vops, "candidates");
  ensure_sorted(boundaries, "boundaries");

  const std::vector<double> btimes = boundaries.times();
  EventList out;
  out.kind = EventKind::vop_corrected;
  out.events.reserve(vops.events.size());
  for (const Event& cand : vops.events) {
    const double t = cand.time;
    double corrected = t;
    // Latest boundary at or before the candidate, within reach.
    auto it = std::upper_bound(btimes.begin(), btimes.end(), t);
    if (it != btimes.begin()) {
      const double b = *std::prev(it);
      if (t - b <= config.max_snap_window + kTimeEps) corrected = b;
    }
    if (config.dedupe && !out.events.empty() &&
        out.events.back().time == corrected)
      continue;  // collapsed onto the same boundary as the previous candidate
    out.events.push_back(Event{corrected, t});
  }
  return out;
}

TwoStageAnalysis analyze(const Signal& signal,
                         const cwt::WaveletConfig& wavelet,
                         const stm::StmConfig& stm_config,
                         const FusionConfig& fusion,
                         const stm::MfccConfig& mfcc) {
  TwoStageAnalysis out;
  out.stage1 = cwt::analyze(signal, wavelet);
  out.stage2 = stm::analyze(signal, stm_config, mfcc);
  out.vops = snap_vops(out.stage1.vops, out.stage2.boundaries, fusion);
  return out;
}

EventList detect_vops(const Signal& signal, const cwt::WaveletConfig& wavelet,
                      const stm::StmConfig& stm_config,
                      const FusionConfig& fusion,
                      const stm::MfccConfig& mfcc) {
  return analyze(signal, wavelet, stm_config, fusion, mfcc).vops;
}

}  // namespace vopkit::fusion
