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

#ifndef VOPKIT_FUSION_HPP
#define VOPKIT_FUSION_HPP

#include "vopkit/cwt.hpp"
#include "vopkit/stm.hpp"
#include "vopkit/types.hpp"

namespace vopkit::fusion {

struct FusionConfig {
  double max_snap_window = 0.060;  // seconds, leftward reach
  bool dedupe = true;              // collapse candidates snapped together
};

// Moves each candidate onto the latest boundary at or before it, when one
// sits within max_snap_window; candidates with no such boundary keep their
// time. Candidates never move rightward. Output events carry the original
// candidate time as source_time and stay sorted.
EventList snap_vops(const EventList& vops, const EventList& boundaries,
                    const FusionConfig& config);

struct TwoStageAnalysis {
  cwt::CwtAnalysis stage1;
  stm::StmAnalysis stage2;
  EventList vops;  // kind vop_corrected
};

TwoStageAnalysis analyze(const Signal& signal, const cwt::WaveletConfig& wavelet,
                         const stm::StmConfig& stm_config,
                         const FusionConfig& fusion,
                         const stm::MfccConfig& mfcc = {});

// Full two-stage detector: wavelet candidates corrected by transition
// boundaries.
EventList detect_vops(const Signal& signal, const cwt::WaveletConfig& wavelet,
                      const stm::StmConfig& stm_config,
                      const FusionConfig& fusion,
                      const stm::MfccConfig& mfcc = {});

}  // namespace vopkit::fusion

#endif  // VOPKIT_FUSION_HPP
