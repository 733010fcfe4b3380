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

#ifndef VOPKIT_EVALUATION_HPP
#define VOPKIT_EVALUATION_HPP

#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vopkit/cwt.hpp"
#include "vopkit/types.hpp"

namespace vopkit::eval {

// One-to-one pairing of reference and detected events.
struct MatchResult {
  std::vector<std::pair<double, double>> pairs;  // (actual, detected)
  std::vector<double> misses;    // unmatched actual times
  std::vector<double> spurious;  // unmatched detected times
  double tolerance = 0.0;        // seconds
};

// Maximum-cardinality pairing with |actual - detected| <= tolerance per
// pair; among maximum pairings the one with the least total deviation is
// returned, deviation ties resolving toward the earliest events. Both
// inputs must be sorted ascending.
MatchResult match_events(const EventList& actual, const EventList& detected,
                         double tolerance_s);

struct EvalReport {
  std::map<int, double> ir_at;  // tolerance in ms -> identification rate, %
  double avg_deviation_ms = 0.0;  // over pairs at the widest tolerance
  double missed_rate = 0.0;       // 100 - IR at the widest tolerance
  double spurious_rate = 0.0;     // spurious / actual * 100, widest tolerance
  std::size_t utterance_count = 0;
  std::size_t actual_events = 0;
  std::size_t detected_events = 0;
};

struct UtterancePair {
  EventList actual;
  EventList detected;
};

// Corpus-pooled metrics: matches are counted across all utterances before
// any rate is formed. tolerances_ms must be non-empty.
EvalReport compute_report(const std::vector<UtterancePair>& utterances,
                          const std::vector<int>& tolerances_ms);

struct LabeledUtterance {
  Signal signal;
  EventList actual;
  std::string mode_tag;
};

using Detector = std::function<EventList(const Signal&)>;

struct NamedDetector {
  std::string name;
  Detector fn;
};

// Runs every detector over every utterance; one report per detector, in
// input order.
std::vector<std::pair<std::string, EvalReport>> evaluate_detectors(
    const std::vector<LabeledUtterance>& corpus,
    const std::vector<NamedDetector>& detectors,
    const std::vector<int>& tolerances_ms, int threads = 1);

// Same, grouped by mode tag (sorted); utterances with an empty tag fall
// under "all".
std::map<std::string, std::vector<std::pair<std::string, EvalReport>>>
evaluate_by_mode(const std::vector<LabeledUtterance>& corpus,
                 const std::vector<NamedDetector>& detectors,
                 const std::vector<int>& tolerances_ms, int threads = 1);

struct SweepRow {
  double fraction;
  double missed_rate;
  double spurious_rate;
};

// Candidate-stage threshold sweep at a fixed 40 ms tolerance, one row per
// fraction.
std::vector<SweepRow> threshold_sweep(
    const std::vector<LabeledUtterance>& corpus,
    const cwt::WaveletConfig& base_config, std::span<const double> fractions,
    double tolerance_s = 0.040, int threads = 1);

}  // namespace vopkit::eval

#endif  // VOPKIT_EVALUATION_HPP
