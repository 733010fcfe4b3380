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

#ifndef VOPKIT_CONFIG_HPP
#define VOPKIT_CONFIG_HPP

#include <string>
#include <vector>

#include "vopkit/baselines.hpp"
#include "vopkit/cwt.hpp"
#include "vopkit/fusion.hpp"
#include "vopkit/stm.hpp"
#include "vopkit/types.hpp"

namespace vopkit::config {

struct RunConfig {
  cwt::WaveletConfig wavelet;
  stm::MfccConfig mfcc;
  stm::StmConfig stm;
  fusion::FusionConfig fusion;
  baselines::BaselineConfig baseline;
  std::vector<int> tolerances_ms{10, 20, 30, 40};
  int target_rate = 16000;
  VowelSet vowels = default_vowel_set();
};

// JSON file with optional sections wavelet, mfcc, stm, fusion, baseline,
// evaluation, corpus. Unknown keys anywhere raise an error naming the key.
RunConfig load_run_config(const std::string& path);
RunConfig parse_run_config(const std::string& json_text);

// Fully resolved echo, defaults filled in; scales are materialized for the
// configured target rate.
std::string resolved_json(const RunConfig& config);

}  // namespace vopkit::config

#endif  // VOPKIT_CONFIG_HPP
