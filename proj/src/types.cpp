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

#include "vopkit/types.hpp"

#include <cmath>
#include <stdexcept>

namespace vopkit {

const char* to_string(EventKind kind) {
  switch (kind) {
    case EventKind::vop_candidate:
      return "vop_candidate";
    case EventKind::vop_corrected:
      return "vop_corrected";
    case EventKind::phone_boundary:
      return "phone_boundary";
  }
  return "unknown";
}

EventKind event_kind_from_string(const std::string& name) {
  if (name == "vop_candidate") return EventKind::vop_candidate;
  if (name == "vop_corrected") return EventKind::vop_corrected;
  if (name == "phone_boundary") return EventKind::phone_boundary;
  throw std::invalid_argument("unknown event kind: " + name);
}

std::vector<double> EventList::times() const {
  std::vector<double> out;
  out.reserve(events.size());
  for (const Event& e : events) out.push_back(e.time);
  return out;
}

EventList make_event_list(EventKind kind, const std::vector<double>& times) {
  EventList list;
  list.kind = kind;
  list.events.reserve(times.size());
  for (double t : times) list.events.push_back(Event{t, std::nullopt});
  return list;
}

const VowelSet& default_vowel_set() {
  static const VowelSet set{{
      "iy", "ih", "eh", "ey", "ae", "aa", "aw", "ay", "ah", "ao",
      "oy", "ow", "uh", "uw", "ux", "er", "ax", "ix", "axr", "ax-h",
  }};
  return set;
}

void ensure_valid(const Signal& signal, const char* context) {
  if (signal.sample_rate <= 0)
    throw std::invalid_argument(std::string(context) +
                                ": sample rate must be positive");
  if (signal.samples.empty())
    throw std::invalid_argument(std::string(context) + ": empty signal");
  for (double v : signal.samples)
    if (!std::isfinite(v))
      throw std::invalid_argument(std::string(context) +
                                  ": non-finite sample");
}

}  // namespace vopkit
