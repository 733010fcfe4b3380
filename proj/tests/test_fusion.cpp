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

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "vopkit/fusion.hpp"
#include "vopkit/synth.hpp"

namespace fusion = vopkit::fusion;
using fusion::FusionConfig;
using vopkit::EventKind;
using vopkit::EventList;
using vopkit::make_event_list;

TEST_CASE("a candidate snaps to the latest boundary at or before it") {
  const EventList vops =
      make_event_list(EventKind::vop_candidate, {1.000});
  const EventList boundaries =
      make_event_list(EventKind::phone_boundary, {0.980, 1.020});
  const EventList out = fusion::snap_vops(vops, boundaries, {});
  REQUIRE(out.size() == 1);
  CHECK(out.kind == EventKind::vop_corrected);
  CHECK(out.events[0].time == doctest::Approx(0.980));
  REQUIRE(out.events[0].source_time.has_value());
  CHECK(*out.events[0].source_time == doctest::Approx(1.000));
}

TEST_CASE("candidates never move rightward") {
  // The only boundary sits after the candidate; the candidate stays put.
  const EventList vops = make_event_list(EventKind::vop_candidate, {1.000});
  const EventList after =
      make_event_list(EventKind::phone_boundary, {1.005});
  const EventList out = fusion::snap_vops(vops, after, {});
  REQUIRE(out.size() == 1);
  CHECK(out.events[0].time == doctest::Approx(1.000));
}

TEST_CASE("a candidate with no boundary in reach keeps its time") {
  const EventList vops = make_event_list(EventKind::vop_candidate, {1.000});
  const EventList far =
      make_event_list(EventKind::phone_boundary, {0.900});  // 100 ms back
  const EventList out = fusion::snap_vops(vops, far, {});
  REQUIRE(out.size() == 1);
  CHECK(out.events[0].time == doctest::Approx(1.000));
  REQUIRE(out.events[0].source_time.has_value());
  CHECK(*out.events[0].source_time == doctest::Approx(1.000));
}

TEST_CASE("the snap window is inclusive at its edge") {
  const EventList vops = make_event_list(EventKind::vop_candidate, {1.000});
  const EventList edge =
      make_event_list(EventKind::phone_boundary, {0.940});  // exactly 60 ms
  const EventList out = fusion::snap_vops(vops, edge, {});
  CHECK(out.events[0].time == doctest::Approx(0.940));

  FusionConfig narrow;
  narrow.max_snap_window = 0.059;
  const EventList kept = fusion::snap_vops(vops, edge, narrow);
  CHECK(kept.events[0].time == doctest::Approx(1.000));
}

TEST_CASE("candidates snapped onto one boundary collapse to the earlier one") {
  const EventList vops =
      make_event_list(EventKind::vop_candidate, {1.000, 1.010});
  const EventList boundaries =
      make_event_list(EventKind::phone_boundary, {0.990});
  const EventList out = fusion::snap_vops(vops, boundaries, {});
  REQUIRE(out.size() == 1);
  CHECK(out.events[0].time == doctest::Approx(0.990));
  // The survivor records the earlier candidate as its source.
  REQUIRE(out.events[0].source_time.has_value());
  CHECK(*out.events[0].source_time == doctest::Approx(1.000));

  FusionConfig keep_all;
  keep_all.dedupe = false;
  const EventList both = fusion::snap_vops(vops, boundaries, keep_all);
  REQUIRE(both.size() == 2);
  CHECK(both.events[0].time == doctest::Approx(both.events[1].time));
}

TEST_CASE("empty inputs are handled") {
  const EventList none = make_event_list(EventKind::vop_candidate, {});
  const EventList boundaries =
      make_event_list(EventKind::phone_boundary, {0.5});
  CHECK(fusion::snap_vops(none, boundaries, {}).size() == 0);

  const EventList vops = make_event_list(EventKind::vop_candidate, {0.5});
  const EventList no_b = make_event_list(EventKind::phone_boundary, {});
  const EventList out = fusion::snap_vops(vops, no_b, {});
  REQUIRE(out.size() == 1);
  CHECK(out.events[0].time == doctest::Approx(0.5));
}

TEST_CASE("snap_vops validates ordering and window") {
  EventList unsorted = make_event_list(EventKind::vop_candidate, {});
  unsorted.events.push_back({0.5, std::nullopt});
  unsorted.events.push_back({0.2, std::nullopt});
  const EventList boundaries =
      make_event_list(EventKind::phone_boundary, {0.1});
  CHECK_THROWS_AS(fusion::snap_vops(unsorted, boundaries, {}),
                  std::invalid_argument);

  const EventList vops = make_event_list(EventKind::vop_candidate, {0.5});
  FusionConfig bad;
  bad.max_snap_window = 0.0;
  CHECK_THROWS_AS(fusion::snap_vops(vops, boundaries, bad),
                  std::invalid_argument);
}

TEST_CASE("random snap inputs satisfy the correction invariants") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> dist(0.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> cand(1 + rng() % 8);
    std::vector<double> bnd(rng() % 10);
    for (double& t : cand) t = dist(rng);
    for (double& t : bnd) t = dist(rng);
    std::sort(cand.begin(), cand.end());
    std::sort(bnd.begin(), bnd.end());

    const EventList vops = make_event_list(EventKind::vop_candidate, cand);
    const EventList boundaries =
        make_event_list(EventKind::phone_boundary, bnd);
    const EventList out = fusion::snap_vops(vops, boundaries, {});

    CHECK(out.size() <= vops.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
      const auto& e = out.events[i];
      REQUIRE(e.source_time.has_value());
      // Never rightward, never further than the window.
      CHECK(e.time <= *e.source_time + 1e-12);
      CHECK(*e.source_time - e.time <= 0.060 + 1e-9);
      if (i > 0) CHECK(out.events[i - 1].time <= e.time);
      // A moved event landed exactly on some boundary.
      if (e.time != *e.source_time)
        CHECK(std::count(bnd.begin(), bnd.end(), e.time) > 0);
    }

    // Snapping is idempotent: corrected times re-snap onto themselves.
    const EventList again =
        fusion::snap_vops(out, boundaries, {});
    REQUIRE(again.size() == out.size());
    for (std::size_t i = 0; i < again.size(); ++i)
      CHECK(again.events[i].time == out.events[i].time);
  }
}

TEST_CASE("two-stage detection composes its published stages") {
  const auto r = vopkit::synth::synthesize(
      vopkit::synth::random_utterance(12), 16000);
  const auto full = fusion::analyze(r.signal, {}, {}, {});
  CHECK(full.vops.kind == EventKind::vop_corrected);

  const EventList redone =
      fusion::snap_vops(full.stage1.vops, full.stage2.boundaries, {});
  REQUIRE(full.vops.size() == redone.size());
  for (std::size_t i = 0; i < redone.size(); ++i)
    CHECK(full.vops.events[i].time == redone.events[i].time);

  const EventList direct = fusion::detect_vops(r.signal, {}, {}, {});
  REQUIRE(direct.size() == full.vops.size());
  for (std::size_t i = 0; i < direct.size(); ++i) {
    CHECK(direct.events[i].time == full.vops.events[i].time);
    REQUIRE(direct.events[i].source_time.has_value());
    CHECK(direct.events[i].time <= *direct.events[i].source_time + 1e-12);
  }
}
