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

#include "vopkit/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace vopkit::eval {

namespace {

constexpr double kTolEps = 1e-12;

void ensure_sorted(const std::vector<double>& times, const char* what) {
  for (std::size_t i = 1; i < times.size(); ++i)
    if (times[i] < times[i - 1])
      throw std::invalid_argument(std::string("match_events: ") + what +
                                  " not sorted");
}

// Runs fn(i) for i in [0, count) on up to thread_count threads.
void parallel_for(std::size_t count, int thread_count,
                  const std::function<void(std::size_t)>& fn) {
  if (thread_count <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  const int workers =
      std::min<int>(thread_count, static_cast<int>(count));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace

MatchResult match_events(const EventList& actual, const EventList& detected,
                         double tolerance_s) {
  if (!(tolerance_s > 0.0))
    throw std::invalid_argument("match_events: tolerance must be positive");
  const std::vector<double> a = actual.times();
  const std::vector<double> d = detected.times();
  ensure_sorted(a, "actual");
  ensure_sorted(d, "detected");

  const std::size_t n = a.size();
  const std::size_t m = d.size();

  // Lexicographic DP: maximize pair count, then minimize total deviation.
  // Sorted inputs admit an optimal non-crossing pairing, so a sequence
  // alignment suffices.
  struct Cell {
    int count = 0;
    double cost = 0.0;
    signed char move = 0;  // 0 start, 1 skip actual, 2 skip detected, 3 pair
  };
  std::vector<Cell> table((n + 1) * (m + 1));
  auto at = [&](std::size_t i, std::size_t j) -> Cell& {
    return table[i * (m + 1) + j];
  };
  auto better = [](int c1, double w1, int c2, double w2) {
    if (c1 != c2) return c1 > c2;
    return w1 < w2 - kTolEps;
  };

  // Skip moves are tried before the pair move so that exact deviation ties
  // resolve toward pairing the earliest events of both lists.
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= m; ++j) {
      if (i == 0 && j == 0) continue;
      Cell best;
      best.count = -1;
      if (i > 0) {
        const Cell& prev = at(i - 1, j);
        best = Cell{prev.count, prev.cost, 1};
      }
      if (j > 0) {
        const Cell& prev = at(i, j - 1);
        if (best.count < 0 ||
            better(prev.count, prev.cost, best.count, best.cost))
          best = Cell{prev.count, prev.cost, 2};
      }
      if (i > 0 && j > 0) {
        const double dev = std::abs(a[i - 1] - d[j - 1]);
        if (dev <= tolerance_s + kTolEps) {
          const Cell& prev = at(i - 1, j - 1);
          if (better(prev.count + 1, prev.cost + dev, best.count, best.cost))
            best = Cell{prev.count + 1, prev.cost + dev, 3};
        }
      }
      at(i, j) = best;
    }
  }

  MatchResult out;
  out.tolerance = tolerance_s;
  std::vector<bool> a_used(n, false), d_used(m, false);
  {
    std::size_t i = n, j = m;
    while (i > 0 || j > 0) {
      const Cell& cell = at(i, j);
      if (cell.move == 3) {
        out.pairs.emplace_back(a[i - 1], d[j - 1]);
        a_used[i - 1] = true;
        d_used[j - 1] = true;
        --i;
        --j;
      } else if (cell.move == 2) {
        --j;
      } else {
        --i;
      }
    }
  }
  std::reverse(out.pairs.begin(), out.pairs.end());
  for (std::size_t i = 0; i < n; ++i)
    if (!a_used[i]) out.misses.push_back(a[i]);
  for (std::size_t j = 0; j < m; ++j)
    if (!d_used[j]) out.spurious.push_back(d[j]);
  return out;
}

EvalReport compute_report(const std::vector<UtterancePair>& utterances,
                          const std::vector<int>& tolerances_ms) {
  if (utterances.empty())
    throw std::invalid_argument("compute_report: empty corpus");
  if (tolerances_ms.empty())
    throw std::invalid_argument("compute_report: no tolerances");
  std::vector<int> tols = tolerances_ms;
  std::sort(tols.begin(), tols.end());
  if (tols.front() <= 0)
    throw std::invalid_argument("compute_report: tolerances must be positive");

  EvalReport report;
  report.utterance_count = utterances.size();
  for (const UtterancePair& u : utterances) {
    report.actual_events += u.actual.size();
    report.detected_events += u.detected.size();
  }
  if (report.actual_events == 0)
    throw std::invalid_argument("compute_report: corpus has no reference events");

  const int widest = tols.back();
  double deviation_sum = 0.0;
  std::size_t widest_pairs = 0;
  std::size_t widest_spurious = 0;
  for (int tol : tols) {
    std::size_t matched = 0;
    for (const UtterancePair& u : utterances) {
      const MatchResult match =
          match_events(u.actual, u.detected, tol / 1000.0);
      matched += match.pairs.size();
      if (tol == widest) {
        widest_pairs += match.pairs.size();
        widest_spurious += match.spurious.size();
        for (const auto& [at, dt] : match.pairs)
          deviation_sum += std::abs(at - dt);
      }
    }
    report.ir_at[tol] =
        100.0 * static_cast<double>(matched) / report.actual_events;
  }
  report.avg_deviation_ms =
      widest_pairs > 0 ? 1000.0 * deviation_sum / widest_pairs : 0.0;
  report.missed_rate = 100.0 - report.ir_at[widest];
  report.spurious_rate =
      100.0 * static_cast<double>(widest_spurious) / report.actual_events;
  return report;
}

std::vector<std::pair<std::string, EvalReport>> evaluate_detectors(
    const std::vector<LabeledUtterance>& corpus,
    const std::vector<NamedDetector>& detectors,
    const std::vector<int>& tolerances_ms, int threads) {
  if (corpus.empty())
    throw std::invalid_argument("evaluate_detectors: empty corpus");
  std::vector<std::pair<std::string, EvalReport>> out;
  out.reserve(detectors.size());
  for (const NamedDetector& det : detectors) {
    std::vector<UtterancePair> pairs(corpus.size());
    parallel_for(corpus.size(), threads, [&](std::size_t i) {
      pairs[i].actual = corpus[i].actual;
      pairs[i].detected = det.fn(corpus[i].signal);
    });
    out.emplace_back(det.name, compute_report(pairs, tolerances_ms));
  }
  return out;
}

std::map<std::string, std::vector<std::pair<std::string, EvalReport>>>
evaluate_by_mode(const std::vector<LabeledUtterance>& corpus,
                 const std::vector<NamedDetector>& detectors,
                 const std::vector<int>& tolerances_ms, int threads) {
  std::map<std::string, std::vector<LabeledUtterance>> groups;
  for (const LabeledUtterance& u : corpus) {
    const std::string tag = u.mode_tag.empty() ? "all" : u.mode_tag;
    groups[tag].push_back(u);
  }
  std::map<std::string, std::vector<std::pair<std::string, EvalReport>>> out;
  for (const auto& [tag, group] : groups)
    out[tag] = evaluate_detectors(group, detectors, tolerances_ms, threads);
  return out;
}

std::vector<SweepRow> threshold_sweep(
    const std::vector<LabeledUtterance>& corpus,
    const cwt::WaveletConfig& base_config, std::span<const double> fractions,
    double tolerance_s, int threads) {
  if (corpus.empty())
    throw std::invalid_argument("threshold_sweep: empty corpus");
  if (fractions.empty())
    throw std::invalid_argument("threshold_sweep: no fractions");
  std::vector<SweepRow> out;
  out.reserve(fractions.size());
  for (double fraction : fractions) {
    cwt::WaveletConfig config = base_config;
    config.threshold_fraction = fraction;
    std::vector<UtterancePair> pairs(corpus.size());
    parallel_for(corpus.size(), threads, [&](std::size_t i) {
      pairs[i].actual = corpus[i].actual;
      pairs[i].detected = cwt::detect_vops_cwt(corpus[i].signal, config);
    });
    const int tol_ms = static_cast<int>(std::lround(tolerance_s * 1000.0));
    const EvalReport report = compute_report(pairs, {tol_ms});
    out.push_back(SweepRow{fraction, report.missed_rate,
                           report.spurious_rate});
  }
  return out;
}

}  // namespace vopkit::eval
