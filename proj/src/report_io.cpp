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

#include "vopkit/report_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace vopkit::io {

namespace {

using nlohmann::json;

std::string fmt_time(double seconds) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", seconds);
  return buf;
}

std::string fmt_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string fmt_metric(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::vector<std::string> header_cells(bool with_mode,
                                      const std::vector<int>& tolerances_ms) {
  std::vector<std::string> cells;
  if (with_mode) cells.push_back("mode");
  cells.push_back("method");
  for (int tol : tolerances_ms) cells.push_back("IR@" + std::to_string(tol));
  cells.push_back("AD_ms");
  cells.push_back("MR");
  cells.push_back("SR");
  return cells;
}

std::vector<std::string> row_cells(const ReportRow& row, bool with_mode,
                                   const std::vector<int>& tolerances_ms) {
  std::vector<std::string> cells;
  if (with_mode) cells.push_back(row.mode.empty() ? "all" : row.mode);
  cells.push_back(row.method);
  for (int tol : tolerances_ms) {
    const auto it = row.report.ir_at.find(tol);
    cells.push_back(it == row.report.ir_at.end() ? "" : fmt_metric(it->second));
  }
  cells.push_back(fmt_metric(row.report.avg_deviation_ms));
  cells.push_back(fmt_metric(row.report.missed_rate));
  cells.push_back(fmt_metric(row.report.spurious_rate));
  return cells;
}

bool any_mode(const std::vector<ReportRow>& rows) {
  for (const ReportRow& row : rows)
    if (!row.mode.empty()) return true;
  return false;
}

}  // namespace

Format format_from_string(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  if (name == "table") return Format::table;
  throw std::invalid_argument("unknown format: " + name);
}

std::string contour_csv(const Contour& contour) {
  std::ostringstream out;
  out << "time_s,value\n";
  for (std::size_t i = 0; i < contour.values.size(); ++i)
    out << fmt_time(contour.time_at(i)) << ',' << fmt_value(contour.values[i])
        << '\n';
  return out.str();
}

std::string events_csv(const std::vector<EventList>& lists) {
  std::ostringstream out;
  out << "time_s,kind,source_time_s\n";
  for (const EventList& list : lists)
    for (const Event& e : list.events) {
      out << fmt_time(e.time) << ',' << to_string(list.kind) << ',';
      if (e.source_time) out << fmt_time(*e.source_time);
      out << '\n';
    }
  return out.str();
}

std::string events_json(const std::vector<EventList>& lists) {
  json root = json::array();
  for (const EventList& list : lists) {
    json entry;
    entry["kind"] = to_string(list.kind);
    json events = json::array();
    for (const Event& e : list.events) {
      json ev;
      ev["time_s"] = e.time;
      if (e.source_time)
        ev["source_time_s"] = *e.source_time;
      else
        ev["source_time_s"] = nullptr;
      events.push_back(std::move(ev));
    }
    entry["events"] = std::move(events);
    root.push_back(std::move(entry));
  }
  return root.dump(2) + "\n";
}

std::string events_text(const EventList& list, Format format) {
  switch (format) {
    case Format::csv:
      return events_csv({list});
    case Format::json:
      return events_json({list});
    case Format::table: {
      std::ostringstream out;
      out << "time_s      kind            source_time_s\n";
      for (const Event& e : list.events) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "%-11.6f %-15s %s\n", e.time,
                      to_string(list.kind),
                      e.source_time ? fmt_time(*e.source_time).c_str() : "-");
        out << buf;
      }
      return out.str();
    }
  }
  throw std::invalid_argument("unknown format");
}

std::string report_csv(const std::vector<ReportRow>& rows,
                       const std::vector<int>& tolerances_ms) {
  const bool with_mode = any_mode(rows);
  std::ostringstream out;
  const auto header = header_cells(with_mode, tolerances_ms);
  for (std::size_t i = 0; i < header.size(); ++i)
    out << header[i] << (i + 1 < header.size() ? "," : "");
  out << '\n';
  for (const ReportRow& row : rows) {
    const auto cells = row_cells(row, with_mode, tolerances_ms);
    for (std::size_t i = 0; i < cells.size(); ++i)
      out << cells[i] << (i + 1 < cells.size() ? "," : "");
    out << '\n';
  }
  return out.str();
}

std::string report_json(const std::vector<ReportRow>& rows,
                        const std::vector<int>& tolerances_ms) {
  json root;
  root["pooling"] = "corpus";
  root["tolerances_ms"] = tolerances_ms;
  json jrows = json::array();
  for (const ReportRow& row : rows) {
    json r;
    if (!row.mode.empty()) r["mode"] = row.mode;
    r["method"] = row.method;
    json ir;
    for (const auto& [tol, value] : row.report.ir_at)
      ir[std::to_string(tol)] = value;
    r["ir_at"] = std::move(ir);
    r["ad_ms"] = row.report.avg_deviation_ms;
    r["mr"] = row.report.missed_rate;
    r["sr"] = row.report.spurious_rate;
    r["utterances"] = row.report.utterance_count;
    r["actual_events"] = row.report.actual_events;
    r["detected_events"] = row.report.detected_events;
    jrows.push_back(std::move(r));
  }
  root["rows"] = std::move(jrows);
  return root.dump(2) + "\n";
}

std::string report_table(const std::vector<ReportRow>& rows,
                         const std::vector<int>& tolerances_ms) {
  const bool with_mode = any_mode(rows);
  std::vector<std::vector<std::string>> grid;
  grid.push_back(header_cells(with_mode, tolerances_ms));
  for (const ReportRow& row : rows)
    grid.push_back(row_cells(row, with_mode, tolerances_ms));
  std::vector<std::size_t> width(grid.front().size(), 0);
  for (const auto& row : grid)
    for (std::size_t i = 0; i < row.size(); ++i)
      width[i] = std::max(width[i], row[i].size());
  std::ostringstream out;
  for (const auto& row : grid) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << row[i];
      if (i + 1 < row.size())
        out << std::string(width[i] - row[i].size() + 2, ' ');
    }
    out << '\n';
  }
  return out.str();
}

std::string report_text(const std::vector<ReportRow>& rows,
                        const std::vector<int>& tolerances_ms, Format format) {
  switch (format) {
    case Format::csv:
      return report_csv(rows, tolerances_ms);
    case Format::json:
      return report_json(rows, tolerances_ms);
    case Format::table:
      return report_table(rows, tolerances_ms);
  }
  throw std::invalid_argument("unknown format");
}

std::string sweep_csv(const std::vector<eval::SweepRow>& rows) {
  std::ostringstream out;
  out << "fraction,MR,SR\n";
  for (const auto& row : rows)
    out << fmt_value(row.fraction) << ',' << fmt_metric(row.missed_rate)
        << ',' << fmt_metric(row.spurious_rate) << '\n';
  return out.str();
}

std::string sweep_json(const std::vector<eval::SweepRow>& rows) {
  json root = json::array();
  for (const auto& row : rows) {
    json r;
    r["fraction"] = row.fraction;
    r["mr"] = row.missed_rate;
    r["sr"] = row.spurious_rate;
    root.push_back(std::move(r));
  }
  return root.dump(2) + "\n";
}

std::string sweep_table(const std::vector<eval::SweepRow>& rows) {
  std::ostringstream out;
  out << "fraction  MR      SR\n";
  for (const auto& row : rows) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%-9.2f %-7.2f %.2f\n", row.fraction,
                  row.missed_rate, row.spurious_rate);
    out << buf;
  }
  return out.str();
}

std::string sweep_text(const std::vector<eval::SweepRow>& rows,
                       Format format) {
  switch (format) {
    case Format::csv:
      return sweep_csv(rows);
    case Format::json:
      return sweep_json(rows);
    case Format::table:
      return sweep_table(rows);
  }
  throw std::invalid_argument("unknown format");
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  out << body;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace vopkit::io
