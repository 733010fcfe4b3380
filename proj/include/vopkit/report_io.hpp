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

#ifndef VOPKIT_REPORT_IO_HPP
#define VOPKIT_REPORT_IO_HPP

#include <string>
#include <vector>

#include "vopkit/evaluation.hpp"
#include "vopkit/types.hpp"

namespace vopkit::io {

enum class Format { csv, json, table };

Format format_from_string(const std::string& name);

// "time_s,value" rows, six decimal places on time.
std::string contour_csv(const Contour& contour);

// "time_s,kind,source_time_s" rows; source_time_s is empty when absent.
std::string events_csv(const std::vector<EventList>& lists);
std::string events_json(const std::vector<EventList>& lists);
std::string events_text(const EventList& list, Format format);

struct ReportRow {
  std::string mode;  // empty when the report is not mode-split
  std::string method;
  eval::EvalReport report;
};

// Columns: [mode,] method, IR@<t> per tolerance, AD_ms, MR, SR.
std::string report_csv(const std::vector<ReportRow>& rows,
                       const std::vector<int>& tolerances_ms);
std::string report_json(const std::vector<ReportRow>& rows,
                        const std::vector<int>& tolerances_ms);
std::string report_table(const std::vector<ReportRow>& rows,
                         const std::vector<int>& tolerances_ms);
std::string report_text(const std::vector<ReportRow>& rows,
                        const std::vector<int>& tolerances_ms, Format format);

std::string sweep_csv(const std::vector<eval::SweepRow>& rows);
std::string sweep_json(const std::vector<eval::SweepRow>& rows);
std::string sweep_table(const std::vector<eval::SweepRow>& rows);
std::string sweep_text(const std::vector<eval::SweepRow>& rows, Format format);

void write_text_file(const std::string& path, const std::string& body);

}  // namespace vopkit::io

#endif  // VOPKIT_REPORT_IO_HPP
