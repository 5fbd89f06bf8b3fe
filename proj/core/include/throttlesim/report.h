// Copyright 2026 The throttlesim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef THROTTLESIM_REPORT_H_
#define THROTTLESIM_REPORT_H_

#include <iosfwd>
#include <span>
#include <string>

#include "throttlesim/harness.h"

namespace throttlesim {

// Column names of the report CSV, comma-separated, no trailing newline.
std::string CsvHeader();

// One row per cell. Doubles use shortest round-trip formatting; NaN (a
// benchmark that does not apply) is written as an empty field.
void WriteCsvRow(std::ostream& os, const CellResult& cell);
void WriteCsv(std::ostream& os, std::span<const CellResult> cells);

// Human-readable slope fits, one line per (strategy, mode).
void WriteSlopes(std::ostream& os, const Report& report);

// Minimal log-log line chart of mean regret against T, one polyline per
// (strategy, mode). Cells with nonpositive regret are skipped.
void WriteSvg(std::ostream& os, const Report& report);

// Writes the CSV (to `config.output`, or `fallback` when empty) and the
// optional SVG and slope files. Throws std::runtime_error on I/O failure.
void WriteReportFiles(const ExperimentConfig& config, const Report& report,
                      std::ostream& fallback);

}  // namespace throttlesim

#endif  // THROTTLESIM_REPORT_H_
