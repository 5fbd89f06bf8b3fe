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

#include "throttlesim/report.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "text_util.h"

namespace throttlesim {
namespace {

std::string Num(double x) {
  return std::isnan(x) ? std::string() : internal::FormatDouble(x);
}

// CSV-quotes a field only when it needs it.
std::string Field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::ofstream OpenOutput(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path);
  return os;
}

}  // namespace

std::string CsvHeader() {
  return "experiment_id,instance,strategy,info_mode,T,replications,"
         "mean_reward,se_reward,opt_fluid,opt_dlp,mean_hindsight,mean_regret,"
         "se_regret,mean_gap_mu,min_entering_ratio,mean_stop_round";
}

void WriteCsvRow(std::ostream& os, const CellResult& c) {
  os << Field(c.experiment_id) << ',' << Field(c.instance) << ','
     << Field(c.strategy) << ',' << InfoModeName(c.info_mode) << ','
     << c.horizon << ',' << c.replications << ',' << Num(c.mean_reward) << ','
     << Num(c.se_reward) << ',' << Num(c.opt_fluid) << ',' << Num(c.opt_dlp)
     << ',' << Num(c.mean_hindsight) << ',' << Num(c.mean_regret) << ','
     << Num(c.se_regret) << ',' << Num(c.mean_gap_mu) << ','
     << Num(c.min_entering_ratio) << ',' << Num(c.mean_stop_round) << '\n';
}

void WriteCsv(std::ostream& os, std::span<const CellResult> cells) {
  os << CsvHeader() << '\n';
  for (const CellResult& c : cells) WriteCsvRow(os, c);
}

void WriteSlopes(std::ostream& os, const Report& report) {
  for (const auto& [key, fit] : report.slopes) {
    os << "slope " << key.first << ' ' << key.second << ": "
       << internal::FormatDouble(fit.slope) << " [95% CI "
       << internal::FormatDouble(fit.ci_low) << ", "
       << internal::FormatDouble(fit.ci_high) << "] from " << fit.points_used
       << " points";
    if (fit.points_excluded > 0) os << " (" << fit.points_excluded << " excluded)";
    os << '\n';
  }
}

void WriteSvg(std::ostream& os, const Report& report) {
  constexpr double kWidth = 640, kHeight = 420, kMargin = 60;
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const CellResult& c : report.cells) {
    if (!(c.mean_regret > 0.0)) continue;
    const double x = std::log10(static_cast<double>(c.horizon));
    const double y = std::log10(c.mean_regret);
    series[c.strategy + " (" + std::string(InfoModeName(c.info_mode)) + ")"]
        .push_back({x, y});
    x_lo = std::min(x_lo, x);
    x_hi = std::max(x_hi, x);
    y_lo = std::min(y_lo, y);
    y_hi = std::max(y_hi, y);
  }
  if (x_hi <= x_lo) x_hi = x_lo + 1.0;
  if (y_hi <= y_lo) y_hi = y_lo + 1.0;
  const auto px = [&](double x) {
    return kMargin + (x - x_lo) / (x_hi - x_lo) * (kWidth - 2 * kMargin);
  };
  const auto py = [&](double y) {
    return kHeight - kMargin - (y - y_lo) / (y_hi - y_lo) * (kHeight - 2 * kMargin);
  };
  static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                            "#9467bd", "#ff7f0e", "#8c564b"};
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
     << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\" "
     << "font-size=\"12\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin
     << "\" x2=\"" << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin
     << "\" stroke=\"black\"/>\n"
     << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\""
     << kMargin << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n"
     << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 20
     << "\" text-anchor=\"middle\">log10 T</text>\n"
     << "<text x=\"15\" y=\"" << kHeight / 2
     << "\" transform=\"rotate(-90 15 " << kHeight / 2
     << ")\" text-anchor=\"middle\">log10 mean regret</text>\n";
  std::size_t k = 0;
  for (const auto& [label, pts] : series) {
    const char* color = kColors[k % std::size(kColors)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" points=\"";
    for (const auto& [x, y] : pts) os << px(x) << ',' << py(y) << ' ';
    os << "\"/>\n";
    for (const auto& [x, y] : pts) {
      os << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y)
         << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    os << "<text x=\"" << kMargin + 10 << "\" y=\"" << kMargin + 15 * k
       << "\" fill=\"" << color << "\">" << label << "</text>\n";
    ++k;
  }
  os << "</svg>\n";
}

void WriteReportFiles(const ExperimentConfig& config, const Report& report,
                      std::ostream& fallback) {
  if (config.output.empty()) {
    WriteCsv(fallback, report.cells);
  } else {
    std::ofstream os = OpenOutput(config.output);
    WriteCsv(os, report.cells);
    if (!os) throw std::runtime_error("write failed: " + config.output);
  }
  if (!config.svg.empty()) {
    std::ofstream os = OpenOutput(config.svg);
    WriteSvg(os, report);
  }
  if (!config.slope_output.empty()) {
    std::ofstream os = OpenOutput(config.slope_output);
    WriteSlopes(os, report);
  }
}

}  // namespace throttlesim
