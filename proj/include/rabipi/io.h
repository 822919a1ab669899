// Copyright 2026 The rabipi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RABIPI_IO_H
#define RABIPI_IO_H

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rabipi/estimate.h"
#include "rabipi/model.h"
#include "rabipi/montecarlo.h"
#include "rabipi/screen.h"
#include "rabipi/simulate.h"

namespace rabipi {

/// Malformed CSV input; line() is 1-based (0 when not tied to a line).
class CsvError : public std::runtime_error {
  public:
    CsvError(std::size_t line, const std::string &message);
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

/// Parses
///
///   # label: q1        (optional)
///   t,shots,ones
///   0,8192,12
///   ...
///
/// Other lines starting with '#' are ignored. Without a label line the
/// dataset is labelled `fallback_label`.
Dataset parse_csv(std::string_view text, std::string fallback_label = {});

/// Times use the shortest decimal that reads back to the same double.
std::string write_csv(const Dataset &ds);

Dataset read_csv_file(const std::string &path);
void write_text_file(const std::string &path, std::string_view text);

/// Standalone SVG: one <circle class="point"> per record, a 200-point
/// <polyline class="model"> when a model is given, and a 0.5 guide plus two
/// <line class="crossing"> markers when a result is given.
std::string render_svg(const Dataset &ds, const std::optional<NoiseModeld> &model,
                       const std::optional<EstimateResult> &result);

struct QubitReport {
    std::string label;
    std::size_t records = 0;
    std::int64_t shots = 0;
    ScreenVerdict verdict;
    std::optional<EstimateResult> estimate;
    std::string error;
};

struct ReportDocument {
    std::vector<QubitReport> qubits;
    std::optional<McSummary> mc;
    std::optional<McConfig> mc_config;
    std::optional<AggregateReport> aggregate;
};

std::string format_estimate(const EstimateResult &r);
std::string format_mc_summary(const McSummary &s);
std::string format_report(const ReportDocument &doc);

}  // namespace rabipi

#endif  // RABIPI_IO_H
