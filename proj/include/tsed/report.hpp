// Copyright 2026 The TSED Authors. All Rights Reserved.
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

//
// CSV and JSON encodings of harness results.

#ifndef TSED_REPORT_HPP
#define TSED_REPORT_HPP

#include "tsed/harness.hpp"
#include "tsed/llm.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace tsed {

/// Rounds half away from zero to four decimals, as in summary tables.
double round4(double X);

/// Milliseconds with four significant digits.
double fourSignificant(double X);

/// Per-sample rows: id, language, one column per selected metric,
/// execution_match, parse-error flags, then `<metric>_ms` timings.
/// Absent values are empty fields. Scores keep full precision.
void writeVectorsCsv(std::ostream &Out, const std::vector<MetricVector> &Vectors,
                     const MetricSelection &Metrics);

/// Reads a CSV written by writeVectorsCsv (or any CSV with an `id` column
/// and metric columns). Unknown columns are ignored.
std::vector<MetricVector> readVectorsCsv(std::istream &In,
                                         const std::string &SourceName);
std::vector<MetricVector> readVectorsCsvFile(const std::string &Path);

/// Per-language and overall means (4 decimals), counts and failures.
nlohmann::json summaryJson(const EvaluationResult &Result,
                           const MetricSelection &Metrics);

nlohmann::json correlationJson(const CorrelationMatrix &M);
nlohmann::json thresholdJson(const ThresholdResult &R);
nlohmann::json timingJson(const TimingReport &R);
nlohmann::json stabilityJson(const StabilityReport &R);

/// `weight,r` rows; an undefined correlation leaves r empty and fills the
/// trailing error column.
void writeSweepCsv(std::ostream &Out, const std::vector<SweepPoint> &Points);

} // namespace tsed

#endif // TSED_REPORT_HPP
