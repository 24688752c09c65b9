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
// Batch evaluation: dataset ingestion, per-sample metric vectors,
// correlation analysis, execution-match thresholding, weight sweeps and
// timing.

#ifndef TSED_HARNESS_HPP
#define TSED_HARNESS_HPP

#include "tsed/baselines.hpp"
#include "tsed/edit_distance.hpp"
#include "tsed/error.hpp"
#include "tsed/parser.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tsed {

class ChatTransport;

struct Sample {
  std::string id;
  LanguageId language;
  std::string prediction;
  std::string reference;
  std::optional<int> execution_match; ///< 0 or 1 when present
};

/// Reads JSON Lines: {"id", "language", "prediction", "reference",
/// "execution_match"?}. Blank lines are skipped. Every offending line is
/// reported in one SchemaError.
std::vector<Sample> loadDataset(const std::string &Path);
std::vector<Sample> parseDataset(std::istream &In, const std::string &SourceName);

enum class Metric { Tsed, Bleu, Jaccard, Llm };

std::string_view metricName(Metric M);

struct MetricSelection {
  bool tsed = true;
  bool bleu = true;
  bool jaccard = true;
  bool llm = false;

  /// Comma-separated metric names, e.g. "tsed,jaccard". Throws
  /// InvalidArgumentError on unknown names.
  static MetricSelection parse(std::string_view List);
  bool has(Metric M) const;
  /// Selected metrics in canonical order.
  std::vector<Metric> metrics() const;
};

struct MetricVector {
  std::string sample_id;
  std::string language;
  std::optional<double> tsed;
  std::optional<double> bleu;
  std::optional<double> jaccard;
  std::optional<double> llm;
  std::optional<int> execution_match;
  bool pred_parse_errors = false;
  bool ref_parse_errors = false;
  /// Wall-clock milliseconds per computed metric, keyed by metric name.
  std::map<std::string, double> timings_ms;
  /// "metric: message" for every metric that failed on this sample.
  std::vector<std::string> errors;
};

/// Metric value by column name: tsed, bleu, jaccard, llm or execution.
std::optional<double> metricValue(const MetricVector &V, std::string_view Name);

struct EvaluationOptions {
  MetricSelection metrics;
  CostConfig costs;
  BleuConfig bleu;
  LabelOptions labels;
  ChatTransport *transport = nullptr; ///< required when metrics.llm is set
  unsigned jobs = 1;
};

struct EvaluationResult {
  std::vector<MetricVector> vectors; ///< same order as the samples
  std::vector<std::string> failures; ///< "id: metric: message"
};

/// Computes the selected metrics for every sample on `jobs` worker
/// threads. Per-sample failures are collected rather than thrown.
EvaluationResult evaluate(const std::vector<Sample> &Samples,
                          const EvaluationOptions &Options);

class ConstantInputError : public Error {
public:
  using Error::Error;
};

class InsufficientDataError : public Error {
public:
  using Error::Error;
};

class DegenerateLabelsError : public Error {
public:
  using Error::Error;
};

/// Sample Pearson correlation. Throws InvalidArgumentError on length
/// mismatch or fewer than two points, ConstantInputError when either side
/// has zero variance.
double pearson(std::span<const double> Xs, std::span<const double> Ys);

struct CorrelationMatrix {
  std::vector<std::string> metric_names;
  /// Symmetric. Pairs involving a constant column hold NaN.
  std::vector<std::vector<double>> r;
};

/// Pairwise-complete Pearson matrix over the named columns (see
/// metricValue). Throws InsufficientDataError naming the first pair with
/// fewer than two complete rows.
CorrelationMatrix correlationMatrix(const std::vector<MetricVector> &Vectors,
                                    const std::vector<std::string> &Names);

struct ThresholdResult {
  double threshold = 0.0;
  double f1 = 0.0;
  double accuracy = 0.0;
  std::size_t positives_predicted = 0;
};

/// Scores F1 and accuracy of predicting 1 exactly when score > Threshold.
ThresholdResult applyThreshold(std::span<const double> Scores,
                               std::span<const int> Labels, double Threshold);

/// Tries T = 0, step, 2 step, ..., 1 and keeps the best F1; ties go to the
/// higher accuracy, then to the smaller T. Needs both label values present
/// (DegenerateLabelsError) and 0 < step <= 0.5.
ThresholdResult optimizeThreshold(std::span<const double> Scores,
                                  std::span<const int> Labels,
                                  double Step = 0.01);

enum class WeightKind { Delete, Insert, Rename };

WeightKind parseWeightKind(std::string_view Name);

struct SweepPoint {
  double weight = 0.0;
  std::optional<double> r; ///< absent when the correlation is undefined
  std::string error;
};

/// For every grid value, recomputes TSED with that one weight changed (the
/// others stay at 1.0) and correlates the scores with `Target`. Samples are
/// parsed once. Correlation failures are reported per grid point.
std::vector<SweepPoint> weightSweep(const std::vector<Sample> &Samples,
                                    WeightKind Vary,
                                    std::span<const double> Grid,
                                    std::span<const double> Target,
                                    LabelOptions Labels = {}, unsigned Jobs = 1);

struct TimingCell {
  double mean_ms = 0.0;
  std::size_t measurements = 0;
};

/// metric name -> language (plus "all") -> mean time.
using TimingReport = std::map<std::string, std::map<std::string, TimingCell>>;

/// Runs every selected metric `Repeats` times per sample on the calling
/// thread. Each measurement covers the metric end to end from source text
/// (parsing for TSED, tokenizing for BLEU and Jaccard). The LLM metric is
/// timed only when `LiveLlm` is set and a transport is given.
TimingReport timingBenchmark(const std::vector<Sample> &Samples,
                             const EvaluationOptions &Options, int Repeats,
                             bool LiveLlm = false);

} // namespace tsed

#endif // TSED_HARNESS_HPP
