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


#include "tsed/harness.hpp"

#include "tsed/llm.hpp"
#include "tsed/tsed.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

namespace tsed {

namespace {

using Clock = std::chrono::steady_clock;

double elapsedMs(Clock::time_point Start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - Start).count();
}

// Runs Fn(index, worker) for every index on up to Jobs threads. The first
// exception escaping Fn is rethrown after all workers stop.
template <typename Fn>
void parallelFor(std::size_t Count, unsigned Jobs, Fn &&Body) {
  Jobs = std::max(1u, std::min<unsigned>(Jobs, static_cast<unsigned>(
                                                   std::max<std::size_t>(Count, 1))));
  std::atomic<std::size_t> Next{0};
  std::exception_ptr Failure;
  std::mutex FailureLock;
  auto Work = [&](unsigned Worker) {
    for (;;) {
      const std::size_t I = Next.fetch_add(1);
      if (I >= Count)
        return;
      try {
        Body(I, Worker);
      } catch (...) {
        std::lock_guard<std::mutex> Guard(FailureLock);
        if (!Failure)
          Failure = std::current_exception();
        Next.store(Count);
        return;
      }
    }
  };
  if (Jobs == 1) {
    Work(0);
  } else {
    std::vector<std::thread> Threads;
    for (unsigned W = 0; W < Jobs; ++W)
      Threads.emplace_back(Work, W);
    for (auto &T : Threads)
      T.join();
  }
  if (Failure)
    std::rethrow_exception(Failure);
}

std::optional<std::string> stringField(const nlohmann::json &Obj,
                                       const char *Key) {
  auto It = Obj.find(Key);
  if (It == Obj.end() || !It->is_string())
    return std::nullopt;
  return It->get<std::string>();
}

} // namespace

std::vector<Sample> parseDataset(std::istream &In, const std::string &Source) {
  std::vector<Sample> Out;
  std::vector<std::string> Problems;
  std::string Line;
  std::size_t LineNo = 0;
  while (std::getline(In, Line)) {
    ++LineNo;
    if (Line.find_first_not_of(" \t\r\n") == std::string::npos)
      continue;
    auto Complain = [&](const std::string &What) {
      Problems.push_back("line " + std::to_string(LineNo) + ": " + What);
    };
    nlohmann::json Obj;
    try {
      Obj = nlohmann::json::parse(Line);
    } catch (const nlohmann::json::exception &) {
      Complain("not valid JSON");
      continue;
    }
    if (!Obj.is_object()) {
      Complain("expected a JSON object");
      continue;
    }
    bool Ok = true;
    std::optional<std::string> Fields[4];
    const char *Names[4] = {"id", "language", "prediction", "reference"};
    for (int K = 0; K < 4; ++K) {
      Fields[K] = stringField(Obj, Names[K]);
      if (!Fields[K]) {
        Complain(std::string("missing or non-string \"") + Names[K] + "\"");
        Ok = false;
      }
    }
    std::optional<int> Exec;
    if (auto It = Obj.find("execution_match");
        It != Obj.end() && !It->is_null()) {
      if (It->is_number_integer() &&
          (It->get<long long>() == 0 || It->get<long long>() == 1)) {
        Exec = static_cast<int>(It->get<long long>());
      } else {
        Complain("\"execution_match\" must be 0 or 1");
        Ok = false;
      }
    }
    if (!Ok)
      continue;
    try {
      Out.push_back(Sample{*Fields[0], LanguageId::lookup(*Fields[1]),
                           *Fields[2], *Fields[3], Exec});
    } catch (const UnknownLanguageError &E) {
      Complain(E.what());
    }
  }
  if (!Problems.empty()) {
    std::string Msg = Source + ": invalid dataset";
    for (const auto &P : Problems)
      Msg += "\n  " + P;
    throw SchemaError(Msg);
  }
  return Out;
}

std::vector<Sample> loadDataset(const std::string &Path) {
  std::ifstream In(Path);
  if (!In)
    throw IoError("cannot open dataset '" + Path + "'");
  return parseDataset(In, Path);
}

std::string_view metricName(Metric M) {
  switch (M) {
  case Metric::Tsed:
    return "tsed";
  case Metric::Bleu:
    return "bleu";
  case Metric::Jaccard:
    return "jaccard";
  case Metric::Llm:
    return "llm";
  }
  return "unknown";
}

MetricSelection MetricSelection::parse(std::string_view List) {
  MetricSelection S{false, false, false, false};
  std::size_t Start = 0;
  while (Start <= List.size()) {
    std::size_t End = List.find(',', Start);
    if (End == std::string_view::npos)
      End = List.size();
    std::string_view Name = List.substr(Start, End - Start);
    while (!Name.empty() && Name.front() == ' ')
      Name.remove_prefix(1);
    while (!Name.empty() && Name.back() == ' ')
      Name.remove_suffix(1);
    Start = End + 1;
    if (Name.empty())
      continue;
    if (Name == "tsed")
      S.tsed = true;
    else if (Name == "bleu")
      S.bleu = true;
    else if (Name == "jaccard")
      S.jaccard = true;
    else if (Name == "llm")
      S.llm = true;
    else
      throw InvalidArgumentError("unknown metric '" + std::string(Name) + "'");
  }
  if (S.metrics().empty())
    throw InvalidArgumentError("no metrics selected");
  return S;
}

bool MetricSelection::has(Metric M) const {
  switch (M) {
  case Metric::Tsed:
    return tsed;
  case Metric::Bleu:
    return bleu;
  case Metric::Jaccard:
    return jaccard;
  case Metric::Llm:
    return llm;
  }
  return false;
}

std::vector<Metric> MetricSelection::metrics() const {
  std::vector<Metric> Out;
  for (Metric M : {Metric::Tsed, Metric::Bleu, Metric::Jaccard, Metric::Llm})
    if (has(M))
      Out.push_back(M);
  return Out;
}

std::optional<double> metricValue(const MetricVector &V, std::string_view Name) {
  if (Name == "tsed")
    return V.tsed;
  if (Name == "bleu")
    return V.bleu;
  if (Name == "jaccard")
    return V.jaccard;
  if (Name == "llm")
    return V.llm;
  if (Name == "execution" || Name == "execution_match") {
    if (V.execution_match)
      return static_cast<double>(*V.execution_match);
    return std::nullopt;
  }
  throw InvalidArgumentError("unknown metric column '" + std::string(Name) + "'");
}

namespace {

// Computes one metric for one sample, storing value and time. Failures are
// recorded on the vector.
void computeMetric(Metric M, const Sample &S, const EvaluationOptions &Opt,
                   Parser &P, MetricVector &V) {
  const std::string Name(metricName(M));
  const auto Start = Clock::now();
  try {
    switch (M) {
    case Metric::Tsed: {
      auto Trees = P.parsePair(S.prediction, S.reference, S.language);
      TsedScore Score = tsedFromTrees(Trees.first, Trees.second, Opt.costs);
      V.tsed = Score.value;
      V.pred_parse_errors = Score.pred_parse_errors;
      V.ref_parse_errors = Score.ref_parse_errors;
      break;
    }
    case Metric::Bleu:
      V.bleu = bleu(tokenize(S.prediction), tokenize(S.reference), Opt.bleu);
      break;
    case Metric::Jaccard:
      V.jaccard = jaccard(tokenize(S.prediction), tokenize(S.reference));
      break;
    case Metric::Llm:
      if (!Opt.transport)
        throw InvalidArgumentError("llm metric needs a transport");
      V.llm = scorePair(S.language, S.prediction, S.reference, *Opt.transport)
                  .value;
      break;
    }
  } catch (const Error &E) {
    V.errors.push_back(Name + ": " + E.what());
    return;
  }
  V.timings_ms[Name] = elapsedMs(Start);
}

} // namespace

EvaluationResult evaluate(const std::vector<Sample> &Samples,
                          const EvaluationOptions &Options) {
  Options.costs.validate();
  Options.bleu.validate();
  if (Options.metrics.llm && !Options.transport)
    throw InvalidArgumentError("llm metric selected without a transport");

  EvaluationResult R;
  R.vectors.resize(Samples.size());
  const unsigned Jobs = std::max(1u, Options.jobs);
  std::vector<Parser> Parsers;
  for (unsigned W = 0; W < Jobs; ++W)
    Parsers.emplace_back(Options.labels);
  const auto Selected = Options.metrics.metrics();

  parallelFor(Samples.size(), Jobs, [&](std::size_t I, unsigned Worker) {
    const Sample &S = Samples[I];
    MetricVector &V = R.vectors[I];
    V.sample_id = S.id;
    V.language = S.language.name();
    V.execution_match = S.execution_match;
    for (Metric M : Selected)
      computeMetric(M, S, Options, Parsers[Worker], V);
  });

  for (const auto &V : R.vectors)
    for (const auto &E : V.errors)
      R.failures.push_back(V.sample_id + ": " + E);
  return R;
}

double pearson(std::span<const double> Xs, std::span<const double> Ys) {
  if (Xs.size() != Ys.size())
    throw InvalidArgumentError("pearson: length mismatch (" +
                               std::to_string(Xs.size()) + " vs " +
                               std::to_string(Ys.size()) + ")");
  if (Xs.size() < 2)
    throw InvalidArgumentError("pearson: need at least two points");
  const double N = static_cast<double>(Xs.size());
  double MeanX = 0, MeanY = 0;
  for (std::size_t I = 0; I < Xs.size(); ++I) {
    MeanX += Xs[I];
    MeanY += Ys[I];
  }
  MeanX /= N;
  MeanY /= N;
  double Sxx = 0, Syy = 0, Sxy = 0;
  for (std::size_t I = 0; I < Xs.size(); ++I) {
    const double Dx = Xs[I] - MeanX, Dy = Ys[I] - MeanY;
    Sxx += Dx * Dx;
    Syy += Dy * Dy;
    Sxy += Dx * Dy;
  }
  if (Sxx == 0.0 || Syy == 0.0)
    throw ConstantInputError("pearson: constant input");
  return std::clamp(Sxy / std::sqrt(Sxx * Syy), -1.0, 1.0);
}

CorrelationMatrix correlationMatrix(const std::vector<MetricVector> &Vectors,
                                    const std::vector<std::string> &Names) {
  CorrelationMatrix M;
  M.metric_names = Names;
  const std::size_t K = Names.size();
  M.r.assign(K, std::vector<double>(K, std::numeric_limits<double>::quiet_NaN()));
  std::vector<double> Xs, Ys;
  for (std::size_t I = 0; I < K; ++I) {
    for (std::size_t J = I; J < K; ++J) {
      Xs.clear();
      Ys.clear();
      for (const auto &V : Vectors) {
        auto X = metricValue(V, Names[I]);
        auto Y = metricValue(V, Names[J]);
        if (X && Y) {
          Xs.push_back(*X);
          Ys.push_back(*Y);
        }
      }
      if (Xs.size() < 2)
        throw InsufficientDataError("fewer than two complete rows for (" +
                                    Names[I] + ", " + Names[J] + ")");
      double R = std::numeric_limits<double>::quiet_NaN();
      try {
        R = pearson(Xs, Ys);
      } catch (const ConstantInputError &) {
      }
      M.r[I][J] = M.r[J][I] = R;
    }
  }
  return M;
}

ThresholdResult applyThreshold(std::span<const double> Scores,
                               std::span<const int> Labels, double Threshold) {
  if (Scores.size() != Labels.size() || Scores.empty())
    throw InvalidArgumentError("threshold: scores and labels must be non-empty "
                               "and aligned");
  std::size_t TP = 0, FP = 0, FN = 0, Correct = 0;
  for (std::size_t I = 0; I < Scores.size(); ++I) {
    const bool Predicted = Scores[I] > Threshold;
    const bool Actual = Labels[I] == 1;
    TP += Predicted && Actual;
    FP += Predicted && !Actual;
    FN += !Predicted && Actual;
    Correct += Predicted == Actual;
  }
  ThresholdResult R;
  R.threshold = Threshold;
  const double Precision =
      TP + FP ? static_cast<double>(TP) / static_cast<double>(TP + FP) : 0.0;
  const double Recall =
      TP + FN ? static_cast<double>(TP) / static_cast<double>(TP + FN) : 0.0;
  R.f1 = Precision + Recall > 0.0
             ? 2.0 * Precision * Recall / (Precision + Recall)
             : 0.0;
  R.accuracy = static_cast<double>(Correct) / static_cast<double>(Scores.size());
  R.positives_predicted = TP + FP;
  return R;
}

ThresholdResult optimizeThreshold(std::span<const double> Scores,
                                  std::span<const int> Labels, double Step) {
  if (!(Step > 0.0 && Step <= 0.5))
    throw InvalidArgumentError("threshold step must be in (0, 0.5]");
  if (Scores.size() != Labels.size() || Scores.empty())
    throw InvalidArgumentError("threshold: scores and labels must be non-empty "
                               "and aligned");
  bool SawPositive = false, SawNegative = false;
  for (int L : Labels) {
    if (L != 0 && L != 1)
      throw InvalidArgumentError("threshold labels must be 0 or 1");
    (L ? SawPositive : SawNegative) = true;
  }
  if (!SawPositive || !SawNegative)
    throw DegenerateLabelsError("threshold search needs both labels present");

  const auto Steps = static_cast<long>(std::floor(1.0 / Step + 1e-9));
  std::vector<double> Candidates;
  for (long K = 0; K <= Steps; ++K)
    Candidates.push_back(static_cast<double>(K) * Step);
  if (Candidates.back() < 1.0 - 1e-12)
    Candidates.push_back(1.0);

  ThresholdResult Best = applyThreshold(Scores, Labels, Candidates.front());
  for (std::size_t K = 1; K < Candidates.size(); ++K) {
    ThresholdResult R = applyThreshold(Scores, Labels, Candidates[K]);
    if (R.f1 > Best.f1 || (R.f1 == Best.f1 && R.accuracy > Best.accuracy))
      Best = R;
  }
  return Best;
}

WeightKind parseWeightKind(std::string_view Name) {
  if (Name == "delete")
    return WeightKind::Delete;
  if (Name == "insert")
    return WeightKind::Insert;
  if (Name == "rename")
    return WeightKind::Rename;
  throw InvalidArgumentError("unknown weight '" + std::string(Name) +
                             "' (expected delete, insert or rename)");
}

std::vector<SweepPoint> weightSweep(const std::vector<Sample> &Samples,
                                    WeightKind Vary,
                                    std::span<const double> Grid,
                                    std::span<const double> Target,
                                    LabelOptions Labels, unsigned Jobs) {
  if (Target.size() != Samples.size())
    throw InvalidArgumentError("sweep target must align with the samples");
  for (double W : Grid)
    if (!(W >= 0.0) || !std::isfinite(W))
      throw InvalidArgumentError("sweep grid values must be finite and >= 0");
  Jobs = std::max(1u, Jobs);

  std::vector<std::optional<std::pair<SyntaxTree, SyntaxTree>>> Trees(
      Samples.size());
  std::vector<Parser> Parsers;
  for (unsigned W = 0; W < Jobs; ++W)
    Parsers.emplace_back(Labels);
  parallelFor(Samples.size(), Jobs, [&](std::size_t I, unsigned Worker) {
    const Sample &S = Samples[I];
    Trees[I] = Parsers[Worker].parsePair(S.prediction, S.reference, S.language);
  });

  std::vector<SweepPoint> Out;
  std::vector<double> Scores(Samples.size());
  for (double W : Grid) {
    CostConfig Costs;
    switch (Vary) {
    case WeightKind::Delete:
      Costs.delete_weight = W;
      break;
    case WeightKind::Insert:
      Costs.insert_weight = W;
      break;
    case WeightKind::Rename:
      Costs.rename_weight = W;
      break;
    }
    parallelFor(Samples.size(), Jobs, [&](std::size_t I, unsigned) {
      Scores[I] = tsedFromTrees(Trees[I]->first, Trees[I]->second, Costs).value;
    });
    SweepPoint P;
    P.weight = W;
    try {
      P.r = pearson(Scores, Target);
    } catch (const Error &E) {
      P.error = E.what();
    }
    Out.push_back(std::move(P));
  }
  return Out;
}

TimingReport timingBenchmark(const std::vector<Sample> &Samples,
                             const EvaluationOptions &Options, int Repeats,
                             bool LiveLlm) {
  if (Repeats < 1)
    throw InvalidArgumentError("benchmark repeats must be >= 1");
  Options.costs.validate();
  Options.bleu.validate();
  std::vector<Metric> Selected;
  for (Metric M : Options.metrics.metrics())
    if (M != Metric::Llm || (LiveLlm && Options.transport))
      Selected.push_back(M);

  Parser P(Options.labels);
  std::map<std::string, std::map<std::string, std::pair<double, std::size_t>>>
      Totals;
  for (int Rep = 0; Rep < Repeats; ++Rep) {
    for (const Sample &S : Samples) {
      for (Metric M : Selected) {
        MetricVector V;
        computeMetric(M, S, Options, P, V);
        const std::string Name(metricName(M));
        auto It = V.timings_ms.find(Name);
        if (It == V.timings_ms.end())
          continue; // failed; nothing to time
        for (const std::string &Key : {S.language.name(), std::string("all")}) {
          auto &Cell = Totals[Name][Key];
          Cell.first += It->second;
          ++Cell.second;
        }
      }
    }
  }
  TimingReport Report;
  for (const auto &[Name, ByLang] : Totals)
    for (const auto &[Lang, Cell] : ByLang)
      Report[Name][Lang] = {Cell.first / static_cast<double>(Cell.second),
                            Cell.second};
  return Report;
}

} // namespace tsed
