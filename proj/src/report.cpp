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


#include "tsed/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

namespace tsed {

double round4(double X) { return std::round(X * 10000.0) / 10000.0; }

double fourSignificant(double X) {
  if (X == 0.0 || !std::isfinite(X))
    return X;
  char Buf[64];
  std::snprintf(Buf, sizeof Buf, "%.4g", X);
  return std::strtod(Buf, nullptr);
}

namespace {

// Shortest text that reads back to the same double.
std::string formatDouble(double X) {
  char Buf[64];
  auto [End, Ec] = std::to_chars(Buf, Buf + sizeof Buf, X);
  return std::string(Buf, End);
}

std::string csvField(const std::string &S) {
  if (S.find_first_of(",\"\n\r") == std::string::npos)
    return S;
  std::string Out = "\"";
  for (char C : S) {
    if (C == '"')
      Out.push_back('"');
    Out.push_back(C);
  }
  Out.push_back('"');
  return Out;
}

// Splits one CSV record, honouring quotes (including quoted newlines).
bool readRecord(std::istream &In, std::vector<std::string> &Fields) {
  Fields.clear();
  std::string Field;
  bool Quoted = false, Any = false;
  char C;
  while (In.get(C)) {
    Any = true;
    if (Quoted) {
      if (C == '"') {
        if (In.peek() == '"') {
          In.get(C);
          Field.push_back('"');
        } else {
          Quoted = false;
        }
      } else {
        Field.push_back(C);
      }
    } else if (C == '"') {
      Quoted = true;
    } else if (C == ',') {
      Fields.push_back(std::move(Field));
      Field.clear();
    } else if (C == '\n') {
      Fields.push_back(std::move(Field));
      return true;
    } else if (C != '\r') {
      Field.push_back(C);
    }
  }
  if (Any)
    Fields.push_back(std::move(Field));
  return Any;
}

std::optional<double> parseNumber(const std::string &S, const std::string &Where) {
  if (S.empty())
    return std::nullopt;
  char *End = nullptr;
  const double V = std::strtod(S.c_str(), &End);
  if (End != S.c_str() + S.size())
    throw SchemaError(Where + ": not a number: '" + S + "'");
  return V;
}

} // namespace

void writeVectorsCsv(std::ostream &Out, const std::vector<MetricVector> &Vectors,
                     const MetricSelection &Metrics) {
  const auto Selected = Metrics.metrics();
  Out << "id,language";
  for (Metric M : Selected)
    Out << ',' << metricName(M);
  Out << ",execution_match,pred_parse_errors,ref_parse_errors";
  for (Metric M : Selected)
    Out << ',' << metricName(M) << "_ms";
  Out << '\n';
  for (const auto &V : Vectors) {
    Out << csvField(V.sample_id) << ',' << csvField(V.language);
    for (Metric M : Selected) {
      auto Value = metricValue(V, metricName(M));
      Out << ',' << (Value ? formatDouble(*Value) : "");
    }
    Out << ',' << (V.execution_match ? std::to_string(*V.execution_match) : "");
    Out << ',' << (V.pred_parse_errors ? 1 : 0) << ','
        << (V.ref_parse_errors ? 1 : 0);
    for (Metric M : Selected) {
      auto It = V.timings_ms.find(std::string(metricName(M)));
      Out << ',' << (It != V.timings_ms.end() ? formatDouble(It->second) : "");
    }
    Out << '\n';
  }
}

std::vector<MetricVector> readVectorsCsv(std::istream &In,
                                         const std::string &Source) {
  std::vector<std::string> Header, Row;
  if (!readRecord(In, Header))
    throw SchemaError(Source + ": empty score file");
  std::map<std::string, std::size_t> Column;
  for (std::size_t I = 0; I < Header.size(); ++I)
    Column[Header[I]] = I;
  if (!Column.count("id"))
    throw SchemaError(Source + ": missing 'id' column");

  std::vector<MetricVector> Out;
  std::size_t LineNo = 1;
  while (readRecord(In, Row)) {
    ++LineNo;
    if (Row.size() == 1 && Row[0].empty())
      continue;
    const std::string Where = Source + ":" + std::to_string(LineNo);
    if (Row.size() != Header.size())
      throw SchemaError(Where + ": expected " + std::to_string(Header.size()) +
                        " fields, got " + std::to_string(Row.size()));
    auto Get = [&](const char *Name) -> const std::string * {
      auto It = Column.find(Name);
      return It == Column.end() ? nullptr : &Row[It->second];
    };
    MetricVector V;
    V.sample_id = *Get("id");
    if (auto *L = Get("language"))
      V.language = *L;
    if (auto *S = Get("tsed"))
      V.tsed = parseNumber(*S, Where);
    if (auto *S = Get("bleu"))
      V.bleu = parseNumber(*S, Where);
    if (auto *S = Get("jaccard"))
      V.jaccard = parseNumber(*S, Where);
    if (auto *S = Get("llm"))
      V.llm = parseNumber(*S, Where);
    if (auto *S = Get("execution_match")) {
      if (auto E = parseNumber(*S, Where)) {
        if (*E != 0.0 && *E != 1.0)
          throw SchemaError(Where + ": execution_match must be 0 or 1");
        V.execution_match = static_cast<int>(*E);
      }
    }
    if (auto *S = Get("pred_parse_errors"))
      V.pred_parse_errors = *S == "1";
    if (auto *S = Get("ref_parse_errors"))
      V.ref_parse_errors = *S == "1";
    for (const auto &[Name, Index] : Column) {
      if (Name.size() > 3 && Name.compare(Name.size() - 3, 3, "_ms") == 0)
        if (auto T = parseNumber(Row[Index], Where))
          V.timings_ms[Name.substr(0, Name.size() - 3)] = *T;
    }
    Out.push_back(std::move(V));
  }
  return Out;
}

std::vector<MetricVector> readVectorsCsvFile(const std::string &Path) {
  std::ifstream In(Path);
  if (!In)
    throw IoError("cannot open score file '" + Path + "'");
  return readVectorsCsv(In, Path);
}

nlohmann::json summaryJson(const EvaluationResult &Result,
                           const MetricSelection &Metrics) {
  struct Acc {
    double Sum = 0;
    std::size_t N = 0;
  };
  std::map<std::string, std::map<std::string, Acc>> ByLang; // lang -> metric
  std::map<std::string, std::size_t> Samples, ParseErrors;
  const auto Selected = Metrics.metrics();
  for (const auto &V : Result.vectors) {
    for (const std::string &Key : {V.language, std::string("all")}) {
      ++Samples[Key];
      if (V.pred_parse_errors || V.ref_parse_errors)
        ++ParseErrors[Key];
      for (Metric M : Selected)
        if (auto X = metricValue(V, metricName(M))) {
          auto &A = ByLang[Key][std::string(metricName(M))];
          A.Sum += *X;
          ++A.N;
        }
      if (V.execution_match) {
        auto &A = ByLang[Key]["execution"];
        A.Sum += *V.execution_match;
        ++A.N;
      }
    }
  }
  nlohmann::json Languages = nlohmann::json::object();
  for (const auto &[Lang, Count] : Samples) {
    nlohmann::json Entry = {{"samples", Count},
                            {"parse_error_samples", ParseErrors[Lang]}};
    nlohmann::json Means = nlohmann::json::object();
    for (const auto &[Name, A] : ByLang[Lang])
      Means[Name] = A.N ? nlohmann::json(round4(A.Sum / A.N)) : nlohmann::json();
    Entry["mean"] = Means;
    Languages[Lang] = Entry;
  }
  return {{"languages", Languages},
          {"failures", Result.failures},
          {"failure_count", Result.failures.size()}};
}

nlohmann::json correlationJson(const CorrelationMatrix &M) {
  nlohmann::json Rows = nlohmann::json::array();
  for (const auto &Row : M.r) {
    nlohmann::json Out = nlohmann::json::array();
    for (double X : Row)
      Out.push_back(std::isnan(X) ? nlohmann::json() : nlohmann::json(X));
    Rows.push_back(Out);
  }
  return {{"metrics", M.metric_names}, {"r", Rows}};
}

nlohmann::json thresholdJson(const ThresholdResult &R) {
  return {{"threshold", R.threshold},
          {"f1", R.f1},
          {"accuracy", R.accuracy},
          {"positives_predicted", R.positives_predicted}};
}

nlohmann::json timingJson(const TimingReport &R) {
  nlohmann::json Out = nlohmann::json::object();
  for (const auto &[Metric, ByLang] : R)
    for (const auto &[Lang, Cell] : ByLang)
      Out[Metric][Lang] = {{"mean_ms", fourSignificant(Cell.mean_ms)},
                           {"measurements", Cell.measurements}};
  return Out;
}

nlohmann::json stabilityJson(const StabilityReport &R) {
  return {{"run_count", R.run_count},
          {"mse", R.mse_per_run},
          {"mae", R.mae_per_run}};
}

void writeSweepCsv(std::ostream &Out, const std::vector<SweepPoint> &Points) {
  Out << "weight,r,error\n";
  for (const auto &P : Points)
    Out << formatDouble(P.weight) << ',' << (P.r ? formatDouble(*P.r) : "")
        << ',' << csvField(P.error) << '\n';
}

} // namespace tsed
