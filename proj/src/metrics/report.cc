// Copyright 2026 The missdp Authors.
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

#include "missdp/metrics/report.h"

#include <cmath>
#include <set>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "missdp/metrics/f1_evaluation.h"

namespace missdp {

MeanStd Summarize(std::vector<double> values) {
  MeanStd s;
  s.values = std::move(values);
  if (s.values.empty()) return s;
  double sum = 0.0;
  for (double v : s.values) sum += v;
  s.mean = sum / static_cast<double>(s.values.size());
  if (s.values.size() > 1) {
    double ss = 0.0;
    for (double v : s.values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(s.values.size() - 1));
  }
  return s;
}

absl::Status ValidateEvaluateOptions(const EvaluateOptions& options, int cols) {
  if (options.reps < 1) {
    return absl::InvalidArgumentError("reps must be at least 1");
  }
  if (options.kway.empty() && !options.f1) {
    return absl::InvalidArgumentError("nothing to evaluate");
  }
  for (int k : options.kway) {
    if (k < 1 || k > cols) {
      return absl::InvalidArgumentError(
          absl::StrCat("k-way order must lie in [1, ", cols, "], got ", k));
    }
  }
  for (int t : options.targets) {
    if (t < 0 || t >= cols) {
      return absl::InvalidArgumentError(
          absl::StrCat("target index ", t, " out of range"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<UtilityReport> Evaluate(const Dataset& real,
                                       const Dataset& synth,
                                       const EvaluateOptions& options) {
  if (!(real.schema() == synth.schema())) {
    return absl::InvalidArgumentError("datasets have different schemas");
  }
  if (absl::Status s = ValidateEvaluateOptions(options, real.cols()); !s.ok()) {
    return s;
  }
  UtilityReport report;
  report.seed = options.seed;
  report.reps = options.reps;
  report.distance = options.distance;

  std::vector<int> targets = options.targets;
  if (options.f1 && targets.empty()) {
    for (int j = 0; j < real.cols(); ++j) targets.push_back(j);
  }
  std::map<int, std::vector<double>> kway;
  std::vector<double> f1;
  std::map<std::string, std::vector<double>> breakdown;
  std::set<std::string> notes;
  for (int r = 0; r < options.reps; ++r) {
    const uint64_t seed = options.seed + static_cast<uint64_t>(r);
    for (int k : options.kway) {
      KwayOptions ko;
      ko.kind = options.distance;
      ko.seed = seed;
      auto d = KwayDistance(real, synth, k, ko);
      if (!d.ok()) return d.status();
      kway[k].push_back(*d);
    }
    if (options.f1) {
      auto res = F1Evaluation(real, synth, targets, seed);
      if (!res.ok()) return res.status();
      f1.push_back(res->average);
      for (const F1Entry& e : res->entries) {
        breakdown[absl::StrCat(e.target_name, "/", e.classifier)].push_back(e.f1);
      }
      notes.insert(res->notes.begin(), res->notes.end());
    }
  }
  for (auto& [k, v] : kway) report.kway[k] = Summarize(std::move(v));
  if (options.f1) {
    report.has_f1 = true;
    report.f1 = Summarize(std::move(f1));
    for (auto& [key, v] : breakdown) {
      report.f1_breakdown[key] = Summarize(std::move(v));
    }
  }
  report.notes.assign(notes.begin(), notes.end());
  return report;
}

namespace {

nlohmann::json StatJson(const MeanStd& s) {
  return {{"mean", s.mean}, {"std", s.std}, {"values", s.values}};
}

}  // namespace

nlohmann::json ReportToJson(const UtilityReport& report) {
  nlohmann::json j;
  j["seed"] = report.seed;
  j["reps"] = report.reps;
  j["distance"] = DistanceKindName(report.distance);
  nlohmann::json kway = nlohmann::json::object();
  for (const auto& [k, s] : report.kway) kway[std::to_string(k)] = StatJson(s);
  j["kway"] = kway;
  if (report.has_f1) {
    j["f1"] = StatJson(report.f1);
    nlohmann::json per = nlohmann::json::object();
    for (const auto& [key, s] : report.f1_breakdown) per[key] = StatJson(s);
    j["f1_breakdown"] = per;
  }
  j["notes"] = report.notes;
  return j;
}

std::string ReportToCsv(const UtilityReport& report) {
  std::string out = "metric,key,value\n";
  const auto row = [&out](const std::string& metric, const std::string& key,
                          double v) {
    absl::StrAppend(&out, metric, ",", key, ",", absl::StrFormat("%.17g", v),
                    "\n");
  };
  for (const auto& [k, s] : report.kway) {
    row("kway_mean", std::to_string(k), s.mean);
    row("kway_std", std::to_string(k), s.std);
  }
  if (report.has_f1) {
    row("f1_mean", "all", report.f1.mean);
    row("f1_std", "all", report.f1.std);
    for (const auto& [key, s] : report.f1_breakdown) {
      row("f1_mean", key, s.mean);
      row("f1_std", key, s.std);
    }
  }
  return out;
}

}  // namespace missdp
