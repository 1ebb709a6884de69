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

#include "missdp/cli/bench.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <thread>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "missdp/metrics/marginal_distance.h"
#include "missdp/metrics/report.h"
#include "missdp/tabular/csv.h"

namespace missdp {
namespace {

absl::StatusOr<Generator> ParseCliGenerator(const std::string& name) {
  if (name == "kamino-i") return Generator::kKaminoI;
  return ParseGenerator(name);
}

std::string FormatNumber(double v, int digits = 17) {
  if (std::isinf(v)) return "inf";
  if (std::isnan(v)) return "nan";
  return absl::StrFormat("%.*g", digits, v);
}

struct Cell {
  std::string method;
  std::string mechanism;
  double rate;
  double epsilon;
};

}  // namespace

absl::StatusOr<SynthConfig> ParseMethod(const std::string& text) {
  const std::vector<std::string> parts = absl::StrSplit(text, ':');
  SynthConfig cfg;
  if (parts.size() == 1) {
    auto g = ParseCliGenerator(parts[0]);
    if (!g.ok()) return g.status();
    cfg.generator = *g;
    return cfg;
  }
  if (parts[0] == "complete-row" && parts.size() == 2) {
    auto g = ParseCliGenerator(parts[1]);
    if (!g.ok()) return g.status();
    cfg.generator = *g;
    cfg.wrapper = Wrapper::kCompleteRow;
    return cfg;
  }
  if (parts[0] == "impute-first" && parts.size() == 4) {
    auto imputer = ParseImputerKind(parts[1]);
    if (!imputer.ok()) return imputer.status();
    double split = 0.0;
    if (!absl::SimpleAtod(parts[2], &split)) {
      return absl::InvalidArgumentError(
          absl::StrCat("bad split fraction \"", parts[2], "\""));
    }
    auto g = ParseCliGenerator(parts[3]);
    if (!g.ok()) return g.status();
    cfg.generator = *g;
    cfg.wrapper = Wrapper::kImputeFirst;
    cfg.imputer = *imputer;
    cfg.split_fraction = split;
    return cfg;
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown method \"", text,
      "\"; expected privbayes, privbayese, kamino, kamino-i, "
      "complete-row:<m> or impute-first:<imputer>:<split>:<m>"));
}

absl::StatusOr<MissingSpec> MakeMissingSpec(const std::string& mechanism,
                                            double rate, int cols,
                                            uint64_t seed) {
  MissingSpec spec;
  spec.seed = seed;
  if (mechanism == "mcar") {
    spec.mechanism = McarSpec{std::vector<double>(cols, rate)};
  } else if (mechanism == "mcar-global" || mechanism == "mcar_global") {
    spec.mechanism = McarGlobalSpec{rate};
  } else if (mechanism == "mar") {
    spec.mechanism = MarSpec{rate};
  } else if (mechanism == "mnar") {
    spec.mechanism = MnarSpec{rate};
  } else {
    return absl::InvalidArgumentError(absl::StrCat(
        "unknown mechanism \"", mechanism,
        "\"; expected mcar, mcar-global, mar or mnar"));
  }
  if (absl::Status s = ValidateSpec(spec, cols); !s.ok()) return s;
  return spec;
}

absl::Status ValidateBenchOptions(const BenchOptions& options, int cols) {
  if (options.methods.empty() || options.mechanisms.empty() ||
      options.rates.empty() || options.epsilons.empty()) {
    return absl::InvalidArgumentError("every grid axis needs a value");
  }
  if (options.reps < 1) {
    return absl::InvalidArgumentError("reps must be at least 1");
  }
  if (options.threads < 0) {
    return absl::InvalidArgumentError("threads must be non-negative");
  }
  for (const std::string& m : options.methods) {
    auto cfg = ParseMethod(m);
    if (!cfg.ok()) return cfg.status();
  }
  for (const std::string& mech : options.mechanisms) {
    for (double r : options.rates) {
      auto spec = MakeMissingSpec(mech, r, cols, 0);
      if (!spec.ok()) return spec.status();
    }
  }
  for (double e : options.epsilons) {
    if (!(e > 0)) {
      return absl::InvalidArgumentError("epsilons must be positive");
    }
  }
  for (int k : options.kway) {
    if (k < 1 || k > cols) {
      return absl::InvalidArgumentError(
          absl::StrCat("k-way order must lie in [1, ", cols, "], got ", k));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<BenchResult> RunBench(const Dataset& complete,
                                     const BenchOptions& options) {
  if (absl::Status s = ValidateBenchOptions(options, complete.cols()); !s.ok()) {
    return s;
  }
  if (complete.HasMissing()) {
    return absl::InvalidArgumentError(
        "bench input must be complete: it is the ground truth");
  }
  std::vector<Cell> cells;
  for (const auto& method : options.methods) {
    for (const auto& mech : options.mechanisms) {
      for (double rate : options.rates) {
        for (double eps : options.epsilons) {
          cells.push_back({method, mech, rate, eps});
        }
      }
    }
  }
  if (!options.cell_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(options.cell_dir, ec);
    if (ec) return absl::InternalError(ec.message());
  }

  std::vector<std::vector<BenchRow>> rows(cells.size());
  std::vector<std::string> notes(cells.size());
  std::atomic<size_t> next{0};
  const auto worker = [&]() {
    for (size_t c = next++; c < cells.size(); c = next++) {
      const Cell& cell = cells[c];
      std::map<int, std::vector<double>> kway;
      std::string note;
      for (int r = 0; r < options.reps && note.empty(); ++r) {
        const uint64_t seed = options.seed + static_cast<uint64_t>(r);
        auto spec = MakeMissingSpec(cell.mechanism, cell.rate, complete.cols(),
                                    seed);
        auto masked = Inject(complete, *spec);
        if (!masked.ok()) {
          note = masked.status().ToString();
          break;
        }
        SynthConfig cfg = *ParseMethod(cell.method);
        cfg.epsilon = cell.epsilon;
        cfg.seed = seed;
        auto run = RunPipeline(*masked, cfg);
        if (!run.ok()) {
          note = run.status().ToString();
          break;
        }
        for (int k : options.kway) {
          KwayOptions ko;
          ko.seed = seed;
          auto d = KwayDistance(complete, run->synthetic, k, ko);
          if (!d.ok()) {
            note = d.status().ToString();
            break;
          }
          kway[k].push_back(*d);
        }
      }
      for (int k : options.kway) {
        BenchRow row{cell.method, cell.mechanism, cell.rate, cell.epsilon,
                     absl::StrCat("kway", k), std::nan(""), std::nan("")};
        if (note.empty()) {
          const MeanStd s = Summarize(kway[k]);
          row.mean = s.mean;
          row.std = s.std;
        }
        rows[c].push_back(row);
      }
      if (!note.empty()) {
        notes[c] = absl::StrCat(cell.method, " ", cell.mechanism, " rate ",
                                FormatNumber(cell.rate, 15), " epsilon ",
                                FormatNumber(cell.epsilon, 15), ": ", note);
      }
      if (!options.cell_dir.empty()) {
        const std::string path =
            (std::filesystem::path(options.cell_dir) /
             absl::StrFormat("cell_%04d.csv", c))
                .string();
        // A failed cell file does not invalidate the combined output.
        (void)WriteFile(path, BenchToCsv(rows[c]));
      }
    }
  };
  unsigned threads = options.threads > 0
                         ? static_cast<unsigned>(options.threads)
                         : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(cells.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  BenchResult result;
  for (size_t c = 0; c < cells.size(); ++c) {
    result.rows.insert(result.rows.end(), rows[c].begin(), rows[c].end());
    if (!notes[c].empty()) result.notes.push_back(notes[c]);
  }
  return result;
}

std::string BenchToCsv(const std::vector<BenchRow>& rows) {
  std::string out = "method,mechanism,rate,epsilon,metric,mean,std\n";
  for (const BenchRow& r : rows) {
    absl::StrAppend(&out, r.method, ",", r.mechanism, ",",
                    FormatNumber(r.rate, 15), ",", FormatNumber(r.epsilon, 15),
                    ",", r.metric, ",", FormatNumber(r.mean), ",",
                    FormatNumber(r.std), "\n");
  }
  return out;
}

}  // namespace missdp
