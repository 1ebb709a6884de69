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

#include "missdp/synth/pipeline.h"

#include "absl/strings/str_cat.h"
#include "missdp/dpcore/mechanisms.h"
#include "missdp/synth/bayes.h"
#include "missdp/tabular/marginal.h"

namespace missdp {
namespace {

enum Stream : uint64_t { kFitStream = 1, kImputeStream = 2, kGenerateStream = 3 };

// share * epsilon, keeping an infinite budget infinite on both sides.
std::pair<double, double> Split(double epsilon, double share) {
  if (IsInfinite(epsilon)) {
    return {share > 0 ? kInfiniteEpsilon : 0.0, kInfiniteEpsilon};
  }
  const double first = share * epsilon;
  return {first, epsilon - first};
}

struct FitOutput {
  SynthModel model;
  MechanismCounts calls;
};

absl::StatusOr<FitOutput> FitGenerator(const Dataset& input,
                                       const SynthConfig& cfg, double epsilon,
                                       double delta, Rng& rng,
                                       BudgetLedger& ledger) {
  switch (cfg.generator) {
    case Generator::kPrivBayes:
    case Generator::kPrivBayesE: {
      BayesOptions options{epsilon, cfg.degree, cfg.structure_fraction};
      auto fit = FitPrivBayes(input, options,
                              cfg.generator == Generator::kPrivBayes
                                  ? BayesVariant::kCompleteRow
                                  : BayesVariant::kPartialObservation,
                              rng, ledger);
      if (!fit.ok()) return fit.status();
      return FitOutput{std::move(fit->model), fit->calls};
    }
    case Generator::kKamino:
    case Generator::kKaminoI: {
      ColumnOptions options{epsilon, delta, cfg.parent_cap, cfg.sequence, {}};
      auto fit = FitColumnwise(input, options,
                               cfg.generator == Generator::kKamino
                                   ? ColumnVariant::kCompleteRow
                                   : ColumnVariant::kImpute,
                               rng, ledger);
      if (!fit.ok()) return fit.status();
      return FitOutput{std::move(fit->model), fit->calls};
    }
  }
  return absl::InternalError("unhandled generator");
}

}  // namespace

absl::StatusOr<Generator> ParseGenerator(const std::string& name) {
  if (name == "privbayes") return Generator::kPrivBayes;
  if (name == "privbayese") return Generator::kPrivBayesE;
  if (name == "kamino") return Generator::kKamino;
  if (name == "kamino_i") return Generator::kKaminoI;
  return absl::InvalidArgumentError(absl::StrCat("unknown generator \"", name, "\""));
}

std::string GeneratorName(Generator g) {
  switch (g) {
    case Generator::kPrivBayes:
      return "privbayes";
    case Generator::kPrivBayesE:
      return "privbayese";
    case Generator::kKamino:
      return "kamino";
    case Generator::kKaminoI:
      return "kamino_i";
  }
  return "?";
}

absl::Status ValidateConfig(const SynthConfig& cfg) {
  if (!(cfg.epsilon > 0)) return absl::InvalidArgumentError("epsilon must be positive");
  if (cfg.delta >= 1.0) return absl::InvalidArgumentError("delta must be below 1");
  if (cfg.degree < 1) return absl::InvalidArgumentError("degree must be >= 1");
  if (cfg.parent_cap < 1) return absl::InvalidArgumentError("parent_cap must be >= 1");
  if (!(cfg.structure_fraction > 0 && cfg.structure_fraction < 1)) {
    return absl::InvalidArgumentError("structure_fraction must lie in (0, 1)");
  }
  if (cfg.wrapper == Wrapper::kImputeFirst && cfg.imputer != ImputerKind::kRandom &&
      !(cfg.split_fraction > 0 && cfg.split_fraction < 1)) {
    return absl::InvalidArgumentError("split_fraction must lie in (0, 1)");
  }
  return absl::OkStatus();
}

absl::StatusOr<SynthConfig> SynthConfigFromJson(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("method") || !j["method"].is_string()) {
    return absl::InvalidArgumentError("config needs a \"method\" string");
  }
  SynthConfig cfg;
  try {
    const std::string method = j["method"];
    std::string generator = method;
    if (method == "complete_row" || method == "impute_first") {
      cfg.wrapper = method == "complete_row" ? Wrapper::kCompleteRow
                                             : Wrapper::kImputeFirst;
      generator = j.value("inner", std::string("privbayes"));
    }
    auto g = ParseGenerator(generator);
    if (!g.ok()) return g.status();
    cfg.generator = *g;
    if (cfg.wrapper == Wrapper::kImputeFirst) {
      auto imputer = ParseImputerKind(j.value("imputer", std::string("random")));
      if (!imputer.ok()) return imputer.status();
      cfg.imputer = *imputer;
      cfg.split_fraction = j.value("split_fraction", 0.5);
    }
    if (j.contains("epsilon")) {
      auto eps = EpsilonFromJson(j["epsilon"]);
      if (!eps.ok()) return eps.status();
      cfg.epsilon = *eps;
    }
    cfg.delta = j.value("delta", -1.0);
    cfg.degree = j.value("degree", 2);
    cfg.structure_fraction = j.value("structure_fraction", 0.5);
    cfg.parent_cap = j.value("parent_cap", 2);
    auto order = ParseSequenceOrder(j.value("sequence", std::string("schema")));
    if (!order.ok()) return order.status();
    cfg.sequence = *order;
    cfg.seed = j.value("seed", uint64_t{0});
    cfg.n_out = j.value("n_out", int64_t{-1});
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("malformed config: ", e.what()));
  }
  if (auto s = ValidateConfig(cfg); !s.ok()) return s;
  return cfg;
}

nlohmann::json SynthConfigToJson(const SynthConfig& cfg) {
  nlohmann::json j;
  switch (cfg.wrapper) {
    case Wrapper::kNone:
      j["method"] = GeneratorName(cfg.generator);
      break;
    case Wrapper::kCompleteRow:
      j["method"] = "complete_row";
      j["inner"] = GeneratorName(cfg.generator);
      break;
    case Wrapper::kImputeFirst:
      j["method"] = "impute_first";
      j["inner"] = GeneratorName(cfg.generator);
      j["imputer"] = ImputerName(cfg.imputer);
      j["split_fraction"] = cfg.split_fraction;
      break;
  }
  j["epsilon"] = EpsilonToJson(cfg.epsilon);
  j["delta"] = cfg.delta;
  j["degree"] = cfg.degree;
  j["structure_fraction"] = cfg.structure_fraction;
  j["parent_cap"] = cfg.parent_cap;
  j["sequence"] = SequenceOrderName(cfg.sequence);
  j["seed"] = cfg.seed;
  j["n_out"] = cfg.n_out;
  return j;
}

std::string MethodLabel(const SynthConfig& cfg) {
  const std::string inner = GeneratorName(cfg.generator);
  switch (cfg.wrapper) {
    case Wrapper::kNone:
      return inner;
    case Wrapper::kCompleteRow:
      return absl::StrCat("complete_row(", inner, ")");
    case Wrapper::kImputeFirst:
      if (cfg.imputer == ImputerKind::kRandom) {
        return absl::StrCat("impute_first(random,", inner, ")");
      }
      return absl::StrCat("impute_first(", ImputerName(cfg.imputer), ",",
                          cfg.split_fraction, ",", inner, ")");
  }
  return inner;
}

absl::StatusOr<PipelineResult> RunPipeline(const Dataset& d,
                                           const SynthConfig& cfg) {
  if (auto s = ValidateConfig(cfg); !s.ok()) return s;
  const double delta =
      cfg.delta < 0 ? DefaultDelta(std::max<int64_t>(d.rows(), 1)) : cfg.delta;
  auto ledger = BudgetLedger::Create(cfg.epsilon, delta);
  if (!ledger.ok()) return ledger.status();
  PipelineResult result{Dataset(), SynthModel(), *std::move(ledger), {}, {}, {}};

  Rng fit_rng = MakeRng(cfg.seed, kFitStream);
  Rng impute_rng = MakeRng(cfg.seed, kImputeStream);
  Rng generate_rng = MakeRng(cfg.seed, kGenerateStream);

  Dataset input = d;
  double gen_eps = cfg.epsilon;
  double gen_delta = delta;

  if (cfg.wrapper == Wrapper::kCompleteRow) {
    input = CompleteRows(d, AllAttributes(d.schema()));
    if (input.rows() == 0) {
      return absl::FailedPreconditionError(
          "no complete rows: complete-row training has no input data");
    }
    result.notes.push_back(absl::StrCat("kept ", input.rows(), " of ", d.rows(),
                                        " rows"));
  } else if (cfg.wrapper == Wrapper::kImputeFirst) {
    if (cfg.imputer == ImputerKind::kRandom) {
      input = RandomImpute(d, impute_rng).data;
      if (auto s = result.ledger.Spend("impute", 0.0); !s.ok()) return s;
    } else {
      const auto [impute_eps, rest] = Split(cfg.epsilon, cfg.split_fraction);
      gen_eps = rest;
      const double impute_delta =
          cfg.imputer == ImputerKind::kKamino ? delta / 2 : 0.0;
      auto sub = BudgetLedger::Create(impute_eps, impute_delta);
      if (!sub.ok()) return sub.status();
      if (cfg.imputer == ImputerKind::kMeanMode) {
        auto stats = PrivateImputeStats(d, impute_eps, impute_rng, *sub);
        if (!stats.ok()) return stats.status();
        ImputeResult imputed = MeanModeImpute(d, *stats, impute_rng);
        input = std::move(imputed.data);
        for (auto& w : imputed.warnings) result.notes.push_back(std::move(w));
      } else {
        ColumnOptions options{impute_eps, impute_delta, cfg.parent_cap,
                              cfg.sequence, {}};
        auto fit = FitColumnwise(d, options, ColumnVariant::kImpute, impute_rng,
                                 *sub);
        if (!fit.ok()) return fit.status();
        input = std::move(fit->working);
      }
      if (auto s = result.ledger.Spend("impute", impute_eps, sub->SpentDelta());
          !s.ok()) {
        return s;
      }
      gen_delta = delta - sub->SpentDelta();
      result.details.emplace_back("impute", *std::move(sub));
    }
  }

  auto sub = BudgetLedger::Create(gen_eps, std::max(gen_delta, 0.0));
  if (!sub.ok()) return sub.status();
  auto fit = FitGenerator(input, cfg, gen_eps, gen_delta, fit_rng, *sub);
  if (!fit.ok()) return fit.status();
  if (auto s = result.ledger.Spend("generate", gen_eps, sub->SpentDelta());
      !s.ok()) {
    return s;
  }
  result.details.emplace_back("generate", *std::move(sub));
  result.calls = fit->calls;
  result.model = std::move(fit->model);

  const int64_t n_out = cfg.n_out < 0 ? d.rows() : cfg.n_out;
  auto synthetic = Generate(result.model, n_out, generate_rng);
  if (!synthetic.ok()) return synthetic.status();
  result.synthetic = *std::move(synthetic);
  return result;
}

nlohmann::json PipelineLedgerToJson(const PipelineResult& r) {
  nlohmann::json j;
  j["budget"] = r.ledger.ToJson();
  j["details"] = nlohmann::json::object();
  for (const auto& [phase, ledger] : r.details) j["details"][phase] = ledger.ToJson();
  j["calls"] = {{"exponential", r.calls.exponential},
                {"noisy_tables", r.calls.noisy_tables}};
  j["notes"] = r.notes;
  return j;
}

}  // namespace missdp
