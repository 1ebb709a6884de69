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

#include "missdp/cli/commands.h"

#include <cmath>
#include <filesystem>
#include <optional>

#include "CLI11.hpp"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_replace.h"
#include "absl/strings/str_split.h"
#include "missdp/amplify/guard.h"
#include "missdp/amplify/sampling.h"
#include "missdp/cli/bench.h"
#include "missdp/cli/manifest.h"
#include "missdp/dpcore/mechanisms.h"
#include "missdp/dpcore/rdp_accountant.h"
#include "missdp/metrics/report.h"
#include "missdp/missing/inject.h"
#include "missdp/synth/model.h"
#include "missdp/synth/pipeline.h"
#include "missdp/tabular/csv.h"

namespace missdp {
namespace {

namespace fs = std::filesystem;

absl::Status RequireFile(const std::string& path, const std::string& flag) {
  if (path.empty() || !fs::is_regular_file(path)) {
    return absl::InvalidArgumentError(
        absl::StrCat(flag, ": no such file \"", path, "\""));
  }
  return absl::OkStatus();
}

absl::Status MakeDir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    return absl::InternalError(
        absl::StrCat("cannot create \"", dir, "\": ", ec.message()));
  }
  return absl::OkStatus();
}

std::string In(const std::string& dir, const std::string& name) {
  return (fs::path(dir) / name).string();
}

absl::StatusOr<nlohmann::json> LoadJson(const std::string& path) {
  auto text = ReadFile(path);
  if (!text.ok()) return text.status();
  try {
    return nlohmann::json::parse(*text);
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": invalid JSON: ", e.what()));
  }
}

absl::StatusOr<Dataset> LoadData(const std::string& data_path,
                                 const std::string& schema_path,
                                 const std::string& data_flag) {
  if (absl::Status s = RequireFile(schema_path, "--schema"); !s.ok()) return s;
  if (absl::Status s = RequireFile(data_path, data_flag); !s.ok()) return s;
  auto schema = Schema::Load(schema_path);
  if (!schema.ok()) return schema.status();
  return LoadCsv(data_path, *schema);
}

absl::StatusOr<std::vector<int>> ResolveAttributes(
    const std::string& text, const Schema& schema) {
  std::vector<int> out;
  if (text == "all") {
    for (int j = 0; j < schema.size(); ++j) out.push_back(j);
    return out;
  }
  for (absl::string_view part : absl::StrSplit(text, ',', absl::SkipEmpty())) {
    int index = 0;
    if (absl::SimpleAtoi(part, &index)) {
      if (index < 0 || index >= schema.size()) {
        return absl::InvalidArgumentError(
            absl::StrCat("attribute index ", index, " out of range"));
      }
      out.push_back(index);
      continue;
    }
    auto j = schema.IndexOf(std::string(part));
    if (!j) {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown attribute \"", part, "\""));
    }
    out.push_back(*j);
  }
  if (out.empty()) return absl::InvalidArgumentError("empty attribute list");
  return out;
}

std::string Num(double v) {
  if (std::isinf(v)) return "inf";
  return absl::StrFormat("%.15g", v);
}

// ------------------------------------------------------------------ inject

struct InjectArgs {
  std::string input;
  std::string schema;
  std::string mechanism;
  std::optional<double> rate;
  std::string phi;
  double feature_fraction = 0.5;
  uint64_t seed = 0;
  std::string output;
  int64_t mar_sr_target = -1;
};

absl::Status RunInject(const InjectArgs& a, std::ostream& out) {
  auto data = LoadData(a.input, a.schema, "--input");
  if (!data.ok()) return data.status();
  const int cols = data->cols();

  MissingSpec spec;
  if (a.mechanism == "mcar") {
    std::vector<double> phi;
    if (!a.phi.empty()) {
      auto list = ParseDoubleList(a.phi);
      if (!list.ok()) return list.status();
      phi = *list;
      if (phi.size() == 1) phi.assign(cols, phi[0]);
    } else if (a.rate) {
      phi.assign(cols, *a.rate);
    } else {
      return absl::InvalidArgumentError("mcar needs --phi or --rate");
    }
    spec.mechanism = McarSpec{phi};
    spec.seed = a.seed;
    if (absl::Status s = ValidateSpec(spec, cols); !s.ok()) return s;
  } else {
    if (!a.rate) {
      return absl::InvalidArgumentError(
          absl::StrCat(a.mechanism, " needs --rate"));
    }
    auto s = MakeMissingSpec(a.mechanism, *a.rate, cols, a.seed);
    if (!s.ok()) return s.status();
    spec = *s;
    if (auto* mar = std::get_if<MarSpec>(&spec.mechanism)) {
      mar->feature_fraction = a.feature_fraction;
    }
    if (auto* mnar = std::get_if<MnarSpec>(&spec.mechanism)) {
      mnar->feature_fraction = a.feature_fraction;
    }
    if (absl::Status v = ValidateSpec(spec, cols); !v.ok()) return v;
  }

  nlohmann::json config;
  config["input"] = a.input;
  config["schema"] = a.schema;
  config["missing"] = MissingSpecToJson(spec);
  Dataset masked = *data;
  if (a.mar_sr_target >= 0) {
    auto r = InjectWithSameRows(*data, spec, a.mar_sr_target);
    if (!r.ok()) return r.status();
    masked = r->data;
    config["mar_sr_target"] = a.mar_sr_target;
    config["escalated_rate"] = r->rate;
  } else {
    auto r = Inject(*data, spec);
    if (!r.ok()) return r.status();
    masked = *std::move(r);
  }

  if (absl::Status s = MakeDir(a.output); !s.ok()) return s;
  const std::string data_out = In(a.output, "data.csv");
  const std::string mask_out = In(a.output, "mask.csv");
  if (absl::Status s = WriteCsv(masked, data_out); !s.ok()) return s;
  if (absl::Status s = WriteMaskCsv(masked, mask_out); !s.ok()) return s;
  if (absl::Status s = WriteManifest(a.output, "inject", config,
                                     {a.input, a.schema}, {data_out, mask_out});
      !s.ok()) {
    return s;
  }
  out << "inject: " << MechanismName(spec) << ", " << masked.TotalMissing()
      << " missing cells of " << masked.rows() * cols << " -> " << data_out
      << "\n";
  return absl::OkStatus();
}

// -------------------------------------------------------------- synthesize

struct SynthArgs {
  std::string input;
  std::string schema;
  std::string method;
  std::string config;
  std::string epsilon = "1";
  double delta = -1.0;
  int degree = 2;
  uint64_t seed = 0;
  int64_t rows = -1;
  std::string output;
  bool save_model = false;
  // Flags given explicitly on the command line override --config.
  bool epsilon_set = false;
  bool delta_set = false;
  bool degree_set = false;
  bool seed_set = false;
  bool rows_set = false;
};

absl::Status RunSynthesize(const SynthArgs& a, std::ostream& out) {
  SynthConfig cfg;
  if (!a.config.empty()) {
    if (!a.method.empty()) {
      return absl::InvalidArgumentError("give --method or --config, not both");
    }
    if (absl::Status s = RequireFile(a.config, "--config"); !s.ok()) return s;
    auto j = LoadJson(a.config);
    if (!j.ok()) return j.status();
    auto c = SynthConfigFromJson(*j);
    if (!c.ok()) return c.status();
    cfg = *c;
  } else if (!a.method.empty()) {
    auto c = ParseMethod(a.method);
    if (!c.ok()) return c.status();
    cfg = *c;
  } else {
    return absl::InvalidArgumentError("--method or --config is required");
  }
  const bool from_flags = a.config.empty();
  if (from_flags || a.epsilon_set) {
    auto eps = ParseEpsilon(a.epsilon);
    if (!eps.ok()) return eps.status();
    cfg.epsilon = *eps;
  }
  if (from_flags || a.delta_set) cfg.delta = a.delta;
  if (from_flags || a.degree_set) cfg.degree = a.degree;
  if (from_flags || a.seed_set) cfg.seed = a.seed;
  if (from_flags || a.rows_set) cfg.n_out = a.rows;
  if (absl::Status s = ValidateConfig(cfg); !s.ok()) return s;

  auto data = LoadData(a.input, a.schema, "--input");
  if (!data.ok()) return data.status();
  auto run = RunPipeline(*data, cfg);
  if (!run.ok()) return run.status();

  if (absl::Status s = MakeDir(a.output); !s.ok()) return s;
  const std::string synth_out = In(a.output, "synthetic.csv");
  const std::string ledger_out = In(a.output, "ledger.json");
  std::vector<std::string> outputs = {synth_out, ledger_out};
  if (absl::Status s = WriteCsv(run->synthetic, synth_out); !s.ok()) return s;
  if (absl::Status s =
          WriteFile(ledger_out, PipelineLedgerToJson(*run).dump(2) + "\n");
      !s.ok()) {
    return s;
  }
  if (a.save_model) {
    const std::string model_out = In(a.output, "model.json");
    if (absl::Status s = SaveModel(run->model, model_out); !s.ok()) return s;
    outputs.push_back(model_out);
  }
  nlohmann::json config = SynthConfigToJson(cfg);
  config["input"] = a.input;
  config["schema"] = a.schema;
  config["resolved_delta"] = run->ledger.delta();
  if (absl::Status s = WriteManifest(a.output, "synthesize", config,
                                     {a.input, a.schema}, outputs);
      !s.ok()) {
    return s;
  }
  out << "synthesize: " << MethodLabel(cfg) << ", epsilon "
      << Num(run->ledger.SpentEpsilon()) << " spent, "
      << run->synthetic.rows() << " rows -> " << synth_out << "\n";
  for (const std::string& n : run->notes) out << "note: " << n << "\n";
  return absl::OkStatus();
}

// ----------------------------------------------------------------- amplify

struct AmplifyArgs {
  std::string queries;
  std::string phi;
  std::string search = "exact";
  std::string mode = "linear";
  std::string mechanism = "mcar";
  int exact_cap = 12;
  std::string output;
};

absl::Status RunAmplify(const AmplifyArgs& a, std::ostream& out) {
  if (absl::Status s = RequireFile(a.queries, "--queries"); !s.ok()) return s;
  if (absl::Status s = RequireFile(a.phi, "--phi"); !s.ok()) return s;
  std::vector<AmplifyMode> modes;
  if (a.mode == "both") {
    modes = {AmplifyMode::kLinear, AmplifyMode::kExact};
  } else {
    auto m = ParseAmplifyMode(a.mode);
    if (!m.ok()) return m.status();
    modes = {*m};
  }
  const bool columnwise = a.search == "columnwise";
  SearchKind search = SearchKind::kExact;
  if (!columnwise) {
    auto s = ParseSearchKind(a.search);
    if (!s.ok()) return s.status();
    search = *s;
  }
  const GuardResult guard =
      GroundTruthGuard(absl::StrReplaceAll(a.mechanism, {{"-", "_"}}));
  if (guard.decision == GuardDecision::kRefused) {
    return absl::InvalidArgumentError(guard.message);
  }

  auto phi = LoadPhi(a.phi);
  if (!phi.ok()) return phi.status();
  auto qj = LoadJson(a.queries);
  if (!qj.ok()) return qj.status();
  auto queries = QueriesFromJson(*qj, phi->names);
  if (!queries.ok()) return queries.status();
  if (absl::Status s = ValidateQueries(*queries, phi->phi); !s.ok()) return s;

  nlohmann::json report;
  report["phi"] = phi->phi;
  report["guard"] = {{"mechanism", a.mechanism},
                     {"decision", GuardDecisionName(guard.decision)},
                     {"message", guard.message}};
  report["plans"] = nlohmann::json::object();
  const bool amplified = guard.decision == GuardDecision::kPermitted;
  for (AmplifyMode mode : modes) {
    const std::string name = AmplifyModeName(mode);
    double total = 0.0;
    for (const MarginalQuery& q : *queries) total += q.epsilon;
    double eps_bar = 0.0;
    nlohmann::json plan_json;
    if (columnwise) {
      std::vector<double> eps(phi->phi.size(), 0.0);
      for (const MarginalQuery& q : *queries) {
        if (q.attrs.size() != 1) {
          return absl::InvalidArgumentError(
              "columnwise search takes one attribute per query");
        }
        eps[q.attrs[0]] += q.epsilon;
      }
      auto e = ColumnwiseAmplify(phi->phi, eps, mode);
      if (!e.ok()) return e.status();
      eps_bar = *e;
      plan_json = {{"search", "columnwise"},
                   {"mode", name},
                   {"amplified_epsilon", eps_bar},
                   {"total_epsilon", total}};
    } else {
      PartitionOptions po;
      po.exact_cap = a.exact_cap;
      auto plan = OptimalPartition(*queries, phi->phi, search, mode, po);
      if (!plan.ok()) return plan.status();
      eps_bar = plan->amplified_epsilon;
      plan_json = PlanToJson(*plan);
    }
    const double reported = amplified ? eps_bar : total;
    plan_json["reported_epsilon"] = reported;
    report["plans"][name] = plan_json;
    out << name << ": total epsilon " << Num(total) << ", amplified "
        << Num(reported) << " (multiplier "
        << Num(total > 0 ? reported / total : 1.0) << ")\n";
  }
  if (!amplified) out << "guard: " << guard.message << "\n";

  nlohmann::json config = {{"queries", a.queries}, {"phi", a.phi},
                           {"search", a.search},   {"mode", a.mode},
                           {"mechanism", a.mechanism},
                           {"exact_cap", a.exact_cap}};
  if (a.output.empty()) {
    out << report.dump(2) << "\n";
    return absl::OkStatus();
  }
  if (absl::Status s = MakeDir(a.output); !s.ok()) return s;
  const std::string plan_out = In(a.output, "plan.json");
  if (absl::Status s = WriteFile(plan_out, report.dump(2) + "\n"); !s.ok()) {
    return s;
  }
  return WriteManifest(a.output, "amplify", config, {a.queries, a.phi},
                       {plan_out});
}

// ---------------------------------------------------------------- evaluate

struct EvaluateArgs {
  std::string real;
  std::string synthetic;
  std::string schema;
  std::string kway = "1,2";
  bool f1 = false;
  std::string targets = "all";
  uint64_t seed = 0;
  int reps = 3;
  std::string distance = "max_cell";
  std::string output;
};

absl::Status RunEvaluate(const EvaluateArgs& a, std::ostream& out) {
  EvaluateOptions o;
  if (!a.kway.empty()) {
    auto k = ParseIntList(a.kway);
    if (!k.ok()) return k.status();
    o.kway = *k;
  } else {
    o.kway.clear();
  }
  auto dist = ParseDistanceKind(a.distance);
  if (!dist.ok()) return dist.status();
  o.distance = *dist;
  o.f1 = a.f1;
  o.seed = a.seed;
  o.reps = a.reps;
  auto real = LoadData(a.real, a.schema, "--real");
  if (!real.ok()) return real.status();
  if (absl::Status s = RequireFile(a.synthetic, "--synthetic"); !s.ok()) {
    return s;
  }
  auto synth = LoadCsv(a.synthetic, real->schema());
  if (!synth.ok()) return synth.status();
  if (o.f1) {
    auto t = ResolveAttributes(a.targets, real->schema());
    if (!t.ok()) return t.status();
    o.targets = *t;
  }
  if (absl::Status s = ValidateEvaluateOptions(o, real->cols()); !s.ok()) {
    return s;
  }
  auto report = Evaluate(*real, *synth, o);
  if (!report.ok()) return report.status();

  for (const auto& [k, s] : report->kway) {
    out << "kway " << k << ": " << Num(s.mean) << " +/- " << Num(s.std) << "\n";
  }
  if (report->has_f1) {
    out << "f1: " << Num(report->f1.mean) << " +/- " << Num(report->f1.std)
        << "\n";
  }
  for (const std::string& n : report->notes) out << "note: " << n << "\n";
  if (a.output.empty()) return absl::OkStatus();

  if (absl::Status s = MakeDir(a.output); !s.ok()) return s;
  const std::string json_out = In(a.output, "report.json");
  const std::string csv_out = In(a.output, "report.csv");
  if (absl::Status s = WriteFile(json_out, ReportToJson(*report).dump(2) + "\n");
      !s.ok()) {
    return s;
  }
  if (absl::Status s = WriteFile(csv_out, ReportToCsv(*report)); !s.ok()) {
    return s;
  }
  nlohmann::json config = {{"real", a.real},         {"synthetic", a.synthetic},
                           {"schema", a.schema},     {"kway", o.kway},
                           {"f1", a.f1},             {"targets", o.targets},
                           {"seed", a.seed},         {"reps", a.reps},
                           {"distance", a.distance}};
  return WriteManifest(a.output, "evaluate", config,
                       {a.real, a.synthetic, a.schema}, {json_out, csv_out});
}

// -------------------------------------------------------------- accountant

struct AccountantArgs {
  double sigma = 1.0;
  double rate = 1.0;
  double sensitivity = 1.0;
  int alpha_max = 64;
  std::string alphas;
  std::string form = "log_moment";
  std::optional<double> delta;
  int64_t steps = 1;
  int64_t generator_interval = 1;
  int64_t batch = 1;
  int64_t data_size = 1;
  std::string curve_file;
  double target_epsilon = 1.0;
  std::string output;
};

absl::StatusOr<std::vector<int>> Orders(const AccountantArgs& a) {
  if (!a.alphas.empty()) {
    auto list = ParseIntList(a.alphas);
    if (!list.ok()) return list.status();
    for (size_t i = 0; i < list->size(); ++i) {
      if ((*list)[i] < 2 || (i > 0 && (*list)[i] <= (*list)[i - 1])) {
        return absl::InvalidArgumentError(
            "--alphas must be ascending integers >= 2");
      }
    }
    return *list;
  }
  if (a.alpha_max < 2) {
    return absl::InvalidArgumentError("--alpha-max must be at least 2");
  }
  return OrderGrid(2, a.alpha_max);
}

absl::StatusOr<SgmForm> ParseForm(const std::string& name) {
  if (name == "log_moment" || name == "log-moment") return SgmForm::kLogMoment;
  if (name == "collapsed") return SgmForm::kCollapsed;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown form \"", name, "\"; expected collapsed or log_moment"));
}

nlohmann::json CurveJson(const RdpCurve& c) {
  return {{"orders", c.orders}, {"values", c.values}};
}

absl::StatusOr<nlohmann::json> RunAccountant(const std::string& sub,
                                             const AccountantArgs& a) {
  auto form = ParseForm(a.form);
  if (!form.ok()) return form.status();
  nlohmann::json j;
  j["subcommand"] = sub;
  MisganAccountingParams mp;
  mp.steps = a.steps;
  mp.generator_interval = a.generator_interval;
  mp.batch = a.batch;
  mp.data_size = a.data_size;
  mp.sigma = a.sigma;
  if (sub == "sgm") {
    auto orders = Orders(a);
    if (!orders.ok()) return orders.status();
    auto curve = SgmRdpCurve(SgmParams{a.sigma, a.rate, a.sensitivity}, *orders,
                             *form);
    if (!curve.ok()) return curve.status();
    j["curve"] = CurveJson(*curve);
    if (a.delta) {
      auto eps = RdpToDp(*curve, *a.delta);
      if (!eps.ok()) return eps.status();
      j["delta"] = *a.delta;
      j["epsilon"] = *eps;
    }
  } else if (sub == "misgan") {
    auto orders = Orders(a);
    if (!orders.ok()) return orders.status();
    auto curve = MisganRdpCurve(mp, *orders, *form);
    if (!curve.ok()) return curve.status();
    j["curve"] = CurveJson(*curve);
    const double delta = a.delta.value_or(1e-5);
    auto eps = RdpToDp(*curve, delta);
    if (!eps.ok()) return eps.status();
    j["delta"] = delta;
    j["epsilon"] = *eps;
  } else if (sub == "convert") {
    if (absl::Status s = RequireFile(a.curve_file, "--curve-file"); !s.ok()) {
      return s;
    }
    auto cj = LoadJson(a.curve_file);
    if (!cj.ok()) return cj.status();
    RdpCurve curve;
    try {
      curve.orders = cj->at("orders").get<std::vector<int>>();
      curve.values = cj->at("values").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
      return absl::InvalidArgumentError(
          absl::StrCat("curve file needs orders and values: ", e.what()));
    }
    const double delta = a.delta.value_or(1e-5);
    auto eps = RdpToDp(curve, delta);
    if (!eps.ok()) return eps.status();
    j["delta"] = delta;
    j["epsilon"] = *eps;
  } else {
    auto orders = Orders(a);
    if (!orders.ok()) return orders.status();
    const double delta = a.delta.value_or(1e-5);
    auto sigma = SigmaForBudget(a.target_epsilon, delta, mp, *orders, *form);
    if (!sigma.ok()) return sigma.status();
    mp.sigma = *sigma;
    auto curve = MisganRdpCurve(mp, *orders, *form);
    if (!curve.ok()) return curve.status();
    auto eps = RdpToDp(*curve, delta);
    if (!eps.ok()) return eps.status();
    j["target_epsilon"] = a.target_epsilon;
    j["delta"] = delta;
    j["sigma"] = *sigma;
    j["epsilon"] = *eps;
  }
  return j;
}

// ------------------------------------------------------------------- bench

struct BenchArgs {
  std::string input;
  std::string schema;
  std::string methods;
  std::string mechanisms;
  std::string rates;
  std::string epsilons;
  std::string kway = "1,2";
  int reps = 3;
  uint64_t seed = 0;
  int threads = 0;
  std::string output;
};

absl::Status RunBenchCommand(const BenchArgs& a, std::ostream& out) {
  BenchOptions o;
  const auto split = [](const std::string& s) {
    return std::vector<std::string>(absl::StrSplit(s, ',', absl::SkipEmpty()));
  };
  if (!a.methods.empty()) o.methods = split(a.methods);
  if (!a.mechanisms.empty()) o.mechanisms = split(a.mechanisms);
  if (!a.rates.empty()) {
    auto r = ParseDoubleList(a.rates);
    if (!r.ok()) return r.status();
    o.rates = *r;
  }
  if (!a.epsilons.empty()) {
    o.epsilons.clear();
    for (const std::string& e : split(a.epsilons)) {
      auto v = ParseEpsilon(e);
      if (!v.ok()) return v.status();
      o.epsilons.push_back(*v);
    }
  }
  auto k = ParseIntList(a.kway);
  if (!k.ok()) return k.status();
  o.kway = *k;
  o.reps = a.reps;
  o.seed = a.seed;
  o.threads = a.threads;
  o.cell_dir = In(a.output, "cells");

  auto data = LoadData(a.input, a.schema, "--input");
  if (!data.ok()) return data.status();
  if (absl::Status s = ValidateBenchOptions(o, data->cols()); !s.ok()) return s;
  if (absl::Status s = MakeDir(a.output); !s.ok()) return s;
  auto result = RunBench(*data, o);
  if (!result.ok()) return result.status();

  const std::string csv_out = In(a.output, "bench.csv");
  if (absl::Status s = WriteFile(csv_out, BenchToCsv(result->rows)); !s.ok()) {
    return s;
  }
  nlohmann::json eps = nlohmann::json::array();
  for (double e : o.epsilons) eps.push_back(EpsilonToJson(e));
  nlohmann::json config = {{"input", a.input},     {"schema", a.schema},
                           {"methods", o.methods}, {"mechanisms", o.mechanisms},
                           {"rates", o.rates},     {"epsilons", eps},
                           {"kway", o.kway},       {"reps", o.reps},
                           {"seed", o.seed},       {"notes", result->notes}};
  if (absl::Status s = WriteManifest(a.output, "bench", config,
                                     {a.input, a.schema}, {csv_out});
      !s.ok()) {
    return s;
  }
  out << "bench: " << result->rows.size() << " rows -> " << csv_out << "\n";
  for (const std::string& n : result->notes) out << "note: " << n << "\n";
  return absl::OkStatus();
}

}  // namespace

int ExitCodeFor(const absl::Status& status) {
  if (status.ok()) return kExitOk;
  if (status.code() == absl::StatusCode::kInvalidArgument ||
      status.code() == absl::StatusCode::kOutOfRange) {
    return kExitUsage;
  }
  return kExitRuntime;
}

absl::StatusOr<std::vector<int>> ParseIntList(const std::string& text) {
  std::vector<int> out;
  for (absl::string_view part : absl::StrSplit(text, ',', absl::SkipEmpty())) {
    int v = 0;
    if (!absl::SimpleAtoi(part, &v)) {
      return absl::InvalidArgumentError(
          absl::StrCat("not an integer: \"", part, "\""));
    }
    out.push_back(v);
  }
  if (out.empty()) return absl::InvalidArgumentError("empty integer list");
  return out;
}

absl::StatusOr<std::vector<double>> ParseDoubleList(const std::string& text) {
  std::vector<double> out;
  for (absl::string_view part : absl::StrSplit(text, ',', absl::SkipEmpty())) {
    double v = 0;
    if (!absl::SimpleAtod(part, &v) || !std::isfinite(v)) {
      return absl::InvalidArgumentError(
          absl::StrCat("not a number: \"", part, "\""));
    }
    out.push_back(v);
  }
  if (out.empty()) return absl::InvalidArgumentError("empty number list");
  return out;
}

absl::StatusOr<double> ParseEpsilon(const std::string& text) {
  if (text == "inf") return kInfiniteEpsilon;
  double v = 0;
  if (!absl::SimpleAtod(text, &v) || !std::isfinite(v) || !(v > 0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be a positive number or \"inf\", got \"",
                     text, "\""));
  }
  return v;
}

absl::StatusOr<PhiInput> LoadPhi(const std::string& path) {
  PhiInput in;
  if (fs::path(path).extension() == ".csv") {
    auto mask = LoadMaskCsv(path);
    if (!mask.ok()) return mask.status();
    in.names = mask->names;
    const size_t k = mask->names.size();
    for (size_t j = 0; j < k; ++j) {
      int64_t set = 0;
      for (int64_t i = 0; i < mask->rows; ++i) {
        set += mask->mask[j * mask->rows + i];
      }
      in.phi.push_back(mask->rows > 0 ? static_cast<double>(set) / mask->rows
                                      : 0.0);
    }
    return in;
  }
  auto j = LoadJson(path);
  if (!j.ok()) return j.status();
  try {
    const nlohmann::json& phi = j->at("phi");
    if (phi.is_object()) {
      for (const auto& [name, v] : phi.items()) {
        in.names.push_back(name);
        in.phi.push_back(v.get<double>());
      }
      if (j->contains("attributes")) {
        return absl::InvalidArgumentError(
            "phi given by name: omit \"attributes\"");
      }
    } else {
      in.phi = phi.get<std::vector<double>>();
      if (j->contains("attributes")) {
        in.names = j->at("attributes").get<std::vector<std::string>>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": bad phi file: ", e.what()));
  }
  if (!in.names.empty() && in.names.size() != in.phi.size()) {
    return absl::InvalidArgumentError("phi and attributes differ in length");
  }
  return in;
}

absl::StatusOr<std::vector<MarginalQuery>> QueriesFromJson(
    const nlohmann::json& j, const std::vector<std::string>& names) {
  std::vector<MarginalQuery> out;
  try {
    std::vector<std::string> local = names;
    if (j.contains("attributes")) {
      local = j.at("attributes").get<std::vector<std::string>>();
    }
    for (const auto& q : j.at("queries")) {
      MarginalQuery mq;
      for (const auto& a : q.at("attrs")) {
        if (a.is_number_integer()) {
          mq.attrs.push_back(a.get<int>());
          continue;
        }
        const std::string name = a.get<std::string>();
        auto it = std::find(local.begin(), local.end(), name);
        if (it == local.end()) {
          return absl::InvalidArgumentError(
              absl::StrCat("unknown attribute \"", name, "\" in queries"));
        }
        mq.attrs.push_back(static_cast<int>(it - local.begin()));
      }
      mq.epsilon = q.at("epsilon").get<double>();
      mq.delta = q.value("delta", 0.0);
      out.push_back(std::move(mq));
    }
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("bad queries file: ", e.what()));
  }
  return out;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"missdp: differentially private synthesis with missing data"};
  app.require_subcommand(1);
  app.set_version_flag("--version", LibraryVersion());

  InjectArgs inject;
  CLI::App* inject_cmd =
      app.add_subcommand("inject", "Mask cells of a complete dataset");
  inject_cmd->add_option("--input", inject.input, "Complete CSV")->required();
  inject_cmd->add_option("--schema", inject.schema, "Schema JSON")->required();
  inject_cmd
      ->add_option("--mechanism", inject.mechanism,
                   "mcar | mcar-global | mar | mnar")
      ->required();
  inject_cmd->add_option("--rate", inject.rate, "Missing rate");
  inject_cmd->add_option("--phi", inject.phi,
                         "Per-column MCAR rates, one value or a comma list");
  inject_cmd->add_option("--feature-fraction", inject.feature_fraction,
                         "MAR/MNAR share of complete feature attributes");
  inject_cmd->add_option("--seed", inject.seed);
  inject_cmd->add_option("--output", inject.output, "Output directory")
      ->required();
  inject_cmd->add_option("--mar-sr-target", inject.mar_sr_target,
                         "Escalate the rate until this many rows are complete");

  SynthArgs synth;
  CLI::App* synth_cmd =
      app.add_subcommand("synthesize", "Fit a generator and sample rows");
  synth_cmd->add_option("--input", synth.input, "CSV with missing cells")
      ->required();
  synth_cmd->add_option("--schema", synth.schema, "Schema JSON")->required();
  synth_cmd->add_option(
      "--method", synth.method,
      "privbayes | privbayese | kamino | kamino-i | complete-row:<m> | "
      "impute-first:<imputer>:<split>:<m>");
  synth_cmd->add_option("--config", synth.config, "Synth config JSON");
  CLI::Option* eps_opt =
      synth_cmd->add_option("--epsilon", synth.epsilon, "Budget or \"inf\"");
  CLI::Option* delta_opt = synth_cmd->add_option(
      "--delta", synth.delta, "Delta; negative selects the default");
  CLI::Option* degree_opt =
      synth_cmd->add_option("--degree", synth.degree, "PrivBayes degree");
  CLI::Option* seed_opt = synth_cmd->add_option("--seed", synth.seed);
  CLI::Option* rows_opt =
      synth_cmd->add_option("--rows", synth.rows, "Output rows");
  synth_cmd->add_option("--output", synth.output, "Output directory")
      ->required();
  synth_cmd->add_flag("--save-model", synth.save_model, "Also write model.json");

  AmplifyArgs amp;
  CLI::App* amp_cmd =
      app.add_subcommand("amplify", "Plan sampling amplification for marginals");
  amp_cmd->add_option("--queries", amp.queries, "Queries JSON")->required();
  amp_cmd->add_option("--phi", amp.phi, "Phi JSON or mask CSV")->required();
  amp_cmd->add_option("--search", amp.search,
                      "exact | greedy | naive | columnwise");
  amp_cmd->add_option("--mode", amp.mode, "linear | exact | both");
  amp_cmd->add_option("--mechanism", amp.mechanism,
                      "Missing mechanism of the data");
  amp_cmd->add_option("--exact-cap", amp.exact_cap,
                      "Largest attribute count for exact search");
  amp_cmd->add_option("--output", amp.output, "Output directory");

  EvaluateArgs eval;
  CLI::App* eval_cmd =
      app.add_subcommand("evaluate", "Score synthetic data against real data");
  eval_cmd->add_option("--real", eval.real, "Real CSV")->required();
  eval_cmd->add_option("--synthetic", eval.synthetic, "Synthetic CSV")
      ->required();
  eval_cmd->add_option("--schema", eval.schema, "Schema JSON")->required();
  eval_cmd->add_option("--kway", eval.kway, "Marginal orders, e.g. 1,2");
  eval_cmd->add_flag("--f1", eval.f1, "Run the F1 protocol");
  eval_cmd->add_option("--targets", eval.targets, "all, or names/indices");
  eval_cmd->add_option("--seed", eval.seed);
  eval_cmd->add_option("--reps", eval.reps, "Repetitions");
  eval_cmd->add_option("--distance", eval.distance, "max_cell | tv");
  eval_cmd->add_option("--output", eval.output, "Output directory");

  AccountantArgs acct;
  CLI::App* acct_cmd = app.add_subcommand("accountant", "RDP accounting");
  acct_cmd->require_subcommand(1);
  const auto common = [&acct](CLI::App* c) {
    c->add_option("--alpha-max", acct.alpha_max, "Largest integer order");
    c->add_option("--alphas", acct.alphas, "Explicit order list");
    c->add_option("--form", acct.form, "log_moment | collapsed");
    c->add_option("--output", acct.output, "Output directory");
  };
  const auto misgan_flags = [&acct](CLI::App* c) {
    c->add_option("--steps", acct.steps, "T")->required();
    c->add_option("--generator-interval", acct.generator_interval, "T_G")
        ->required();
    c->add_option("--batch", acct.batch, "B")->required();
    c->add_option("--data-size", acct.data_size, "|D|")->required();
    c->add_option("--delta", acct.delta);
  };
  CLI::App* sgm_cmd = acct_cmd->add_subcommand("sgm", "Sampled Gaussian RDP");
  sgm_cmd->add_option("--sigma", acct.sigma)->required();
  sgm_cmd->add_option("--rate", acct.rate)->required();
  sgm_cmd->add_option("--sensitivity", acct.sensitivity);
  sgm_cmd->add_option("--delta", acct.delta, "Also convert to (ε, δ)");
  common(sgm_cmd);
  CLI::App* misgan_cmd =
      acct_cmd->add_subcommand("misgan", "MisGAN training schedule");
  misgan_cmd->add_option("--sigma", acct.sigma)->required();
  misgan_flags(misgan_cmd);
  common(misgan_cmd);
  CLI::App* convert_cmd =
      acct_cmd->add_subcommand("convert", "RDP curve to (ε, δ)");
  convert_cmd->add_option("--curve-file", acct.curve_file)->required();
  convert_cmd->add_option("--delta", acct.delta);
  convert_cmd->add_option("--output", acct.output, "Output directory");
  CLI::App* search_cmd = acct_cmd->add_subcommand(
      "sigma-search", "Smallest σ meeting a target ε");
  search_cmd->add_option("--target-epsilon", acct.target_epsilon)->required();
  misgan_flags(search_cmd);
  common(search_cmd);

  BenchArgs bench;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "Run the method x rate x epsilon grid");
  bench_cmd->add_option("--input", bench.input, "Complete CSV")->required();
  bench_cmd->add_option("--schema", bench.schema, "Schema JSON")->required();
  bench_cmd->add_option("--methods", bench.methods, "Comma list of methods");
  bench_cmd->add_option("--mechanisms", bench.mechanisms,
                        "Comma list of mechanisms");
  bench_cmd->add_option("--rates", bench.rates, "Comma list of rates");
  bench_cmd->add_option("--epsilons", bench.epsilons, "Comma list, inf allowed");
  bench_cmd->add_option("--kway", bench.kway, "Marginal orders");
  bench_cmd->add_option("--reps", bench.reps);
  bench_cmd->add_option("--seed", bench.seed);
  bench_cmd->add_option("--threads", bench.threads, "Worker threads, 0 = auto");
  bench_cmd->add_option("--output", bench.output, "Output directory")
      ->required();

  std::vector<char*> argv;
  for (const std::string& a : args) argv.push_back(const_cast<char*>(a.c_str()));
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "error: " << e.what() << "\n\n";
    CLI::App* at = &app;
    while (!at->get_subcommands().empty()) at = at->get_subcommands().front();
    err << at->help();
    return kExitUsage;
  }

  absl::Status status;
  if (*inject_cmd) {
    status = RunInject(inject, out);
  } else if (*synth_cmd) {
    synth.epsilon_set = eps_opt->count() > 0;
    synth.delta_set = delta_opt->count() > 0;
    synth.degree_set = degree_opt->count() > 0;
    synth.seed_set = seed_opt->count() > 0;
    synth.rows_set = rows_opt->count() > 0;
    status = RunSynthesize(synth, out);
  } else if (*amp_cmd) {
    status = RunAmplify(amp, out);
  } else if (*eval_cmd) {
    status = RunEvaluate(eval, out);
  } else if (*acct_cmd) {
    const std::string sub = acct_cmd->get_subcommands().front()->get_name();
    auto report = RunAccountant(sub, acct);
    status = report.status();
    if (report.ok()) {
      out << report->dump(2) << "\n";
      if (!acct.output.empty()) {
        status = MakeDir(acct.output);
        const std::string path = In(acct.output, "accountant.json");
        if (status.ok()) status = WriteFile(path, report->dump(2) + "\n");
        std::vector<std::string> inputs;
        if (sub == "convert") inputs.push_back(acct.curve_file);
        nlohmann::json config = {
            {"subcommand", sub},
            {"sigma", acct.sigma},
            {"rate", acct.rate},
            {"sensitivity", acct.sensitivity},
            {"alpha_max", acct.alpha_max},
            {"alphas", acct.alphas},
            {"form", acct.form},
            {"steps", acct.steps},
            {"generator_interval", acct.generator_interval},
            {"batch", acct.batch},
            {"data_size", acct.data_size},
            {"target_epsilon", acct.target_epsilon}};
        if (acct.delta) config["delta"] = *acct.delta;
        if (status.ok()) {
          status = WriteManifest(acct.output, "accountant " + sub, config,
                                 inputs, {path});
        }
      }
    }
  } else if (*bench_cmd) {
    status = RunBenchCommand(bench, out);
  }
  if (!status.ok()) {
    err << "error: " << status.message() << "\n";
    return ExitCodeFor(status);
  }
  return kExitOk;
}

}  // namespace missdp
