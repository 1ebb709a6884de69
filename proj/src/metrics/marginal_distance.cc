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

#include "missdp/metrics/marginal_distance.h"

#include <algorithm>

#include "absl/strings/str_cat.h"
#include "missdp/dpcore/random.h"
#include "missdp/kernels/kernels.h"
#include "missdp/tabular/marginal.h"

namespace missdp {
namespace {

uint64_t Binomial(int n, int k) {
  uint64_t c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > (uint64_t{1} << 40)) return c;
  }
  return c;
}

void AllSubsets(int cols, int k, std::vector<std::vector<int>>& out) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    out.push_back(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == cols - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int t = i + 1; t < k; ++t) idx[t] = idx[t - 1] + 1;
  }
}

}  // namespace

absl::StatusOr<DistanceKind> ParseDistanceKind(const std::string& name) {
  if (name == "max_cell" || name == "linf") return DistanceKind::kMaxCell;
  if (name == "tv") return DistanceKind::kTotalVariation;
  return absl::InvalidArgumentError(absl::StrCat("unknown distance \"", name, "\""));
}

std::string DistanceKindName(DistanceKind kind) {
  return kind == DistanceKind::kMaxCell ? "max_cell" : "tv";
}

absl::StatusOr<double> MarginalDistance(const Dataset& real,
                                        const Dataset& synth,
                                        std::span<const int> attrs,
                                        DistanceKind kind) {
  if (!(real.schema() == synth.schema())) {
    return absl::InvalidArgumentError("datasets have different schemas");
  }
  auto a = Marginal(real, attrs);
  if (!a.ok()) return a.status();
  auto b = Marginal(synth, attrs);
  if (!b.ok()) return b.status();
  if (a->observed_rows == 0 || b->observed_rows == 0) return 1.0;
  for (double& v : a->counts) v /= static_cast<double>(a->observed_rows);
  for (double& v : b->counts) v /= static_cast<double>(b->observed_rows);
  const kernels::KernelTable& k = kernels::Active();
  if (kind == DistanceKind::kMaxCell) return k.max_abs_diff(a->counts, b->counts);
  return 0.5 * k.sum_abs_diff(a->counts, b->counts);
}

std::vector<std::vector<int>> KwaySubsets(int cols, int k,
                                          const KwayOptions& options) {
  std::vector<std::vector<int>> out;
  if (k < 1 || k > cols) return out;
  if (k <= 2 || Binomial(cols, k) <= static_cast<uint64_t>(options.sample_limit)) {
    AllSubsets(cols, k, out);
    return out;
  }
  Rng rng = MakeRng(options.seed, 0x6b776179);
  for (int s = 0; s < options.sample_limit; ++s) {
    std::vector<int> subset;
    for (int64_t a : SampleWithoutReplacement(rng, cols, k)) {
      subset.push_back(static_cast<int>(a));
    }
    std::sort(subset.begin(), subset.end());
    out.push_back(std::move(subset));
  }
  return out;
}

absl::StatusOr<double> KwayDistance(const Dataset& real, const Dataset& synth,
                                    int k, const KwayOptions& options) {
  if (!(real.schema() == synth.schema())) {
    return absl::InvalidArgumentError("datasets have different schemas");
  }
  if (k < 1 || k > real.cols()) {
    return absl::InvalidArgumentError(
        absl::StrCat("k must lie in [1, ", real.cols(), "], got ", k));
  }
  const auto subsets = KwaySubsets(real.cols(), k, options);
  double total = 0.0;
  for (const auto& s : subsets) {
    auto d = MarginalDistance(real, synth, s, options.kind);
    if (!d.ok()) return d.status();
    total += *d;
  }
  return total / static_cast<double>(subsets.size());
}

}  // namespace missdp
