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

#include "missdp/tabular/marginal.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "missdp/kernels/kernels.h"

namespace missdp {

size_t ContingencyTable::Offset(std::span<const int> codes) const {
  size_t o = 0;
  for (size_t a = 0; a < cardinalities.size(); ++a) {
    o = o * cardinalities[a] + codes[a];
  }
  return o;
}

std::vector<int> ContingencyTable::Decode(size_t offset) const {
  std::vector<int> codes(cardinalities.size());
  for (size_t a = cardinalities.size(); a-- > 0;) {
    codes[a] = static_cast<int>(offset % cardinalities[a]);
    offset /= cardinalities[a];
  }
  return codes;
}

std::vector<uint8_t> IncompleteRowFlags(const Dataset& d,
                                        std::span<const int> attrs) {
  std::vector<uint8_t> flags(d.rows(), 0);
  const auto& k = kernels::Active();
  for (int j : attrs) k.or_mask(flags, d.mask(j));
  return flags;
}

int64_t CountCompleteRows(const Dataset& d, std::span<const int> attrs) {
  const auto flags = IncompleteRowFlags(d, attrs);
  return static_cast<int64_t>(std::count(flags.begin(), flags.end(), 0));
}

Dataset CompleteRows(const Dataset& d, std::span<const int> attrs) {
  const auto flags = IncompleteRowFlags(d, attrs);
  std::vector<int64_t> keep;
  keep.reserve(flags.size());
  for (int64_t i = 0; i < d.rows(); ++i) {
    if (!flags[i]) keep.push_back(i);
  }
  return d.SelectRows(keep);
}

std::vector<int> AllAttributes(const Schema& schema) {
  std::vector<int> all(schema.size());
  std::iota(all.begin(), all.end(), 0);
  return all;
}

absl::StatusOr<ContingencyTable> Marginal(const Dataset& d,
                                          std::span<const int> attrs,
                                          const MarginalOptions& options) {
  if (attrs.empty()) {
    return absl::InvalidArgumentError("marginal needs at least one attribute");
  }
  std::set<int> seen;
  ContingencyTable t;
  int64_t cells = 1;
  for (int j : attrs) {
    if (j < 0 || j >= d.cols()) {
      return absl::OutOfRangeError(absl::StrCat("attribute index ", j,
                                                " outside the schema"));
    }
    if (!seen.insert(j).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("attribute ", j, " repeated in marginal"));
    }
    const int card = d.schema().attribute(j).cardinality();
    cells *= card;
    if (cells > options.cell_cap) {
      std::vector<std::string> names;
      for (int a : attrs) names.push_back(d.schema().attribute(a).name());
      return absl::ResourceExhaustedError(absl::StrCat(
          "marginal over {", absl::StrJoin(names, ", "), "} exceeds the cap of ",
          options.cell_cap, " cells"));
    }
    t.attrs.push_back(j);
    t.cardinalities.push_back(card);
  }
  t.counts.assign(cells, 0.0);

  const auto& k = kernels::Active();
  const size_t n = d.rows();
  std::vector<int32_t> index(n, 0);
  std::vector<uint8_t> incomplete(n, 0);
  for (size_t a = 0; a < t.attrs.size(); ++a) {
    k.accumulate_index(index, d.codes(t.attrs[a]), t.cardinalities[a]);
    k.or_mask(incomplete, d.mask(t.attrs[a]));
  }
  for (size_t i = 0; i < n; ++i) {
    if (incomplete[i]) continue;
    t.counts[index[i]] += 1.0;
    ++t.observed_rows;
  }
  return t;
}

ContingencyTable Project(const ContingencyTable& table,
                         std::span<const int> keep) {
  ContingencyTable out;
  std::vector<int> positions;
  for (int attr : keep) {
    for (size_t a = 0; a < table.attrs.size(); ++a) {
      if (table.attrs[a] == attr) {
        positions.push_back(static_cast<int>(a));
        out.attrs.push_back(attr);
        out.cardinalities.push_back(table.cardinalities[a]);
      }
    }
  }
  size_t cells = 1;
  for (int c : out.cardinalities) cells *= c;
  out.counts.assign(cells, 0.0);
  out.observed_rows = table.observed_rows;
  std::vector<int> sub(positions.size());
  for (size_t o = 0; o < table.counts.size(); ++o) {
    const std::vector<int> codes = table.Decode(o);
    for (size_t p = 0; p < positions.size(); ++p) sub[p] = codes[positions[p]];
    out.counts[out.Offset(sub)] += table.counts[o];
  }
  return out;
}

double MutualInformationBits(const ContingencyTable& table) {
  const double total =
      std::accumulate(table.counts.begin(), table.counts.end(), 0.0);
  if (!(total > 0.0) || table.cardinalities.size() < 2) return 0.0;
  const size_t x_card = table.cardinalities[0];
  const size_t rest = table.counts.size() / x_card;
  std::vector<double> px(x_card, 0.0), prest(rest, 0.0);
  for (size_t x = 0; x < x_card; ++x) {
    for (size_t r = 0; r < rest; ++r) {
      const double c = table.counts[x * rest + r];
      px[x] += c;
      prest[r] += c;
    }
  }
  double mi = 0.0;
  for (size_t x = 0; x < x_card; ++x) {
    for (size_t r = 0; r < rest; ++r) {
      const double c = table.counts[x * rest + r];
      if (c <= 0.0) continue;
      mi += c / total * std::log2(c * total / (px[x] * prest[r]));
    }
  }
  return std::max(mi, 0.0);
}

absl::StatusOr<double> MutualInformation(const Dataset& d, int x,
                                         std::span<const int> parents,
                                         const MarginalOptions& options) {
  if (parents.empty()) {
    return absl::InvalidArgumentError("mutual information needs a parent");
  }
  if (std::find(parents.begin(), parents.end(), x) != parents.end()) {
    return absl::InvalidArgumentError("attribute is its own parent");
  }
  std::vector<int> attrs = {x};
  attrs.insert(attrs.end(), parents.begin(), parents.end());
  auto table = Marginal(d, attrs, options);
  if (!table.ok()) return table.status();
  return MutualInformationBits(*table);
}

}  // namespace missdp
