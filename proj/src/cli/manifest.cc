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

#include "missdp/cli/manifest.h"

#include <openssl/evp.h>

#include <filesystem>

#include "absl/strings/str_format.h"
#include "missdp/tabular/csv.h"

#ifndef MISSDP_VERSION
#define MISSDP_VERSION "unknown"
#endif

namespace missdp {

std::string LibraryVersion() { return MISSDP_VERSION; }

std::string Sha256Hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr);
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    absl::StrAppendFormat(&hex, "%02x", digest[i]);
  }
  return hex;
}

absl::StatusOr<std::string> FileSha256(const std::string& path) {
  auto bytes = ReadFile(path);
  if (!bytes.ok()) return bytes.status();
  return Sha256Hex(*bytes);
}

absl::Status WriteManifest(const std::string& dir, const std::string& command,
                           const nlohmann::json& config,
                           const std::vector<std::string>& inputs,
                           const std::vector<std::string>& outputs) {
  const auto digests =
      [](const std::vector<std::string>& paths) -> absl::StatusOr<nlohmann::json> {
    nlohmann::json out = nlohmann::json::array();
    for (const std::string& p : paths) {
      auto h = FileSha256(p);
      if (!h.ok()) return h.status();
      out.push_back({{"path", p}, {"sha256", *h}});
    }
    return out;
  };
  auto in = digests(inputs);
  if (!in.ok()) return in.status();
  auto out = digests(outputs);
  if (!out.ok()) return out.status();
  nlohmann::json m;
  m["command"] = command;
  m["version"] = LibraryVersion();
  m["config"] = config;
  m["inputs"] = *in;
  m["outputs"] = *out;
  return WriteFile((std::filesystem::path(dir) / "manifest.json").string(),
                   m.dump(2) + "\n");
}

}  // namespace missdp
