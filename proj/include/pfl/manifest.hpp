// pfl/manifest.hpp

// Copyright 2026  pfl authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef PFL_MANIFEST_HPP_
#define PFL_MANIFEST_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"

namespace pfl {

inline constexpr const char* kToolName = "pfl";
inline constexpr const char* kToolVersion = "0.1.0";

// Reproducibility record embedded in every JSON report: the resolved
// configuration, content digests of all inputs, and the seed. The timestamp
// can be suppressed (--no-timestamp) for byte-identical golden runs.
struct RunManifest {
  std::string subcommand;
  std::map<std::string, std::string> config;
  std::map<std::string, std::string> inputs;  // path -> content digest
  std::optional<std::uint64_t> seed;
  std::optional<std::string> timestamp;

  void add_input(const std::filesystem::path& path);

  nlohmann::ordered_json to_json() const;
};

// FNV-1a 64-bit over the file bytes, rendered as "fnv1a64:<hex>".
std::string file_digest(const std::filesystem::path& path);

std::string iso8601_utc_now();

}  // namespace pfl

#endif  // PFL_MANIFEST_HPP_
