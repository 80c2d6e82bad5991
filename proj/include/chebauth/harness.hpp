/*
 * Copyright 2026 The chebauth Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CHEBAUTH_HARNESS_HPP_
#define CHEBAUTH_HARNESS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "chebauth/chaotic_map.hpp"

namespace chebauth {

inline constexpr std::string_view kReportSchemaId = "chebauth-report/1";

enum ExitStatus : int {
  kExitReproduced = 0,
  kExitContradicted = 2,
  kExitConfigError = 3,
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Fixture {
  std::string identity = "patient-0042@tmis.example";
  std::string password = "sunflower7";
  std::string wrong_password = "sunflower8";
  std::string new_password = "marigold9";

  // JSON object with any subset of the four keys above.
  static Fixture from_file(const std::filesystem::path& path);
};

struct RunConfig {
  std::uint64_t seed = 42;
  std::size_t width_bits = 256;
  std::string prime{kDefaultPrimeDecimal};
  std::uint64_t delta_t = 5;
  std::uint64_t channel_delay = 1;
  std::optional<std::filesystem::path> dictionary;
  std::optional<std::filesystem::path> fixture_file;
  Fixture fixture;
  bool correct_old_password = false;
  unsigned threads = 1;
};

struct RunReport {
  nlohmann::ordered_json document;
  int exit_status = kExitReproduced;

  // Pretty-printed JSON with a trailing newline. Without wall time the output
  // depends only on the configuration.
  std::string dump(bool include_wall_time = true) const;
};

// All four throw ConfigError on invalid parameters or unreadable files.
RunReport cmd_honest_run(const RunConfig& config);
RunReport cmd_guess_attack(const RunConfig& config);
RunReport cmd_wrong_login(const RunConfig& config);
RunReport cmd_dos_demo(const RunConfig& config);

}  // namespace chebauth

#endif  // CHEBAUTH_HARNESS_HPP_
