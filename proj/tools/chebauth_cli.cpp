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

// Seeded driver for the protocol simulator and the attack experiments.
//
//   chebauth honest-run       setup, registration, two logins
//   chebauth guess-attack     offline dictionary attack on a stolen card
//   chebauth wrong-login-demo work wasted by a mistyped password
//   chebauth dos-demo         card lock-out after a bad password change
//
// Exit codes: 0 expected outcome reproduced, 2 outcome contradicted,
// 3 configuration or I/O error.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "chebauth/harness.hpp"

namespace {

using chebauth::RunConfig;
using chebauth::RunReport;

void add_common_options(CLI::App& cmd, RunConfig& config, std::string& out,
                        bool& no_timing) {
  cmd.add_option("--seed", config.seed, "Run seed")->capture_default_str();
  cmd.add_option("--width", config.width_bits,
                 "Bit width l of every protocol value (multiple of 8, <= 256)")
      ->capture_default_str();
  cmd.add_option("--prime", config.prime, "Field modulus p, decimal");
  cmd.add_option("--delta-t", config.delta_t, "Freshness window in ticks")
      ->capture_default_str();
  cmd.add_option("--channel-delay", config.channel_delay,
                 "Ticks each message spends on the channel")
      ->capture_default_str();
  cmd.add_option("--identity", config.fixture.identity, "User identity");
  cmd.add_option("--password", config.fixture.password, "True password");
  cmd.add_option("--wrong-password", config.fixture.wrong_password,
                 "Mistyped password");
  cmd.add_option("--new-password", config.fixture.new_password,
                 "Replacement password for dos-demo");
  cmd.add_option("--fixture", config.fixture_file,
                 "JSON file with identity/password/wrong_password/new_password");
  cmd.add_option("--out", out, "Write the report here instead of stdout");
  cmd.add_flag("--no-timing", no_timing, "Omit wall_time_ms fields");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chaotic-map smart-card authentication simulator"};
  app.require_subcommand(1);

  RunConfig config;
  std::string out;
  bool no_timing = false;
  std::string dict;

  auto* honest = app.add_subcommand("honest-run", "Setup, registration and two honest logins");
  auto* guess = app.add_subcommand("guess-attack", "Offline password guessing from a stolen card");
  auto* wrong = app.add_subcommand("wrong-login-demo", "One login with a wrong password");
  auto* dos = app.add_subcommand("dos-demo", "Password change with a wrong old password");
  for (CLI::App* cmd : {honest, guess, wrong, dos}) {
    add_common_options(*cmd, config, out, no_timing);
  }
  guess->add_option("--dict", dict, "Dictionary file, one password per line")
      ->required();
  guess->add_option("--threads", config.threads, "Scan threads")
      ->check(CLI::Range(1U, 256U))
      ->capture_default_str();
  dos->add_flag("--correct-old-password", config.correct_old_password,
                "Control run: change the password with the correct old one");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return chebauth::kExitConfigError;
  }
  if (!dict.empty()) config.dictionary = dict;

  RunReport report;
  try {
    if (honest->parsed()) report = chebauth::cmd_honest_run(config);
    if (guess->parsed()) report = chebauth::cmd_guess_attack(config);
    if (wrong->parsed()) report = chebauth::cmd_wrong_login(config);
    if (dos->parsed()) report = chebauth::cmd_dos_demo(config);
  } catch (const chebauth::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return chebauth::kExitConfigError;
  }

  const std::string text = report.dump(!no_timing);
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(out, std::ios::binary);
    if (!(file << text)) {
      std::cerr << "error: cannot write report to " << out << "\n";
      return chebauth::kExitConfigError;
    }
  }
  return report.exit_status;
}
