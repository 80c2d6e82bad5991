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

#include "chebauth/harness.hpp"

#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"

#include "chebauth/primitives.hpp"
#include "test_support.hpp"

namespace chebauth {
namespace {

using nlohmann::ordered_json;

std::filesystem::path write_temp(const std::string& name,
                                 const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path, std::ios::binary) << text;
  return path;
}

std::string word_list(std::size_t n, std::size_t plant_at,
                      const std::string& password) {
  std::string text;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == plant_at) {
      text += password;
    } else {
      text += "cand" + std::to_string(i);
    }
    text += '\n';
  }
  return text;
}

TEST_CASE("honest-run agrees on both sessions") {
  RunConfig config;
  RunReport r = cmd_honest_run(config);
  CHECK(r.exit_status == kExitReproduced);
  const ordered_json& doc = r.document;
  CHECK(doc["schema"] == "chebauth-report/1");
  CHECK(doc["command"] == "honest-run");
  CHECK(doc["config"]["seed"] == 42);
  CHECK(doc["config"]["prime"] == std::string(kDefaultPrimeDecimal));
  REQUIRE(doc["sessions"].size() == 2);
  for (const auto& s : doc["sessions"]) {
    CHECK(s["key_agreement"] == true);
    CHECK(s["server_sk"] == s["user_sk"]);
    CHECK(s["transcript"].size() == 2);
  }
  CHECK(doc["sessions"][0]["transcript"][0]["message"]["IM1"] ==
        doc["registration"]["card"]["IM1"]);
  CHECK(doc["sessions"][1]["transcript"][0]["message"]["IM1"] !=
        doc["registration"]["card"]["IM1"]);

  std::vector<std::string> keys;
  for (const auto& [k, v] : doc.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{
                    "schema", "command", "config", "registration", "sessions",
                    "password_change", "attack", "op_counts", "exit_status",
                    "wall_time_ms"});
}

TEST_CASE("honest-run with a slow channel is rejected as stale") {
  RunConfig config;
  config.channel_delay = 6;
  RunReport r = cmd_honest_run(config);
  CHECK(r.exit_status == kExitContradicted);
  REQUIRE(r.document["sessions"].size() == 1);
  CHECK(r.document["sessions"][0]["reject_reason"] == "StaleTimestamp");
  CHECK(r.document["sessions"][0]["rejected_by"] == "server");
}

TEST_CASE("reports are deterministic apart from wall time") {
  RunConfig config;
  config.seed = 7;
  const std::string a = cmd_honest_run(config).dump(false);
  const std::string b = cmd_honest_run(config).dump(false);
  CHECK(a == b);
  CHECK(a.find("wall_time_ms") == std::string::npos);
  config.seed = 8;
  CHECK(cmd_honest_run(config).dump(false) != a);
}

TEST_CASE("guess-attack") {
  RunConfig config;
  SUBCASE("planted") {
    auto path = write_temp("chebauth_planted.txt",
                           word_list(10000, 4321, config.fixture.password));
    config.dictionary = path;
    RunReport r = cmd_guess_attack(config);
    CHECK(r.exit_status == kExitReproduced);
    const auto& attack = r.document["attack"];
    CHECK(attack["kind"] == "offline-guess");
    CHECK(attack["recovered_password"] == config.fixture.password);
    CHECK(attack["guesses"] == 4322);
    CHECK(attack["dictionary_size"] == 10000);
    CHECK(attack["dictionary_contains_password"] == true);
    std::filesystem::remove(path);
  }
  SUBCASE("unplanted") {
    auto path = write_temp("chebauth_unplanted.txt", word_list(500, 9999, ""));
    config.dictionary = path;
    RunReport r = cmd_guess_attack(config);
    CHECK(r.exit_status == kExitReproduced);
    CHECK(r.document["attack"]["recovered_password"].is_null());
    CHECK(r.document["attack"]["guesses"] == 500);
    std::filesystem::remove(path);
  }
  SUBCASE("missing file") {
    config.dictionary = "/nonexistent/chebauth/words.txt";
    CHECK_THROWS_AS(cmd_guess_attack(config), ConfigError);
  }
  SUBCASE("no dictionary") {
    CHECK_THROWS_AS(cmd_guess_attack(config), ConfigError);
  }
}

TEST_CASE("wrong-login-demo reproduces the overhead") {
  RunReport r = cmd_wrong_login(RunConfig{});
  CHECK(r.exit_status == kExitReproduced);
  const auto& attack = r.document["attack"];
  CHECK(attack["server_rejected"] == true);
  CHECK(attack["reject_reason"] == "AuthFailure");
  CHECK(attack["op_counts"] ==
        ordered_json{{"hash", 6}, {"xor", 4}, {"cheb", 1}});
  CHECK(attack["expected_op_counts"] == attack["op_counts"]);

  RunConfig same;
  same.fixture.wrong_password = same.fixture.password;
  CHECK_THROWS_AS(cmd_wrong_login(same), ConfigError);
}

TEST_CASE("dos-demo and its control") {
  RunReport r = cmd_dos_demo(RunConfig{});
  CHECK(r.exit_status == kExitReproduced);
  CHECK(r.document["attack"]["dos_confirmed"] == true);
  CHECK(r.document["sessions"].size() == 4);
  CHECK(r.document["password_change"]["old_password"] == "wrong");

  RunConfig control;
  control.correct_old_password = true;
  RunReport c = cmd_dos_demo(control);
  CHECK(c.exit_status == kExitReproduced);
  CHECK(c.document["attack"]["dos_confirmed"] == false);
  CHECK(c.document["sessions"].back()["key_agreement"] == true);
}

TEST_CASE("configuration errors") {
  RunConfig bad_prime;
  bad_prime.prime = "100";
  CHECK_THROWS_AS(cmd_honest_run(bad_prime), ConfigError);

  RunConfig bad_width;
  bad_width.width_bits = 100;
  CHECK_THROWS_AS(cmd_honest_run(bad_width), ConfigError);

  RunConfig missing_fixture;
  missing_fixture.fixture_file = "/nonexistent/fixture.json";
  CHECK_THROWS_AS(cmd_honest_run(missing_fixture), ConfigError);

  RunConfig no_threads;
  no_threads.threads = 0;
  CHECK_THROWS_AS(cmd_honest_run(no_threads), ConfigError);

  RunConfig empty_new;
  empty_new.fixture.new_password.clear();
  CHECK_THROWS_AS(cmd_dos_demo(empty_new), ConfigError);

  auto unknown = write_temp("chebauth_fixture_bad.json", R"({"pin": "1"})");
  RunConfig unknown_key;
  unknown_key.fixture_file = unknown;
  CHECK_THROWS_AS(cmd_honest_run(unknown_key), ConfigError);
  std::filesystem::remove(unknown);
}

TEST_CASE("fixture file overrides the inline fixture") {
  auto path = write_temp("chebauth_fixture.json",
                         R"({"identity": "dr-who", "password": "tardis"})");
  RunConfig config;
  config.fixture_file = path;
  RunReport r = cmd_honest_run(config);
  CHECK(r.exit_status == kExitReproduced);
  CHECK(r.document["config"]["fixture"]["identity"] == "dr-who");
  CHECK(r.document["config"]["fixture"]["password"] == "tardis");
  CHECK(r.document["config"]["fixture"]["new_password"] == Fixture{}.new_password);
  std::filesystem::remove(path);
}

TEST_CASE("small field and width run end to end") {
  RunConfig config;
  config.width_bits = 64;
  config.prime = "1000000007";
  CHECK(cmd_honest_run(config).exit_status == kExitReproduced);
  CHECK(cmd_wrong_login(config).exit_status == kExitReproduced);
  CHECK(cmd_dos_demo(config).exit_status == kExitReproduced);
}

}  // namespace
}  // namespace chebauth
