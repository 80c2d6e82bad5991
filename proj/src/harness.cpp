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

#include <chrono>
#include <fstream>

#include "chebauth/adversary.hpp"
#include "chebauth/protocol.hpp"
#include "chebauth/simulation.hpp"

namespace chebauth {

namespace {

using nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

// Expected wasted work for a wrong-password login: 4 XOR, 6 hash, 1 Chebyshev.
constexpr OpCounts kWrongLoginOverhead{6, 4, 1};

struct Prepared {
  Fixture fixture;
  Simulation sim;
  SmartCard card;
  OpCounts registration_counts;
};

Prepared prepare(const RunConfig& config) {
  SystemParams params;
  try {
    check_width(config.width_bits);
    params.width_bits = config.width_bits;
    params.field = PrimeField::from_decimal(config.prime);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  params.delta_t = config.delta_t;
  if (config.threads == 0) throw ConfigError("threads must be at least 1");

  Fixture fixture = config.fixture;
  if (config.fixture_file) fixture = Fixture::from_file(*config.fixture_file);
  if (fixture.identity.empty() || fixture.password.empty() ||
      fixture.wrong_password.empty() || fixture.new_password.empty()) {
    throw ConfigError("fixture strings must be non-empty");
  }

  Simulation sim =
      Simulation::create(config.seed, std::move(params), config.channel_delay);
  OpCounts counts;
  SmartCard card = registration(sim.server, fixture.identity, fixture.password,
                                sim.user_rng, counts);
  return Prepared{std::move(fixture), std::move(sim), std::move(card), counts};
}

ordered_json counts_json(const OpCounts& c) {
  return ordered_json{{"hash", c.n_hash}, {"xor", c.n_xor}, {"cheb", c.n_cheb}};
}

ordered_json card_json(const SmartCard& card) {
  return ordered_json{{"IM1", card.im1.hex()},
                      {"IM2", card.im2.hex()},
                      {"D1", card.d1.hex()},
                      {"D2", card.d2.hex()}};
}

template <typename T>
ordered_json nullable(const std::optional<T>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json reason_json(const std::optional<RejectReason>& reason) {
  return reason ? ordered_json(std::string(to_string(*reason)))
                : ordered_json(nullptr);
}

ordered_json message_json(const LoginRequest& m) {
  return ordered_json{{"type", "LoginRequest"},
                      {"IM1", m.im1.hex()},
                      {"IM2", m.im2.hex()},
                      {"TuK", m.tu_k.decimal()},
                      {"X1", m.x1.hex()},
                      {"T1", m.t1.ticks}};
}

ordered_json message_json(const LoginResponse& m) {
  return ordered_json{{"type", "LoginResponse"},
                      {"Y1", m.y1.hex()},
                      {"Y2", m.y2.hex()},
                      {"Y3", m.y3.hex()},
                      {"TvK", m.tv_k.decimal()},
                      {"T2", m.t2.ticks}};
}

ordered_json session_json(const std::string& label, const SessionResult& s,
                          const Transcript& transcript) {
  ordered_json events = ordered_json::array();
  for (std::size_t i = s.first_event; i < s.first_event + s.event_count; ++i) {
    const TranscriptEvent& e = transcript[i];
    events.push_back(ordered_json{
        {"direction", std::string(to_string(e.direction))},
        {"delivered_at", e.delivered_at.ticks},
        {"message",
         std::visit([](const auto& m) { return message_json(m); }, e.message)}});
  }
  ordered_json rejected_by = nullptr;
  if (s.rejected_at) {
    rejected_by = *s.rejected_at == SessionStage::kServer ? "server" : "user";
  }
  auto hex_or_null = [](const std::optional<BitString>& b) {
    return b ? ordered_json(b->hex()) : ordered_json(nullptr);
  };
  return ordered_json{
      {"label", label},
      {"outcome", s.accepted() ? "accepted" : "rejected"},
      {"reject_reason", reason_json(s.reject_reason)},
      {"rejected_by", rejected_by},
      {"server_sk", hex_or_null(s.server_sk)},
      {"user_sk", hex_or_null(s.user_sk)},
      {"key_agreement", s.key_agreement()},
      {"op_counts",
       ordered_json{{"user", counts_json(s.user_counts)},
                    {"server", counts_json(s.server_counts)}}},
      {"transcript", std::move(events)}};
}

ordered_json attack_json(std::string_view kind, const AttackReport& r) {
  return ordered_json{{"kind", std::string(kind)},
                      {"dictionary_size", nullptr},
                      {"dictionary_contains_password", nullptr},
                      {"recovered_password", nullable(r.recovered_password)},
                      {"guesses", nullptr},
                      {"evaluations", nullptr},
                      {"match_count", nullptr},
                      {"multiple_matches", nullptr},
                      {"server_rejected", r.server_rejected},
                      {"reject_reason", reason_json(r.reject_reason)},
                      {"dos_confirmed", r.dos_confirmed},
                      {"expected_op_counts", nullptr},
                      {"op_counts", counts_json(r.counts)},
                      {"wall_time_ms", r.wall_time_ms}};
}

ordered_json config_json(const RunConfig& config, const Fixture& fixture) {
  auto path_or_null = [](const std::optional<std::filesystem::path>& p) {
    return p ? ordered_json(p->string()) : ordered_json(nullptr);
  };
  return ordered_json{
      {"seed", config.seed},
      {"width_bits", config.width_bits},
      {"prime", config.prime},
      {"delta_t", config.delta_t},
      {"channel_delay", config.channel_delay},
      {"digest", std::string(kDigestName)},
      {"dictionary", path_or_null(config.dictionary)},
      {"fixture_file", path_or_null(config.fixture_file)},
      {"fixture",
       ordered_json{{"identity", fixture.identity},
                    {"password", fixture.password},
                    {"wrong_password", fixture.wrong_password},
                    {"new_password", fixture.new_password}}},
      {"correct_old_password", config.correct_old_password},
      {"threads", config.threads}};
}

class ReportBuilder {
 public:
  ReportBuilder(std::string_view command, const RunConfig& config,
                const Prepared& prepared)
      : start_(Clock::now()) {
    doc_["schema"] = std::string(kReportSchemaId);
    doc_["command"] = std::string(command);
    doc_["config"] = config_json(config, prepared.fixture);
    doc_["registration"] =
        ordered_json{{"card", card_json(prepared.card)},
                     {"op_counts", counts_json(prepared.registration_counts)}};
    doc_["sessions"] = ordered_json::array();
    doc_["password_change"] = nullptr;
    doc_["attack"] = nullptr;
    total_ += prepared.registration_counts;
  }

  void add_session(const std::string& label, const SessionResult& s,
                   const Transcript& transcript, bool count = true) {
    doc_["sessions"].push_back(session_json(label, s, transcript));
    if (count) total_ += s.user_counts + s.server_counts;
  }

  ordered_json& doc() { return doc_; }
  void add_counts(const OpCounts& c) { total_ += c; }

  RunReport finish(int exit_status) {
    doc_["op_counts"] = counts_json(total_);
    doc_["exit_status"] = exit_status;
    doc_["wall_time_ms"] =
        std::chrono::duration<double, std::milli>(Clock::now() - start_)
            .count();
    return RunReport{std::move(doc_), exit_status};
  }

 private:
  Clock::time_point start_;
  ordered_json doc_;
  OpCounts total_;
};

void strip_wall_time(ordered_json& j) {
  if (j.is_object()) {
    j.erase("wall_time_ms");
    for (auto& [key, value] : j.items()) strip_wall_time(value);
  } else if (j.is_array()) {
    for (auto& value : j) strip_wall_time(value);
  }
}

}  // namespace

Fixture Fixture::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open fixture file: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed fixture file " + path.string() + ": " +
                      e.what());
  }
  if (!j.is_object()) throw ConfigError("fixture file must hold a JSON object");
  Fixture f;
  for (const auto& [key, value] : j.items()) {
    std::string* slot = nullptr;
    if (key == "identity") slot = &f.identity;
    if (key == "password") slot = &f.password;
    if (key == "wrong_password") slot = &f.wrong_password;
    if (key == "new_password") slot = &f.new_password;
    if (!slot) throw ConfigError("unknown fixture key: " + key);
    if (!value.is_string()) throw ConfigError("fixture key not a string: " + key);
    *slot = value.get<std::string>();
  }
  return f;
}

std::string RunReport::dump(bool include_wall_time) const {
  if (include_wall_time) return document.dump(2) + "\n";
  ordered_json copy = document;
  strip_wall_time(copy);
  return copy.dump(2) + "\n";
}

RunReport cmd_honest_run(const RunConfig& config) {
  Prepared prep = prepare(config);
  ReportBuilder report("honest-run", config, prep);

  bool agreed = true;
  for (const char* label : {"session-1", "session-2"}) {
    SessionResult s = run_session(prep.sim, prep.card, prep.fixture.password);
    report.add_session(label, s, prep.sim.transcript);
    agreed = agreed && s.key_agreement();
    if (!s.accepted()) break;
  }
  return report.finish(agreed ? kExitReproduced : kExitContradicted);
}

RunReport cmd_guess_attack(const RunConfig& config) {
  if (!config.dictionary) throw ConfigError("guess-attack requires --dict");
  Dictionary dict;
  try {
    dict = Dictionary::from_file(*config.dictionary);
  } catch (const DictionaryError& e) {
    throw ConfigError(e.what());
  }

  Prepared prep = prepare(config);
  ReportBuilder report("guess-attack", config, prep);

  SessionResult victim =
      run_session(prep.sim, prep.card, prep.fixture.password);
  report.add_session("victim-login", victim, prep.sim.transcript);
  if (!victim.accepted()) return report.finish(kExitContradicted);

  const auto& intercepted =
      std::get<LoginRequest>(prep.sim.transcript[victim.first_event].message);
  ExtractedCard stolen = ExtractedCard::extract(prep.card);
  GuessOptions options;
  options.threads = config.threads;
  AttackReport attack =
      offline_guess(stolen, intercepted, dict, prep.sim.params(), options);
  report.add_counts(attack.counts);

  const bool planted = dict.contains(prep.fixture.password);
  ordered_json j = attack_json("offline-guess", attack);
  j["dictionary_size"] = dict.size();
  j["dictionary_contains_password"] = planted;
  j["guesses"] = attack.guesses;
  j["evaluations"] = attack.evaluations;
  j["match_count"] = attack.match_count;
  j["multiple_matches"] = attack.multiple_matches;
  report.doc()["attack"] = std::move(j);

  const bool reproduced =
      planted ? attack.recovered_password == prep.fixture.password
              : !attack.recovered_password.has_value();
  return report.finish(reproduced ? kExitReproduced : kExitContradicted);
}

RunReport cmd_wrong_login(const RunConfig& config) {
  Prepared prep = prepare(config);
  if (prep.fixture.wrong_password == prep.fixture.password) {
    throw ConfigError("wrong_password must differ from password");
  }
  ReportBuilder report("wrong-login-demo", config, prep);

  AttackReport attack;
  try {
    attack = wrong_login_experiment(prep.card, prep.fixture.wrong_password,
                                    prep.sim);
  } catch (const ExperimentInvalid& e) {
    throw ConfigError(e.what());
  }
  for (const LoginProbe& probe : attack.probes) {
    report.add_session(probe.label, probe.session, prep.sim.transcript, false);
  }
  report.add_counts(attack.counts);

  ordered_json j = attack_json("wrong-login", attack);
  j["expected_op_counts"] = counts_json(kWrongLoginOverhead);
  report.doc()["attack"] = std::move(j);

  const bool reproduced = attack.server_rejected &&
                          attack.reject_reason == RejectReason::kAuthFailure &&
                          attack.counts == kWrongLoginOverhead;
  return report.finish(reproduced ? kExitReproduced : kExitContradicted);
}

RunReport cmd_dos_demo(const RunConfig& config) {
  Prepared prep = prepare(config);
  if (!config.correct_old_password &&
      prep.fixture.wrong_password == prep.fixture.password) {
    throw ConfigError("wrong_password must differ from password");
  }
  ReportBuilder report("dos-demo", config, prep);

  AttackReport attack;
  try {
    attack = config.correct_old_password
                 ? dos_control_experiment(prep.card, prep.fixture.password,
                                          prep.fixture.new_password, prep.sim)
                 : dos_experiment(prep.card, prep.fixture.password,
                                  prep.fixture.wrong_password,
                                  prep.fixture.new_password, prep.sim);
  } catch (const ExperimentInvalid& e) {
    throw ConfigError(e.what());
  }
  for (const LoginProbe& probe : attack.probes) {
    report.add_session(probe.label, probe.session, prep.sim.transcript, false);
  }
  report.add_counts(attack.counts);
  report.doc()["password_change"] = ordered_json{
      {"old_password", config.correct_old_password ? "correct" : "wrong"},
      {"new_password", prep.fixture.new_password}};
  report.doc()["attack"] = attack_json("dos", attack);

  bool reproduced = attack.dos_confirmed;
  if (config.correct_old_password) {
    reproduced = !attack.dos_confirmed && !attack.probes.empty() &&
                 attack.probes.back().session.key_agreement();
  }
  return report.finish(reproduced ? kExitReproduced : kExitContradicted);
}

}  // namespace chebauth
