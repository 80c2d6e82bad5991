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

#ifndef CHEBAUTH_SIMULATION_HPP_
#define CHEBAUTH_SIMULATION_HPP_

#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "chebauth/protocol.hpp"

namespace chebauth {

enum class Direction { kUserToServer, kServerToUser };

std::string_view to_string(Direction direction);

struct TranscriptEvent {
  Direction direction;
  std::variant<LoginRequest, LoginResponse> message;
  Timestamp delivered_at;
};

// Everything that crossed the public channel, in delivery order.
using Transcript = std::vector<TranscriptEvent>;

/// One user-server pairing sharing a logical clock and a public channel.
/// The user and the server each draw from their own RandomSource.
struct Simulation {
  ServerState server;
  LogicalClock clock;
  RandomSource user_rng;
  RandomSource server_rng;
  std::uint64_t channel_delay = 1;
  Transcript transcript;

  // mk from server_setup(seed); party streams from derive_seed(seed, 1|2).
  static Simulation create(std::uint64_t seed, SystemParams params = {},
                           std::uint64_t channel_delay = 1);

  const SystemParams& params() const { return server.params; }
};

enum class SessionStage { kServer, kUser };

struct SessionResult {
  std::optional<RejectReason> reject_reason;
  std::optional<SessionStage> rejected_at;
  std::optional<BitString> server_sk;
  std::optional<BitString> user_sk;
  OpCounts user_counts;
  OpCounts server_counts;
  std::size_t first_event = 0;  // index into Simulation::transcript
  std::size_t event_count = 0;

  bool accepted() const { return !reject_reason.has_value(); }
  bool key_agreement() const {
    return server_sk && user_sk && *server_sk == *user_sk;
  }
};

/// Runs one full login: M1 goes out, the channel delay elapses, the server
/// answers, the delay elapses again. On success the card's pseudonyms are
/// replaced; on any rejection the card is left untouched.
SessionResult run_session(Simulation& sim, SmartCard& card,
                          std::string_view password);

}  // namespace chebauth

#endif  // CHEBAUTH_SIMULATION_HPP_
