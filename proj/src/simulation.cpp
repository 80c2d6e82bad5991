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

#include "chebauth/simulation.hpp"

namespace chebauth {

std::string_view to_string(Direction direction) {
  return direction == Direction::kUserToServer ? "user->server"
                                               : "server->user";
}

Simulation Simulation::create(std::uint64_t seed, SystemParams params,
                              std::uint64_t channel_delay) {
  return Simulation{server_setup(seed, std::move(params)), LogicalClock{},
                    RandomSource(derive_seed(seed, 1)),
                    RandomSource(derive_seed(seed, 2)), channel_delay, {}};
}

SessionResult run_session(Simulation& sim, SmartCard& card,
                          std::string_view password) {
  SessionResult result;
  result.first_event = sim.transcript.size();

  auto [request, ctx] =
      user_login_start(card, password, sim.params(), sim.clock, sim.user_rng,
                       result.user_counts);
  sim.clock.advance(sim.channel_delay);
  sim.transcript.push_back(
      {Direction::kUserToServer, request, sim.clock.now()});

  auto served = server_handle_login(sim.server, request, sim.clock,
                                    sim.server_rng, result.server_counts);
  if (!served) {
    result.reject_reason = served.reason();
    result.rejected_at = SessionStage::kServer;
    result.event_count = sim.transcript.size() - result.first_event;
    return result;
  }
  const ServerAccept& accept = served.value();
  result.server_sk = accept.outcome.sk;

  sim.clock.advance(sim.channel_delay);
  sim.transcript.push_back(
      {Direction::kServerToUser, accept.response, sim.clock.now()});

  auto finished = user_handle_response(card, ctx, accept.response,
                                       sim.params(), sim.clock,
                                       result.user_counts);
  result.event_count = sim.transcript.size() - result.first_event;
  if (!finished) {
    result.reject_reason = finished.reason();
    result.rejected_at = SessionStage::kUser;
    return result;
  }
  UserAccept done = std::move(finished).value();
  result.user_sk = std::move(done.sk);
  card = std::move(done.card);
  return result;
}

}  // namespace chebauth
