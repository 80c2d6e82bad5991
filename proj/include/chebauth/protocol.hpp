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

#ifndef CHEBAUTH_PROTOCOL_HPP_
#define CHEBAUTH_PROTOCOL_HPP_

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <variant>

#include "chebauth/bitstring.hpp"
#include "chebauth/chaotic_map.hpp"
#include "chebauth/primitives.hpp"

namespace chebauth {

/// Parameters shared by the server and every card in a run.
struct SystemParams {
  std::size_t width_bits = kDefaultWidthBits;
  std::shared_ptr<const PrimeField> field = PrimeField::default_field();
  // Maximum accepted gap between a message timestamp and its receipt.
  std::uint64_t delta_t = 5;
};

/// Server long-term state. There is no per-user table: the identity is
/// recovered from the pseudonym pair carried in each login request.
struct ServerState {
  BitString mk;
  SystemParams params;
};

struct SmartCard {
  BitString im1;
  BitString im2;
  BitString d1;
  BitString d2;

  friend bool operator==(const SmartCard&, const SmartCard&) = default;
};

// M1
struct LoginRequest {
  BitString im1;
  BitString im2;
  FieldElement tu_k;
  BitString x1;
  Timestamp t1;
};

// M2
struct LoginResponse {
  BitString y1;
  BitString y2;
  BitString y3;
  FieldElement tv_k;
  Timestamp t2;
};

// Card-side secrets held between sending M1 and processing M2. Must be
// discarded once the session finishes either way.
struct UserLoginContext {
  std::uint64_t u = 0;
  BitString k;
  FieldElement tu_k;
  Timestamp t1;
};

struct ServerLoginOutcome {
  BitString sk;
  BitString im1_new;
  BitString im2_new;
};

struct ServerAccept {
  LoginResponse response;
  ServerLoginOutcome outcome;
};

struct UserAccept {
  BitString sk;
  SmartCard card;  // card with refreshed pseudonyms
};

enum class RejectReason { kStaleTimestamp, kAuthFailure };

std::string_view to_string(RejectReason reason);

/// Either an accepted value or the reason a party terminated the session.
template <typename T>
class Outcome {
 public:
  Outcome(T value) : state_(std::move(value)) {}  // NOLINT: implicit by intent
  Outcome(RejectReason reason) : state_(reason) {}  // NOLINT

  bool accepted() const { return std::holds_alternative<T>(state_); }
  explicit operator bool() const { return accepted(); }

  const T& value() const& {
    if (!accepted()) throw std::logic_error("Outcome holds a rejection");
    return std::get<T>(state_);
  }
  T&& value() && {
    if (!accepted()) throw std::logic_error("Outcome holds a rejection");
    return std::get<T>(std::move(state_));
  }
  RejectReason reason() const {
    if (accepted()) throw std::logic_error("Outcome holds a value");
    return std::get<RejectReason>(state_);
  }

 private:
  std::variant<T, RejectReason> state_;
};

class EmptyCredential : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Draws mk from RandomSource(seed).
ServerState server_setup(std::uint64_t seed, SystemParams params = {});

/// Issues a card for (id, password). Draws b (user side) and then r (server
/// side) from rng. The identity enters the card as its l-bit digest h(ID).
SmartCard registration(const ServerState& server, std::string_view id,
                       std::string_view password, RandomSource& rng,
                       OpCounts& counts);

/// Login step 1 on the card. No local password check happens here, so a
/// wrong password still yields a well-formed request.
std::pair<LoginRequest, UserLoginContext> user_login_start(
    const SmartCard& card, std::string_view password,
    const SystemParams& params, const LogicalClock& clock, RandomSource& rng,
    OpCounts& counts);

/// Login step 2 on the server. Receipt time T2 is clock.now(); it is also the
/// timestamp carried in M2. Draws r_new and then v from rng.
Outcome<ServerAccept> server_handle_login(const ServerState& server,
                                          const LoginRequest& request,
                                          const LogicalClock& clock,
                                          RandomSource& rng, OpCounts& counts);

/// Login step 3 on the card. The input card is never modified; on success
/// the refreshed card is returned alongside sk'.
Outcome<UserAccept> user_handle_response(const SmartCard& card,
                                         const UserLoginContext& ctx,
                                         const LoginResponse& response,
                                         const SystemParams& params,
                                         const LogicalClock& clock,
                                         OpCounts& counts);

/// Card-local password change. The old password is not verified.
SmartCard change_password(const SmartCard& card, std::string_view old_password,
                          std::string_view new_password,
                          const SystemParams& params, OpCounts& counts);

}  // namespace chebauth

#endif  // CHEBAUTH_PROTOCOL_HPP_
