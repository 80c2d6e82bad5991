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

#include "chebauth/protocol.hpp"

namespace chebauth {

namespace {

// Binds the hash width and the caller's counters.
class Ops {
 public:
  Ops(const SystemParams& params, OpCounts& counts)
      : params_(params), counts_(counts) {}

  template <typename... Parts>
  BitString h(const Parts&... parts) const {
    return hash_h(concat(parts...), params_.width_bits, counts_);
  }
  BitString H(const FieldElement& a, const FieldElement& b,
              const FieldElement& c) const {
    return hash_H(a, b, c, params_.width_bits, counts_);
  }
  BitString x(const BitString& a, const BitString& b) const {
    return xor_bits(a, b, counts_);
  }
  FieldElement cheb(std::uint64_t n, const FieldElement& arg) const {
    return cheb_eval(n, arg, counts_);
  }
  FieldElement to_field(const BitString& s) const {
    return bits_to_field(s, params_.field);
  }

 private:
  const SystemParams& params_;
  OpCounts& counts_;
};

bool fresh(Timestamp sent, Timestamp received, std::uint64_t delta_t) {
  return received >= sent && received.ticks - sent.ticks <= delta_t;
}

}  // namespace

std::string_view to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::kStaleTimestamp:
      return "StaleTimestamp";
    case RejectReason::kAuthFailure:
      return "AuthFailure";
  }
  return "Unknown";
}

ServerState server_setup(std::uint64_t seed, SystemParams params) {
  check_width(params.width_bits);
  if (!params.field) throw std::invalid_argument("server_setup: no field");
  RandomSource rng(seed);
  BitString mk = rng.draw_bits(params.width_bits);
  return ServerState{std::move(mk), std::move(params)};
}

SmartCard registration(const ServerState& server, std::string_view id,
                       std::string_view password, RandomSource& rng,
                       OpCounts& counts) {
  if (id.empty()) throw EmptyCredential("registration: empty identity");
  if (password.empty()) throw EmptyCredential("registration: empty password");
  const Ops op(server.params, counts);
  const std::size_t l = server.params.width_bits;

  // User: blind the password with b and send (ID, W = h(PW || b)).
  BitString b = rng.draw_bits(l);
  BitString w = op.h(password, b);

  // Server: personalize the card.
  BitString r = rng.draw_bits(l);
  BitString id_l = op.h(id);
  SmartCard card;
  card.im1 = op.x(server.mk, r);
  card.im2 = op.x(op.h(server.mk, r), id_l);
  card.d1 = op.x(op.h(id_l, server.mk), w);

  // User: D2 = h(PW) xor b.
  card.d2 = op.x(op.h(password), b);
  return card;
}

std::pair<LoginRequest, UserLoginContext> user_login_start(
    const SmartCard& card, std::string_view password,
    const SystemParams& params, const LogicalClock& clock, RandomSource& rng,
    OpCounts& counts) {
  const Ops op(params, counts);
  const std::uint64_t u = rng.draw_exponent();
  const Timestamp t1 = clock.now();

  BitString b = op.x(card.d2, op.h(password));
  BitString k = op.x(card.d1, op.h(password, b));
  FieldElement tu_k = op.cheb(u, op.to_field(k));
  BitString x1 = op.h(k, card.im1, card.im2, tu_k, t1);

  LoginRequest request{card.im1, card.im2, tu_k, std::move(x1), t1};
  UserLoginContext ctx{u, std::move(k), std::move(tu_k), t1};
  return {std::move(request), std::move(ctx)};
}

Outcome<ServerAccept> server_handle_login(const ServerState& server,
                                          const LoginRequest& request,
                                          const LogicalClock& clock,
                                          RandomSource& rng, OpCounts& counts) {
  const SystemParams& params = server.params;
  const Ops op(params, counts);
  const Timestamp t2 = clock.now();
  if (!fresh(request.t1, t2, params.delta_t)) {
    return RejectReason::kStaleTimestamp;
  }

  BitString r = op.x(request.im1, server.mk);
  BitString id = op.x(request.im2, op.h(server.mk, r));
  BitString k = op.h(id, server.mk);
  if (op.h(k, request.im1, request.im2, request.tu_k, request.t1) !=
      request.x1) {
    return RejectReason::kAuthFailure;
  }

  BitString r_new = rng.draw_bits(params.width_bits);
  const std::uint64_t v = rng.draw_exponent();
  BitString im1_new = op.x(server.mk, r_new);
  BitString im2_new = op.x(op.h(server.mk, r_new), id);
  FieldElement tv_tu_k = op.cheb(v, request.tu_k);
  FieldElement tv_k = op.cheb(v, op.to_field(k));
  BitString sk = op.H(request.tu_k, tv_k, tv_tu_k);

  BitString pad = op.h(sk, t2);
  LoginResponse response{op.x(im1_new, pad), op.x(im2_new, pad),
                         op.h(sk, im1_new, im2_new, tv_k, t2), tv_k, t2};
  return ServerAccept{std::move(response),
                      ServerLoginOutcome{std::move(sk), std::move(im1_new),
                                         std::move(im2_new)}};
}

Outcome<UserAccept> user_handle_response(const SmartCard& card,
                                         const UserLoginContext& ctx,
                                         const LoginResponse& response,
                                         const SystemParams& params,
                                         const LogicalClock& clock,
                                         OpCounts& counts) {
  const Ops op(params, counts);
  if (!fresh(response.t2, clock.now(), params.delta_t)) {
    return RejectReason::kStaleTimestamp;
  }

  BitString sk =
      op.H(ctx.tu_k, response.tv_k, op.cheb(ctx.u, response.tv_k));
  BitString pad = op.h(sk, response.t2);
  BitString im1_new = op.x(response.y1, pad);
  BitString im2_new = op.x(response.y2, pad);
  if (op.h(sk, im1_new, im2_new, response.tv_k, response.t2) != response.y3) {
    return RejectReason::kAuthFailure;
  }

  SmartCard updated = card;
  updated.im1 = std::move(im1_new);
  updated.im2 = std::move(im2_new);
  return UserAccept{std::move(sk), std::move(updated)};
}

SmartCard change_password(const SmartCard& card, std::string_view old_password,
                          std::string_view new_password,
                          const SystemParams& params, OpCounts& counts) {
  const Ops op(params, counts);
  BitString b = op.x(card.d2, op.h(old_password));
  SmartCard updated = card;
  updated.d1 =
      op.x(op.x(card.d1, op.h(old_password, b)), op.h(new_password, b));
  updated.d2 = op.x(op.h(new_password), b);
  return updated;
}

}  // namespace chebauth
