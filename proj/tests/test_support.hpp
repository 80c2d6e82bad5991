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

#ifndef CHEBAUTH_TESTS_TEST_SUPPORT_HPP_
#define CHEBAUTH_TESTS_TEST_SUPPORT_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "chebauth/chaotic_map.hpp"
#include "chebauth/primitives.hpp"
#include "chebauth/protocol.hpp"
#include "chebauth/simulation.hpp"

namespace chebauth::testing {

// Textbook O(n) recurrence, kept independent from the doubling ladder.
inline mpz_class cheb_naive(std::uint64_t n, const mpz_class& x,
                            const mpz_class& p) {
  if (n == 0) return mpz_class(1) % p;
  mpz_class prev = 1;
  mpz_class cur = x % p;
  for (std::uint64_t i = 1; i < n; ++i) {
    mpz_class next = (2 * x * cur - prev) % p;
    if (next < 0) next += p;
    prev = cur;
    cur = next;
  }
  return cur;
}

inline SystemParams small_params(std::size_t width_bits, const char* prime,
                                 std::uint64_t delta_t = 5) {
  return SystemParams{width_bits, PrimeField::from_decimal(prime), delta_t};
}

// Printable ASCII string of the given length.
inline std::string random_word(RandomSource& rng, std::size_t length) {
  static constexpr char kAlphabet[] =
      "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789!#$%&*";
  std::string out;
  out.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    out.push_back(kAlphabet[rng.draw_below(sizeof(kAlphabet) - 1)]);
  }
  return out;
}

struct Enrolled {
  Simulation sim;
  SmartCard card;
  std::string identity;
  std::string password;
};

inline Enrolled enroll(std::uint64_t seed, SystemParams params = {},
                       std::string identity = "alice@tmis.example",
                       std::string password = "correct horse",
                       std::uint64_t channel_delay = 1) {
  Simulation sim = Simulation::create(seed, std::move(params), channel_delay);
  OpCounts counts;
  SmartCard card =
      registration(sim.server, identity, password, sim.user_rng, counts);
  return Enrolled{std::move(sim), std::move(card), std::move(identity),
                  std::move(password)};
}

}  // namespace chebauth::testing

#endif  // CHEBAUTH_TESTS_TEST_SUPPORT_HPP_
