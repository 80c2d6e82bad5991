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

// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "chebauth/adversary.hpp"
#include "chebauth/harness.hpp"
#include "chebauth/protocol.hpp"
#include "chebauth/simulation.hpp"
#include "test_support.hpp"

namespace chebauth {
namespace {

using testing::cheb_naive;
using testing::random_word;

struct Verdict {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  const char* id;
  const char* name;
  double budget_s;  // runtime bound; <= 0 means unbounded
  std::function<Verdict()> run;
};

Verdict fail(std::string detail) { return Verdict{false, std::move(detail)}; }

struct Fixture {
  Simulation sim;
  SmartCard card;
  std::string identity;
  std::string password;
};

// Fixture with an identity and password drawn from the run seed.
Fixture random_fixture(std::uint64_t seed) {
  RandomSource words(derive_seed(seed, 100));
  std::string identity = random_word(words, 4 + words.draw_below(12));
  std::string password = random_word(words, 6 + words.draw_below(10));
  Simulation sim = Simulation::create(seed);
  OpCounts counts;
  SmartCard card =
      registration(sim.server, identity, password, sim.user_rng, counts);
  return Fixture{std::move(sim), std::move(card), std::move(identity),
                 std::move(password)};
}

std::vector<std::string> candidate_list(std::uint64_t seed, std::size_t n,
                                        const std::string& avoid) {
  RandomSource rng(seed);
  std::set<std::string> seen{avoid};
  std::vector<std::string> out;
  out.reserve(n);
  while (out.size() < n) {
    std::string w = random_word(rng, 5 + rng.draw_below(8));
    if (seen.insert(w).second) out.push_back(std::move(w));
  }
  return out;
}

// 1. Key agreement over 100 seeded honest runs, two sessions each.
Verdict key_agreement() {
  std::size_t sessions = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Fixture f = random_fixture(seed);
    for (int i = 0; i < 2; ++i) {
      SessionResult s = run_session(f.sim, f.card, f.password);
      if (!s.key_agreement()) {
        return fail("seed " + std::to_string(seed) + " session " +
                    std::to_string(i + 1) + " did not agree");
      }
      ++sessions;
    }
  }
  return {true, std::to_string(sessions) + " sessions, sk == sk' bit-exact"};
}

// 2. Semigroup identity and agreement with the O(n) recurrence.
Verdict semigroup_oracle() {
  RandomSource rng(20260101);
  const std::shared_ptr<const PrimeField> fields[] = {
      PrimeField::from_decimal("101"), PrimeField::default_field()};
  std::size_t triples = 0;
  std::size_t points = 0;
  for (const auto& field : fields) {
    for (int i = 0; i < 1000; ++i) {
      const std::uint64_t u = 1 + rng.draw_below(1ULL << 20);
      const std::uint64_t v = 1 + rng.draw_below(1ULL << 20);
      const FieldElement x = bits_to_field(rng.draw_bits(256), field);
      const FieldElement tuv = cheb_eval(u, cheb_eval(v, x));
      if (tuv != cheb_eval(v, cheb_eval(u, x)) ||
          tuv != cheb_eval(u * v, x)) {
        return fail("semigroup violated at p=" + field->modulus_decimal() +
                    " u=" + std::to_string(u) + " v=" + std::to_string(v));
      }
      ++triples;
    }
    for (int point = 0; point < 100; ++point) {
      const FieldElement x = bits_to_field(rng.draw_bits(256), field);
      const mpz_class& p = field->modulus();
      mpz_class prev = 1;
      mpz_class cur = x.value();
      if (cheb_eval(0, x).value() != 1) return fail("T_0 != 1");
      for (std::uint64_t n = 1; n <= 10000; ++n) {
        if (cheb_eval(n, x).value() != cur) {
          return fail("oracle mismatch at n=" + std::to_string(n) +
                      " p=" + field->modulus_decimal());
        }
        mpz_class next = (2 * x.value() * cur - prev) % p;
        if (next < 0) next += p;
        prev = cur;
        cur = next;
      }
      ++points;
    }
  }
  // Spot check the shared helper against the inline recurrence.
  auto f = PrimeField::from_decimal("101");
  if (cheb_naive(6, 3, f->modulus()) != 7) return fail("naive oracle broken");
  return {true, std::to_string(triples) + " triples, " +
                    std::to_string(points) + " points x 10^4 exponents"};
}

// 3. Offline guessing with a 10^4 dictionary.
Verdict guessing_attack() {
  Fixture f = random_fixture(303);
  SessionResult s = run_session(f.sim, f.card, f.password);
  if (!s.key_agreement()) return fail("victim login failed");
  const auto& m1 = std::get<LoginRequest>(f.sim.transcript.front().message);
  const ExtractedCard stolen = ExtractedCard::extract(f.card);

  RandomSource rng(404);
  const std::vector<std::string> words =
      candidate_list(505, 10000, f.password);
  const std::size_t k = 1 + rng.draw_below(10000);  // 1-based position
  std::vector<std::string> planted(words.begin(), words.end() - 1);
  planted.insert(planted.begin() + static_cast<std::ptrdiff_t>(k - 1),
                 f.password);
  AttackReport hit = offline_guess(stolen, m1, Dictionary::from_lines(planted),
                                   f.sim.params());
  if (hit.recovered_password != f.password) return fail("password not recovered");
  if (hit.guesses != k || hit.evaluations != k) {
    return fail("expected " + std::to_string(k) + " evaluations, got " +
                std::to_string(hit.evaluations));
  }

  AttackReport miss = offline_guess(stolen, m1, Dictionary::from_lines(words),
                                    f.sim.params());
  if (miss.recovered_password || miss.evaluations != 10000 ||
      miss.guesses != 10000) {
    return fail("miss case evaluated " + std::to_string(miss.evaluations));
  }
  return {true, "hit at k=" + std::to_string(k) + " after exactly k "
                "evaluations; miss after exactly 10000"};
}

// 4. Each leak is necessary.
Verdict assumption_necessity() {
  std::size_t false_zeroed = 0;
  std::size_t false_foreign = 0;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    Fixture victim = random_fixture(1000 + trial);
    Fixture other = random_fixture(5000 + trial);
    // The other card shares the victim's password.
    OpCounts reg;
    other.card = registration(other.sim.server, other.identity,
                              victim.password, other.sim.user_rng, reg);
    SessionResult sv = run_session(victim.sim, victim.card, victim.password);
    SessionResult so = run_session(other.sim, other.card, victim.password);
    if (!sv.key_agreement() || !so.key_agreement()) {
      return fail("fixture login failed at trial " + std::to_string(trial));
    }
    const auto& m1_victim =
        std::get<LoginRequest>(victim.sim.transcript.front().message);
    const auto& m1_other =
        std::get<LoginRequest>(other.sim.transcript.front().message);
    const ExtractedCard stolen = ExtractedCard::extract(victim.card);
    OpCounts counts;
    if (!guess_predicate(victim.password, stolen, m1_victim,
                         victim.sim.params(), counts)) {
      return fail("positive control failed at trial " + std::to_string(trial));
    }
    false_zeroed += guess_predicate(victim.password, ExtractedCard::zeroed(256),
                                    m1_victim, victim.sim.params(), counts);
    false_foreign += guess_predicate(victim.password, stolen, m1_other,
                                     victim.sim.params(), counts);
  }
  if (false_zeroed != 0 || false_foreign != 0) {
    return fail(std::to_string(false_zeroed) + " zeroed-card and " +
                std::to_string(false_foreign) + " foreign-M1 false validations");
  }
  return {true, "0/100 zeroed-card, 0/100 foreign-M1 validations"};
}

// 5. Wasted work of a wrong-password login.
Verdict wrong_login() {
  Fixture f = random_fixture(555);
  AttackReport r =
      wrong_login_experiment(f.card, f.password + "?", f.sim);
  const OpCounts expected{6, 4, 1};
  if (!r.server_rejected || r.reject_reason != RejectReason::kAuthFailure) {
    return fail("server did not reject with AuthFailure");
  }
  if (r.counts != expected) {
    return fail("counts hash=" + std::to_string(r.counts.n_hash) +
                " xor=" + std::to_string(r.counts.n_xor) +
                " cheb=" + std::to_string(r.counts.n_cheb));
  }
  return {true, "AuthFailure, counts {hash: 6, xor: 4, cheb: 1}"};
}

// 6. Lock-out after a wrong-old-password change, and the control.
Verdict denial_of_service() {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Fixture f = random_fixture(7000 + seed);
    const std::string wrong_old = f.password + "0";
    const std::string fresh = "new-" + f.password;
    AttackReport dos =
        dos_experiment(f.card, f.password, wrong_old, fresh, f.sim);
    if (!dos.dos_confirmed || dos.probes.size() != 4) {
      return fail("lock-out not reproduced for fixture " + std::to_string(seed));
    }
    Fixture g = random_fixture(7000 + seed);
    AttackReport control = dos_control_experiment(g.card, g.password, fresh, g.sim);
    if (control.dos_confirmed || !control.probes.back().session.key_agreement()) {
      return fail("control login failed for fixture " + std::to_string(seed));
    }
  }
  return {true, "50/50 lock-outs (new, true, wrong-old rejected); 50/50 "
                "controls log in"};
}

// 7. Byte-identical honest-run reports.
Verdict determinism() {
  RunConfig config;
  const std::string a = cmd_honest_run(config).dump(false);
  const std::string b = cmd_honest_run(config).dump(false);
  if (a != b) return fail("reports differ");
  return {true, std::to_string(a.size()) + " identical bytes"};
}

}  // namespace
}  // namespace chebauth

int main() {
  using namespace chebauth;
  const Criterion criteria[] = {
      {"AC1", "key agreement over 100 honest runs", 5.0, key_agreement},
      {"AC2", "semigroup and recurrence oracle", 10.0, semigroup_oracle},
      {"AC3", "offline guessing attack", 10.0, guessing_attack},
      {"AC4", "attack needs card and transcript", 0.0, assumption_necessity},
      {"AC5", "wrong-password login overhead", 1.0, wrong_login},
      {"AC6", "password-change denial of service", 5.0, denial_of_service},
      {"AC7", "report determinism", 0.0, determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    if (v.pass && c.budget_s > 0 && secs >= c.budget_s) {
      v = fail("runtime " + std::to_string(secs) + " s exceeds budget");
    }
    failures += v.pass ? 0 : 1;
    std::printf("[%s] %s %s: %s (%.3f s)\n", v.pass ? "PASS" : "FAIL", c.id,
                c.name, v.detail.c_str(), secs);
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(std::size(criteria)) - failures,
              std::size(criteria));
  return failures == 0 ? 0 : 1;
}
