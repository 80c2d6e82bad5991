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

#ifndef CHEBAUTH_ADVERSARY_HPP_
#define CHEBAUTH_ADVERSARY_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "chebauth/protocol.hpp"
#include "chebauth/simulation.hpp"

namespace chebauth {

// Values read out of a victim's card.
struct ExtractedCard {
  BitString im1;
  BitString im2;
  BitString d1;
  BitString d2;

  static ExtractedCard extract(const SmartCard& card);
  static ExtractedCard zeroed(std::size_t width_bits);
};

class DictionaryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finite candidate list scanned in file order.
///
/// File format: UTF-8 text, one password per line, every line terminated by
/// LF, no blank lines and no comment syntax. Duplicates are rejected.
class Dictionary {
 public:
  Dictionary() = default;

  static Dictionary from_lines(std::vector<std::string> lines);
  static Dictionary parse(std::string_view text);
  static Dictionary from_file(const std::filesystem::path& path);

  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  const std::string& operator[](std::size_t i) const { return words_[i]; }
  auto begin() const { return words_.begin(); }
  auto end() const { return words_.end(); }
  bool contains(std::string_view word) const;

  std::string to_text() const;

 private:
  std::vector<std::string> words_;
};

class ExperimentInvalid : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct LoginProbe {
  std::string label;
  SessionResult session;
};

struct AttackReport {
  // Offline guessing.
  std::optional<std::string> recovered_password;
  std::size_t guesses = 0;      // 1-based index of the hit, or |dict| on a miss
  std::size_t evaluations = 0;  // predicate evaluations actually performed
  std::size_t match_count = 0;  // only exact when the whole list was scanned
  bool multiple_matches = false;

  // Online experiments.
  bool server_rejected = false;
  std::optional<RejectReason> reject_reason;
  bool dos_confirmed = false;
  std::vector<LoginProbe> probes;

  OpCounts counts;
  double wall_time_ms = 0.0;
};

/// Offline test of one candidate against an extracted card and an
/// intercepted M1: b* = D2 ^ h(PW*), K* = D1 ^ h(PW* || b*), then compare
/// h(K* || IM1 || IM2 || T_u(K) || T1) with X1. Pure apart from counts.
bool guess_predicate(std::string_view candidate, const ExtractedCard& card,
                     const LoginRequest& m1, const SystemParams& params,
                     OpCounts& counts);

struct GuessOptions {
  // Worker threads for the scan. The reported hit is always the first match
  // in dictionary order; with threads > 1, evaluations and counts include
  // speculative work past the hit.
  unsigned threads = 1;
  // Keep scanning after the first hit to count every matching candidate.
  bool exhaustive = false;
};

AttackReport offline_guess(const ExtractedCard& card, const LoginRequest& m1,
                           const Dictionary& dict, const SystemParams& params,
                           const GuessOptions& options = {});

/// One login with a wrong password. Counts cover the card's request and the
/// server's rejection. Throws ExperimentInvalid if the server accepts.
AttackReport wrong_login_experiment(const SmartCard& card,
                                    std::string_view wrong_password,
                                    Simulation& sim);

/// Baseline login, password change with a wrong old password, then one login
/// probe per password involved. Works on its own copy of the card.
AttackReport dos_experiment(SmartCard card, std::string_view true_password,
                            std::string_view wrong_old_password,
                            std::string_view new_password, Simulation& sim);

/// Same sequence with the correct old password; the new-password probe is
/// expected to succeed and dos_confirmed stays false.
AttackReport dos_control_experiment(SmartCard card,
                                    std::string_view true_password,
                                    std::string_view new_password,
                                    Simulation& sim);

}  // namespace chebauth

#endif  // CHEBAUTH_ADVERSARY_HPP_
