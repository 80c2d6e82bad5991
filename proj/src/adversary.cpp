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

#include "chebauth/adversary.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_set>

namespace chebauth {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len = 0;
    if (c < 0x80) {
      len = 1;
    } else if ((c & 0xE0) == 0xC0 && c >= 0xC2) {
      len = 2;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
    } else if ((c & 0xF8) == 0xF0 && c <= 0xF4) {
      len = 4;
    } else {
      return false;
    }
    if (i + len > s.size()) return false;
    for (std::size_t j = 1; j < len; ++j) {
      if ((static_cast<unsigned char>(s[i + j]) & 0xC0) != 0x80) return false;
    }
    i += len;
  }
  return true;
}

void record_probe(AttackReport& report, std::string label,
                  const SessionResult& session) {
  report.counts += session.user_counts + session.server_counts;
  report.probes.push_back({std::move(label), session});
}

}  // namespace

ExtractedCard ExtractedCard::extract(const SmartCard& card) {
  return {card.im1, card.im2, card.d1, card.d2};
}

ExtractedCard ExtractedCard::zeroed(std::size_t width_bits) {
  BitString zero = BitString::zero(width_bits);
  return {zero, zero, zero, zero};
}

Dictionary Dictionary::from_lines(std::vector<std::string> lines) {
  std::unordered_set<std::string_view> seen;
  seen.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string& word = lines[i];
    const std::string where = "dictionary line " + std::to_string(i + 1);
    if (word.empty()) throw DictionaryError(where + ": blank line");
    if (word.find_first_of("\r\n") != std::string::npos) {
      throw DictionaryError(where + ": embedded CR or LF");
    }
    if (!valid_utf8(word)) throw DictionaryError(where + ": invalid UTF-8");
    if (!seen.insert(word).second) {
      throw DictionaryError(where + ": duplicate entry");
    }
  }
  Dictionary dict;
  dict.words_ = std::move(lines);
  return dict;
}

Dictionary Dictionary::parse(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    // A missing LF after the final line is tolerated.
    if (eol == std::string_view::npos) eol = text.size();
    lines.emplace_back(text.substr(pos, eol - pos));
    pos = eol + 1;
  }
  return from_lines(std::move(lines));
}

Dictionary Dictionary::from_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DictionaryError("cannot open dictionary file: " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw DictionaryError("error reading dictionary file: " + path.string());
  }
  return parse(buffer.str());
}

bool Dictionary::contains(std::string_view word) const {
  return std::find(words_.begin(), words_.end(), word) != words_.end();
}

std::string Dictionary::to_text() const {
  std::string out;
  for (const std::string& w : words_) {
    out += w;
    out += '\n';
  }
  return out;
}

bool guess_predicate(std::string_view candidate, const ExtractedCard& card,
                     const LoginRequest& m1, const SystemParams& params,
                     OpCounts& counts) {
  const std::size_t l = params.width_bits;
  BitString b = xor_bits(card.d2, hash_h(as_bytes(candidate), l, counts), counts);
  BitString k =
      xor_bits(card.d1, hash_h(concat(candidate, b), l, counts), counts);
  return hash_h(concat(k, m1.im1, m1.im2, m1.tu_k, m1.t1), l, counts) == m1.x1;
}

AttackReport offline_guess(const ExtractedCard& card, const LoginRequest& m1,
                           const Dictionary& dict, const SystemParams& params,
                           const GuessOptions& options) {
  const auto start = Clock::now();
  AttackReport report;
  const std::size_t n = dict.size();
  const unsigned threads = std::max(1U, options.threads);
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  std::size_t first_hit = kNone;
  if (threads == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) {
      ++report.evaluations;
      if (guess_predicate(dict[i], card, m1, params, report.counts)) {
        ++report.match_count;
        if (first_hit == kNone) first_hit = i;
        if (!options.exhaustive) break;
      }
    }
  } else {
    // Workers claim fixed-size chunks in dictionary order and skip any chunk
    // that starts past the best hit found so far.
    constexpr std::size_t kChunk = 256;
    std::atomic<std::size_t> next_chunk{0};
    std::atomic<std::size_t> best{kNone};
    std::mutex merge;
    auto worker = [&] {
      OpCounts local;
      std::size_t evaluated = 0;
      std::size_t matches = 0;
      for (;;) {
        const std::size_t begin = next_chunk.fetch_add(1) * kChunk;
        if (begin >= n) break;
        if (!options.exhaustive && begin > best.load()) break;
        const std::size_t end = std::min(n, begin + kChunk);
        for (std::size_t i = begin; i < end; ++i) {
          ++evaluated;
          if (guess_predicate(dict[i], card, m1, params, local)) {
            ++matches;
            std::size_t current = best.load();
            while (i < current && !best.compare_exchange_weak(current, i)) {
            }
            if (!options.exhaustive) break;
          }
        }
      }
      std::lock_guard<std::mutex> lock(merge);
      report.counts += local;
      report.evaluations += evaluated;
      report.match_count += matches;
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    first_hit = best.load();
  }

  if (first_hit != kNone) {
    report.recovered_password = dict[first_hit];
    report.guesses = first_hit + 1;
  } else {
    report.guesses = n;
  }
  report.multiple_matches = report.match_count > 1;
  report.wall_time_ms = elapsed_ms(start);
  return report;
}

AttackReport wrong_login_experiment(const SmartCard& card,
                                    std::string_view wrong_password,
                                    Simulation& sim) {
  const auto start = Clock::now();
  AttackReport report;
  SmartCard copy = card;
  SessionResult session = run_session(sim, copy, wrong_password);
  if (session.accepted() || session.rejected_at != SessionStage::kServer) {
    throw ExperimentInvalid(
        "wrong-password login was not rejected by the server; the supplied "
        "password is probably the card's true password");
  }
  report.server_rejected = true;
  report.reject_reason = session.reject_reason;
  record_probe(report, "wrong-password", session);
  report.wall_time_ms = elapsed_ms(start);
  return report;
}

AttackReport dos_experiment(SmartCard card, std::string_view true_password,
                            std::string_view wrong_old_password,
                            std::string_view new_password, Simulation& sim) {
  if (wrong_old_password == true_password) {
    throw ExperimentInvalid(
        "dos_experiment: wrong old password equals the true password");
  }
  const auto start = Clock::now();
  AttackReport report;

  SessionResult baseline = run_session(sim, card, true_password);
  if (!baseline.key_agreement()) {
    throw ExperimentInvalid("dos_experiment: baseline login failed");
  }
  record_probe(report, "baseline", baseline);

  card = change_password(card, wrong_old_password, new_password, sim.params(),
                         report.counts);

  bool all_rejected = true;
  const std::pair<const char*, std::string_view> attempts[] = {
      {"new-password", new_password},
      {"true-password", true_password},
      {"wrong-old-password", wrong_old_password}};
  for (const auto& [label, password] : attempts) {
    SessionResult probe = run_session(sim, card, password);
    all_rejected = all_rejected && !probe.accepted();
    record_probe(report, label, probe);
  }
  report.server_rejected = all_rejected;
  report.dos_confirmed = all_rejected;
  report.wall_time_ms = elapsed_ms(start);
  return report;
}

AttackReport dos_control_experiment(SmartCard card,
                                    std::string_view true_password,
                                    std::string_view new_password,
                                    Simulation& sim) {
  const auto start = Clock::now();
  AttackReport report;

  SessionResult baseline = run_session(sim, card, true_password);
  if (!baseline.key_agreement()) {
    throw ExperimentInvalid("dos_control_experiment: baseline login failed");
  }
  record_probe(report, "baseline", baseline);

  card = change_password(card, true_password, new_password, sim.params(),
                         report.counts);
  SessionResult probe = run_session(sim, card, new_password);
  report.server_rejected = !probe.accepted();
  report.reject_reason = probe.reject_reason;
  record_probe(report, "new-password", probe);
  report.dos_confirmed = false;
  report.wall_time_ms = elapsed_ms(start);
  return report;
}

}  // namespace chebauth
