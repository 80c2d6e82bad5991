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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "chebauth/adversary.hpp"
#include "chebauth/chaotic_map.hpp"
#include "chebauth/harness.hpp"
#include "chebauth/primitives.hpp"
#include "chebauth/protocol.hpp"

namespace py = pybind11;
using namespace chebauth;

namespace {

py::bytes to_py(const BitString& s) {
  return py::bytes(reinterpret_cast<const char*>(s.bytes().data()),
                   s.bytes().size());
}

BitString from_py(const py::bytes& b) {
  std::string raw = b;
  return BitString::from_bytes(as_bytes(raw));
}

mpz_class to_mpz(const py::int_& v) {
  return mpz_class(py::str(v).cast<std::string>(), 10);
}

py::int_ to_py_int(const FieldElement& e) {
  return py::int_(py::str(e.decimal()));
}

std::optional<std::string> reason_or_none(const std::optional<RejectReason>& r) {
  if (!r) return std::nullopt;
  return std::string(to_string(*r));
}

py::dict counts_dict(const OpCounts& c) {
  py::dict d;
  d["hash"] = c.n_hash;
  d["xor"] = c.n_xor;
  d["cheb"] = c.n_cheb;
  return d;
}

RunConfig make_config(std::uint64_t seed, std::size_t width_bits,
                      const std::string& prime, std::uint64_t delta_t,
                      std::uint64_t channel_delay,
                      std::optional<std::string> dictionary,
                      std::optional<std::string> password,
                      std::optional<std::string> wrong_password,
                      std::optional<std::string> new_password,
                      bool correct_old_password, unsigned threads) {
  RunConfig c;
  c.seed = seed;
  c.width_bits = width_bits;
  c.prime = prime;
  c.delta_t = delta_t;
  c.channel_delay = channel_delay;
  if (dictionary) c.dictionary = *dictionary;
  if (password) c.fixture.password = *password;
  if (wrong_password) c.fixture.wrong_password = *wrong_password;
  if (new_password) c.fixture.new_password = *new_password;
  c.correct_old_password = correct_old_password;
  c.threads = threads;
  return c;
}

template <RunReport (*Command)(const RunConfig&)>
void def_command(py::module_& m, const char* name) {
  m.def(
      name,
      [](std::uint64_t seed, std::size_t width_bits, const std::string& prime,
         std::uint64_t delta_t, std::uint64_t channel_delay,
         std::optional<std::string> dictionary,
         std::optional<std::string> password,
         std::optional<std::string> wrong_password,
         std::optional<std::string> new_password, bool correct_old_password,
         unsigned threads, bool include_wall_time) {
        RunReport r = Command(make_config(
            seed, width_bits, prime, delta_t, channel_delay, dictionary,
            password, wrong_password, new_password, correct_old_password,
            threads));
        return py::make_tuple(r.exit_status, r.dump(include_wall_time));
      },
      py::arg("seed") = 42, py::arg("width_bits") = 256,
      py::arg("prime") = std::string(kDefaultPrimeDecimal),
      py::arg("delta_t") = 5, py::arg("channel_delay") = 1,
      py::arg("dictionary") = py::none(), py::arg("password") = py::none(),
      py::arg("wrong_password") = py::none(),
      py::arg("new_password") = py::none(),
      py::arg("correct_old_password") = false, py::arg("threads") = 1,
      py::arg("include_wall_time") = true,
      "Run the experiment and return (exit_status, report_json).");
}

}  // namespace

PYBIND11_MODULE(_chebauth, m) {
  m.doc() = "Chaotic-map smart-card authentication simulator and attacks";

  py::register_exception<WidthMismatch>(m, "WidthMismatch", PyExc_ValueError);
  py::register_exception<EmptyCredential>(m, "EmptyCredential",
                                          PyExc_ValueError);
  py::register_exception<ExperimentInvalid>(m, "ExperimentInvalid");
  py::register_exception<ConfigError>(m, "ConfigError");

  m.attr("DEFAULT_PRIME") = py::int_(py::str(std::string(kDefaultPrimeDecimal)));

  m.def(
      "cheb_eval",
      [](std::uint64_t n, const py::int_& x, std::optional<py::int_> p) {
        auto field = p ? PrimeField::create(to_mpz(*p))
                       : PrimeField::default_field();
        return to_py_int(cheb_eval(n, field->element(to_mpz(x))));
      },
      py::arg("n"), py::arg("x"), py::arg("p") = py::none(),
      "T_n(x) mod p over the given prime (default 256-bit prime).");

  m.def(
      "hash_h",
      [](const py::bytes& data, std::size_t width_bits) {
        std::string raw = data;
        OpCounts counts;
        return to_py(hash_h(as_bytes(raw), width_bits, counts));
      },
      py::arg("data"), py::arg("width_bits") = 256);

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init([](std::size_t width_bits, const std::string& prime,
                       std::uint64_t delta_t) {
             check_width(width_bits);
             return SystemParams{width_bits, PrimeField::from_decimal(prime),
                                 delta_t};
           }),
           py::arg("width_bits") = 256,
           py::arg("prime") = std::string(kDefaultPrimeDecimal),
           py::arg("delta_t") = 5)
      .def_readonly("width_bits", &SystemParams::width_bits)
      .def_readonly("delta_t", &SystemParams::delta_t);

  py::class_<RandomSource>(m, "RandomSource")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("draw_bits",
           [](RandomSource& r, std::size_t w) { return to_py(r.draw_bits(w)); })
      .def("draw_exponent", &RandomSource::draw_exponent);

  py::class_<LogicalClock>(m, "LogicalClock")
      .def(py::init([](std::uint64_t start) {
             return LogicalClock(Timestamp{start});
           }),
           py::arg("start") = 0)
      .def_property_readonly("now",
                             [](const LogicalClock& c) { return c.now().ticks; })
      .def("advance", &LogicalClock::advance);

  py::class_<ServerState>(m, "ServerState")
      .def_property_readonly("mk",
                             [](const ServerState& s) { return to_py(s.mk); })
      .def_readonly("params", &ServerState::params);

  py::class_<SmartCard>(m, "SmartCard")
      .def(py::init([](const py::bytes& im1, const py::bytes& im2,
                       const py::bytes& d1, const py::bytes& d2) {
        return SmartCard{from_py(im1), from_py(im2), from_py(d1), from_py(d2)};
      }))
      .def_property_readonly("im1", [](const SmartCard& c) { return to_py(c.im1); })
      .def_property_readonly("im2", [](const SmartCard& c) { return to_py(c.im2); })
      .def_property_readonly("d1", [](const SmartCard& c) { return to_py(c.d1); })
      .def_property_readonly("d2", [](const SmartCard& c) { return to_py(c.d2); })
      .def("__eq__", [](const SmartCard& a, const SmartCard& b) { return a == b; });

  py::class_<LoginRequest>(m, "LoginRequest")
      .def_property_readonly("im1", [](const LoginRequest& r) { return to_py(r.im1); })
      .def_property_readonly("im2", [](const LoginRequest& r) { return to_py(r.im2); })
      .def_property_readonly("tu_k", [](const LoginRequest& r) { return to_py_int(r.tu_k); })
      .def_property_readonly("x1", [](const LoginRequest& r) { return to_py(r.x1); })
      .def_property_readonly("t1", [](const LoginRequest& r) { return r.t1.ticks; });

  py::class_<LoginResponse>(m, "LoginResponse")
      .def_property_readonly("y1", [](const LoginResponse& r) { return to_py(r.y1); })
      .def_property_readonly("y2", [](const LoginResponse& r) { return to_py(r.y2); })
      .def_property_readonly("y3", [](const LoginResponse& r) { return to_py(r.y3); })
      .def_property_readonly("tv_k", [](const LoginResponse& r) { return to_py_int(r.tv_k); })
      .def_property_readonly("t2", [](const LoginResponse& r) { return r.t2.ticks; });

  py::class_<UserLoginContext>(m, "UserLoginContext");

  m.def("server_setup", &server_setup, py::arg("seed"),
        py::arg("params") = SystemParams{});

  m.def(
      "registration",
      [](const ServerState& server, const std::string& id,
         const std::string& password, RandomSource& rng) {
        OpCounts counts;
        SmartCard card = registration(server, id, password, rng, counts);
        return py::make_tuple(card, counts_dict(counts));
      },
      py::arg("server"), py::arg("identity"), py::arg("password"),
      py::arg("rng"));

  m.def(
      "user_login_start",
      [](const SmartCard& card, const std::string& password,
         const SystemParams& params, const LogicalClock& clock,
         RandomSource& rng) {
        OpCounts counts;
        auto [request, ctx] =
            user_login_start(card, password, params, clock, rng, counts);
        return py::make_tuple(request, ctx, counts_dict(counts));
      },
      py::arg("card"), py::arg("password"), py::arg("params"),
      py::arg("clock"), py::arg("rng"));

  m.def(
      "server_handle_login",
      [](const ServerState& server, const LoginRequest& request,
         const LogicalClock& clock, RandomSource& rng) -> py::tuple {
        OpCounts counts;
        auto out = server_handle_login(server, request, clock, rng, counts);
        if (!out) {
          return py::make_tuple(py::none(), py::none(),
                                std::string(to_string(out.reason())),
                                counts_dict(counts));
        }
        return py::make_tuple(out.value().response,
                              to_py(out.value().outcome.sk), py::none(),
                              counts_dict(counts));
      },
      py::arg("server"), py::arg("request"), py::arg("clock"), py::arg("rng"),
      "Returns (response | None, sk | None, reject_reason | None, counts).");

  m.def(
      "user_handle_response",
      [](const SmartCard& card, const UserLoginContext& ctx,
         const LoginResponse& response, const SystemParams& params,
         const LogicalClock& clock) -> py::tuple {
        OpCounts counts;
        auto out =
            user_handle_response(card, ctx, response, params, clock, counts);
        if (!out) {
          return py::make_tuple(py::none(), py::none(),
                                std::string(to_string(out.reason())),
                                counts_dict(counts));
        }
        return py::make_tuple(to_py(out.value().sk), out.value().card,
                              py::none(), counts_dict(counts));
      },
      py::arg("card"), py::arg("ctx"), py::arg("response"), py::arg("params"),
      py::arg("clock"),
      "Returns (sk | None, refreshed card | None, reject_reason | None, counts).");

  m.def(
      "change_password",
      [](const SmartCard& card, const std::string& old_password,
         const std::string& new_password, const SystemParams& params) {
        OpCounts counts;
        return change_password(card, old_password, new_password, params,
                               counts);
      },
      py::arg("card"), py::arg("old_password"), py::arg("new_password"),
      py::arg("params"));

  m.def(
      "guess_predicate",
      [](const std::string& candidate, const SmartCard& card,
         const LoginRequest& request, const SystemParams& params) {
        OpCounts counts;
        return guess_predicate(candidate, ExtractedCard::extract(card), request,
                               params, counts);
      },
      py::arg("candidate"), py::arg("card"), py::arg("request"),
      py::arg("params"));

  m.def(
      "offline_guess",
      [](const SmartCard& card, const LoginRequest& request,
         std::vector<std::string> candidates, const SystemParams& params,
         unsigned threads) {
        Dictionary dict = Dictionary::from_lines(std::move(candidates));
        GuessOptions options;
        options.threads = threads;
        AttackReport r;
        {
          py::gil_scoped_release release;
          r = offline_guess(ExtractedCard::extract(card), request, dict, params,
                            options);
        }
        py::dict d;
        d["recovered_password"] = r.recovered_password;
        d["guesses"] = r.guesses;
        d["evaluations"] = r.evaluations;
        d["op_counts"] = counts_dict(r.counts);
        return d;
      },
      py::arg("card"), py::arg("request"), py::arg("candidates"),
      py::arg("params"), py::arg("threads") = 1);

  def_command<&cmd_honest_run>(m, "honest_run");
  def_command<&cmd_guess_attack>(m, "guess_attack");
  def_command<&cmd_wrong_login>(m, "wrong_login_demo");
  def_command<&cmd_dos_demo>(m, "dos_demo");
}
