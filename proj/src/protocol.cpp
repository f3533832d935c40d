#include "qpke/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "qpke/analysis.hpp"
#include "qpke/errors.hpp"

namespace qpke::protocol {

namespace {

std::string label_text(std::uint64_t v, int l) { return BitString(v, l).to_binary(); }

Real draw_unit(Rng& rng) { return static_cast<Real>(draw_bits(rng, 53)) * 0x1p-53; }

// Samples a computational-basis outcome from the squared amplitudes.
std::int64_t sample_basis(const Vector& amps, Rng& rng) {
  const Real u = draw_unit(rng);
  Real acc = 0.0;
  for (std::int64_t idx = 0; idx < amps.size(); ++idx) {
    acc += amps[idx] * amps[idx];
    if (u < acc) return idx;
  }
  return amps.size() - 1;
}

}  // namespace

serial::json SessionStats::to_json() const {
  serial::json j{{"success_rate", success_rate},
                 {"eve_accuracy", eve_accuracy ? serial::json(*eve_accuracy) : serial::json(nullptr)},
                 {"n", n},
                 {"scheme", scheme},
                 {"trials", messages},
                 {"seed", seed},
                 {"integrity_events", integrity_events}};
  return j;
}

serial::json Transcript::to_json() const {
  serial::json events_json = serial::json::array();
  for (const Event& e : events)
    events_json.push_back(serial::json{{"seq", e.seq}, {"type", e.type}, {"payload", e.payload}});
  return serial::json{{"seed", seed},
                      {"n", n},
                      {"scheme", scheme},
                      {"eve", eve},
                      {"events", std::move(events_json)},
                      {"stats", stats.to_json()}};
}

std::string Transcript::to_string() const { return to_json().dump(2) + "\n"; }

void Register::post(PublicKey pk) { queue_.push_back(std::move(pk)); }

PublicKey Register::fetch() {
  if (queue_.empty()) throw integrity_error("public register has no unused copy");
  PublicKey pk = std::move(queue_.front());
  queue_.pop_front();
  return pk;
}

std::vector<std::string> eve_strategy_names() {
  return {"none", "passive-measure", "helstrom-guess"};
}

EveStrategy make_eve_strategy(const std::string& name, const SchemeSpec& scheme) {
  if (name == "none" || name.empty()) {
    return [](const BitString&, const Vector& state, Rng&) {
      return EveResult{state, std::nullopt, serial::json::object()};
    };
  }
  if (name == "passive-measure") {
    const int l = scheme.l;
    return [l](const BitString&, const Vector& state, Rng& rng) {
      const std::int64_t outcome = sample_basis(state, rng);
      Vector collapsed = Vector::Zero(state.size());
      collapsed[outcome] = 1.0;
      // The basis outcome reveals nothing about the plaintext; guess uniformly.
      const std::uint64_t guess = draw_bits(rng, l);
      return EveResult{std::move(collapsed), guess,
                       serial::json{{"outcome", outcome}}};
    };
  }
  if (name == "helstrom-guess") {
    if (scheme.l != 1)
      throw std::invalid_argument(
          "helstrom-guess is defined for the single-bit scheme only (the optimal two-outcome "
          "measurement distinguishes exactly two ensembles)");
    auto measurement = std::make_shared<analysis::HelstromMeasurement>(
        analysis::build_helstrom_measurement(scheme.n));
    return [measurement](const BitString&, const Vector& state, Rng& rng) {
      Real p0 = state.dot(measurement->projector * state);
      p0 = std::clamp(p0, 0.0, 1.0);
      const bool outcome0 = draw_unit(rng) < p0;
      Vector projected = measurement->projector * state;
      if (!outcome0) projected = state - projected;
      const Real norm = projected.norm();
      Vector forwarded = norm > 0.0 ? Vector(projected / norm) : state;
      return EveResult{std::move(forwarded), outcome0 ? std::uint64_t{0} : std::uint64_t{1},
                       serial::json{{"outcome", outcome0 ? "+" : "-"}}};
    };
  }
  throw std::invalid_argument("unknown eavesdropper strategy: " + name);
}

SessionResult run_session(const SchemeSpec& scheme, const std::vector<std::uint64_t>& messages,
                          const std::string& eve, std::uint64_t seed, KeyMode mode) {
  for (std::uint64_t m : messages)
    if (m >> scheme.l) throw dimension_error("message does not fit the scheme width");
  const std::string eve_name = eve.empty() ? "none" : eve;
  const bool eve_active = eve_name != "none";

  Rng rng(seed);
  EveStrategy strategy = make_eve_strategy(eve_name, scheme);
  KeygenOptions opts;
  opts.mode = mode;
  PrivateKey bob_key = keygen(scheme, rng, opts);
  Register reg;

  Transcript tr;
  tr.seed = seed;
  tr.n = scheme.n;
  tr.scheme = scheme.name();
  tr.eve = eve_name;
  int seq = 0;
  auto log = [&](const std::string& type, serial::json payload) {
    tr.events.push_back(Event{seq++, type, std::move(payload)});
  };

  std::int64_t decrypt_ok = 0, eve_ok = 0, integrity = 0;
  for (std::size_t idx = 0; idx < messages.size(); ++idx) {
    const std::uint64_t plaintext = messages[idx];

    PublicKey pk = publish(bob_key, rng);
    log("publish", serial::json{{"msg", idx}, {"s", serial::bitstring_to_json(pk.s)}});

    reg.post(std::move(pk));
    PublicKey fetched = reg.fetch();
    log("fetch", serial::json{{"msg", idx}, {"s", serial::bitstring_to_json(fetched.s)}});

    Ciphertext ct = encrypt(fetched, plaintext);
    log("encrypt", serial::json{{"msg", idx}, {"plaintext", label_text(plaintext, scheme.l)}});
    log("channel-send", serial::json{{"msg", idx}, {"s", serial::bitstring_to_json(ct.s)}});

    Vector in_flight = ct.state.vector.vec();
    std::optional<std::uint64_t> eve_guess;
    if (eve_active) {
      EveResult acted = strategy(ct.s, in_flight, rng);
      in_flight = std::move(acted.forwarded);
      eve_guess = acted.guess;
      serial::json payload{{"msg", idx}, {"strategy", eve_name}, {"log", acted.log}};
      payload["guess"] =
          acted.guess ? serial::json(label_text(*acted.guess, scheme.l)) : serial::json(nullptr);
      log("eavesdrop", std::move(payload));
      if (eve_guess && *eve_guess == plaintext) ++eve_ok;
    }

    std::vector<BitString> keys = f_eval(bob_key, ct.s);
    MeasuredDecryption dec = decrypt_measured(keys, in_flight, rng);
    const bool match = dec.plaintext == plaintext;
    if (match) ++decrypt_ok;
    if (dec.sampled_bits > 0) ++integrity;
    log("decrypt", serial::json{{"msg", idx},
                                {"plaintext", label_text(dec.plaintext, scheme.l)},
                                {"match", match},
                                {"sampled_bits", dec.sampled_bits}});
  }

  SessionStats stats;
  stats.n = scheme.n;
  stats.scheme = scheme.name();
  stats.messages = static_cast<std::int64_t>(messages.size());
  stats.success_rate =
      messages.empty() ? 1.0 : static_cast<Real>(decrypt_ok) / static_cast<Real>(messages.size());
  if (eve_active && !messages.empty())
    stats.eve_accuracy = static_cast<Real>(eve_ok) / static_cast<Real>(messages.size());
  stats.seed = seed;
  stats.integrity_events = integrity;
  tr.stats = stats;
  return SessionResult{std::move(tr), std::move(stats)};
}

}  // namespace qpke::protocol
