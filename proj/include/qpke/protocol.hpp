#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qpke/qpke.hpp"
#include "qpke/serial.hpp"

namespace qpke::protocol {

struct Event {
  int seq = 0;
  std::string type;  // publish | fetch | encrypt | channel-send | eavesdrop | decrypt
  serial::json payload;
};

struct SessionStats {
  int n = 0;
  std::string scheme;
  std::int64_t messages = 0;
  Real success_rate = 0.0;
  std::optional<Real> eve_accuracy;
  std::uint64_t seed = 0;
  std::int64_t integrity_events = 0;  // decryptions that hit a non-extremal ancilla

  serial::json to_json() const;
};

struct Transcript {
  std::uint64_t seed = 0;
  int n = 0;
  std::string scheme;
  std::string eve;
  std::vector<Event> events;
  SessionStats stats;

  serial::json to_json() const;
  std::string to_string() const;  // canonical rendering; byte-identical under replay
};

// The public register: a trusted bulletin board handing out each published
// copy exactly once.
class Register {
 public:
  void post(PublicKey pk);
  PublicKey fetch();  // throws integrity_error when no unused copy remains
  std::size_t available() const { return queue_.size(); }

 private:
  std::deque<PublicKey> queue_;
};

// An eavesdropper acts on the in-flight ciphertext state (never the keys):
// returns the state to forward to Bob, an optional plaintext guess, and a log.
struct EveResult {
  Vector forwarded;
  std::optional<std::uint64_t> guess;
  serial::json log;
};
using EveStrategy = std::function<EveResult(const BitString& s, const Vector& state, Rng& rng)>;

// Built-ins: "none", "passive-measure", "helstrom-guess" (single-bit only).
std::vector<std::string> eve_strategy_names();
EveStrategy make_eve_strategy(const std::string& name, const SchemeSpec& scheme);

struct SessionResult {
  Transcript transcript;
  SessionStats stats;
};

// Full protocol flow per message: Bob publishes, Alice fetches and encrypts,
// Eve optionally acts on the channel, Bob decrypts with sampled measurement.
// Deterministic given the seed.
SessionResult run_session(const SchemeSpec& scheme, const std::vector<std::uint64_t>& messages,
                          const std::string& eve, std::uint64_t seed,
                          KeyMode mode = KeyMode::FreshS);

}  // namespace qpke::protocol
