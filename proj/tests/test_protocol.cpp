#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qpke/errors.hpp"
#include "qpke/protocol.hpp"

using namespace qpke;
using namespace qpke::protocol;

namespace {

std::vector<std::uint64_t> random_messages(int count, int l, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::uint64_t> out(static_cast<std::size_t>(count));
  for (auto& m : out) m = draw_bits(rng, l);
  return out;
}

}  // namespace

TEST_CASE("register hands out each copy exactly once") {
  Register reg;
  CHECK(reg.available() == 0);
  CHECK_THROWS_AS(reg.fetch(), integrity_error);

  Rng rng(1);
  PrivateKey key = keygen(SchemeSpec::single_bit(3), rng);
  reg.post(publish(key, rng));
  reg.post(publish(key, rng));
  CHECK(reg.available() == 2);
  reg.fetch();
  reg.fetch();
  CHECK_THROWS_AS(reg.fetch(), integrity_error);
}

TEST_CASE("clean sessions decrypt every message") {
  auto messages = random_messages(100, 1, 99);
  SessionResult r = run_session(SchemeSpec::single_bit(3), messages, "none", 2024);
  CHECK(r.stats.success_rate == 1.0);
  CHECK(r.stats.messages == 100);
  CHECK(r.stats.integrity_events == 0);
  CHECK_FALSE(r.stats.eve_accuracy.has_value());
  // publish, fetch, encrypt, channel-send, decrypt per message; no eavesdrop.
  CHECK(r.transcript.events.size() == 500);
  for (const Event& e : r.transcript.events) CHECK(e.type != "eavesdrop");
}

TEST_CASE("transcripts replay byte-identically under the same seed") {
  auto messages = random_messages(40, 1, 7);
  SessionResult a = run_session(SchemeSpec::single_bit(4), messages, "none", 321);
  SessionResult b = run_session(SchemeSpec::single_bit(4), messages, "none", 321);
  CHECK(a.transcript.to_string() == b.transcript.to_string());

  SessionResult c = run_session(SchemeSpec::single_bit(4), messages, "none", 322);
  CHECK(a.transcript.to_string() != c.transcript.to_string());
}

TEST_CASE("event sequence numbers are strictly increasing") {
  auto messages = random_messages(10, 2, 13);
  SessionResult r = run_session(SchemeSpec::two_bit(4), messages, "none", 5);
  for (std::size_t j = 0; j < r.transcript.events.size(); ++j)
    CHECK(r.transcript.events[j].seq == static_cast<int>(j));
  CHECK(r.stats.success_rate == 1.0);
}

TEST_CASE("empty strategy name means no eavesdropper") {
  auto messages = random_messages(20, 1, 3);
  SessionResult named = run_session(SchemeSpec::single_bit(3), messages, "none", 77);
  SessionResult blank = run_session(SchemeSpec::single_bit(3), messages, "", 77);
  CHECK(named.stats.success_rate == blank.stats.success_rate);
  CHECK(blank.transcript.events.size() == named.transcript.events.size());
}

TEST_CASE("measuring eavesdropper destroys the single-qubit channel") {
  const int count = 2000;
  auto messages = random_messages(count, 1, 11);
  SessionResult r = run_session(SchemeSpec::single_bit(1), messages, "passive-measure", 4242);
  // A basis measurement collapses the superposition: every decryption is a
  // coin flip and every ancilla read is non-extremal.
  CHECK(r.stats.integrity_events == count);
  CHECK(std::abs(r.stats.success_rate - 0.5) < 0.05);
  REQUIRE(r.stats.eve_accuracy.has_value());
  CHECK(std::abs(*r.stats.eve_accuracy - 0.5) < 0.05);
}

TEST_CASE("passive measurement is detected at larger widths too") {
  const int count = 600;
  auto messages = random_messages(count, 1, 17);
  SessionResult r = run_session(SchemeSpec::single_bit(3), messages, "passive-measure", 99);
  CHECK(r.stats.integrity_events == count);
  CHECK(std::abs(r.stats.success_rate - 0.5) < 0.08);
  int eavesdrops = 0;
  for (const Event& e : r.transcript.events)
    if (e.type == "eavesdrop") ++eavesdrops;
  CHECK(eavesdrops == count);
}

TEST_CASE("optimal-measurement eavesdropper hits the discrimination bound") {
  const int count = 5000;
  auto messages = random_messages(count, 1, 23);
  SessionResult r = run_session(SchemeSpec::single_bit(4), messages, "helstrom-guess", 31415);
  REQUIRE(r.stats.eve_accuracy.has_value());
  const Real expect = 0.5625;  // 1/2 + 1/2 * 2^{-(n-1)} at n = 4
  const Real sigma = std::sqrt(expect * (1.0 - expect) / static_cast<Real>(count));
  CHECK(std::abs(*r.stats.eve_accuracy - expect) < 4.0 * sigma);
  // The optimal projector commutes with the coset stabilizer, so this
  // attack is invisible to the receiver.
  CHECK(r.stats.success_rate == 1.0);
  CHECK(r.stats.integrity_events == 0);
}

TEST_CASE("optimal-measurement eavesdropper is single-bit only") {
  auto messages = random_messages(5, 2, 29);
  CHECK_THROWS_AS(run_session(SchemeSpec::two_bit(4), messages, "helstrom-guess", 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_eve_strategy("unknown-strategy", SchemeSpec::single_bit(3)),
                  std::invalid_argument);
}

TEST_CASE("strategy roster") {
  auto names = eve_strategy_names();
  REQUIRE(names.size() == 3);
  CHECK(names[0] == "none");
  CHECK(names[1] == "passive-measure");
  CHECK(names[2] == "helstrom-guess");
}

TEST_CASE("messages outside the plaintext space are rejected") {
  CHECK_THROWS_AS(run_session(SchemeSpec::single_bit(3), {2}, "none", 1), std::invalid_argument);
  CHECK_NOTHROW(run_session(SchemeSpec::two_bit(4), {3}, "none", 1));
}

TEST_CASE("fixed-key sessions respect the publish budget") {
  auto ok = random_messages(2, 1, 31);
  CHECK_NOTHROW(run_session(SchemeSpec::single_bit(3), ok, "none", 8, KeyMode::FixedKey));

  auto too_many = random_messages(3, 1, 31);  // budget n - 1 = 2
  CHECK_THROWS_AS(run_session(SchemeSpec::single_bit(3), too_many, "none", 8, KeyMode::FixedKey),
                  budget_error);
}

TEST_CASE("session stats serialize with the documented fields") {
  auto messages = random_messages(5, 1, 37);
  SessionResult r = run_session(SchemeSpec::single_bit(3), messages, "none", 55);
  serial::json j = r.stats.to_json();
  CHECK(j.at("success_rate") == 1.0);
  CHECK(j.at("eve_accuracy").is_null());
  CHECK(j.at("n") == 3);
  CHECK(j.at("scheme") == "single-bit");
  CHECK(j.at("trials") == 5);
  CHECK(j.at("seed") == 55);
  CHECK(j.at("integrity_events") == 0);

  serial::json t = r.transcript.to_json();
  CHECK(t.at("seed") == 55);
  CHECK(t.at("eve") == "none");
  CHECK(t.at("events").is_array());
}
