#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "qpke/bitmath.hpp"
#include "qpke/common.hpp"
#include "qpke/states.hpp"

namespace qpke {

// FreshS: a new tag s (hence new keys) per published copy — the default mode.
// FixedKey: one s fixed at key generation so a single key tuple backs every
// copy, subject to a reuse budget (default t_max = n - 1, a policy choice).
enum class KeyMode { FreshS, FixedKey };

struct KeygenOptions {
  KeyMode mode = KeyMode::FreshS;
  int t_max = -1;      // FixedKey only; -1 selects the default n - 1
  bool wide_s = false; // widen s from the odd-parity n-bit set to arbitrary m-bit strings
  int s_width = 0;     // wide_s only; defaults to n
};

using Seed256 = std::array<std::uint64_t, 4>;

// The private key is a 256-bit seed for a deterministic keyed map s -> keys,
// standing in for an explicit function table (which would be exponential).
class PrivateKey {
 public:
  PrivateKey(SchemeSpec scheme, Seed256 seed, KeygenOptions opts, std::optional<BitString> fixed_s);

  const SchemeSpec& scheme() const { return scheme_; }
  int n() const { return scheme_.n; }
  const Seed256& seed() const { return seed_; }
  KeyMode mode() const { return opts_.mode; }
  const KeygenOptions& options() const { return opts_; }
  const std::optional<BitString>& fixed_s() const { return fixed_s_; }

  int s_width() const;
  bool s_admissible(const BitString& s) const;

  int t_max() const { return t_max_->load(); }
  void set_t_max(int t) const { t_max_->store(t); }
  std::int64_t used() const { return used_->load(); }
  void restore_used(std::int64_t count) const { used_->store(count); }  // deserialization only
  std::int64_t consume_budget() const;  // FixedKey: atomically count one copy or throw

 private:
  SchemeSpec scheme_;
  Seed256 seed_;
  KeygenOptions opts_;
  std::optional<BitString> fixed_s_;
  std::shared_ptr<std::atomic<std::int64_t>> used_;
  std::shared_ptr<std::atomic<int>> t_max_;
};

struct PublicKey {
  BitString s;
  CipherState state;  // label 0
};

struct Ciphertext {
  BitString s;
  CipherState state;
};

struct UsageReport {
  int n = 0;
  KeyMode mode = KeyMode::FreshS;
  std::int64_t used = 0;
  int t_max = 0;            // 0 in FreshS mode (no budget applies)
  Real bound = 0.0;         // sqrt(2^{t_max - n}) for the session's (n, t_max)
  bool default_policy = false;  // t_max = n - 1 is a policy default, not a derived value
};

PrivateKey keygen(const SchemeSpec& scheme, const Seed256& seed, const KeygenOptions& opts,
                  Rng& rng);
PrivateKey keygen(const SchemeSpec& scheme, Rng& rng, const KeygenOptions& opts = {});

// Deterministic keyed map from the tag s to the scheme's key list; the output
// always satisfies the per-part parity structure.
std::vector<BitString> f_eval(const PrivateKey& priv, const BitString& s);

// Fresh (s, i) pair and the label-0 state; counts against the budget in
// FixedKey mode (where s stays pinned and only i is fresh).
PublicKey publish(const PrivateKey& priv, Rng& rng);

// Applies the plaintext Z pattern to the fetched copy; sees only the public key.
Ciphertext encrypt(const PublicKey& pub, std::uint64_t plaintext);

// Ancilla-circuit decryption: per plaintext bit j, H - CXorK(k_j) - H on a
// fresh ancilla drives it deterministically to |x_j>; the data register is
// left intact. A non-extremal ancilla probability means the ciphertext
// support was corrupted and raises integrity_error.
std::uint64_t decrypt(const PrivateKey& priv, const Ciphertext& ct);
std::uint64_t decrypt_with_keys(const std::vector<BitString>& keys, const StateVector& state);

// Same circuit, but a non-extremal ancilla is sampled instead of rejected
// (the data register collapses accordingly). Used by the protocol harness
// where an eavesdropper may have disturbed the state. Never throws on
// disturbed inputs; consumes randomness only for non-extremal reads.
struct MeasuredDecryption {
  std::uint64_t plaintext = 0;
  Vector post_state;       // data register after all ancilla reads
  int sampled_bits = 0;    // how many ancillas were non-deterministic
};
MeasuredDecryption decrypt_measured(const std::vector<BitString>& keys, const Vector& state,
                                    Rng& rng);

// Budget accounting for FixedKey mode; in FreshS mode no budget applies and
// the report only records the mode.
UsageReport enforce_budget(const PrivateKey& priv, int t_max = -1);

}  // namespace qpke
