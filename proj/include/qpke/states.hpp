#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qpke/bitmath.hpp"
#include "qpke/circuit.hpp"
#include "qpke/common.hpp"
#include "qpke/linalg.hpp"

namespace qpke {

// Scheme family: l = 1 (single-bit), l = 2 (two-bit), or general l-bit.
// Keys split into l parts of width n/l; part j of key j has odd Hamming
// weight, every other part even. A plaintext is an l-bit string.
struct SchemeSpec {
  int n = 0;
  int l = 1;

  static SchemeSpec single_bit(int n) { return make(n, 1); }
  static SchemeSpec two_bit(int n) { return make(n, 2); }
  static SchemeSpec multi_bit(int n, int l) { return make(n, l); }
  static SchemeSpec make(int n, int l);
  static SchemeSpec from_name(const std::string& name, int n);

  int part_width() const { return n / l; }
  std::int64_t plaintext_count() const { return std::int64_t{1} << l; }
  std::string name() const;  // "single-bit", "two-bit", "l-bit(3)", ...

  bool operator==(const SchemeSpec&) const = default;
};

// Keys (and optionally the basis offset i) for one encryption.
struct KeyTuple {
  SchemeSpec scheme;
  std::vector<BitString> keys;  // l keys, each n bits wide
  BitString i;

  KeyTuple(SchemeSpec s, std::vector<BitString> ks, BitString i_);
};

// Validates the per-part parity structure of a key list; throws on violation.
void validate_keys(const SchemeSpec& scheme, const std::vector<BitString>& keys);

// A scheme state: 2^l nonzero amplitudes of magnitude 2^{-l/2} supported on
// the coset {i ^ x1*k1 ^ ... ^ xl*kl}. The plaintext label is metadata for
// test oracles only; adversary-facing code receives the bare vector.
struct CipherState {
  StateVector vector;
  SchemeSpec scheme;
  std::optional<std::uint64_t> label;

  int n() const { return scheme.n; }
};

// Checks the support/magnitude/coset invariants of a candidate vector.
void check_cipher_invariants(const CipherState& state, const std::vector<BitString>* keys = nullptr);

// --- Pure-state constructors -----------------------------------------------

// (|i> + (-1)^b |i^k>)/sqrt(2), phase on the i^k branch.
CipherState pure_single(int n, const BitString& k, const BitString& i, int b);

// Four amplitudes +-1/2 on the coset of {k1, k2}; sign of the x1*k1 ^ x2*k2
// component is (-1)^(x1*a1 + x2*a2) for plaintext bits (x1, x2) = xy.
CipherState pure_two_bit(int n, const BitString& k1, const BitString& k2, const BitString& i,
                         std::uint64_t xy);

// General l-bit construction; xs packs the plaintext bits MSB-first (x1 high).
CipherState pure_multi(int n, int l, const std::vector<BitString>& ks, const BitString& i,
                       std::uint64_t xs);

// Gate sequence preparing pure_single(n, k, i, 0) from |0...0>: Hadamard plus
// a CNOT chain building the W_H(k)-qubit GHZ block, X gates imprinting the
// permuted offset, then swaps undoing the bit permutation that gathered the
// set bits of k to the top.
std::pair<std::vector<GateOp>, CipherState> prepare_via_ghz(int n, const BitString& k,
                                                            const BitString& i);

// --- Plaintext encoding (Z patterns; never reads keys) ----------------------

// Sign flip (-1)^{sum over parts p with x_p = 1 of W_H(index part p)}.
Vector apply_z_pattern(const SchemeSpec& scheme, std::uint64_t xs, const Vector& amps);

// Z on every qubit: label 0 -> 1 for a single-bit state (global sign may flip).
CipherState encode_bit(const CipherState& state);

// Z pattern as an explicit gate list (Z on every qubit of each part with x_p = 1).
std::vector<GateOp> z_pattern_gates(const SchemeSpec& scheme, std::uint64_t xs);

// --- Ensembles ---------------------------------------------------------------

// Uniform average over the basis offset i of |state><state| for fixed keys.
DensityMatrix mixed_over_i(const SchemeSpec& scheme, const std::vector<BitString>& keys,
                           std::uint64_t label);

// Uniform average over all valid key tuples and i; brute-force accumulation
// of rank-1 terms in ascending (key tuple, i) order.
DensityMatrix mixed_full_ensemble(const SchemeSpec& scheme, std::uint64_t label);

// All valid key tuples for the scheme, ascending.
std::vector<std::vector<BitString>> enumerate_key_tuples(const SchemeSpec& scheme);
std::int64_t count_key_tuples(const SchemeSpec& scheme);

// Single-bit ensemble difference in closed form: entry (i, j) of
// rho0 - rho1 is 4/2^{2n} when W_H(i) and W_H(j) have different parity, else 0.
SymmetricMatrix analytic_diff(int n);

// The underlying 0/1 parity-mismatch matrix (entry 1 iff parities differ).
SymmetricMatrix parity_mismatch_matrix(int n);

}  // namespace qpke
