#include "qpke/qpke.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "qpke/circuit.hpp"
#include "qpke/errors.hpp"

namespace qpke {

namespace {

// splitmix64 finisher: the standard 64-bit avalanche mix.
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic keyed stream over (seed, s, key index, part index).
std::uint64_t keyed_mix(const Seed256& seed, const BitString& s, int key_index, int part_index) {
  std::uint64_t h = 0x6a09e667f3bcc908ULL;
  for (std::uint64_t w : seed) h = mix64(h ^ w);
  h = mix64(h ^ s.value());
  h = mix64(h ^ static_cast<std::uint64_t>(s.width()));
  h = mix64(h ^ static_cast<std::uint64_t>(key_index));
  h = mix64(h ^ static_cast<std::uint64_t>(part_index));
  return h;
}

BitString parity_fixed(std::uint64_t bits, int width, ParityClass want) {
  std::uint64_t mask = width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
  std::uint64_t v = bits & mask;
  int parity = std::popcount(v) & 1;
  int target = (want == ParityClass::Omega) ? 1 : 0;
  if (parity != target) v ^= 1;  // flip the least significant bit
  return BitString(v, width);
}

}  // namespace

PrivateKey::PrivateKey(SchemeSpec scheme, Seed256 seed, KeygenOptions opts,
                       std::optional<BitString> fixed_s)
    : scheme_(scheme),
      seed_(seed),
      opts_(opts),
      fixed_s_(std::move(fixed_s)),
      used_(std::make_shared<std::atomic<std::int64_t>>(0)),
      t_max_(std::make_shared<std::atomic<int>>(0)) {
  if (opts_.wide_s) {
    if (opts_.s_width == 0) opts_.s_width = scheme_.n;
    if (opts_.s_width < 1 || opts_.s_width > 64)
      throw dimension_error("tag width must be in [1, 64]");
  }
  if (opts_.mode == KeyMode::FixedKey) {
    int t = opts_.t_max >= 0 ? opts_.t_max : scheme_.n - 1;
    t_max_->store(t);
    if (!fixed_s_) throw dimension_error("fixed-key mode requires a pinned tag");
  }
}

int PrivateKey::s_width() const { return opts_.wide_s ? opts_.s_width : scheme_.n; }

bool PrivateKey::s_admissible(const BitString& s) const {
  if (s.width() != s_width()) return false;
  if (!opts_.wide_s && classify(s) != ParityClass::Omega) return false;
  return true;
}

std::int64_t PrivateKey::consume_budget() const {
  if (opts_.mode != KeyMode::FixedKey) return used_->fetch_add(1) + 1;
  const int cap = t_max_->load();
  std::int64_t prev = used_->load();
  while (true) {
    if (prev >= cap)
      throw budget_error("key reuse budget exhausted: " + std::to_string(prev) + " of " +
                         std::to_string(cap) + " copies already published");
    if (used_->compare_exchange_weak(prev, prev + 1)) return prev + 1;
  }
}

PrivateKey keygen(const SchemeSpec& scheme, const Seed256& seed, const KeygenOptions& opts,
                  Rng& rng) {
  std::optional<BitString> fixed_s;
  if (opts.mode == KeyMode::FixedKey) {
    int width = opts.wide_s ? (opts.s_width ? opts.s_width : scheme.n) : scheme.n;
    fixed_s = opts.wide_s ? random_bits(width, rng) : sample_class(scheme.n, ParityClass::Omega, rng);
  }
  return PrivateKey(scheme, seed, opts, std::move(fixed_s));
}

PrivateKey keygen(const SchemeSpec& scheme, Rng& rng, const KeygenOptions& opts) {
  Seed256 seed{rng(), rng(), rng(), rng()};
  return keygen(scheme, seed, opts, rng);
}

std::vector<BitString> f_eval(const PrivateKey& priv, const BitString& s) {
  if (s.width() != priv.s_width())
    throw dimension_error("tag width " + std::to_string(s.width()) + " does not match key");
  const SchemeSpec& sch = priv.scheme();
  const int m = sch.part_width();
  std::vector<BitString> keys;
  keys.reserve(sch.l);
  for (int j = 0; j < sch.l; ++j) {
    BitString key = parity_fixed(keyed_mix(priv.seed(), s, j, 0), m,
                                 j == 0 ? ParityClass::Omega : ParityClass::Pi);
    for (int p = 1; p < sch.l; ++p)
      key = key.concat(parity_fixed(keyed_mix(priv.seed(), s, j, p), m,
                                    p == j ? ParityClass::Omega : ParityClass::Pi));
    keys.push_back(key);
  }
  validate_keys(sch, keys);
  return keys;
}

PublicKey publish(const PrivateKey& priv, Rng& rng) {
  priv.consume_budget();
  BitString s = priv.mode() == KeyMode::FixedKey
                    ? *priv.fixed_s()
                    : (priv.options().wide_s ? random_bits(priv.s_width(), rng)
                                             : sample_class(priv.n(), ParityClass::Omega, rng));
  BitString i = random_bits(priv.n(), rng);
  std::vector<BitString> keys = f_eval(priv, s);
  CipherState state = pure_multi(priv.n(), priv.scheme().l, keys, i, 0);
  return PublicKey{s, std::move(state)};
}

Ciphertext encrypt(const PublicKey& pub, std::uint64_t plaintext) {
  const SchemeSpec& sch = pub.state.scheme;
  if (plaintext >> sch.l) throw dimension_error("plaintext does not fit the scheme width");
  Vector amps = apply_z_pattern(sch, plaintext, pub.state.vector.vec());
  std::optional<std::uint64_t> label =
      pub.state.label ? std::optional<std::uint64_t>(*pub.state.label ^ plaintext) : std::nullopt;
  return Ciphertext{pub.s, CipherState{StateVector(std::move(amps)), sch, label}};
}

namespace {

// Runs H - CXorK(k) - H on an ancilla prepended to the data register and
// returns the probability that the ancilla reads 1 plus both post-read data
// registers (branch 0 / branch 1, unnormalized).
struct AncillaRead {
  Real p_one;
  Vector branch0;  // data register amplitudes given ancilla 0
  Vector branch1;
};

AncillaRead run_ancilla_circuit(const BitString& k, const Vector& data) {
  const int n = k.width();
  const std::int64_t dim = data.size();
  if (dim != (std::int64_t{1} << n)) throw dimension_error("data register width mismatch");
  check_dimension(dim * 2);
  Vector reg = Vector::Zero(dim * 2);
  reg.head(dim) = data;  // ancilla |0> is the most significant qubit
  std::vector<GateOp> gates{GateOp::h(0), GateOp::cxork(0, k), GateOp::h(0)};
  reg = apply_gates(gates, std::move(reg), n + 1);
  AncillaRead out;
  out.branch0 = reg.head(dim);
  out.branch1 = reg.tail(dim);
  out.p_one = out.branch1.squaredNorm();
  return out;
}

}  // namespace

std::uint64_t decrypt_with_keys(const std::vector<BitString>& keys, const StateVector& state) {
  Vector data = state.vec();
  std::uint64_t plaintext = 0;
  for (const BitString& k : keys) {
    AncillaRead read = run_ancilla_circuit(k, data);
    int bit;
    if (read.p_one > 1.0 - tol::exact) {
      bit = 1;
      data = read.branch1;
    } else if (read.p_one < tol::exact) {
      bit = 0;
      data = read.branch0;
    } else {
      throw integrity_error("ciphertext support is corrupted: ancilla probability " +
                            std::to_string(read.p_one) + " is not extremal");
    }
    data /= data.norm();
    plaintext = (plaintext << 1) | static_cast<std::uint64_t>(bit);
  }
  return plaintext;
}

std::uint64_t decrypt(const PrivateKey& priv, const Ciphertext& ct) {
  if (!priv.s_admissible(ct.s)) throw dimension_error("ciphertext tag is not admissible");
  return decrypt_with_keys(f_eval(priv, ct.s), ct.state.vector);
}

MeasuredDecryption decrypt_measured(const std::vector<BitString>& keys, const Vector& state,
                                    Rng& rng) {
  MeasuredDecryption out;
  Vector data = state;
  for (const BitString& k : keys) {
    AncillaRead read = run_ancilla_circuit(k, data);
    int bit;
    if (read.p_one > 1.0 - tol::exact) {
      bit = 1;
    } else if (read.p_one < tol::exact) {
      bit = 0;
    } else {
      // Genuinely random ancilla: sample with 53-bit resolution.
      const Real u = static_cast<Real>(draw_bits(rng, 53)) * 0x1p-53;
      bit = u < read.p_one ? 1 : 0;
      ++out.sampled_bits;
    }
    data = bit ? read.branch1 : read.branch0;
    data /= data.norm();
    out.plaintext = (out.plaintext << 1) | static_cast<std::uint64_t>(bit);
  }
  out.post_state = std::move(data);
  return out;
}

UsageReport enforce_budget(const PrivateKey& priv, int t_max) {
  UsageReport report;
  report.n = priv.n();
  report.mode = priv.mode();
  report.used = priv.used();
  if (priv.mode() == KeyMode::FixedKey) {
    if (t_max >= 0) priv.set_t_max(t_max);
    report.t_max = priv.t_max();
    report.default_policy = (priv.options().t_max < 0 && t_max < 0);
    report.bound = std::sqrt(std::pow(2.0, report.t_max - priv.n()));
  }
  return report;
}

}  // namespace qpke
