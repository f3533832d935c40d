#include "qpke/states.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>

#include "qpke/errors.hpp"

namespace qpke {

SchemeSpec SchemeSpec::make(int n, int l) {
  if (n < 1) throw std::invalid_argument("scheme width must be >= 1");
  if (l < 1 || l > n) throw std::invalid_argument("plaintext width must be in [1, n]");
  if (n % l != 0)
    throw std::invalid_argument("scheme width " + std::to_string(n) +
                                " is not divisible by plaintext width " + std::to_string(l));
  if (l > 62) throw std::invalid_argument("plaintext width too large");
  return SchemeSpec{n, l};
}

SchemeSpec SchemeSpec::from_name(const std::string& name, int n) {
  if (name == "single-bit") return single_bit(n);
  if (name == "two-bit") return two_bit(n);
  if (name.rfind("l-bit(", 0) == 0 && name.back() == ')') {
    int l = std::stoi(name.substr(6, name.size() - 7));
    return multi_bit(n, l);
  }
  throw std::invalid_argument("unknown scheme name: " + name);
}

std::string SchemeSpec::name() const {
  if (l == 1) return "single-bit";
  if (l == 2) return "two-bit";
  return "l-bit(" + std::to_string(l) + ")";
}

void validate_keys(const SchemeSpec& scheme, const std::vector<BitString>& keys) {
  if (static_cast<int>(keys.size()) != scheme.l)
    throw dimension_error("expected " + std::to_string(scheme.l) + " keys, got " +
                          std::to_string(keys.size()));
  const int m = scheme.part_width();
  for (int j = 0; j < scheme.l; ++j) {
    if (keys[j].width() != scheme.n) throw dimension_error("key width does not match scheme");
    for (int p = 0; p < scheme.l; ++p) {
      BitString part = keys[j].slice(p * m, m);
      ParityClass want = (p == j) ? ParityClass::Omega : ParityClass::Pi;
      if (classify(part) != want)
        throw dimension_error("key " + std::to_string(j) + " part " + std::to_string(p) +
                              " violates the parity structure");
    }
  }
}

KeyTuple::KeyTuple(SchemeSpec s, std::vector<BitString> ks, BitString i_)
    : scheme(s), keys(std::move(ks)), i(i_) {
  validate_keys(scheme, keys);
  if (i.width() != scheme.n) throw dimension_error("offset width does not match scheme");
}

namespace {

// Support of the coset state: index and sign for every coefficient vector xs'.
struct SupportEntry {
  std::uint64_t index;
  int sign;  // +1 / -1
};

std::vector<SupportEntry> coset_support(const std::vector<BitString>& keys, const BitString& i,
                                        std::uint64_t xs) {
  const int l = static_cast<int>(keys.size());
  std::vector<SupportEntry> out;
  out.reserve(std::size_t{1} << l);
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << l); ++a) {
    std::uint64_t idx = i.value();
    for (int j = 0; j < l; ++j)
      if ((a >> (l - 1 - j)) & 1) idx ^= keys[j].value();
    const int sign = (std::popcount(a & xs) % 2 == 0) ? 1 : -1;
    out.push_back({idx, sign});
  }
  return out;
}

CipherState build_pure(const SchemeSpec& scheme, const std::vector<BitString>& keys,
                       const BitString& i, std::uint64_t xs) {
  validate_keys(scheme, keys);
  if (i.width() != scheme.n) throw dimension_error("offset width does not match scheme");
  if (xs >> scheme.l) throw dimension_error("plaintext does not fit the scheme width");
  check_dimension(std::int64_t{1} << scheme.n);
  Vector amps = Vector::Zero(std::int64_t{1} << scheme.n);
  const Real mag = std::pow(2.0, -scheme.l / 2.0);
  for (const SupportEntry& e : coset_support(keys, i, xs))
    amps[static_cast<std::int64_t>(e.index)] = e.sign * mag;
  return CipherState{StateVector(std::move(amps)), scheme, xs};
}

}  // namespace

void check_cipher_invariants(const CipherState& state, const std::vector<BitString>* keys) {
  const SchemeSpec& sch = state.scheme;
  const Vector& amps = state.vector.vec();
  if (state.vector.qubits() != sch.n) throw dimension_error("state width does not match scheme");
  const Real mag = std::pow(2.0, -sch.l / 2.0);
  std::vector<std::uint64_t> support;
  for (std::int64_t idx = 0; idx < amps.size(); ++idx) {
    if (amps[idx] == 0.0) continue;
    if (std::abs(std::abs(amps[idx]) - mag) > tol::norm)
      throw dimension_error("support amplitude has wrong magnitude");
    support.push_back(static_cast<std::uint64_t>(idx));
  }
  if (support.size() != (std::size_t{1} << sch.l))
    throw dimension_error("support size is not 2^l");
  // Support must be a coset: offsets from the first element form a group.
  std::set<std::uint64_t> offsets;
  for (std::uint64_t s : support) offsets.insert(s ^ support.front());
  for (std::uint64_t a : offsets)
    for (std::uint64_t b : offsets)
      if (!offsets.count(a ^ b)) throw dimension_error("support is not a coset");
  if (keys) {
    std::set<std::uint64_t> expected;
    for (const SupportEntry& e : coset_support(*keys, BitString(support.front(), sch.n), 0))
      expected.insert(e.index);
    if (std::set<std::uint64_t>(support.begin(), support.end()) != expected)
      throw dimension_error("support does not match the key coset");
  }
}

CipherState pure_single(int n, const BitString& k, const BitString& i, int b) {
  if (b != 0 && b != 1) throw dimension_error("plaintext bit must be 0 or 1");
  return build_pure(SchemeSpec::single_bit(n), {k}, i, static_cast<std::uint64_t>(b));
}

CipherState pure_two_bit(int n, const BitString& k1, const BitString& k2, const BitString& i,
                         std::uint64_t xy) {
  return build_pure(SchemeSpec::two_bit(n), {k1, k2}, i, xy);
}

CipherState pure_multi(int n, int l, const std::vector<BitString>& ks, const BitString& i,
                       std::uint64_t xs) {
  return build_pure(SchemeSpec::multi_bit(n, l), ks, i, xs);
}

std::pair<std::vector<GateOp>, CipherState> prepare_via_ghz(int n, const BitString& k,
                                                            const BitString& i) {
  SchemeSpec scheme = SchemeSpec::single_bit(n);
  validate_keys(scheme, {k});
  if (i.width() != n) throw dimension_error("offset width does not match scheme");
  const int w = hamming_weight(k);
  BitPermutation perm = permutation_for(k);  // gathers set bits of k to the top
  BitString i_perm = apply_permutation(perm, i);

  std::vector<GateOp> gates;
  gates.push_back(GateOp::h(0));
  for (int t = 1; t < w; ++t) gates.push_back(GateOp::cnot(0, t));
  for (int q = 0; q < n; ++q)
    if (i_perm.bit(q)) gates.push_back(GateOp::x(q));
  for (auto [q1, q2] : perm.inverse().to_swaps()) gates.push_back(GateOp::swap(q1, q2));

  Vector amps = Vector::Zero(std::int64_t{1} << n);
  amps[0] = 1.0;
  amps = apply_gates(gates, std::move(amps), n);
  CipherState out{StateVector(std::move(amps)), scheme, 0};
  check_cipher_invariants(out);
  return {std::move(gates), std::move(out)};
}

Vector apply_z_pattern(const SchemeSpec& scheme, std::uint64_t xs, const Vector& amps) {
  if (amps.size() != (std::int64_t{1} << scheme.n))
    throw dimension_error("amplitude vector length does not match scheme");
  if (xs >> scheme.l) throw dimension_error("plaintext does not fit the scheme width");
  const int m = scheme.part_width();
  Vector out = amps;
  for (std::int64_t idx = 0; idx < out.size(); ++idx) {
    int parity = 0;
    for (int p = 0; p < scheme.l; ++p) {
      if (!((xs >> (scheme.l - 1 - p)) & 1)) continue;
      const std::uint64_t part =
          (static_cast<std::uint64_t>(idx) >> (m * (scheme.l - 1 - p))) & ((std::uint64_t{1} << m) - 1);
      parity ^= std::popcount(part) & 1;
    }
    if (parity) out[idx] = -out[idx];
  }
  return out;
}

std::vector<GateOp> z_pattern_gates(const SchemeSpec& scheme, std::uint64_t xs) {
  if (xs >> scheme.l) throw dimension_error("plaintext does not fit the scheme width");
  const int m = scheme.part_width();
  std::vector<GateOp> gates;
  for (int p = 0; p < scheme.l; ++p)
    if ((xs >> (scheme.l - 1 - p)) & 1)
      for (int q = p * m; q < (p + 1) * m; ++q) gates.push_back(GateOp::z(q));
  return gates;
}

CipherState encode_bit(const CipherState& state) {
  if (state.scheme.l != 1) throw dimension_error("encode_bit expects a single-bit state");
  if (state.label && *state.label != 0) throw dimension_error("encode_bit expects label 0");
  Vector flipped = apply_z_pattern(state.scheme, 1, state.vector.vec());
  std::optional<std::uint64_t> label = state.label ? std::optional<std::uint64_t>(1) : std::nullopt;
  return CipherState{StateVector(std::move(flipped)), state.scheme, label};
}

DensityMatrix mixed_over_i(const SchemeSpec& scheme, const std::vector<BitString>& keys,
                           std::uint64_t label) {
  validate_keys(scheme, keys);
  const std::int64_t dim = std::int64_t{1} << scheme.n;
  check_dimension(dim);
  Matrix acc = Matrix::Zero(dim, dim);
  const Real weight = 1.0 / (static_cast<Real>(dim) * (std::int64_t{1} << scheme.l));
  for (std::int64_t iv = 0; iv < dim; ++iv) {
    auto support = coset_support(keys, BitString(static_cast<std::uint64_t>(iv), scheme.n), label);
    for (const auto& r : support)
      for (const auto& c : support)
        acc(static_cast<std::int64_t>(r.index), static_cast<std::int64_t>(c.index)) +=
            weight * r.sign * c.sign;
  }
  return DensityMatrix(std::move(acc));
}

std::vector<std::vector<BitString>> enumerate_key_tuples(const SchemeSpec& scheme) {
  const int m = scheme.part_width();
  // All valid single keys for slot j: cartesian product of per-part classes.
  auto keys_for_slot = [&](int j) {
    std::vector<BitString> out;
    std::vector<std::vector<BitString>> parts(scheme.l);
    for (int p = 0; p < scheme.l; ++p)
      parts[p] = enumerate_class(m, p == j ? ParityClass::Omega : ParityClass::Pi);
    std::vector<std::size_t> cursor(scheme.l, 0);
    while (true) {
      BitString key = parts[0][cursor[0]];
      for (int p = 1; p < scheme.l; ++p) key = key.concat(parts[p][cursor[p]]);
      out.push_back(key);
      int p = scheme.l - 1;
      while (p >= 0 && ++cursor[p] == parts[p].size()) cursor[p--] = 0;
      if (p < 0) break;
    }
    std::sort(out.begin(), out.end(),
              [](const BitString& a, const BitString& b) { return a.value() < b.value(); });
    return out;
  };

  std::vector<std::vector<BitString>> slot_keys;
  for (int j = 0; j < scheme.l; ++j) slot_keys.push_back(keys_for_slot(j));

  std::vector<std::vector<BitString>> tuples;
  std::vector<std::size_t> cursor(scheme.l, 0);
  while (true) {
    std::vector<BitString> tuple;
    for (int j = 0; j < scheme.l; ++j) tuple.push_back(slot_keys[j][cursor[j]]);
    tuples.push_back(std::move(tuple));
    int j = scheme.l - 1;
    while (j >= 0 && ++cursor[j] == slot_keys[j].size()) cursor[j--] = 0;
    if (j < 0) break;
  }
  return tuples;
}

std::int64_t count_key_tuples(const SchemeSpec& scheme) {
  // 2^{m-1} choices per part, l parts per key, l keys.
  const int exponent = scheme.l * (scheme.n - scheme.l);
  return std::int64_t{1} << exponent;
}

DensityMatrix mixed_full_ensemble(const SchemeSpec& scheme, std::uint64_t label) {
  const std::int64_t dim = std::int64_t{1} << scheme.n;
  check_dimension(dim);
  auto tuples = enumerate_key_tuples(scheme);
  Matrix acc = Matrix::Zero(dim, dim);
  const Real weight =
      1.0 / (static_cast<Real>(tuples.size()) * dim * (std::int64_t{1} << scheme.l));
  for (const auto& keys : tuples) {
    for (std::int64_t iv = 0; iv < dim; ++iv) {
      auto support = coset_support(keys, BitString(static_cast<std::uint64_t>(iv), scheme.n), label);
      for (const auto& r : support)
        for (const auto& c : support)
          acc(static_cast<std::int64_t>(r.index), static_cast<std::int64_t>(c.index)) +=
              weight * r.sign * c.sign;
    }
  }
  return DensityMatrix(std::move(acc));
}

SymmetricMatrix parity_mismatch_matrix(int n) {
  const std::int64_t dim = std::int64_t{1} << n;
  check_dimension(dim);
  Matrix a = Matrix::Zero(dim, dim);
  for (std::int64_t r = 0; r < dim; ++r)
    for (std::int64_t c = 0; c < dim; ++c)
      if ((std::popcount(static_cast<std::uint64_t>(r)) & 1) !=
          (std::popcount(static_cast<std::uint64_t>(c)) & 1))
        a(r, c) = 1.0;
  return SymmetricMatrix(std::move(a));
}

SymmetricMatrix analytic_diff(int n) {
  const Real scale = 4.0 / std::pow(2.0, 2 * n);
  return SymmetricMatrix(scale * parity_mismatch_matrix(n).mat());
}

}  // namespace qpke
