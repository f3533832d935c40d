#include "qpke/bitmath.hpp"
#include "qpke/errors.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qpke {

namespace {
constexpr int kMaxWidth = 64;
constexpr int kEnumerationGuard = 24;

std::uint64_t width_mask(int width) {
  return width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}
}  // namespace

BitString::BitString(std::uint64_t value, int width) : value_(value), width_(width) {
  if (width < 1 || width > kMaxWidth)
    throw std::invalid_argument("BitString width must be in [1, 64], got " + std::to_string(width));
  if (value & ~width_mask(width))
    throw std::invalid_argument("BitString value does not fit in " + std::to_string(width) + " bits");
}

int BitString::bit(int j) const {
  if (j < 0 || j >= width_) throw std::out_of_range("bit position out of range");
  return static_cast<int>((value_ >> (width_ - 1 - j)) & 1u);
}

BitString BitString::operator^(const BitString& other) const {
  if (width_ != other.width_)
    throw dimension_error("xor of BitStrings with different widths");
  return BitString(value_ ^ other.value_, width_);
}

BitString BitString::slice(int from, int count) const {
  if (count < 1 || from < 0 || from + count > width_)
    throw std::out_of_range("BitString slice out of range");
  return BitString((value_ >> (width_ - from - count)) & width_mask(count), count);
}

BitString BitString::concat(const BitString& low) const {
  if (width_ + low.width_ > kMaxWidth)
    throw std::invalid_argument("concatenated BitString exceeds 64 bits");
  return BitString((value_ << low.width_) | low.value_, width_ + low.width_);
}

std::string BitString::to_binary() const {
  std::string s(width_, '0');
  for (int j = 0; j < width_; ++j)
    if (bit(j)) s[j] = '1';
  return s;
}

int hamming_weight(const BitString& x) { return std::popcount(x.value()); }

ParityClass classify(const BitString& x) {
  return (hamming_weight(x) % 2 == 1) ? ParityClass::Omega : ParityClass::Pi;
}

std::vector<BitString> enumerate_class(int n, ParityClass c) {
  if (n < 1) throw std::invalid_argument("width must be >= 1");
  if (n > kEnumerationGuard)
    throw size_cap_error("class enumeration guarded at n <= " + std::to_string(kEnumerationGuard));
  std::vector<BitString> out;
  out.reserve(std::size_t{1} << (n - 1));
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    BitString x(v, n);
    if (classify(x) == c) out.push_back(x);
  }
  return out;
}

BitString sample_class(int n, ParityClass c, Rng& rng) {
  if (n < 1) throw std::invalid_argument("width must be >= 1");
  std::uint64_t high = draw_bits(rng, n - 1);
  int parity = std::popcount(high) % 2;
  int want = (c == ParityClass::Omega) ? 1 : 0;
  std::uint64_t last = static_cast<std::uint64_t>(parity ^ want);
  return BitString((high << 1) | last, n);
}

BitString random_bits(int n, Rng& rng) { return BitString(draw_bits(rng, n), n); }

BitPermutation::BitPermutation(std::vector<int> mapping) : mapping_(std::move(mapping)) {
  const int n = static_cast<int>(mapping_.size());
  if (n < 1) throw std::invalid_argument("empty permutation");
  std::vector<bool> seen(n, false);
  for (int v : mapping_) {
    if (v < 0 || v >= n || seen[v]) throw std::invalid_argument("mapping is not a bijection");
    seen[v] = true;
  }
}

BitPermutation BitPermutation::identity(int n) {
  std::vector<int> m(n);
  std::iota(m.begin(), m.end(), 0);
  return BitPermutation(std::move(m));
}

BitPermutation BitPermutation::inverse() const {
  std::vector<int> inv(mapping_.size());
  for (int j = 0; j < size(); ++j) inv[mapping_[j]] = j;
  return BitPermutation(std::move(inv));
}

std::vector<std::pair<int, int>> BitPermutation::to_swaps() const {
  // Selection-style decomposition: after processing position j, slot j holds
  // its final source index.  Applying the emitted transpositions in order to
  // the identity arrangement reproduces mapping_.
  std::vector<int> cur(mapping_.size());
  std::iota(cur.begin(), cur.end(), 0);
  std::vector<std::pair<int, int>> swaps;
  for (int j = 0; j < size(); ++j) {
    if (cur[j] == mapping_[j]) continue;
    int src = j;
    for (int t = j + 1; t < size(); ++t)
      if (cur[t] == mapping_[j]) { src = t; break; }
    std::swap(cur[j], cur[src]);
    swaps.emplace_back(j, src);
  }
  return swaps;
}

BitPermutation permutation_for(const BitString& k) {
  if (k.value() == 0) throw std::invalid_argument("permutation_for requires k != 0");
  std::vector<int> mapping;
  mapping.reserve(k.width());
  for (int j = 0; j < k.width(); ++j)
    if (k.bit(j)) mapping.push_back(j);
  for (int j = 0; j < k.width(); ++j)
    if (!k.bit(j)) mapping.push_back(j);
  return BitPermutation(std::move(mapping));
}

BitString apply_permutation(const BitPermutation& p, const BitString& x) {
  if (p.size() != x.width())
    throw dimension_error("permutation size does not match BitString width");
  std::uint64_t out = 0;
  for (int j = 0; j < p.size(); ++j)
    out = (out << 1) | static_cast<std::uint64_t>(x.bit(p.mapping()[j]));
  return BitString(out, x.width());
}

}  // namespace qpke
