#ifndef QPKE_BITMATH_HPP
#define QPKE_BITMATH_HPP

#include "qpke/common.hpp"

#include <cstdint>
#include <vector>

namespace qpke {

// An element of Z_{2^n}, carrying its width.  Bit positions are counted from
// the most significant bit: bit 0 of a width-n string is the leftmost digit
// of the ket label |b_0 b_1 ... b_{n-1}>.
class BitString {
 public:
  BitString(std::uint64_t value, int width);

  std::uint64_t value() const { return value_; }
  int width() const { return width_; }

  // Bit at MSB-first position j.
  int bit(int j) const;

  BitString operator^(const BitString& other) const;
  bool operator==(const BitString& other) const = default;

  // Substring of the given number of MSB-first bits starting at position
  // `from`; used to split keys into equal-width parts.
  BitString slice(int from, int count) const;

  // Concatenation: *this becomes the most significant part.
  BitString concat(const BitString& low) const;

  std::string to_binary() const;

 private:
  std::uint64_t value_;
  int width_;
};

enum class ParityClass { Omega, Pi };  // odd / even Hamming weight

int hamming_weight(const BitString& x);
ParityClass classify(const BitString& x);

// All 2^{n-1} members of the class, ascending by value.  Guarded at n <= 24.
std::vector<BitString> enumerate_class(int n, ParityClass c);

// Exactly uniform over the class: n-1 free bits, last bit fixes the parity.
BitString sample_class(int n, ParityClass c, Rng& rng);

// Uniform over Z_{2^n}.
BitString random_bits(int n, Rng& rng);

// A bijection on bit positions {0,...,n-1}.  Applying it to a string sets
// output bit j to input bit mapping[j].
class BitPermutation {
 public:
  explicit BitPermutation(std::vector<int> mapping);
  static BitPermutation identity(int n);

  int size() const { return static_cast<int>(mapping_.size()); }
  const std::vector<int>& mapping() const { return mapping_; }
  BitPermutation inverse() const;

  // Decomposition into transpositions of bit positions; applying the swaps
  // in order reproduces this permutation.
  std::vector<std::pair<int, int>> to_swaps() const;

 private:
  std::vector<int> mapping_;
};

// The stable permutation moving the set bits of k to the top W_H(k)
// positions, preserving the relative order within the set and unset groups.
// k must be nonzero.
BitPermutation permutation_for(const BitString& k);

BitString apply_permutation(const BitPermutation& p, const BitString& x);

}  // namespace qpke

#endif
