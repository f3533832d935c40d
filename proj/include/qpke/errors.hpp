#ifndef QPKE_ERRORS_HPP
#define QPKE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qpke {

struct dimension_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A requested allocation or enumeration exceeds the configured cap.
struct size_cap_error : std::length_error {
  using std::length_error::length_error;
};

// Ciphertext support is not a single coset of the key span: the decryption
// circuit would produce a non-deterministic control-bit outcome.
struct integrity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Fixed-key publication budget exhausted.
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct eigensolver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qpke

#endif
