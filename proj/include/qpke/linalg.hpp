#pragma once

#include <Eigen/Dense>

#include "qpke/common.hpp"
#include "qpke/errors.hpp"

namespace qpke {

// ---------------------------------------------------------------------------
// Wrapper types. Each validates its invariants on construction so that
// downstream code can assume well-formed inputs.
// ---------------------------------------------------------------------------

// Normalized real vector of length 2^m interpreted as an m-qubit state.
class StateVector {
 public:
  explicit StateVector(Vector amplitudes);

  const Vector& vec() const { return amps_; }
  int qubits() const { return qubits_; }
  std::int64_t dim() const { return amps_.size(); }

 private:
  Vector amps_;
  int qubits_;
};

// Real symmetric d x d matrix; no trace or positivity requirement.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(Matrix entries);

  const Matrix& mat() const { return entries_; }
  std::int64_t dim() const { return entries_.rows(); }

 private:
  Matrix entries_;
};

// Symmetric, unit-trace, PSD (up to numerical noise) 2^m x 2^m matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix entries);

  const Matrix& mat() const { return entries_; }
  int qubits() const { return qubits_; }
  std::int64_t dim() const { return entries_.rows(); }

  SymmetricMatrix symmetric() const { return SymmetricMatrix(entries_); }

 private:
  Matrix entries_;
  int qubits_;
};

// ---------------------------------------------------------------------------
// Operations.
// ---------------------------------------------------------------------------

// |v><v| of a normalized vector (norm deviation above 1e-9 is rejected).
DensityMatrix outer(const StateVector& v);
Matrix outer(const Vector& v);

// Kronecker product; output dimension is checked against the global cap.
SymmetricMatrix kron(const SymmetricMatrix& a, const SymmetricMatrix& b);
Matrix kron(const Eigen::Ref<const Matrix>& a, const Eigen::Ref<const Matrix>& b);

struct EigenDecomposition {
  Vector values;   // descending
  Matrix vectors;  // column j pairs with values(j)
};

// Full spectrum of a symmetric matrix, descending.
Vector eigenvalues_symmetric(const SymmetricMatrix& m);
Vector eigenvalues_symmetric(const Eigen::Ref<const Matrix>& m);
EigenDecomposition eigen_decomposition(const SymmetricMatrix& m);

// Sum of absolute eigenvalues.
Real trace_norm(const SymmetricMatrix& m);
Real trace_norm(const Eigen::Ref<const Matrix>& m);

// (1/2) tr|rho - sigma|, in [0, 1].
Real trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// Optimal equal-prior two-state distinguishing probability: 1/2 + D/2.
Real helstrom_success(const DensityMatrix& rho, const DensityMatrix& sigma);

// log2 of a power-of-two dimension; throws dimension_error otherwise.
int qubits_for_dim(std::int64_t dim);

}  // namespace qpke
