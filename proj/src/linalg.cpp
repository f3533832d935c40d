#include "qpke/linalg.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <string>

namespace qpke {

int qubits_for_dim(std::int64_t dim) {
  if (dim < 1 || (dim & (dim - 1)) != 0)
    throw dimension_error("dimension " + std::to_string(dim) + " is not a power of two");
  int m = 0;
  while ((std::int64_t{1} << m) < dim) ++m;
  return m;
}

StateVector::StateVector(Vector amplitudes) : amps_(std::move(amplitudes)) {
  qubits_ = qubits_for_dim(amps_.size());
  if (std::abs(amps_.norm() - 1.0) > tol::norm)
    throw dimension_error("state vector is not normalized");
}

SymmetricMatrix::SymmetricMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols())
    throw dimension_error("symmetric matrix must be square");
  if ((entries_ - entries_.transpose()).cwiseAbs().maxCoeff() > tol::symmetric)
    throw dimension_error("matrix is not symmetric");
}

DensityMatrix::DensityMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols())
    throw dimension_error("density matrix must be square");
  qubits_ = qubits_for_dim(entries_.rows());
  if ((entries_ - entries_.transpose()).cwiseAbs().maxCoeff() > tol::symmetric)
    throw dimension_error("density matrix is not symmetric");
  if (std::abs(entries_.trace() - 1.0) > tol::trace)
    throw dimension_error("density matrix trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(entries_, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw eigensolver_error("eigensolver failed on density matrix");
  if (es.eigenvalues().minCoeff() < -tol::psd)
    throw dimension_error("density matrix has a negative eigenvalue beyond tolerance");
}

Matrix outer(const Vector& v) {
  if (std::abs(v.norm() - 1.0) > tol::exact)
    throw dimension_error("outer product requires a normalized vector");
  return v * v.transpose();
}

DensityMatrix outer(const StateVector& v) { return DensityMatrix(outer(v.vec())); }

Matrix kron(const Eigen::Ref<const Matrix>& a, const Eigen::Ref<const Matrix>& b) {
  check_dimension(a.rows() * b.rows());
  check_dimension(a.cols() * b.cols());
  return Eigen::kroneckerProduct(a, b);
}

SymmetricMatrix kron(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  return SymmetricMatrix(kron(a.mat(), b.mat()));
}

namespace {
void require_symmetric(const Eigen::Ref<const Matrix>& m) {
  if (m.rows() != m.cols()) throw dimension_error("matrix must be square");
  if (m.size() > 0 && (m - m.transpose()).cwiseAbs().maxCoeff() > tol::symmetric)
    throw dimension_error("matrix is not symmetric");
}

// Traceless operators with a +/-lambda spectrum reduce to a tridiagonal form
// with (near-)zero diagonal, where the solver's relative deflation test can
// never fire and iteration stalls. Solving A + cI instead (c beyond the
// Gershgorin radius, so diagonals are solidly positive) restores deflation;
// the spectrum shifts back exactly and the eigenvectors are unchanged.
Real gershgorin_shift(const Eigen::Ref<const Matrix>& m) {
  const Real scale = m.size() > 0 ? m.cwiseAbs().maxCoeff() : 1.0;
  return (scale > 0.0 ? scale : 1.0) * static_cast<Real>(m.rows());
}

template <typename Solver>
Real solve_with_rescue(Solver& es, const Eigen::Ref<const Matrix>& m, int options) {
  es.compute(m, options);
  if (es.info() == Eigen::Success) return 0.0;
  const Real shift = gershgorin_shift(m);
  Matrix shifted = m;
  shifted.diagonal().array() += shift;
  es.compute(shifted, options);
  if (es.info() != Eigen::Success)
    throw eigensolver_error("symmetric eigensolver did not converge");
  return shift;
}
}  // namespace

Vector eigenvalues_symmetric(const Eigen::Ref<const Matrix>& m) {
  require_symmetric(m);
  Eigen::SelfAdjointEigenSolver<Matrix> es;
  const Real shift = solve_with_rescue(es, m, Eigen::EigenvaluesOnly);
  return (es.eigenvalues().array() - shift).reverse();
}

Vector eigenvalues_symmetric(const SymmetricMatrix& m) { return eigenvalues_symmetric(m.mat()); }

EigenDecomposition eigen_decomposition(const SymmetricMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es;
  const Real shift = solve_with_rescue(es, m.mat(), Eigen::ComputeEigenvectors);
  EigenDecomposition out;
  out.values = (es.eigenvalues().array() - shift).reverse();
  out.vectors = es.eigenvectors().rowwise().reverse();
  return out;
}

Real trace_norm(const Eigen::Ref<const Matrix>& m) {
  return eigenvalues_symmetric(m).cwiseAbs().sum();
}

Real trace_norm(const SymmetricMatrix& m) { return trace_norm(m.mat()); }

Real trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw dimension_error("trace distance requires equal dimensions");
  return 0.5 * trace_norm(Matrix(rho.mat() - sigma.mat()));
}

Real helstrom_success(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return 0.5 + 0.5 * trace_distance(rho, sigma);
}

}  // namespace qpke
