#ifndef QPKE_COMMON_HPP
#define QPKE_COMMON_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <random>

namespace qpke {

// All states and gates in this scheme have real matrix elements (H, X, Z,
// CNOT and XOR-shift operators), so the whole toolkit works over the reals.
// There is deliberately no complex support.
using Real = double;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

using Rng = std::mt19937_64;

// Numerical tolerances shared across modules.
namespace tol {
inline constexpr Real norm = 1e-12;       // state-vector normalization
inline constexpr Real symmetric = 1e-12;  // matrix symmetry
inline constexpr Real trace = 1e-10;      // density-matrix unit trace
inline constexpr Real psd = 1e-10;        // admissible negative eigenvalue noise
inline constexpr Real exact = 1e-9;       // exact rational verification targets
inline constexpr Real cross = 1e-12;      // entrywise agreement of two construction paths
}  // namespace tol

// Cap on the dimension of any allocated matrix.  Fails fast on parameter
// choices that would silently allocate gigabytes.
std::int64_t dimension_cap();
void set_dimension_cap(std::int64_t cap);

// Throws size_cap_error if dim exceeds the configured cap.
void check_dimension(std::int64_t dim);

// Uniform draw of `bits` bits (0 <= bits <= 63) from the high bits of the
// generator output.
std::uint64_t draw_bits(Rng& rng, int bits);

}  // namespace qpke

#endif
