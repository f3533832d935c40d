#pragma once

#include <cstdint>
#include <vector>

#include "qpke/common.hpp"

namespace qpke {

// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
Real gamma_q(Real a, Real x);

// Pearson goodness-of-fit p-value of observed counts against expected
// probabilities (defaults to uniform). dof = (#cells with expectation > 0) - 1.
Real chi_square_uniform_p(const std::vector<std::int64_t>& counts);
Real chi_square_gof_p(const std::vector<std::int64_t>& counts, const std::vector<Real>& probs);

// Two-sample homogeneity test on two histograms over the same cells.
Real chi_square_two_sample_p(const std::vector<std::int64_t>& a,
                             const std::vector<std::int64_t>& b);

// Plug-in mutual information (nats) of a joint histogram, rows x cols.
Real mutual_information(const std::vector<std::vector<std::int64_t>>& joint);

struct PermutationTest {
  Real statistic = 0.0;   // MI of the observed pairing
  Real null_q99 = 0.0;    // 99th percentile of MI under shuffled pairings
  int permutations = 0;
  bool below_null = false;
};

// Shuffles the column labels of paired observations to build the independence
// null for the plug-in MI statistic.
PermutationTest mi_permutation_test(const std::vector<int>& rows, const std::vector<int>& cols,
                                    int row_card, int col_card, int permutations, Rng& rng);

}  // namespace qpke
