#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpke/common.hpp"
#include "qpke/linalg.hpp"
#include "qpke/states.hpp"

namespace qpke::analysis {

enum class CheckKind { Exact, Bound, Conjecture, Info };

std::string to_string(CheckKind kind);

struct DistanceReport {
  int n = 0;
  std::string scheme;
  std::string pair;
  Real computed = 0.0;
  Real expected = 0.0;  // target value (Exact), bound (Bound), NaN (Conjecture/Info)
  CheckKind kind = CheckKind::Exact;
  Real abs_error = 0.0;
  Real runtime_ms = 0.0;
  bool passed = true;
  std::optional<Real> cross_check;  // max entrywise deviation between independent paths
};

struct AttackReport {
  int n = 0;
  std::int64_t trials = 0;
  std::vector<std::int64_t> histogram;
  Real chi_square_p = 0.0;
  Real empirical_success = 0.0;
  Real helstrom_bound = 0.0;
  Real sigma = 0.0;  // binomial sigma of the success estimate at the bound
  std::optional<Real> conditional_p;  // two-sample p for label-0 vs label-1 outcomes
  std::optional<Real> mi;
  std::optional<Real> mi_null_q99;
  std::optional<bool> mi_below_null;
};

struct MulticopyReport {
  int n = 0;
  int t = 0;
  Real norm_centered = 0.0;
  Real norm_full = 0.0;
  Real bound = 0.0;  // sqrt(2^{t-n}), asserted strictly above norm_centered
  bool strict_ok = false;
  Real runtime_ms = 0.0;
};

struct ScanReport {
  int n = 0;
  int l = 0;
  std::vector<DistanceReport> rows;
  Real max_distance = 0.0;
  Real ratio = 0.0;  // max_distance * 2^{n-l}; recorded, never asserted
};

// Distance between the two single-bit full ensembles against 2^{-(n-1)}.
// Brute force for n <= 7 (with an entrywise cross-check of the closed-form
// difference); closed-form path alone for larger n up to 12.
DistanceReport verify_lemma4(int n);

// Two-bit ensemble distance for one label pair ("00-11" etc.). Pairs anchored
// at 00 check the exact value 2^{-(n-2)}; the rest check the triangle bound
// 2^{-(n-3)}.
DistanceReport verify_appendix(int n, const std::string& pair);
std::vector<DistanceReport> verify_appendix_all(int n);

// Trace norms of the t-copy leakage operators plus the sqrt(2^{t-n}) bound.
MulticopyReport multicopy_norm(int n, int t);

// All pairwise distances among the 2^l label ensembles; reports the max and
// its ratio against 2^{-(n-l)} without asserting anything.
ScanReport conjecture_scan(int n, int l);

// Computational-basis measurement of fresh encryptions: outcome histogram
// must be uniform, outcomes must carry no information about the key or the
// plaintext beyond sampling noise.
AttackReport measurement_attack(int n, std::int64_t trials, Rng& rng);

// Optimal two-outcome discrimination of the two single-bit ensembles,
// Monte-Carlo over fresh encryptions of uniform plaintext bits.
AttackReport helstrom_experiment(int n, std::int64_t trials, Rng& rng);

// The optimal measurement itself (projector onto the nonnegative eigenspace
// of rho0 - rho1) plus the analytic success probability 1/2 + D/2.
struct HelstromMeasurement {
  Matrix projector;     // guesses label 0 on this outcome
  Real distance = 0.0;  // D(rho0, rho1)
  Real success = 0.0;   // 1/2 + D/2
};
HelstromMeasurement build_helstrom_measurement(int n);

// Best-labeling success probability of an arbitrary two-outcome projective
// measurement against the same ensemble pair; never exceeds the optimum.
Real projective_success(const Matrix& projector, const DensityMatrix& rho0,
                        const DensityMatrix& rho1);

}  // namespace qpke::analysis
