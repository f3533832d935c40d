#include "qpke/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qpke/bitmath.hpp"
#include "qpke/errors.hpp"
#include "qpke/stats.hpp"

namespace qpke::analysis {

namespace {

using Clock = std::chrono::steady_clock;

Real elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<Real, std::milli>(Clock::now() - start).count();
}

constexpr Real kNaN = std::numeric_limits<Real>::quiet_NaN();

void finish(DistanceReport& r) {
  switch (r.kind) {
    case CheckKind::Exact:
      r.abs_error = std::abs(r.computed - r.expected);
      r.passed = r.abs_error <= tol::exact;
      break;
    case CheckKind::Bound:
      r.abs_error = std::abs(r.computed - r.expected);
      r.passed = r.computed <= r.expected + tol::exact;
      break;
    case CheckKind::Conjecture:
    case CheckKind::Info:
      r.abs_error = kNaN;
      r.passed = true;
      break;
  }
}

Matrix tensor_power(const Matrix& m, int t) {
  Matrix acc = Matrix::Identity(1, 1);
  for (int rep = 0; rep < t; ++rep) acc = kron(acc, m);
  return acc;
}

std::uint64_t parse_label(const std::string& text, int l) {
  if (static_cast<int>(text.size()) != l) throw std::invalid_argument("label width mismatch");
  std::uint64_t v = 0;
  for (char c : text) {
    if (c != '0' && c != '1') throw std::invalid_argument("label must be binary: " + text);
    v = (v << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

std::string label_text(std::uint64_t v, int l) { return BitString(v, l).to_binary(); }

}  // namespace

std::string to_string(CheckKind kind) {
  switch (kind) {
    case CheckKind::Exact: return "exact";
    case CheckKind::Bound: return "bound";
    case CheckKind::Conjecture: return "conjecture";
    case CheckKind::Info: return "info";
  }
  return "?";
}

DistanceReport verify_lemma4(int n) {
  if (n < 1 || n > 12) throw dimension_error("width out of range for this verification");
  const auto start = Clock::now();
  DistanceReport r;
  r.n = n;
  r.scheme = "single-bit";
  r.pair = "0-1";
  r.kind = CheckKind::Exact;
  r.expected = std::pow(2.0, -(n - 1));

  if (n <= 7) {
    SchemeSpec scheme = SchemeSpec::single_bit(n);
    DensityMatrix rho0 = mixed_full_ensemble(scheme, 0);
    DensityMatrix rho1 = mixed_full_ensemble(scheme, 1);
    r.computed = trace_distance(rho0, rho1);
    Matrix brute_diff = rho0.mat() - rho1.mat();
    r.cross_check = (brute_diff - analytic_diff(n).mat()).cwiseAbs().maxCoeff();
  } else {
    r.computed = 0.5 * trace_norm(analytic_diff(n));
  }
  r.runtime_ms = elapsed_ms(start);
  finish(r);
  return r;
}

DistanceReport verify_appendix(int n, const std::string& pair) {
  if (n % 2 != 0) throw dimension_error("two-bit verification requires even width");
  if (n < 4 || n > 8) throw dimension_error("width out of range for this verification");
  const auto dash = pair.find('-');
  if (dash == std::string::npos) throw std::invalid_argument("pair must look like 00-11");
  const std::uint64_t a = parse_label(pair.substr(0, dash), 2);
  const std::uint64_t b = parse_label(pair.substr(dash + 1), 2);
  if (a == b) throw std::invalid_argument("pair must name two distinct labels");

  const auto start = Clock::now();
  SchemeSpec scheme = SchemeSpec::two_bit(n);
  DensityMatrix rho_a = mixed_full_ensemble(scheme, a);
  DensityMatrix rho_b = mixed_full_ensemble(scheme, b);

  DistanceReport r;
  r.n = n;
  r.scheme = scheme.name();
  r.pair = pair;
  r.computed = trace_distance(rho_a, rho_b);
  if (a == 0 || b == 0) {
    r.kind = CheckKind::Exact;
    r.expected = std::pow(2.0, -(n - 2));
  } else {
    r.kind = CheckKind::Bound;
    r.expected = std::pow(2.0, -(n - 3));
  }
  r.runtime_ms = elapsed_ms(start);
  finish(r);
  return r;
}

std::vector<DistanceReport> verify_appendix_all(int n) {
  std::vector<DistanceReport> out;
  for (std::uint64_t a = 0; a < 4; ++a)
    for (std::uint64_t b = a + 1; b < 4; ++b)
      out.push_back(verify_appendix(n, label_text(a, 2) + "-" + label_text(b, 2)));
  return out;
}

MulticopyReport multicopy_norm(int n, int t) {
  if (n < 1) throw dimension_error("width must be positive");
  if (t < 0) throw dimension_error("copy count must be nonnegative");
  check_dimension(std::int64_t{1} << (static_cast<std::int64_t>(n) * (t + 1)));
  const auto start = Clock::now();

  SchemeSpec scheme = SchemeSpec::single_bit(n);
  auto omega = enumerate_class(n, ParityClass::Omega);
  const Real inv_count = 1.0 / static_cast<Real>(omega.size());
  const std::int64_t dim_t = std::int64_t{1} << (static_cast<std::int64_t>(n) * t);
  const std::int64_t dim_full = dim_t << n;

  MulticopyReport report;
  report.n = n;
  report.t = t;
  report.bound = std::sqrt(std::pow(2.0, t - n));

  Matrix centered = Matrix::Zero(dim_t, dim_t);
  Matrix full = Matrix::Zero(dim_full, dim_full);
  const Matrix maximally_mixed =
      Matrix::Identity(std::int64_t{1} << n, std::int64_t{1} << n) / std::pow(2.0, n);
  for (const BitString& k : omega) {
    const Matrix rho0 = mixed_over_i(scheme, {k}, 0).mat();
    const Matrix rho1 = mixed_over_i(scheme, {k}, 1).mat();
    const Matrix power = tensor_power(rho0, t);
    centered.noalias() += inv_count * (power - tensor_power(maximally_mixed, t));
    full.noalias() += inv_count * kron(rho0 - rho1, power);
  }
  report.norm_centered = t == 0 ? 0.0 : trace_norm(centered);
  report.norm_full = trace_norm(full);
  report.strict_ok = report.norm_centered < report.bound;
  report.runtime_ms = elapsed_ms(start);
  return report;
}

ScanReport conjecture_scan(int n, int l) {
  SchemeSpec scheme = SchemeSpec::multi_bit(n, l);
  ScanReport out;
  out.n = n;
  out.l = l;

  const std::int64_t labels = scheme.plaintext_count();
  std::vector<DensityMatrix> ensembles;
  ensembles.reserve(labels);
  for (std::int64_t xs = 0; xs < labels; ++xs)
    ensembles.push_back(mixed_full_ensemble(scheme, static_cast<std::uint64_t>(xs)));

  for (std::int64_t a = 0; a < labels; ++a) {
    for (std::int64_t b = a + 1; b < labels; ++b) {
      const auto start = Clock::now();
      DistanceReport r;
      r.n = n;
      r.scheme = scheme.name();
      r.pair = label_text(a, l) + "-" + label_text(b, l);
      r.computed = trace_distance(ensembles[a], ensembles[b]);
      r.kind = CheckKind::Conjecture;
      r.expected = kNaN;
      r.runtime_ms = elapsed_ms(start);
      finish(r);
      out.rows.push_back(std::move(r));
      out.max_distance = std::max(out.max_distance, out.rows.back().computed);
    }
  }
  out.ratio = out.max_distance * std::pow(2.0, n - l);
  return out;
}

HelstromMeasurement build_helstrom_measurement(int n) {
  if (n < 1 || n > 7) throw dimension_error("width out of range for the optimal measurement");
  SchemeSpec scheme = SchemeSpec::single_bit(n);
  DensityMatrix rho0 = mixed_full_ensemble(scheme, 0);
  DensityMatrix rho1 = mixed_full_ensemble(scheme, 1);
  EigenDecomposition eig = eigen_decomposition(SymmetricMatrix(rho0.mat() - rho1.mat()));

  HelstromMeasurement m;
  const std::int64_t dim = rho0.dim();
  m.projector = Matrix::Zero(dim, dim);
  const Real cutoff = 1e-12 * eig.values.cwiseAbs().maxCoeff();
  for (std::int64_t j = 0; j < dim; ++j)
    if (eig.values(j) > cutoff)
      m.projector.noalias() += eig.vectors.col(j) * eig.vectors.col(j).transpose();
  m.distance = 0.5 * eig.values.cwiseAbs().sum();
  m.success = 0.5 + 0.5 * m.distance;
  return m;
}

Real projective_success(const Matrix& projector, const DensityMatrix& rho0,
                        const DensityMatrix& rho1) {
  if (projector.rows() != rho0.dim() || projector.cols() != rho0.dim())
    throw dimension_error("projector dimension mismatch");
  const Real advantage = (projector * (rho0.mat() - rho1.mat())).trace();
  return 0.5 + 0.5 * std::abs(advantage);
}

AttackReport measurement_attack(int n, std::int64_t trials, Rng& rng) {
  if (trials < 1) throw std::invalid_argument("at least one trial required");
  check_dimension(std::int64_t{1} << n);
  const std::int64_t dim = std::int64_t{1} << n;

  auto omega = enumerate_class(n, ParityClass::Omega);
  std::vector<std::int64_t> key_index(dim, -1);
  for (std::size_t j = 0; j < omega.size(); ++j) key_index[omega[j].value()] = j;

  AttackReport report;
  report.n = n;
  report.trials = trials;
  report.histogram.assign(dim, 0);
  std::vector<std::int64_t> hist_b0(dim, 0), hist_b1(dim, 0);
  std::vector<int> outcome_obs, key_obs;
  outcome_obs.reserve(trials);
  key_obs.reserve(trials);

  for (std::int64_t trial = 0; trial < trials; ++trial) {
    const BitString k = sample_class(n, ParityClass::Omega, rng);
    const BitString i = random_bits(n, rng);
    const int b = static_cast<int>(draw_bits(rng, 1));
    // The ciphertext has amplitude 1/2 on i and on i^k; the basis measurement
    // lands on either with probability 1/2 regardless of b.
    const std::uint64_t outcome = draw_bits(rng, 1) ? (i.value() ^ k.value()) : i.value();
    ++report.histogram[outcome];
    ++(b ? hist_b1 : hist_b0)[outcome];
    outcome_obs.push_back(static_cast<int>(outcome));
    key_obs.push_back(static_cast<int>(key_index[k.value()]));
  }

  report.chi_square_p = chi_square_uniform_p(report.histogram);
  report.conditional_p = chi_square_two_sample_p(hist_b0, hist_b1);

  // In-sample majority rule per outcome cell: the strongest guess of b the
  // observed data supports.
  std::int64_t correct = 0;
  for (std::int64_t c = 0; c < dim; ++c) correct += std::max(hist_b0[c], hist_b1[c]);
  report.empirical_success = static_cast<Real>(correct) / static_cast<Real>(trials);
  report.helstrom_bound = 0.5 + 0.5 * std::pow(2.0, -(n - 1));
  report.sigma =
      std::sqrt(report.helstrom_bound * (1.0 - report.helstrom_bound) / static_cast<Real>(trials));

  PermutationTest mi = mi_permutation_test(outcome_obs, key_obs, static_cast<int>(dim),
                                           static_cast<int>(omega.size()), 300, rng);
  report.mi = mi.statistic;
  report.mi_null_q99 = mi.null_q99;
  report.mi_below_null = mi.below_null;
  return report;
}

AttackReport helstrom_experiment(int n, std::int64_t trials, Rng& rng) {
  if (trials < 1) throw std::invalid_argument("at least one trial required");
  HelstromMeasurement m = build_helstrom_measurement(n);

  AttackReport report;
  report.n = n;
  report.trials = trials;
  report.histogram.assign(2, 0);
  report.helstrom_bound = m.success;
  report.sigma = std::sqrt(m.success * (1.0 - m.success) / static_cast<Real>(trials));

  std::int64_t correct = 0;
  for (std::int64_t trial = 0; trial < trials; ++trial) {
    const BitString k = sample_class(n, ParityClass::Omega, rng);
    const BitString i = random_bits(n, rng);
    const int b = static_cast<int>(draw_bits(rng, 1));
    const Vector psi = pure_single(n, k, i, b).vector.vec();
    const Real p_guess0 = psi.dot(m.projector * psi);
    const Real u = static_cast<Real>(draw_bits(rng, 53)) * 0x1p-53;
    const int guess = u < p_guess0 ? 0 : 1;
    ++report.histogram[guess];
    if (guess == b) ++correct;
  }
  report.empirical_success = static_cast<Real>(correct) / static_cast<Real>(trials);

  // Outcome frequencies against their analytic probabilities (the measurement
  // itself is fixed, so its marginal outcome law is exact).
  SchemeSpec scheme = SchemeSpec::single_bit(n);
  const Matrix avg =
      0.5 * (mixed_full_ensemble(scheme, 0).mat() + mixed_full_ensemble(scheme, 1).mat());
  const Real p0 = (m.projector * avg).trace();
  report.chi_square_p = chi_square_gof_p(report.histogram, {p0, 1.0 - p0});
  return report;
}

}  // namespace qpke::analysis
