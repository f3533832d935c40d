#include "qpke/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qpke/errors.hpp"

namespace qpke {

namespace {

// Series expansion of P(a, x), accurate for x < a + 1.
Real gamma_p_series(Real a, Real x) {
  Real ap = a;
  Real sum = 1.0 / a;
  Real del = sum;
  for (int it = 0; it < 500; ++it) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-15)
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  throw std::runtime_error("incomplete gamma series did not converge");
}

// Lentz continued fraction for Q(a, x), accurate for x >= a + 1.
Real gamma_q_cf(Real a, Real x) {
  const Real tiny = 1e-300;
  Real b = x + 1.0 - a;
  Real c = 1.0 / tiny;
  Real d = 1.0 / b;
  Real h = d;
  for (int i = 1; i <= 500; ++i) {
    Real an = -static_cast<Real>(i) * (static_cast<Real>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    Real delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-15)
      return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  throw std::runtime_error("incomplete gamma continued fraction did not converge");
}

}  // namespace

Real gamma_q(Real a, Real x) {
  if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_q requires a > 0 and x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

Real chi_square_gof_p(const std::vector<std::int64_t>& counts, const std::vector<Real>& probs) {
  if (counts.size() != probs.size())
    throw dimension_error("counts and probabilities must have equal length");
  std::int64_t total = 0;
  for (std::int64_t c : counts) total += c;
  if (total <= 0) throw std::invalid_argument("empty histogram");
  Real stat = 0.0;
  int dof = -1;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (probs[c] <= 0.0) {
      if (counts[c] != 0) throw std::invalid_argument("observation in a zero-probability cell");
      continue;
    }
    const Real expected = probs[c] * static_cast<Real>(total);
    const Real diff = static_cast<Real>(counts[c]) - expected;
    stat += diff * diff / expected;
    ++dof;
  }
  if (dof < 1) return 1.0;
  return gamma_q(0.5 * dof, 0.5 * stat);
}

Real chi_square_uniform_p(const std::vector<std::int64_t>& counts) {
  return chi_square_gof_p(counts,
                          std::vector<Real>(counts.size(), 1.0 / static_cast<Real>(counts.size())));
}

Real chi_square_two_sample_p(const std::vector<std::int64_t>& a,
                             const std::vector<std::int64_t>& b) {
  if (a.size() != b.size()) throw dimension_error("histograms must have equal length");
  std::int64_t na = 0, nb = 0;
  for (std::int64_t c : a) na += c;
  for (std::int64_t c : b) nb += c;
  if (na <= 0 || nb <= 0) throw std::invalid_argument("empty histogram");
  const Real total = static_cast<Real>(na + nb);
  Real stat = 0.0;
  int dof = -1;
  for (std::size_t c = 0; c < a.size(); ++c) {
    const Real col = static_cast<Real>(a[c] + b[c]);
    if (col == 0.0) continue;
    const Real ea = col * static_cast<Real>(na) / total;
    const Real eb = col * static_cast<Real>(nb) / total;
    stat += (a[c] - ea) * (a[c] - ea) / ea + (b[c] - eb) * (b[c] - eb) / eb;
    ++dof;
  }
  if (dof < 1) return 1.0;
  return gamma_q(0.5 * dof, 0.5 * stat);
}

Real mutual_information(const std::vector<std::vector<std::int64_t>>& joint) {
  if (joint.empty()) throw std::invalid_argument("empty joint histogram");
  const std::size_t cols = joint.front().size();
  std::vector<Real> row_sum(joint.size(), 0.0), col_sum(cols, 0.0);
  Real total = 0.0;
  for (std::size_t r = 0; r < joint.size(); ++r) {
    if (joint[r].size() != cols) throw dimension_error("ragged joint histogram");
    for (std::size_t c = 0; c < cols; ++c) {
      row_sum[r] += joint[r][c];
      col_sum[c] += joint[r][c];
      total += joint[r][c];
    }
  }
  if (total <= 0.0) throw std::invalid_argument("empty joint histogram");
  Real mi = 0.0;
  for (std::size_t r = 0; r < joint.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const Real p = joint[r][c] / total;
      if (p <= 0.0) continue;
      mi += p * std::log(p * total * total / (row_sum[r] * col_sum[c]));
    }
  return std::max(mi, 0.0);
}

PermutationTest mi_permutation_test(const std::vector<int>& rows, const std::vector<int>& cols,
                                    int row_card, int col_card, int permutations, Rng& rng) {
  if (rows.size() != cols.size()) throw dimension_error("paired observations required");
  if (rows.empty()) throw std::invalid_argument("no observations");
  auto joint_of = [&](const std::vector<int>& cs) {
    std::vector<std::vector<std::int64_t>> joint(row_card, std::vector<std::int64_t>(col_card, 0));
    for (std::size_t t = 0; t < rows.size(); ++t) ++joint[rows[t]][cs[t]];
    return joint;
  };

  PermutationTest out;
  out.permutations = permutations;
  out.statistic = mutual_information(joint_of(cols));

  std::vector<int> shuffled = cols;
  std::vector<Real> null_stats;
  null_stats.reserve(permutations);
  for (int p = 0; p < permutations; ++p) {
    // Fisher-Yates with the high-bits draw to stay deterministic across platforms.
    for (std::size_t t = shuffled.size() - 1; t > 0; --t) {
      const std::size_t j = static_cast<std::size_t>(draw_bits(rng, 63) % (t + 1));
      std::swap(shuffled[t], shuffled[j]);
    }
    null_stats.push_back(mutual_information(joint_of(shuffled)));
  }
  std::sort(null_stats.begin(), null_stats.end());
  const std::size_t idx = static_cast<std::size_t>(std::ceil(0.99 * permutations)) - 1;
  out.null_q99 = null_stats[std::min(idx, null_stats.size() - 1)];
  out.below_null = out.statistic < out.null_q99;
  return out;
}

}  // namespace qpke
