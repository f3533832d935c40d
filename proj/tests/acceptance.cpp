// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>
#include <vector>

#include "qpke/analysis.hpp"
#include "qpke/bitmath.hpp"
#include "qpke/common.hpp"
#include "qpke/linalg.hpp"
#include "qpke/protocol.hpp"
#include "qpke/qpke.hpp"
#include "qpke/states.hpp"

using namespace qpke;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& text) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, text.c_str());
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void criterion1() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  double worst_err = 0.0, worst_cross = 0.0;
  for (int n = 2; n <= 6; ++n) {
    analysis::DistanceReport r = analysis::verify_lemma4(n);
    worst_err = std::max(worst_err, std::abs(r.computed - r.expected));
    ok = ok && r.passed && r.cross_check.has_value();
    if (r.cross_check) worst_cross = std::max(worst_cross, *r.cross_check);
  }
  ok = ok && worst_err <= 1e-9 && worst_cross <= 1e-12;
  const double secs = seconds_since(start);
  ok = ok && secs < 10.0;
  report(1, ok,
         "ensemble distance 2^{-(n-1)} for n=2..6, max err " + fmt(worst_err) +
             ", max cross-path deviation " + fmt(worst_cross) + ", " + fmt(secs) + " s");
}

void criterion2() {
  bool ok = true;
  double worst = 0.0;
  for (int n = 1; n <= 6; ++n) {
    const std::int64_t dim = std::int64_t{1} << n;
    Matrix a = Matrix::Zero(dim, dim);
    for (const BitString& k : enumerate_class(n, ParityClass::Omega))
      for (std::int64_t c = 0; c < dim; ++c)
        a(static_cast<std::int64_t>(c ^ static_cast<std::int64_t>(k.value())), c) += 1.0;
    const double err = std::abs(trace_norm(a) - std::pow(2.0, n));
    worst = std::max(worst, err);
    ok = ok && err <= 1e-9;
  }
  report(2, ok, "trace norm of the odd-class shift sum equals 2^n for n=1..6, max err " +
                    fmt(worst));
}

void criterion3() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  double worst = 0.0;
  for (int n : {4, 6}) {
    for (const auto& r : analysis::verify_appendix_all(n)) {
      ok = ok && r.passed;
      if (r.kind == analysis::CheckKind::Exact)
        worst = std::max(worst, std::abs(r.computed - r.expected));
    }
  }
  const double secs = seconds_since(start);
  ok = ok && secs < 60.0;
  report(3, ok, "two-bit pairwise distances at n=4,6 (anchored exact, rest bounded), max err " +
                    fmt(worst) + ", " + fmt(secs) + " s");
}

void criterion4() {
  std::int64_t cases = 0, bad = 0;
  for (int n : {3, 4}) {
    for (const BitString& k : enumerate_class(n, ParityClass::Omega))
      for (std::uint64_t iv = 0; iv < (std::uint64_t{1} << n); ++iv)
        for (std::uint64_t b = 0; b <= 1; ++b) {
          CipherState st = pure_multi(n, 1, {k}, BitString(iv, n), b);
          ++cases;
          if (decrypt_with_keys({k}, st.vector) != b) ++bad;
        }
  }
  SchemeSpec two = SchemeSpec::two_bit(4);
  for (const auto& tup : enumerate_key_tuples(two))
    for (std::uint64_t iv = 0; iv < 16; ++iv)
      for (std::uint64_t xy = 0; xy < 4; ++xy) {
        CipherState st = pure_multi(4, 2, tup, BitString(iv, 4), xy);
        ++cases;
        if (decrypt_with_keys(tup, st.vector) != xy) ++bad;
      }
  report(4, bad == 0,
         "deterministic decryption over " + std::to_string(cases) +
             " exhaustive single- and two-bit cases, " + std::to_string(bad) + " failures");
}

void criterion5() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (auto [n, t] : {std::pair{3, 1}, {3, 2}, {4, 1}, {4, 2}}) {
    analysis::MulticopyReport r = analysis::multicopy_norm(n, t);
    ok = ok && r.strict_ok;
    detail += " (" + std::to_string(n) + "," + std::to_string(t) + ") " + fmt(r.norm_centered) +
              " < " + fmt(r.bound) + ";";
  }
  const double secs = seconds_since(start);
  ok = ok && secs < 120.0;
  report(5, ok, "t-copy leakage norm strictly below sqrt(2^{t-n}):" + detail + " " + fmt(secs) +
                    " s");
}

void criterion6() {
  Rng rng(60001);
  analysis::AttackReport r = analysis::helstrom_experiment(4, 100000, rng);
  // The analytic optimum at n=4 is 1/2 + 1/2 * 2^{-(n-1)} = 0.5625.
  const Real expect = r.helstrom_bound;
  const bool near = std::abs(r.empirical_success - expect) < 3.0 * r.sigma;
  const bool capped = r.empirical_success < expect + 4.0 * r.sigma;
  report(6, near && capped && expect == 0.5625,
         "optimal discrimination success " + fmt(r.empirical_success) + " within 3 sigma (" +
             fmt(r.sigma) + ") of " + fmt(expect) + " and never above it by 4 sigma");
}

void criterion7() {
  Rng rng(70007);
  analysis::AttackReport r = analysis::measurement_attack(4, 100000, rng);
  const bool uniform = r.chi_square_p > 0.001;
  const bool cond = r.conditional_p && *r.conditional_p > 0.001;
  const bool mi = r.mi_below_null && *r.mi_below_null;
  report(7, uniform && cond && mi,
         "basis-measurement outcomes uniform (p=" + fmt(r.chi_square_p) +
             "), label-conditional distributions indistinguishable (p=" +
             fmt(r.conditional_p.value_or(-1)) + "), key MI " + fmt(r.mi.value_or(-1)) +
             " below the permutation null q99 " + fmt(r.mi_null_q99.value_or(-1)));
}

void criterion8() {
  bool ok = true;
  analysis::ScanReport four = analysis::conjecture_scan(4, 2);
  for (const auto& r : four.rows) ok = ok && std::abs(r.computed - 0.25) <= 1e-9;

  analysis::ScanReport six = analysis::conjecture_scan(6, 3);
  ok = ok && six.rows.size() == 28 && six.ratio > 0.0;
  report(8, ok,
         "pairwise scan at (4,2) reproduces 0.25 on all six pairs; (6,3) completes with max "
         "distance " + fmt(six.max_distance) + " and ratio " + fmt(six.ratio));
}

void criterion9() {
  Rng msg_rng(90009);
  std::vector<std::uint64_t> messages(100);
  for (auto& m : messages) m = draw_bits(msg_rng, 1);
  protocol::SessionResult a = protocol::run_session(SchemeSpec::single_bit(4), messages, "none", 424242);
  protocol::SessionResult b = protocol::run_session(SchemeSpec::single_bit(4), messages, "none", 424242);
  const bool clean = a.stats.success_rate == 1.0 && a.stats.integrity_events == 0;
  const bool replay = a.transcript.to_string() == b.transcript.to_string();
  report(9, clean && replay,
         "100-message clean session decrypts everything (rate " + fmt(a.stats.success_rate) +
             "); same-seed transcripts byte-identical: " + (replay ? "yes" : "no"));
}

void criterion10() {
  std::int64_t cases = 0, bad = 0;
  for (int n = 1; n <= 5; ++n)
    for (const BitString& k : enumerate_class(n, ParityClass::Omega))
      for (std::uint64_t iv = 0; iv < (std::uint64_t{1} << n); ++iv) {
        auto [gates, state] = prepare_via_ghz(n, k, BitString(iv, n));
        Vector direct = pure_single(n, k, BitString(iv, n), 0).vector.vec();
        ++cases;
        if ((state.vector.vec() - direct).cwiseAbs().maxCoeff() > 1e-12) ++bad;
      }

  for (const BitString& k : enumerate_class(4, ParityClass::Omega))
    for (std::uint64_t iv = 0; iv < 16; ++iv)
      for (std::uint64_t b = 0; b <= 1; ++b) {
        Vector lhs = pure_multi(4, 1, {k}, BitString(iv, 4), b).vector.vec();
        Vector rhs = pure_single(4, k, BitString(iv, 4), static_cast<int>(b)).vector.vec();
        ++cases;
        if ((lhs - rhs).cwiseAbs().maxCoeff() > 1e-12) ++bad;
      }

  SchemeSpec two = SchemeSpec::two_bit(4);
  for (const auto& tup : enumerate_key_tuples(two))
    for (std::uint64_t iv = 0; iv < 16; ++iv)
      for (std::uint64_t xy = 0; xy < 4; ++xy) {
        Vector lhs = pure_multi(4, 2, tup, BitString(iv, 4), xy).vector.vec();
        Vector rhs = pure_two_bit(4, tup[0], tup[1], BitString(iv, 4), xy).vector.vec();
        ++cases;
        if ((lhs - rhs).cwiseAbs().maxCoeff() > 1e-12) ++bad;
      }
  report(10, bad == 0,
         "constructor cross-checks (circuit vs direct at n<=5; general vs dedicated at n=4) over " +
             std::to_string(cases) + " cases, " + std::to_string(bad) + " mismatches");
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  if (failures == 0) std::printf("all 10 criteria passed\n");
  else std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
