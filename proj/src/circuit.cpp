#include "qpke/circuit.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "qpke/errors.hpp"

namespace qpke {

namespace {

void check_qubit(int q, int m, const char* what) {
  if (q < 0 || q >= m)
    throw dimension_error(std::string(what) + " qubit index " + std::to_string(q) +
                          " outside register of " + std::to_string(m) + " qubits");
}

// Index bit for qubit q under the MSB-first convention.
inline std::int64_t qubit_mask(int q, int m) { return std::int64_t{1} << (m - 1 - q); }

}  // namespace

std::vector<GateOp> expand_cxork(const GateOp& g, int register_qubits) {
  if (g.kind != GateOp::Kind::CXorK) return {g};
  if (!g.k) throw dimension_error("CXorK gate is missing its key");
  const int w = g.k->width();
  if (w > register_qubits) throw dimension_error("CXorK key wider than register");
  const int offset = register_qubits - w;
  check_qubit(g.a, register_qubits, "control");
  std::vector<GateOp> fan;
  for (int p = 0; p < w; ++p) {
    if (!g.k->bit(p)) continue;
    const int target = offset + p;
    if (target == g.a) throw dimension_error("CXorK control overlaps a set key bit");
    fan.push_back(GateOp::cnot(g.a, target));
  }
  return fan;
}

void apply_gate(const GateOp& g, Vector& amps, int m) {
  if (amps.size() != (std::int64_t{1} << m))
    throw dimension_error("amplitude vector length does not match register size");
  const Real inv_sqrt2 = 1.0 / std::sqrt(2.0);
  switch (g.kind) {
    case GateOp::Kind::H: {
      check_qubit(g.a, m, "target");
      const std::int64_t mask = qubit_mask(g.a, m);
      for (std::int64_t idx = 0; idx < amps.size(); ++idx) {
        if (idx & mask) continue;
        const Real lo = amps[idx], hi = amps[idx | mask];
        amps[idx] = inv_sqrt2 * (lo + hi);
        amps[idx | mask] = inv_sqrt2 * (lo - hi);
      }
      break;
    }
    case GateOp::Kind::X: {
      check_qubit(g.a, m, "target");
      const std::int64_t mask = qubit_mask(g.a, m);
      for (std::int64_t idx = 0; idx < amps.size(); ++idx)
        if (!(idx & mask)) std::swap(amps[idx], amps[idx | mask]);
      break;
    }
    case GateOp::Kind::Z: {
      check_qubit(g.a, m, "target");
      const std::int64_t mask = qubit_mask(g.a, m);
      for (std::int64_t idx = 0; idx < amps.size(); ++idx)
        if (idx & mask) amps[idx] = -amps[idx];
      break;
    }
    case GateOp::Kind::Cnot: {
      check_qubit(g.a, m, "control");
      check_qubit(g.b, m, "target");
      if (g.a == g.b) throw dimension_error("CNOT control equals target");
      const std::int64_t cmask = qubit_mask(g.a, m), tmask = qubit_mask(g.b, m);
      for (std::int64_t idx = 0; idx < amps.size(); ++idx)
        if ((idx & cmask) && !(idx & tmask)) std::swap(amps[idx], amps[idx | tmask]);
      break;
    }
    case GateOp::Kind::Swap: {
      check_qubit(g.a, m, "swap");
      check_qubit(g.b, m, "swap");
      if (g.a == g.b) break;
      const std::int64_t m1 = qubit_mask(g.a, m), m2 = qubit_mask(g.b, m);
      for (std::int64_t idx = 0; idx < amps.size(); ++idx)
        if ((idx & m1) && !(idx & m2)) std::swap(amps[idx], amps[(idx & ~m1) | m2]);
      break;
    }
    case GateOp::Kind::CXorK: {
      for (const GateOp& cnot : expand_cxork(g, m)) apply_gate(cnot, amps, m);
      break;
    }
  }
}

Vector apply_gates(const std::vector<GateOp>& gates, Vector amps, int m) {
  for (const GateOp& g : gates) apply_gate(g, amps, m);
  return amps;
}

}  // namespace qpke
