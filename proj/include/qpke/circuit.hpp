#pragma once

#include <optional>
#include <vector>

#include "qpke/bitmath.hpp"
#include "qpke/common.hpp"

namespace qpke {

// One gate acting on an m-qubit register. Qubit 0 is the most significant
// index bit, matching the MSB-first convention of BitString.
struct GateOp {
  enum class Kind { H, X, Z, Cnot, Swap, CXorK };

  Kind kind;
  int a = -1;                  // target (H/X/Z) or control (Cnot/CXorK) or first swap qubit
  int b = -1;                  // target (Cnot) or second swap qubit
  std::optional<BitString> k;  // CXorK payload, applied to the trailing k.width() qubits

  static GateOp h(int target) { return {Kind::H, target, -1, {}}; }
  static GateOp x(int target) { return {Kind::X, target, -1, {}}; }
  static GateOp z(int target) { return {Kind::Z, target, -1, {}}; }
  static GateOp cnot(int control, int target) { return {Kind::Cnot, control, target, {}}; }
  static GateOp swap(int q1, int q2) { return {Kind::Swap, q1, q2, {}}; }
  static GateOp cxork(int control, BitString k) { return {Kind::CXorK, control, -1, std::move(k)}; }
};

// Expands CXorK into its CNOT fan (one CNOT per set bit of k, shared control);
// other gates pass through unchanged.
std::vector<GateOp> expand_cxork(const GateOp& g, int register_qubits);

// Applies one gate / a gate sequence to a 2^m amplitude vector in place.
void apply_gate(const GateOp& g, Vector& amps, int register_qubits);
Vector apply_gates(const std::vector<GateOp>& gates, Vector amps, int register_qubits);

}  // namespace qpke
