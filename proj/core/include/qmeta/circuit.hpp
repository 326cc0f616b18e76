#pragma once

#include <functional>
#include <vector>

#include "qmeta/statevector.hpp"

namespace qmeta::sim {

enum class GateKind { H, RX, RY, RZ, CNOT, RZZ };

// One gate. Rotation conventions:
//   RX(t) = exp(-i t X/2),  RY(t) = exp(-i t Y/2),  RZ(t) = exp(-i t Z/2),
//   RZZ(t) = exp(-i t Z(x)Z/2)  (phase e^{-it/2} on equal bits, e^{+it/2}
//   on unequal bits).
// When `param >= 0` the angle is read from the bound parameter vector at
// that index; otherwise `angle` is fixed.
struct Gate {
  GateKind kind = GateKind::H;
  int q0 = 0;
  int q1 = -1;
  double angle = 0.0;
  int param = -1;

  static Gate h(int q) { return {GateKind::H, q, -1, 0.0, -1}; }
  static Gate rx(int q, double a) { return {GateKind::RX, q, -1, a, -1}; }
  static Gate ry(int q, double a) { return {GateKind::RY, q, -1, a, -1}; }
  static Gate rz(int q, double a) { return {GateKind::RZ, q, -1, a, -1}; }
  static Gate cnot(int c, int t) { return {GateKind::CNOT, c, t, 0.0, -1}; }
  static Gate rzz(int a, int b, double t) { return {GateKind::RZZ, a, b, t, -1}; }
  static Gate rx_p(int q, int p) { return {GateKind::RX, q, -1, 0.0, p}; }
  static Gate ry_p(int q, int p) { return {GateKind::RY, q, -1, 0.0, p}; }
  static Gate rz_p(int q, int p) { return {GateKind::RZ, q, -1, 0.0, p}; }
};

struct CircuitSpec {
  int n_qubits = 0;
  std::vector<Gate> gates;
};

// Applies one gate in place. Throws std::invalid_argument on out-of-range
// qubit indices or a CNOT with control == target.
void apply_gate(StateVector& s, const Gate& g,
                const std::vector<double>& params = {});

// Runs the circuit on an explicit initial state, or on |0...0>.
StateVector run_circuit(const CircuitSpec& c, const std::vector<double>& params,
                        StateVector initial);
StateVector run_circuit(const CircuitSpec& c,
                        const std::vector<double>& params = {});

// Parameter-shift jacobian. `readout` must evaluate expectations of
// Hermitian observables; returns J[out][param] = d readout / d param, built
// from +-pi/2 shifts of every parameterized gate occurrence (shared
// parameters accumulate over occurrences). Valid for RX/RY/RZ/RZZ, whose
// generators square to identity.
std::vector<std::vector<double>> shift_jacobian(
    const CircuitSpec& c, const std::vector<double>& params,
    const std::function<std::vector<double>(const StateVector&)>& readout);

}  // namespace qmeta::sim
