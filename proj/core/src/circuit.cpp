#include "qmeta/circuit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qmeta::sim {

namespace {

using cplx = std::complex<double>;

void check_qubit(const StateVector& s, int q, const char* what) {
  if (q < 0 || q >= s.n_qubits) throw std::invalid_argument(what);
}

// Applies the 2x2 matrix [[m00, m01], [m10, m11]] to qubit q.
void apply_1q(StateVector& s, int q, cplx m00, cplx m01, cplx m10, cplx m11) {
  const std::size_t stride = std::size_t{1} << (s.n_qubits - 1 - q);
  const std::size_t dim = s.amp.size();
  for (std::size_t base = 0; base < dim; base += 2 * stride) {
    for (std::size_t off = 0; off < stride; ++off) {
      const std::size_t i0 = base + off;
      const std::size_t i1 = i0 + stride;
      const cplx a0 = s.amp[i0];
      const cplx a1 = s.amp[i1];
      s.amp[i0] = m00 * a0 + m01 * a1;
      s.amp[i1] = m10 * a0 + m11 * a1;
    }
  }
}

double gate_angle(const Gate& g, const std::vector<double>& params) {
  if (g.param < 0) return g.angle;
  if (g.param >= static_cast<int>(params.size()))
    throw std::invalid_argument("apply_gate: parameter index out of range");
  return params[g.param];
}

}  // namespace

void apply_gate(StateVector& s, const Gate& g, const std::vector<double>& params) {
  check_qubit(s, g.q0, "apply_gate: qubit index out of range");
  const cplx i1{0.0, 1.0};

  switch (g.kind) {
    case GateKind::H: {
      const double r = std::numbers::sqrt2 / 2.0;
      apply_1q(s, g.q0, r, r, r, -r);
      return;
    }
    case GateKind::RX: {
      const double t = gate_angle(g, params) / 2.0;
      apply_1q(s, g.q0, std::cos(t), -i1 * std::sin(t), -i1 * std::sin(t),
               std::cos(t));
      return;
    }
    case GateKind::RY: {
      const double t = gate_angle(g, params) / 2.0;
      apply_1q(s, g.q0, std::cos(t), -std::sin(t), std::sin(t), std::cos(t));
      return;
    }
    case GateKind::RZ: {
      const double t = gate_angle(g, params) / 2.0;
      apply_1q(s, g.q0, std::exp(-i1 * t), 0.0, 0.0, std::exp(i1 * t));
      return;
    }
    case GateKind::CNOT: {
      check_qubit(s, g.q1, "apply_gate: qubit index out of range");
      if (g.q0 == g.q1)
        throw std::invalid_argument("apply_gate: CNOT control == target");
      const std::size_t cbit = std::size_t{1} << (s.n_qubits - 1 - g.q0);
      const std::size_t tbit = std::size_t{1} << (s.n_qubits - 1 - g.q1);
      for (std::size_t b = 0; b < s.amp.size(); ++b)
        if ((b & cbit) && !(b & tbit)) std::swap(s.amp[b], s.amp[b | tbit]);
      return;
    }
    case GateKind::RZZ: {
      check_qubit(s, g.q1, "apply_gate: qubit index out of range");
      if (g.q0 == g.q1)
        throw std::invalid_argument("apply_gate: RZZ needs distinct qubits");
      const double t = gate_angle(g, params) / 2.0;
      const cplx same = std::exp(-i1 * t);
      const cplx diff = std::exp(i1 * t);
      const std::size_t abit = std::size_t{1} << (s.n_qubits - 1 - g.q0);
      const std::size_t bbit = std::size_t{1} << (s.n_qubits - 1 - g.q1);
      for (std::size_t b = 0; b < s.amp.size(); ++b) {
        const bool ba = b & abit;
        const bool bb = b & bbit;
        s.amp[b] *= (ba == bb) ? same : diff;
      }
      return;
    }
  }
  throw std::invalid_argument("apply_gate: unknown gate kind");
}

StateVector run_circuit(const CircuitSpec& c, const std::vector<double>& params,
                        StateVector initial) {
  if (initial.n_qubits != c.n_qubits)
    throw std::invalid_argument("run_circuit: initial state qubit mismatch");
  for (const auto& g : c.gates) apply_gate(initial, g, params);
  return initial;
}

StateVector run_circuit(const CircuitSpec& c, const std::vector<double>& params) {
  return run_circuit(c, params, StateVector::zero_state(c.n_qubits));
}

std::vector<std::vector<double>> shift_jacobian(
    const CircuitSpec& c, const std::vector<double>& params,
    const std::function<std::vector<double>(const StateVector&)>& readout) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  const int scratch = static_cast<int>(params.size());

  CircuitSpec local = c;
  std::vector<double> shifted = params;
  shifted.push_back(0.0);

  std::vector<std::vector<double>> jac;
  for (auto& gate : local.gates) {
    const int p = gate.param;
    if (p < 0) continue;
    if (p >= scratch)
      throw std::invalid_argument("shift_jacobian: parameter index out of range");

    // Shift only this occurrence: rebind the gate to the scratch slot.
    gate.param = scratch;
    shifted[scratch] = params[p] + half_pi;
    const auto up = readout(run_circuit(local, shifted));
    shifted[scratch] = params[p] - half_pi;
    const auto dn = readout(run_circuit(local, shifted));
    gate.param = p;

    if (jac.empty()) jac.assign(up.size(), std::vector<double>(scratch, 0.0));
    for (std::size_t o = 0; o < up.size(); ++o)
      jac[o][p] += 0.5 * (up[o] - dn[o]);
  }
  if (jac.empty()) {
    const auto probe = readout(run_circuit(c, params));
    jac.assign(probe.size(), std::vector<double>(scratch, 0.0));
  }
  return jac;
}

}  // namespace qmeta::sim
