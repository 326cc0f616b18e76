#include "qmeta/kernel.hpp"

#include <stdexcept>

#include "qmeta/circuit.hpp"

namespace qmeta::sim {

namespace {

// Encoding circuit with angle k bound to parameter slot k (each layer
// re-binds the same slots, so shift_jacobian sums over occurrences).
CircuitSpec encoding_circuit(const KernelCircuitSpec& spec) {
  CircuitSpec c;
  c.n_qubits = spec.n_qubits;
  for (int layer = 0; layer < spec.layers; ++layer) {
    if (layer > 0)
      for (int q = 0; q < spec.n_qubits; ++q)
        c.gates.push_back(Gate::cnot(q, (q + 1) % spec.n_qubits));
    for (int q = 0; q < spec.n_qubits; ++q) c.gates.push_back(Gate::ry_p(q, q));
  }
  return c;
}

std::vector<double> encoding_angles(std::span<const double> x,
                                    std::span<const double> w) {
  std::vector<double> angles(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) angles[k] = w[k] * x[k];
  return angles;
}

void check_dims(std::span<const double> a, std::span<const double> b,
                std::span<const double> w, const KernelCircuitSpec& spec) {
  const auto n = static_cast<std::size_t>(spec.n_qubits);
  if (a.size() != n || b.size() != n || w.size() != n)
    throw std::invalid_argument("fidelity_kernel: feature dimension mismatch");
  if (spec.layers < 1)
    throw std::invalid_argument("fidelity_kernel: layers must be >= 1");
}

double overlap_sq(const StateVector& x, const StateVector& y) {
  return std::norm(inner(x, y));
}

}  // namespace

double fidelity_kernel(std::span<const double> a, std::span<const double> b,
                       std::span<const double> w, const KernelCircuitSpec& spec) {
  check_dims(a, b, w, spec);
  const CircuitSpec circuit = encoding_circuit(spec);
  const StateVector sa = run_circuit(circuit, encoding_angles(a, w));
  const StateVector sb = run_circuit(circuit, encoding_angles(b, w));
  return overlap_sq(sa, sb);
}

KernelGrad fidelity_kernel_grad(std::span<const double> a,
                                std::span<const double> b,
                                std::span<const double> w,
                                const KernelCircuitSpec& spec) {
  check_dims(a, b, w, spec);
  const CircuitSpec circuit = encoding_circuit(spec);
  const auto angles_a = encoding_angles(a, w);
  const auto angles_b = encoding_angles(b, w);
  const StateVector sa = run_circuit(circuit, angles_a);
  const StateVector sb = run_circuit(circuit, angles_b);

  KernelGrad out;
  out.value = overlap_sq(sa, sb);

  // The kernel is the expectation of the projector |s_b><s_b| under the
  // a-side circuit (and vice versa), so the shift rule applies per side.
  const auto jac_a = shift_jacobian(circuit, angles_a, [&](const StateVector& s) {
    return std::vector<double>{overlap_sq(sb, s)};
  });
  const auto jac_b = shift_jacobian(circuit, angles_b, [&](const StateVector& s) {
    return std::vector<double>{overlap_sq(sa, s)};
  });

  const auto n = static_cast<std::size_t>(spec.n_qubits);
  out.d_a.resize(n);
  out.d_b.resize(n);
  out.d_w.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.d_a[k] = jac_a[0][k] * w[k];
    out.d_b[k] = jac_b[0][k] * w[k];
    out.d_w[k] = jac_a[0][k] * a[k] + jac_b[0][k] * b[k];
  }
  return out;
}

}  // namespace qmeta::sim
