#pragma once

#include <span>
#include <vector>

namespace qmeta::sim {

// Data-encoding circuit family for the fidelity kernel. Each layer applies
// RY(w_k * x_k) on qubit k; a CNOT ring sits between consecutive layers
// (a trailing entangler would cancel in the fidelity and is omitted).
// Feature dimension equals n_qubits.
struct KernelCircuitSpec {
  int n_qubits = 4;
  int layers = 1;
};

// kappa(a, b) = |<0| U(b,w)^dag U(a,w) |0>|^2, evaluated as the squared
// magnitude of the inner product of the two encoded statevectors.
double fidelity_kernel(std::span<const double> a, std::span<const double> b,
                       std::span<const double> w, const KernelCircuitSpec& spec);

struct KernelGrad {
  double value = 0.0;
  std::vector<double> d_a, d_b, d_w;
};

// Kernel value plus exact derivatives with respect to both feature vectors
// and the encoding weights, via the parameter-shift rule on each encoding
// angle occurrence.
KernelGrad fidelity_kernel_grad(std::span<const double> a,
                                std::span<const double> b,
                                std::span<const double> w,
                                const KernelCircuitSpec& spec);

}  // namespace qmeta::sim
