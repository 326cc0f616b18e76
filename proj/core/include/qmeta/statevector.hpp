#pragma once

#include <complex>
#include <vector>

namespace qmeta::sim {

// Dense amplitude vector over n qubits.
//
// Basis convention (asserted in tests): qubit 0 is the MOST significant bit
// of the amplitude index, i.e. qubit q occupies bit position (n_qubits-1-q).
// Budget guard: n_qubits <= 16.
struct StateVector {
  int n_qubits = 0;
  std::vector<std::complex<double>> amp;

  static StateVector zero_state(int n);  // |0...0>
  static StateVector plus_state(int n);  // uniform superposition |+>^n

  std::size_t dim() const { return amp.size(); }
  double norm_sq() const;

  // Bit of qubit q in basis index b under the convention above.
  static int qubit_bit(std::size_t b, int n_qubits, int q) {
    return static_cast<int>((b >> (n_qubits - 1 - q)) & 1u);
  }
};

// Inner product <a|b> = sum_i conj(a_i) b_i.
std::complex<double> inner(const StateVector& a, const StateVector& b);

// <Z_q> for every qubit q.
std::vector<double> z_expectations(const StateVector& s);

}  // namespace qmeta::sim
