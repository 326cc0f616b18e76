#include "qmeta/statevector.hpp"

#include <cmath>
#include <stdexcept>

namespace qmeta::sim {

namespace {
void check_budget(int n) {
  if (n < 1 || n > 16)
    throw std::length_error("StateVector: qubit count outside [1, 16]");
}
}  // namespace

StateVector StateVector::zero_state(int n) {
  check_budget(n);
  StateVector s;
  s.n_qubits = n;
  s.amp.assign(std::size_t{1} << n, {0.0, 0.0});
  s.amp[0] = {1.0, 0.0};
  return s;
}

StateVector StateVector::plus_state(int n) {
  check_budget(n);
  StateVector s;
  s.n_qubits = n;
  const double a = std::pow(2.0, -0.5 * n);
  s.amp.assign(std::size_t{1} << n, {a, 0.0});
  return s;
}

double StateVector::norm_sq() const {
  double acc = 0.0;
  for (const auto& a : amp) acc += std::norm(a);
  return acc;
}

std::complex<double> inner(const StateVector& a, const StateVector& b) {
  if (a.n_qubits != b.n_qubits)
    throw std::invalid_argument("inner: qubit count mismatch");
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t i = 0; i < a.amp.size(); ++i)
    acc += std::conj(a.amp[i]) * b.amp[i];
  return acc;
}

std::vector<double> z_expectations(const StateVector& s) {
  std::vector<double> out(s.n_qubits, 0.0);
  for (std::size_t b = 0; b < s.amp.size(); ++b) {
    const double p = std::norm(s.amp[b]);
    if (p == 0.0) continue;
    for (int q = 0; q < s.n_qubits; ++q)
      out[q] += StateVector::qubit_bit(b, s.n_qubits, q) ? -p : p;
  }
  return out;
}

}  // namespace qmeta::sim
