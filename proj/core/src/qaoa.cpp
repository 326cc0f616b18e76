#include "qmeta/qaoa.hpp"

#include <cmath>
#include <stdexcept>

#include "qmeta/circuit.hpp"
#include "qmeta/parallel.hpp"

namespace qmeta::sim {

namespace {
using cplx = std::complex<double>;

StateVector cost_layer(const graph::Graph& g, double gamma) {
  StateVector s = StateVector::plus_state(g.n);
  for (const auto& [i, j] : g.edges)
    apply_gate(s, Gate::rzz(i, j, -gamma));
  return s;
}

void mixer_layer(StateVector& s, double beta) {
  for (int q = 0; q < s.n_qubits; ++q) apply_gate(s, Gate::rx(q, 2.0 * beta));
}

// H_M |psi> with H_M = sum_q X_q.
StateVector apply_mixer_hamiltonian(const StateVector& s) {
  StateVector out = s;
  for (auto& a : out.amp) a = 0.0;
  for (int q = 0; q < s.n_qubits; ++q) {
    const std::size_t bit = std::size_t{1} << (s.n_qubits - 1 - q);
    for (std::size_t b = 0; b < s.amp.size(); ++b) out.amp[b] += s.amp[b ^ bit];
  }
  return out;
}
}  // namespace

std::vector<int> cut_diagonal(const graph::Graph& g) {
  std::vector<int> diag(std::size_t{1} << g.n, 0);
  for (const auto& [i, j] : g.edges) {
    const std::size_t mi = std::size_t{1} << (g.n - 1 - i);
    const std::size_t mj = std::size_t{1} << (g.n - 1 - j);
    for (std::size_t b = 0; b < diag.size(); ++b)
      diag[b] += (bool(b & mi) != bool(b & mj));
  }
  return diag;
}

double expect_cut(const StateVector& s, const graph::Graph& g) {
  if (s.n_qubits != g.n)
    throw std::invalid_argument("expect_cut: state/graph dimension mismatch");
  const auto diag = cut_diagonal(g);
  double acc = 0.0;
  for (std::size_t b = 0; b < s.amp.size(); ++b)
    acc += std::norm(s.amp[b]) * diag[b];
  return acc;
}

StateVector qaoa_state(const graph::Graph& g, double gamma, double beta) {
  StateVector s = cost_layer(g, gamma);
  mixer_layer(s, beta);
  return s;
}

double qaoa_cost(const graph::Graph& g, double gamma, double beta) {
  return expect_cut(qaoa_state(g, gamma, beta), g);
}

std::array<double, 2> qaoa_grad(const graph::Graph& g, double gamma, double beta) {
  // psi = M(beta) C(gamma) |+>, with C(gamma) = exp(i gamma A),
  // A = (1/2) sum_e Z Z = |E|/2 - cut(b) on the diagonal, and
  // M(beta) = exp(-i beta H_M). Then
  //   df/dgamma = 2 Re <H_C psi | M (iA) C|+>  = -2 Im <u | M A phi>
  //   df/dbeta  = 2 Re <H_C psi | -i H_M psi>  =  2 Im <u | H_M psi>
  const auto diag = cut_diagonal(g);
  const double half_edges = 0.5 * g.edge_count();

  StateVector phi = cost_layer(g, gamma);

  StateVector a_phi = phi;
  for (std::size_t b = 0; b < a_phi.amp.size(); ++b)
    a_phi.amp[b] *= half_edges - diag[b];
  mixer_layer(a_phi, beta);

  StateVector psi = phi;
  mixer_layer(psi, beta);

  StateVector u = psi;
  for (std::size_t b = 0; b < u.amp.size(); ++b) u.amp[b] *= diag[b];

  const StateVector hm_psi = apply_mixer_hamiltonian(psi);

  return {-2.0 * inner(u, a_phi).imag(), 2.0 * inner(u, hm_psi).imag()};
}

LandscapeGrid landscape_grid(const graph::Graph& g,
                             std::pair<double, double> gamma_range,
                             std::pair<double, double> beta_range,
                             int resolution, int workers) {
  if (resolution < 2)
    throw std::invalid_argument("landscape_grid: resolution must be >= 2");

  LandscapeGrid grid;
  grid.gammas.resize(resolution);
  grid.betas.resize(resolution);
  for (int i = 0; i < resolution; ++i) {
    const double t = static_cast<double>(i) / (resolution - 1);
    grid.gammas[i] = gamma_range.first + t * (gamma_range.second - gamma_range.first);
    grid.betas[i] = beta_range.first + t * (beta_range.second - beta_range.first);
  }
  grid.cost.assign(static_cast<std::size_t>(resolution) * resolution, 0.0);
  parallel_for(resolution, workers, [&](int gi) {
    for (int bi = 0; bi < resolution; ++bi)
      grid.cost[static_cast<std::size_t>(gi) * resolution + bi] =
          qaoa_cost(g, grid.gammas[gi], grid.betas[bi]);
  });
  return grid;
}

}  // namespace qmeta::sim
