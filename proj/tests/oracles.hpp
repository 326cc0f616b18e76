#pragma once

// Independent test oracles. Everything here recomputes reference values
// through routes the library does not use: dense matrix exponentials via
// eigendecomposition, explicit diagonal contractions, and central finite
// differences.

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "qmeta/graph.hpp"
#include "qmeta/rng.hpp"

namespace oracles {

using qmeta::graph::Graph;

// ---- dense QAOA oracle ----------------------------------------------------

// Cut value of basis index b under the documented convention: vertex i is
// bit (n-1-i) of the index.
inline int basis_cut(const Graph& g, std::size_t b) {
  int cut = 0;
  for (const auto& [i, j] : g.edges) {
    const int bi = (b >> (g.n - 1 - i)) & 1;
    const int bj = (b >> (g.n - 1 - j)) & 1;
    cut += bi != bj;
  }
  return cut;
}

inline Eigen::MatrixXcd dense_cost_hamiltonian(const Graph& g) {
  const std::size_t dim = std::size_t{1} << g.n;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t b = 0; b < dim; ++b) h(b, b) = basis_cut(g, b);
  return h;
}

inline Eigen::MatrixXcd dense_mixer_hamiltonian(int n) {
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (int q = 0; q < n; ++q) {
    const std::size_t bit = std::size_t{1} << (n - 1 - q);
    for (std::size_t b = 0; b < dim; ++b) h(b, b ^ bit) += 1.0;
  }
  return h;
}

// exp(-i t H) for Hermitian H, via eigendecomposition.
inline Eigen::MatrixXcd expm_hermitian(const Eigen::MatrixXcd& h, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();
  Eigen::VectorXcd phases(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i)
    phases(i) = std::exp(std::complex<double>(0.0, -t * values(i)));
  return vectors * phases.asDiagonal() * vectors.adjoint();
}

// exp(-i beta H_M) exp(-i gamma H_C) |+>^n, the literal ansatz including
// the global phase the production path drops.
inline Eigen::VectorXcd dense_qaoa_state(const Graph& g, double gamma, double beta) {
  const std::size_t dim = std::size_t{1} << g.n;
  Eigen::VectorXcd plus = Eigen::VectorXcd::Constant(dim, 1.0 / std::sqrt(double(dim)));
  const Eigen::MatrixXcd uc = expm_hermitian(dense_cost_hamiltonian(g), gamma);
  const Eigen::MatrixXcd um = expm_hermitian(dense_mixer_hamiltonian(g.n), beta);
  return um * (uc * plus);
}

inline double dense_qaoa_cost(const Graph& g, double gamma, double beta) {
  const Eigen::VectorXcd psi = dense_qaoa_state(g, gamma, beta);
  return (psi.adjoint() * dense_cost_hamiltonian(g) * psi)(0, 0).real();
}

// ---- finite differences ---------------------------------------------------

inline double fd_derivative(const std::function<double(double)>& f, double x,
                            double h = 1e-5) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline std::vector<double> fd_gradient(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x, double h = 1e-5) {
  std::vector<double> grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double orig = x[i];
    x[i] = orig + h;
    const double up = f(x);
    x[i] = orig - h;
    const double dn = f(x);
    x[i] = orig;
    grad[i] = (up - dn) / (2.0 * h);
  }
  return grad;
}

inline double rel_vec_error(const std::vector<double>& got,
                            const std::vector<double>& want,
                            double floor = 1e-8) {
  double diff = 0.0, ref = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    diff += (got[i] - want[i]) * (got[i] - want[i]);
    ref += want[i] * want[i];
  }
  return std::sqrt(diff) / std::max(std::sqrt(ref), floor);
}

// ---- graph zoo --------------------------------------------------------------

inline Graph k_n(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return qmeta::graph::make_graph(n, std::move(edges));
}

inline Graph path_n(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return qmeta::graph::make_graph(n, std::move(edges));
}

inline Graph cycle_n(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
  return qmeta::graph::make_graph(n, std::move(edges));
}

inline Graph single_edge() { return qmeta::graph::make_graph(2, {{0, 1}}); }

// Every connected graph on 2..4 vertices, one per isomorphism class.
inline std::vector<Graph> connected_graphs_upto_4() {
  using qmeta::graph::make_graph;
  return {
      single_edge(),                                          // K2
      path_n(3),                                              // P3
      k_n(3),                                                 // K3
      path_n(4),                                              // P4
      make_graph(4, {{0, 1}, {0, 2}, {0, 3}}),                // star
      make_graph(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}}),        // paw
      cycle_n(4),                                             // C4
      make_graph(4, {{0, 1}, {1, 2}, {0, 2}, {0, 3}, {2, 3}}),// diamond
      k_n(4),                                                 // K4
  };
}

// Random connected-ish test graph through the library's own generator.
inline Graph random_graph(qmeta::Rng& rng, int n) {
  const int k = rng.uniform_int(3, n - 1);
  return qmeta::graph::generate_er(n, k, rng);
}

}  // namespace oracles
