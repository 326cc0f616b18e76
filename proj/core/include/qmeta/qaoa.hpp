#pragma once

#include <array>
#include <utility>
#include <vector>

#include "qmeta/graph.hpp"
#include "qmeta/statevector.hpp"

namespace qmeta::sim {

// Cut value of every computational basis state (basis convention of
// StateVector: vertex i <-> qubit i).
std::vector<int> cut_diagonal(const graph::Graph& g);

// <psi| H_C |psi> where H_C is the diagonal cut operator; equals the
// probability-weighted cut value of the measured bitstring.
double expect_cut(const StateVector& s, const graph::Graph& g);

// Single-layer QAOA state: RZZ(-gamma) on every edge applied to |+>^n,
// then RX(2 beta) on every qubit. Equal to
// exp(-i beta H_M) exp(-i gamma H_C) |+>^n up to a global phase of
// exp(-i gamma |E| / 2).
StateVector qaoa_state(const graph::Graph& g, double gamma, double beta);

double qaoa_cost(const graph::Graph& g, double gamma, double beta);

// Exact gradient (d/d gamma, d/d beta) of qaoa_cost, computed by
// differentiating the circuit analytically (generator insertion), not by
// finite differences.
std::array<double, 2> qaoa_grad(const graph::Graph& g, double gamma, double beta);

struct LandscapeGrid {
  std::vector<double> gammas;
  std::vector<double> betas;
  std::vector<double> cost;  // gamma-major: cost[gi * betas.size() + bi]
};

// Uniform grid of qaoa_cost over [ranges]; resolution points per axis,
// endpoints included. resolution must be >= 2.
LandscapeGrid landscape_grid(const graph::Graph& g,
                             std::pair<double, double> gamma_range,
                             std::pair<double, double> beta_range,
                             int resolution, int workers = 1);

}  // namespace qmeta::sim
