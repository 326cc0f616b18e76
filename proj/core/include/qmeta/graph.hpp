#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qmeta/rng.hpp"

namespace qmeta::graph {

// Unweighted undirected Max-Cut instance. Edges are stored as canonical
// (min, max) pairs, sorted and de-duplicated, so a given instance always
// serializes byte-identically.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  int edge_count() const { return static_cast<int>(edges.size()); }
};

// Validates and canonicalizes an edge list. Throws std::invalid_argument on
// self-loops, out-of-range endpoints, duplicate edges, or n < 2.
Graph make_graph(int n, std::vector<std::pair<int, int>> edges);

// Number of edges crossing the cut induced by the +/-1 assignment z,
// i.e. (1/2) (|E| - sum_{(i,j) in E} z_i z_j).
int cut_value(const Graph& g, const std::vector<int>& z);

struct MaxCutSolution {
  int c_max = 0;
  std::vector<int> witness;  // one optimal assignment, entries in {-1,+1}
};

// Exact optimum over all 2^n assignments. The witness is the assignment
// whose +/-1 string is lexicographically smallest (+1 ordered before -1)
// among optima; spin-flip symmetry pins its first entry to +1.
// Guarded at n <= 26; beyond that throws std::length_error.
MaxCutSolution max_cut_bruteforce(const Graph& g);

// Erdos-Renyi draw: each of the C(n,2) candidate edges, visited in
// lexicographic (i, j) order, is included iff rng.uniform() < k/n.
// A draw with zero edges is rejected and the whole graph redrawn; after
// 10000 rejected attempts throws std::runtime_error.
// Requires n >= 2 and 3 <= k <= n-1.
Graph generate_er(int n, int k, RandomSource& rng);

}  // namespace qmeta::graph
