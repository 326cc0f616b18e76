#include "qmeta/graph.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace qmeta::graph {

Graph make_graph(int n, std::vector<std::pair<int, int>> edges) {
  if (n < 2) throw std::invalid_argument("make_graph: n must be >= 2");
  for (auto& [a, b] : edges) {
    if (a == b) throw std::invalid_argument("make_graph: self-loop");
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw std::invalid_argument("make_graph: endpoint out of range");
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw std::invalid_argument("make_graph: duplicate edge");
  return Graph{n, std::move(edges)};
}

int cut_value(const Graph& g, const std::vector<int>& z) {
  if (static_cast<int>(z.size()) != g.n)
    throw std::invalid_argument("cut_value: assignment length != n");
  for (int v : z)
    if (v != 1 && v != -1)
      throw std::invalid_argument("cut_value: entries must be +/-1");
  int cut = 0;
  for (const auto& [i, j] : g.edges) cut += z[i] != z[j];
  return cut;
}

MaxCutSolution max_cut_bruteforce(const Graph& g) {
  if (g.n > 26)
    throw std::length_error("max_cut_bruteforce: n > 26 exceeds budget");

  // Assignment index a maps vertex i to bit (n-1-i); bit 0 means spin +1.
  // Restricting to a < 2^(n-1) fixes vertex 0 at +1, which visits each
  // spin-flip class once and keeps the lexicographically smallest member.
  std::vector<std::uint32_t> masks(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    masks[e] = (1u << (g.n - 1 - g.edges[e].first)) |
               (1u << (g.n - 1 - g.edges[e].second));

  const std::uint32_t half = 1u << (g.n - 1);
  int best = -1;
  std::uint32_t best_a = 0;
  for (std::uint32_t a = 0; a < half; ++a) {
    int cut = 0;
    for (std::uint32_t m : masks) cut += std::popcount(a & m) & 1;
    if (cut > best) {
      best = cut;
      best_a = a;
    }
  }

  MaxCutSolution sol;
  sol.c_max = best;
  sol.witness.resize(g.n);
  for (int i = 0; i < g.n; ++i)
    sol.witness[i] = (best_a >> (g.n - 1 - i)) & 1 ? -1 : 1;
  return sol;
}

Graph generate_er(int n, int k, RandomSource& rng) {
  if (n < 2) throw std::invalid_argument("generate_er: n must be >= 2");
  if (k < 3 || k > n - 1)
    throw std::invalid_argument("generate_er: k must be in [3, n-1]");

  const double p = static_cast<double>(k) / n;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng.uniform() < p) edges.emplace_back(i, j);
    if (!edges.empty()) return Graph{n, std::move(edges)};
  }
  throw std::runtime_error("generate_er: exceeded resample budget");
}

}  // namespace qmeta::graph
