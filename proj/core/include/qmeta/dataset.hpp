#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qmeta/graph.hpp"

namespace qmeta::data {

// One dataset record: a graph together with its cached brute-force optimum,
// so metrics never recompute the oracle.
struct Instance {
  std::string id;
  int k = 0;  // connectivity parameter used for the draw (p = k/n)
  graph::Graph g;
  graph::MaxCutSolution opt;
};

struct DatasetSpec {
  int n_min = 0;
  int n_max = 0;
  int count = 0;
};

// Draws `count` instances with node counts spread as evenly as possible over
// [n_min, n_max] (remainder goes to the smaller sizes, ascending order in the
// output). Per instance: k ~ uniform_int(3, n-1), then an Erdos-Renyi draw
// with p = k/n (zero-edge draws resampled). Ids are "n{n}-{index}".
std::vector<Instance> generate_dataset(const DatasetSpec& spec, Rng& rng);

// JSONL, one record per line:
//   {"id": ..., "n": ..., "k": ..., "edges": [[i,j],...],
//    "c_max": ..., "witness": [+-1,...]}
void write_jsonl(const std::vector<Instance>& instances,
                 const std::filesystem::path& path);
std::vector<Instance> read_jsonl(const std::filesystem::path& path);

}  // namespace qmeta::data
