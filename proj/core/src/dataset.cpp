#include "qmeta/dataset.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qmeta/io.hpp"

namespace qmeta::data {

using ordered_json = nlohmann::ordered_json;

std::vector<Instance> generate_dataset(const DatasetSpec& spec, Rng& rng) {
  if (spec.n_min < 2 || spec.n_max < spec.n_min)
    throw std::invalid_argument("generate_dataset: bad node range");
  if (spec.count < 1)
    throw std::invalid_argument("generate_dataset: count must be >= 1");

  const int sizes = spec.n_max - spec.n_min + 1;
  const int base = spec.count / sizes;
  const int remainder = spec.count % sizes;

  std::vector<Instance> out;
  out.reserve(spec.count);
  for (int s = 0; s < sizes; ++s) {
    const int n = spec.n_min + s;
    const int per_n = base + (s < remainder ? 1 : 0);
    for (int i = 0; i < per_n; ++i) {
      Instance inst;
      inst.k = rng.uniform_int(3, n - 1);
      inst.g = graph::generate_er(n, inst.k, rng);
      inst.opt = graph::max_cut_bruteforce(inst.g);
      char id[32];
      std::snprintf(id, sizeof(id), "n%02d-%04d", n, i);
      inst.id = id;
      out.push_back(std::move(inst));
    }
  }
  return out;
}

void write_jsonl(const std::vector<Instance>& instances,
                 const std::filesystem::path& path) {
  std::ostringstream body;
  for (const auto& inst : instances) {
    ordered_json rec;
    rec["id"] = inst.id;
    rec["n"] = inst.g.n;
    rec["k"] = inst.k;
    auto edges = ordered_json::array();
    for (const auto& [a, b] : inst.g.edges) edges.push_back({a, b});
    rec["edges"] = std::move(edges);
    rec["c_max"] = inst.opt.c_max;
    rec["witness"] = inst.opt.witness;
    body << rec.dump() << '\n';
  }
  io::atomic_write(path, body.str());
}

std::vector<Instance> read_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_jsonl: cannot open " + path.string());

  std::vector<Instance> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto rec = nlohmann::json::parse(line);
    Instance inst;
    inst.id = rec.at("id").get<std::string>();
    inst.k = rec.at("k").get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : rec.at("edges"))
      edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    inst.g = graph::make_graph(rec.at("n").get<int>(), std::move(edges));
    inst.opt.c_max = rec.at("c_max").get<int>();
    inst.opt.witness = rec.at("witness").get<std::vector<int>>();
    if (graph::cut_value(inst.g, inst.opt.witness) != inst.opt.c_max)
      throw std::runtime_error("read_jsonl: witness does not reproduce c_max for " + inst.id);
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace qmeta::data
