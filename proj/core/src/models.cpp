#include "qmeta/models.hpp"

#include <map>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "qmeta/io.hpp"
#include "qmeta/version.hpp"

namespace qmeta::models {

using ordered_json = nlohmann::ordered_json;

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::lstm: return "lstm";
    case ModelKind::qlstm: return "qlstm";
    case ModelKind::qklstm: return "qklstm";
    case ModelKind::qfwp: return "qfwp";
  }
  throw std::invalid_argument("to_string: unknown model kind");
}

ModelKind model_kind_from_string(const std::string& name) {
  if (name == "lstm") return ModelKind::lstm;
  if (name == "qlstm") return ModelKind::qlstm;
  if (name == "qklstm") return ModelKind::qklstm;
  if (name == "qfwp") return ModelKind::qfwp;
  throw std::invalid_argument("unknown model kind: " + name);
}

ParamReport MetaOptimizer::param_report() const {
  ParamReport report;
  for (const auto& group : groups_) {
    int count = 0;
    for (const auto& t : group.tensors) count += static_cast<int>(t.data.size());
    report.groups.push_back({group.name, count});
    report.total += count;
  }
  report.reference_total = reference_total();
  return report;
}

BoundParams MetaOptimizer::bind(autodiff::Tape& tape) const {
  BoundParams bound;
  bound.slots.reserve(groups_.size());
  for (const auto& group : groups_) {
    std::vector<autodiff::Slot> slots;
    slots.reserve(group.tensors.size());
    for (const auto& t : group.tensors) slots.push_back(tape.leaf(t.data));
    bound.slots.push_back(std::move(slots));
  }
  return bound;
}

std::vector<autodiff::Slot> MetaOptimizer::bind_state(
    autodiff::Tape& tape, const std::vector<std::vector<double>>& state) {
  std::vector<autodiff::Slot> slots;
  slots.reserve(state.size());
  for (const auto& v : state) slots.push_back(tape.leaf(v));
  return slots;
}

void MetaOptimizer::save_checkpoint(const std::filesystem::path& path) const {
  ordered_json doc;
  doc["format"] = "qmeta-checkpoint-v1";
  doc["version"] = kVersion;
  doc["model"] = to_string(kind());
  doc["seed"] = seed_;
  ordered_json cfg;
  for (const auto& [key, val] : config_fields()) cfg[key] = val;
  doc["config"] = std::move(cfg);
  ordered_json params;
  for (const auto& group : groups_) {
    ordered_json g;
    for (const auto& t : group.tensors) g[t.name] = t.data;
    params[group.name] = std::move(g);
  }
  doc["params"] = std::move(params);
  ordered_json consts;
  for (const auto& t : constants()) consts[t.name] = t.data;
  doc["constants"] = std::move(consts);
  io::atomic_write(path, doc.dump(2) + "\n");
}

namespace {

std::int64_t cfg_int(const std::map<std::string, std::int64_t>& cfg,
                     const std::string& key) {
  auto it = cfg.find(key);
  if (it == cfg.end())
    throw std::runtime_error("checkpoint config missing field: " + key);
  return it->second;
}

std::unique_ptr<MetaOptimizer> build_from_config(
    ModelKind kind, const std::map<std::string, std::int64_t>& cfg,
    std::uint64_t seed) {
  switch (kind) {
    case ModelKind::lstm: {
      LstmConfig c;
      c.input_dim = static_cast<int>(cfg_int(cfg, "input_dim"));
      c.hidden_dim = static_cast<int>(cfg_int(cfg, "hidden_dim"));
      return make_lstm(c, seed);
    }
    case ModelKind::qlstm: {
      QlstmConfig c;
      c.n_qubits = static_cast<int>(cfg_int(cfg, "n_qubits"));
      c.vqc_layers = static_cast<int>(cfg_int(cfg, "vqc_layers"));
      c.input_dim = static_cast<int>(cfg_int(cfg, "input_dim"));
      return make_qlstm(c, seed);
    }
    case ModelKind::qklstm: {
      QklstmConfig c;
      c.n_qubits = static_cast<int>(cfg_int(cfg, "n_qubits"));
      c.n_anchors = static_cast<int>(cfg_int(cfg, "n_anchors"));
      c.input_dim = static_cast<int>(cfg_int(cfg, "input_dim"));
      c.kernel_layers = static_cast<int>(cfg_int(cfg, "kernel_layers"));
      c.train_anchors = cfg_int(cfg, "train_anchors") != 0;
      c.per_gate_encoding = cfg_int(cfg, "per_gate_encoding") != 0;
      return make_qklstm(c, seed);
    }
    case ModelKind::qfwp: {
      QfwpConfig c;
      c.n_qubits = static_cast<int>(cfg_int(cfg, "n_qubits"));
      c.fast_layers = static_cast<int>(cfg_int(cfg, "fast_layers"));
      c.input_dim = static_cast<int>(cfg_int(cfg, "input_dim"));
      return make_qfwp(c, seed);
    }
  }
  throw std::invalid_argument("build_from_config: unknown model kind");
}

}  // namespace

std::unique_ptr<MetaOptimizer> MetaOptimizer::load_checkpoint(
    const std::filesystem::path& path) {
  const auto doc = nlohmann::json::parse(io::read_file(path));
  if (doc.value("format", "") != "qmeta-checkpoint-v1")
    throw std::runtime_error("load_checkpoint: unrecognized format in " + path.string());

  const auto kind = model_kind_from_string(doc.at("model").get<std::string>());
  std::map<std::string, std::int64_t> cfg;
  for (const auto& [key, val] : doc.at("config").items())
    cfg[key] = val.get<std::int64_t>();
  auto model = build_from_config(kind, cfg, doc.at("seed").get<std::uint64_t>());

  const auto& params = doc.at("params");
  for (auto& group : model->groups()) {
    const auto& g = params.at(group.name);
    for (auto& t : group.tensors) {
      auto data = g.at(t.name).get<std::vector<double>>();
      if (data.size() != t.data.size())
        throw std::runtime_error("load_checkpoint: size mismatch for tensor " + t.name);
      t.data = std::move(data);
    }
  }
  if (doc.contains("constants")) {
    std::vector<Tensor> consts;
    for (const auto& [name, val] : doc.at("constants").items())
      consts.push_back({name, val.get<std::vector<double>>()});
    model->set_constants(consts);
  }
  return model;
}

std::unique_ptr<MetaOptimizer> MetaOptimizer::create(ModelKind kind,
                                                     std::uint64_t seed) {
  switch (kind) {
    case ModelKind::lstm: return make_lstm(LstmConfig{}, seed);
    case ModelKind::qlstm: return make_qlstm(QlstmConfig{}, seed);
    case ModelKind::qklstm: return make_qklstm(QklstmConfig{}, seed);
    case ModelKind::qfwp: return make_qfwp(QfwpConfig{}, seed);
  }
  throw std::invalid_argument("create: unknown model kind");
}

StepSlots meta_step(const MetaOptimizer& model, autodiff::Tape& tape,
                    const BoundParams& params,
                    const std::vector<autodiff::Slot>& state,
                    autodiff::Slot theta, double y) {
  if (tape.value(theta).size() != 2)
    throw std::invalid_argument("meta_step: theta must have length 2");
  const autodiff::Slot x = tape.concat(theta, tape.leaf({y}));
  auto [next_state, delta] = model.cell(tape, params, state, x);
  if (tape.value(delta).size() != 2)
    throw std::invalid_argument("meta_step: cell update must have length 2");
  return StepSlots{std::move(next_state), tape.add(theta, delta)};
}

StepResult step(const MetaOptimizer& model,
                const std::vector<std::vector<double>>& state,
                std::array<double, 2> theta, double y) {
  autodiff::Tape tape;
  const BoundParams bound = model.bind(tape);
  const auto state_slots = MetaOptimizer::bind_state(tape, state);
  const auto out = meta_step(model, tape, bound, state_slots,
                             tape.leaf({theta[0], theta[1]}), y);
  StepResult result;
  for (const auto& s : out.state) result.state.push_back(tape.value(s));
  result.theta = {tape.value(out.theta)[0], tape.value(out.theta)[1]};
  return result;
}

}  // namespace qmeta::models
