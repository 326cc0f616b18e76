#include <stdexcept>

#include "model_common.hpp"
#include "qmeta/kernel.hpp"

namespace qmeta::models {

namespace {

// Scalar-gate LSTM cell whose pre-activations are kernel expansions
// sum_j beta_j kappa(v_t, v_j) over a fixed bank of anchor vectors. The
// fidelity kernel shares one encoding circuit across gates by default;
// per-gate behavior lives in the beta coefficients.
class QklstmModel final : public MetaOptimizer {
 public:
  QklstmModel(const QklstmConfig& cfg, std::uint64_t seed) : cfg_(cfg) {
    if (cfg.n_qubits != cfg.input_dim + 1)
      throw std::invalid_argument(
          "qklstm: n_qubits must equal input_dim + 1 (scalar hidden state)");
    if (cfg.n_anchors < 1 || cfg.kernel_layers < 1)
      throw std::invalid_argument("qklstm: bad anchor/layer configuration");
    seed_ = seed;

    Rng rng(seed);
    const std::size_t n = cfg.n_qubits;
    const std::size_t w_count = cfg.per_gate_encoding ? 4 * n : n;

    ParamGroup core{"core", {}};
    for (const char* gate : {"f", "i", "c", "o"})
      core.tensors.push_back(
          detail::init_tensor(rng, std::string("beta_") + gate, cfg.n_anchors));
    core.tensors.push_back(detail::init_tensor(rng, "enc_w", w_count));

    ParamGroup head{"fc_head", {}};
    head.tensors.push_back(detail::init_tensor(rng, "fc_w", 2));
    head.tensors.push_back(detail::init_tensor(rng, "fc_b", 2));

    // Anchors come from a seeded standard normal, drawn after the trainable
    // tensors; frozen unless train_anchors is set.
    anchors_.resize(static_cast<std::size_t>(cfg.n_anchors) * n);
    for (auto& a : anchors_) a = rng.normal();
    if (cfg.train_anchors)
      core.tensors.push_back(Tensor{"anchors", anchors_});

    groups_.push_back(std::move(core));
    groups_.push_back(std::move(head));
    kernel_spec_ = sim::KernelCircuitSpec{cfg.n_qubits, cfg.kernel_layers};
  }

  ModelKind kind() const override { return ModelKind::qklstm; }

  std::vector<std::vector<double>> initial_state() const override {
    return {{0.0}, {0.0}};
  }

  std::pair<std::vector<autodiff::Slot>, autodiff::Slot> cell(
      autodiff::Tape& tape, const BoundParams& params,
      const std::vector<autodiff::Slot>& state, autodiff::Slot x) const override {
    const auto& core = params.slots[0];
    const auto& head = params.slots[1];
    const autodiff::Slot h_prev = state[0];
    const autodiff::Slot c_prev = state[1];
    const autodiff::Slot v = tape.concat(h_prev, x);
    const autodiff::Slot w_all = core[4];
    const autodiff::Slot anchors =
        cfg_.train_anchors ? core[5] : tape.leaf(anchors_);

    autodiff::Slot shared_kernels{};
    if (!cfg_.per_gate_encoding)
      shared_kernels = kernel_bank(tape, v, w_all, anchors);

    auto gate_pre = [&](int gate) {
      autodiff::Slot kernels = shared_kernels;
      if (cfg_.per_gate_encoding) {
        const autodiff::Slot w_gate =
            tape.slice(w_all, gate * cfg_.n_qubits, cfg_.n_qubits);
        kernels = kernel_bank(tape, v, w_gate, anchors);
      }
      return tape.dot(core[gate], kernels);
    };

    const autodiff::Slot f = tape.sigmoid(gate_pre(0));
    const autodiff::Slot i = tape.sigmoid(gate_pre(1));
    const autodiff::Slot c_tilde = tape.tanh(gate_pre(2));
    const autodiff::Slot o = tape.sigmoid(gate_pre(3));

    const autodiff::Slot c = tape.add(tape.mul(f, c_prev), tape.mul(i, c_tilde));
    const autodiff::Slot h = tape.mul(o, tape.tanh(c));
    const autodiff::Slot delta = tape.add(tape.matvec(head[0], h, 2, 1), head[1]);
    return {{h, c}, delta};
  }

  std::vector<std::pair<std::string, std::int64_t>> config_fields() const override {
    return {{"n_qubits", cfg_.n_qubits},
            {"n_anchors", cfg_.n_anchors},
            {"input_dim", cfg_.input_dim},
            {"kernel_layers", cfg_.kernel_layers},
            {"train_anchors", cfg_.train_anchors ? 1 : 0},
            {"per_gate_encoding", cfg_.per_gate_encoding ? 1 : 0}};
  }

  std::vector<Tensor> constants() const override {
    if (cfg_.train_anchors) return {};
    return {Tensor{"anchors", anchors_}};
  }

  void set_constants(const std::vector<Tensor>& consts) override {
    for (const auto& t : consts) {
      if (t.name != "anchors") continue;
      if (t.data.size() != anchors_.size())
        throw std::invalid_argument("qklstm: anchor size mismatch");
      anchors_ = t.data;
    }
  }

 protected:
  int reference_total() const override { return 43; }

 private:
  // One node producing all N kernel values kappa(v, anchor_j), with exact
  // jacobians toward v, the encoding weights, and (optionally) the anchors.
  autodiff::Slot kernel_bank(autodiff::Tape& tape, autodiff::Slot v,
                             autodiff::Slot w, autodiff::Slot anchors) const {
    const auto& vv = tape.value(v);
    const auto& wv = tape.value(w);
    const auto& av = tape.value(anchors);
    const std::size_t n = cfg_.n_qubits;
    const std::size_t count = cfg_.n_anchors;

    std::vector<double> values(count);
    std::vector<double> j_v(count * n, 0.0);
    std::vector<double> j_w(count * n, 0.0);
    std::vector<double> j_anchors;
    if (cfg_.train_anchors) j_anchors.assign(count * av.size(), 0.0);

    for (std::size_t j = 0; j < count; ++j) {
      const std::span<const double> anchor(av.data() + j * n, n);
      const auto grad = sim::fidelity_kernel_grad(vv, anchor, wv, kernel_spec_);
      values[j] = grad.value;
      for (std::size_t k = 0; k < n; ++k) {
        j_v[j * n + k] = grad.d_a[k];
        j_w[j * n + k] = grad.d_w[k];
        if (cfg_.train_anchors) j_anchors[j * av.size() + j * n + k] = grad.d_b[k];
      }
    }

    if (cfg_.train_anchors)
      return tape.custom({v, w, anchors}, std::move(values),
                         {std::move(j_v), std::move(j_w), std::move(j_anchors)});
    return tape.custom({v, w}, std::move(values),
                       {std::move(j_v), std::move(j_w)});
  }

  QklstmConfig cfg_;
  std::vector<double> anchors_;  // row-major n_anchors x n_qubits
  sim::KernelCircuitSpec kernel_spec_;
};

}  // namespace

std::unique_ptr<MetaOptimizer> make_qklstm(const QklstmConfig& cfg,
                                           std::uint64_t seed) {
  return std::make_unique<QklstmModel>(cfg, seed);
}

}  // namespace qmeta::models
