#include <cmath>
#include <stdexcept>

#include "model_common.hpp"
#include "qmeta/circuit.hpp"

namespace qmeta::models {

namespace {

// Gate circuits: bounded angle encoding of the concatenated input
// (RY(arctan v_k) for the first wrap over qubits, RZ(arctan v_k) for the
// second), then `layers` variational blocks of per-qubit RY plus a CNOT
// ring, read out as one Z expectation per qubit.
class QlstmModel final : public MetaOptimizer {
 public:
  QlstmModel(const QlstmConfig& cfg, std::uint64_t seed) : cfg_(cfg) {
    if (cfg.n_qubits < 2 || cfg.n_qubits > 16)
      throw std::invalid_argument("qlstm: n_qubits must be in [2, 16]");
    if (cfg.vqc_layers < 1 || cfg.input_dim < 1)
      throw std::invalid_argument("qlstm: bad layer/input configuration");
    const int v_dim = cfg.n_qubits + cfg.input_dim;
    if (v_dim > 2 * cfg.n_qubits)
      throw std::invalid_argument("qlstm: input exceeds two encoding wraps");
    seed_ = seed;

    Rng rng(seed);
    const std::size_t n_angles =
        static_cast<std::size_t>(cfg.vqc_layers) * cfg.n_qubits;
    ParamGroup core{"core", {}};
    for (const char* gate : {"f", "i", "c", "o"})
      core.tensors.push_back(
          detail::init_tensor(rng, std::string("vqc_") + gate, n_angles));
    groups_.push_back(std::move(core));
    ParamGroup head{"fc_head", {}};
    head.tensors.push_back(
        detail::init_tensor(rng, "fc_w", 2 * static_cast<std::size_t>(cfg.n_qubits)));
    head.tensors.push_back(detail::init_tensor(rng, "fc_b", 2));
    groups_.push_back(std::move(head));

    circuit_ = build_circuit();
  }

  ModelKind kind() const override { return ModelKind::qlstm; }

  std::vector<std::vector<double>> initial_state() const override {
    return {std::vector<double>(cfg_.n_qubits, 0.0),
            std::vector<double>(cfg_.n_qubits, 0.0)};
  }

  std::pair<std::vector<autodiff::Slot>, autodiff::Slot> cell(
      autodiff::Tape& tape, const BoundParams& params,
      const std::vector<autodiff::Slot>& state, autodiff::Slot x) const override {
    const auto& core = params.slots[0];
    const auto& head = params.slots[1];
    const autodiff::Slot h_prev = state[0];
    const autodiff::Slot c_prev = state[1];
    const autodiff::Slot v = tape.concat(h_prev, x);

    auto vqc = [&](int gate) {
      return vqc_node(tape, v, core[gate]);
    };
    const autodiff::Slot f = tape.sigmoid(vqc(0));
    const autodiff::Slot i = tape.sigmoid(vqc(1));
    const autodiff::Slot c_tilde = tape.tanh(vqc(2));
    const autodiff::Slot o = tape.sigmoid(vqc(3));

    const autodiff::Slot c = tape.add(tape.mul(f, c_prev), tape.mul(i, c_tilde));
    const autodiff::Slot h = tape.mul(o, tape.tanh(c));
    const autodiff::Slot delta =
        tape.add(tape.matvec(head[0], h, 2, cfg_.n_qubits), head[1]);
    return {{h, c}, delta};
  }

  std::vector<std::pair<std::string, std::int64_t>> config_fields() const override {
    return {{"n_qubits", cfg_.n_qubits},
            {"vqc_layers", cfg_.vqc_layers},
            {"input_dim", cfg_.input_dim}};
  }

 protected:
  int reference_total() const override { return 43; }

 private:
  sim::CircuitSpec build_circuit() const {
    const int n = cfg_.n_qubits;
    const int v_dim = n + cfg_.input_dim;
    sim::CircuitSpec c;
    c.n_qubits = n;
    for (int k = 0; k < v_dim; ++k) {
      const int q = k % n;
      c.gates.push_back(k < n ? sim::Gate::ry_p(q, k) : sim::Gate::rz_p(q, k));
    }
    int p = v_dim;
    for (int layer = 0; layer < cfg_.vqc_layers; ++layer) {
      for (int q = 0; q < n; ++q) c.gates.push_back(sim::Gate::ry_p(q, p++));
      for (int q = 0; q < n; ++q) c.gates.push_back(sim::Gate::cnot(q, (q + 1) % n));
    }
    return c;
  }

  autodiff::Slot vqc_node(autodiff::Tape& tape, autodiff::Slot v,
                          autodiff::Slot angles) const {
    const auto& vv = tape.value(v);
    const auto& av = tape.value(angles);
    const int n = cfg_.n_qubits;
    const int v_dim = static_cast<int>(vv.size());

    std::vector<double> circuit_params(vv.size() + av.size());
    for (int k = 0; k < v_dim; ++k) circuit_params[k] = std::atan(vv[k]);
    std::copy(av.begin(), av.end(), circuit_params.begin() + v_dim);

    const auto out = sim::z_expectations(sim::run_circuit(circuit_, circuit_params));
    const auto jac = sim::shift_jacobian(circuit_, circuit_params,
                                         [](const sim::StateVector& s) {
                                           return sim::z_expectations(s);
                                         });

    std::vector<double> j_v(static_cast<std::size_t>(n) * v_dim);
    std::vector<double> j_angles(static_cast<std::size_t>(n) * av.size());
    for (int o = 0; o < n; ++o) {
      for (int k = 0; k < v_dim; ++k)
        j_v[o * v_dim + k] = jac[o][k] / (1.0 + vv[k] * vv[k]);
      for (std::size_t j = 0; j < av.size(); ++j)
        j_angles[o * av.size() + j] = jac[o][v_dim + j];
    }
    return tape.custom({v, angles}, out, {std::move(j_v), std::move(j_angles)});
  }

  QlstmConfig cfg_;
  sim::CircuitSpec circuit_;
};

}  // namespace

std::unique_ptr<MetaOptimizer> make_qlstm(const QlstmConfig& cfg, std::uint64_t seed) {
  return std::make_unique<QlstmModel>(cfg, seed);
}

}  // namespace qmeta::models
