#include <cmath>
#include <stdexcept>

#include "model_common.hpp"
#include "qmeta/circuit.hpp"

namespace qmeta::models {

namespace {

// Fast-weight programmer: a slow linear map emits latent vectors L and Q
// whose outer product is added onto the fast circuit parameters each step,
// so the circuit retains the whole update history. The fast circuit encodes
// the input with RY(arctan x_k) distributed cyclically over the qubits,
// then per layer applies RX/RY/RZ(fast params) per qubit followed by a CNOT
// chain, reading out Z expectations.
class QfwpModel final : public MetaOptimizer {
 public:
  QfwpModel(const QfwpConfig& cfg, std::uint64_t seed) : cfg_(cfg) {
    if (cfg.n_qubits < 2 || cfg.n_qubits > 16)
      throw std::invalid_argument("qfwp: n_qubits must be in [2, 16]");
    if (cfg.fast_layers < 1 || cfg.input_dim < 1)
      throw std::invalid_argument("qfwp: bad layer/input configuration");
    seed_ = seed;

    Rng rng(seed);
    const std::size_t latent = cfg.fast_layers + per_layer();
    ParamGroup core{"core", {}};
    core.tensors.push_back(
        detail::init_tensor(rng, "slow_w", latent * cfg.input_dim));
    core.tensors.push_back(
        detail::init_tensor(rng, "post_w", static_cast<std::size_t>(2) * cfg.n_qubits));
    core.tensors.push_back(detail::init_tensor(rng, "post_b", 2));
    core.tensors.push_back(detail::init_tensor(rng, "out_scale", 1));
    groups_.push_back(std::move(core));

    circuit_ = build_circuit();
  }

  ModelKind kind() const override { return ModelKind::qfwp; }

  std::vector<std::vector<double>> initial_state() const override {
    // Fast weights start at zero each rollout.
    return {std::vector<double>(fast_count(), 0.0)};
  }

  std::pair<std::vector<autodiff::Slot>, autodiff::Slot> cell(
      autodiff::Tape& tape, const BoundParams& params,
      const std::vector<autodiff::Slot>& state, autodiff::Slot x) const override {
    const auto& core = params.slots[0];
    const int latent = cfg_.fast_layers + per_layer();

    const autodiff::Slot lq = tape.matvec(core[0], x, latent, cfg_.input_dim);
    const autodiff::Slot l_vec = tape.slice(lq, 0, cfg_.fast_layers);
    const autodiff::Slot q_vec = tape.slice(lq, cfg_.fast_layers, per_layer());
    const autodiff::Slot fast = tape.add(state[0], tape.outer(l_vec, q_vec));

    const autodiff::Slot z = circuit_node(tape, x, fast);
    const autodiff::Slot post =
        tape.add(tape.matvec(core[1], z, 2, cfg_.n_qubits), core[2]);
    const autodiff::Slot delta = tape.scalar_mul(post, core[3]);
    return {{fast}, delta};
  }

  std::vector<std::pair<std::string, std::int64_t>> config_fields() const override {
    return {{"n_qubits", cfg_.n_qubits},
            {"fast_layers", cfg_.fast_layers},
            {"input_dim", cfg_.input_dim}};
  }

 protected:
  int reference_total() const override { return 31; }

 private:
  int per_layer() const { return 3 * cfg_.n_qubits; }
  std::size_t fast_count() const {
    return static_cast<std::size_t>(cfg_.fast_layers) * per_layer();
  }

  // Fast params laid out row-major [layer][3 * qubit + axis], axis RX/RY/RZ.
  sim::CircuitSpec build_circuit() const {
    const int n = cfg_.n_qubits;
    sim::CircuitSpec c;
    c.n_qubits = n;
    for (int k = 0; k < cfg_.input_dim; ++k)
      c.gates.push_back(sim::Gate::ry_p(k % n, k));
    int p = cfg_.input_dim;
    for (int layer = 0; layer < cfg_.fast_layers; ++layer) {
      for (int q = 0; q < n; ++q) {
        c.gates.push_back(sim::Gate::rx_p(q, p++));
        c.gates.push_back(sim::Gate::ry_p(q, p++));
        c.gates.push_back(sim::Gate::rz_p(q, p++));
      }
      for (int q = 0; q + 1 < n; ++q) c.gates.push_back(sim::Gate::cnot(q, q + 1));
      if (n > 2) c.gates.push_back(sim::Gate::cnot(n - 1, 0));
    }
    return c;
  }

  autodiff::Slot circuit_node(autodiff::Tape& tape, autodiff::Slot x,
                              autodiff::Slot fast) const {
    const auto& xv = tape.value(x);
    const auto& fv = tape.value(fast);
    const int n = cfg_.n_qubits;
    const int in = cfg_.input_dim;

    std::vector<double> circuit_params(xv.size() + fv.size());
    for (int k = 0; k < in; ++k) circuit_params[k] = std::atan(xv[k]);
    std::copy(fv.begin(), fv.end(), circuit_params.begin() + in);

    const auto out = sim::z_expectations(sim::run_circuit(circuit_, circuit_params));
    const auto jac = sim::shift_jacobian(circuit_, circuit_params,
                                         [](const sim::StateVector& s) {
                                           return sim::z_expectations(s);
                                         });

    std::vector<double> j_x(static_cast<std::size_t>(n) * in);
    std::vector<double> j_fast(static_cast<std::size_t>(n) * fv.size());
    for (int o = 0; o < n; ++o) {
      for (int k = 0; k < in; ++k)
        j_x[o * in + k] = jac[o][k] / (1.0 + xv[k] * xv[k]);
      for (std::size_t j = 0; j < fv.size(); ++j)
        j_fast[o * fv.size() + j] = jac[o][in + j];
    }
    return tape.custom({x, fast}, out, {std::move(j_x), std::move(j_fast)});
  }

  QfwpConfig cfg_;
  sim::CircuitSpec circuit_;
};

}  // namespace

std::unique_ptr<MetaOptimizer> make_qfwp(const QfwpConfig& cfg, std::uint64_t seed) {
  return std::make_unique<QfwpModel>(cfg, seed);
}

}  // namespace qmeta::models
