#include <stdexcept>

#include "model_common.hpp"

namespace qmeta::models {

namespace {

// Standard LSTM cell with separate input-side and hidden-side bias vectors
// per gate. The hidden state doubles as the parameter update, so the
// default hidden dimension equals the QAOA parameter dimension and no head
// is appended.
class LstmModel final : public MetaOptimizer {
 public:
  LstmModel(const LstmConfig& cfg, std::uint64_t seed) : cfg_(cfg) {
    if (cfg.input_dim < 1 || cfg.hidden_dim < 1)
      throw std::invalid_argument("lstm: dimensions must be positive");
    seed_ = seed;
    Rng rng(seed);
    const std::size_t h = cfg.hidden_dim;
    const std::size_t v = h + cfg.input_dim;
    ParamGroup core{"core", {}};
    for (const char* gate : {"f", "i", "c", "o"}) {
      const std::string suffix = gate;
      core.tensors.push_back(detail::init_tensor(rng, "w_" + suffix, h * v));
      core.tensors.push_back(detail::init_tensor(rng, "b_" + suffix + "_in", h));
      core.tensors.push_back(detail::init_tensor(rng, "b_" + suffix + "_hid", h));
    }
    groups_.push_back(std::move(core));
  }

  ModelKind kind() const override { return ModelKind::lstm; }

  std::vector<std::vector<double>> initial_state() const override {
    return {std::vector<double>(cfg_.hidden_dim, 0.0),
            std::vector<double>(cfg_.hidden_dim, 0.0)};
  }

  std::pair<std::vector<autodiff::Slot>, autodiff::Slot> cell(
      autodiff::Tape& tape, const BoundParams& params,
      const std::vector<autodiff::Slot>& state, autodiff::Slot x) const override {
    const auto& p = params.slots[0];
    const autodiff::Slot h_prev = state[0];
    const autodiff::Slot c_prev = state[1];
    const autodiff::Slot v = tape.concat(h_prev, x);
    const int rows = cfg_.hidden_dim;
    const int cols = cfg_.hidden_dim + cfg_.input_dim;

    auto gate_pre = [&](int g) {
      return tape.add(tape.add(tape.matvec(p[3 * g], v, rows, cols), p[3 * g + 1]),
                      p[3 * g + 2]);
    };
    const autodiff::Slot f = tape.sigmoid(gate_pre(0));
    const autodiff::Slot i = tape.sigmoid(gate_pre(1));
    const autodiff::Slot c_tilde = tape.tanh(gate_pre(2));
    const autodiff::Slot o = tape.sigmoid(gate_pre(3));

    const autodiff::Slot c = tape.add(tape.mul(f, c_prev), tape.mul(i, c_tilde));
    const autodiff::Slot h = tape.mul(o, tape.tanh(c));
    return {{h, c}, h};
  }

  std::vector<std::pair<std::string, std::int64_t>> config_fields() const override {
    return {{"input_dim", cfg_.input_dim}, {"hidden_dim", cfg_.hidden_dim}};
  }

 protected:
  int reference_total() const override { return 56; }

 private:
  LstmConfig cfg_;
};

}  // namespace

std::unique_ptr<MetaOptimizer> make_lstm(const LstmConfig& cfg, std::uint64_t seed) {
  return std::make_unique<LstmModel>(cfg, seed);
}

}  // namespace qmeta::models
