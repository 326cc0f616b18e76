#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qmeta/tape.hpp"

namespace qmeta::models {

enum class ModelKind { lstm, qlstm, qklstm, qfwp };

std::string to_string(ModelKind kind);
ModelKind model_kind_from_string(const std::string& name);

struct Tensor {
  std::string name;
  std::vector<double> data;
};

// Trainable parameters organized in named groups. Group "core" holds the
// sequence-model parameters; models with a downstream fully connected head
// expose it as a second group "fc_head" with its own learning rate.
struct ParamGroup {
  std::string name;
  std::vector<Tensor> tensors;
};

struct ParamReport {
  struct Group {
    std::string name;
    int count = 0;
  };
  std::vector<Group> groups;
  int total = 0;
  // Published parameter total for this architecture's default configuration;
  // reported alongside the exact count (they differ for some models).
  int reference_total = 0;
};

// Tape slots for every trainable tensor, indexed [group][tensor] to mirror
// groups().
struct BoundParams {
  std::vector<std::vector<autodiff::Slot>> slots;
};

// A sequence model consuming (state, theta_t, y_t) and emitting a parameter
// update. Parameters are read-only during rollouts, so many rollouts may
// run concurrently against one model; recurrent state is per-rollout.
class MetaOptimizer {
 public:
  virtual ~MetaOptimizer() = default;

  virtual ModelKind kind() const = 0;
  std::uint64_t init_seed() const { return seed_; }

  const std::vector<ParamGroup>& groups() const { return groups_; }
  std::vector<ParamGroup>& groups() { return groups_; }
  ParamReport param_report() const;

  // Fresh recurrent state: zeros for the LSTM family (h, c), zero fast
  // weights for the fast-weight model.
  virtual std::vector<std::vector<double>> initial_state() const = 0;

  // Registers all trainable tensors / a state snapshot as tape leaves.
  BoundParams bind(autodiff::Tape& tape) const;
  static std::vector<autodiff::Slot> bind_state(
      autodiff::Tape& tape, const std::vector<std::vector<double>>& state);

  // One cell application. x is the length-3 leaf [theta_gamma, theta_beta,
  // y]; returns the successor state slots and the length-2 update delta.
  virtual std::pair<std::vector<autodiff::Slot>, autodiff::Slot> cell(
      autodiff::Tape& tape, const BoundParams& params,
      const std::vector<autodiff::Slot>& state, autodiff::Slot x) const = 0;

  // Architecture description persisted with checkpoints.
  virtual std::vector<std::pair<std::string, std::int64_t>> config_fields() const = 0;
  // Non-trainable arrays persisted with checkpoints (e.g. kernel anchors).
  virtual std::vector<Tensor> constants() const { return {}; }
  virtual void set_constants(const std::vector<Tensor>&) {}

  void save_checkpoint(const std::filesystem::path& path) const;
  static std::unique_ptr<MetaOptimizer> load_checkpoint(
      const std::filesystem::path& path);

  // Default-configuration factory.
  static std::unique_ptr<MetaOptimizer> create(ModelKind kind, std::uint64_t seed);

 protected:
  virtual int reference_total() const = 0;

  std::vector<ParamGroup> groups_;
  std::uint64_t seed_ = 0;
};

// ---- architecture configurations (defaults reproduce the published runs) --

struct LstmConfig {
  int input_dim = 3;
  int hidden_dim = 2;  // equals the QAOA parameter dimension; no head
};

struct QlstmConfig {
  int n_qubits = 4;   // hidden dimension == readout width == n_qubits
  int vqc_layers = 2;
  int input_dim = 3;
};

struct QklstmConfig {
  int n_qubits = 4;  // kernel feature dimension; must equal input_dim + 1
  int n_anchors = 8;
  int input_dim = 3;
  int kernel_layers = 1;
  bool train_anchors = false;
  bool per_gate_encoding = false;
};

struct QfwpConfig {
  int n_qubits = 2;
  int fast_layers = 2;  // rows of the fast-weight matrix
  int input_dim = 3;
};

std::unique_ptr<MetaOptimizer> make_lstm(const LstmConfig&, std::uint64_t seed);
std::unique_ptr<MetaOptimizer> make_qlstm(const QlstmConfig&, std::uint64_t seed);
std::unique_ptr<MetaOptimizer> make_qklstm(const QklstmConfig&, std::uint64_t seed);
std::unique_ptr<MetaOptimizer> make_qfwp(const QfwpConfig&, std::uint64_t seed);

// ---- the meta-recurrence -------------------------------------------------

struct StepSlots {
  std::vector<autodiff::Slot> state;
  autodiff::Slot theta;
};

// Builds x = [theta, y], applies the cell, and returns the residual update
// theta' = theta + delta. y enters as a constant leaf: no gradient flows
// into the model through the cost-input path.
StepSlots meta_step(const MetaOptimizer& model, autodiff::Tape& tape,
                    const BoundParams& params,
                    const std::vector<autodiff::Slot>& state,
                    autodiff::Slot theta, double y);

// Value-level convenience around a throwaway tape.
struct StepResult {
  std::vector<std::vector<double>> state;
  std::array<double, 2> theta;
};
StepResult step(const MetaOptimizer& model,
                const std::vector<std::vector<double>>& state,
                std::array<double, 2> theta, double y);

}  // namespace qmeta::models
