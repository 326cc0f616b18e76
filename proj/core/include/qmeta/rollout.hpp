#pragma once

#include <array>
#include <utility>
#include <vector>

#include "qmeta/graph.hpp"
#include "qmeta/models.hpp"

namespace qmeta::train {

struct RolloutRecord {
  std::array<double, 2> theta;  // (gamma, beta) after the step
  double cost = 0.0;            // expected cut at theta
};

// One unrolled optimization episode. The tape owns the computation graph;
// param slots allow reading d meta-loss / d parameter after backward().
struct Rollout {
  autodiff::Tape tape;
  autodiff::Slot meta_loss;  // invalid when built without loss nodes
  models::BoundParams params;
  std::vector<RolloutRecord> steps;
};

struct RolloutOptions {
  int horizon = 10;
  bool build_loss = true;  // skip loss/gradient nodes for inference-only runs
};

// Runs `horizon` meta-steps from theta_0 = (0, 0). The model input
// y_t = -cost(theta_t) / |E| enters as a constant; the meta-loss is
// sum_{t=1..T} 0.1 t f(theta_t) with f = -expected cut (minimization
// convention; reported metrics use the positive cut).
Rollout run_rollout(const models::MetaOptimizer& model, const graph::Graph& g,
                    const RolloutOptions& options = {});

// (meta-loss value, per-step records) without exposing the tape.
std::pair<double, std::vector<RolloutRecord>> rollout_loss(
    const models::MetaOptimizer& model, const graph::Graph& g, int horizon);

}  // namespace qmeta::train
