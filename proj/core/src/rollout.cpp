#include "qmeta/rollout.hpp"

#include <stdexcept>

#include "qmeta/qaoa.hpp"

namespace qmeta::train {

Rollout run_rollout(const models::MetaOptimizer& model, const graph::Graph& g,
                    const RolloutOptions& options) {
  if (options.horizon < 1)
    throw std::invalid_argument("run_rollout: horizon must be >= 1");

  Rollout r;
  r.params = model.bind(r.tape);
  auto state = models::MetaOptimizer::bind_state(r.tape, model.initial_state());
  autodiff::Slot theta = r.tape.leaf({0.0, 0.0});
  autodiff::Slot loss{};

  const double edges = g.edge_count();
  double cost = sim::qaoa_cost(g, 0.0, 0.0);
  r.steps.reserve(options.horizon);

  for (int t = 1; t <= options.horizon; ++t) {
    const double y = -cost / edges;
    auto stepped = models::meta_step(model, r.tape, r.params, state, theta, y);
    state = std::move(stepped.state);
    theta = stepped.theta;

    const auto& th = r.tape.value(theta);
    if (options.build_loss) {
      cost = sim::qaoa_cost(g, th[0], th[1]);
      const auto grad = sim::qaoa_grad(g, th[0], th[1]);
      const autodiff::Slot f =
          r.tape.custom({theta}, {-cost}, {{-grad[0], -grad[1]}});
      const autodiff::Slot term = r.tape.scale(f, 0.1 * t);
      loss = loss.valid() ? r.tape.add(loss, term) : term;
    } else {
      cost = sim::qaoa_cost(g, th[0], th[1]);
    }
    r.steps.push_back({{th[0], th[1]}, cost});
  }
  r.meta_loss = loss;
  return r;
}

std::pair<double, std::vector<RolloutRecord>> rollout_loss(
    const models::MetaOptimizer& model, const graph::Graph& g, int horizon) {
  Rollout r = run_rollout(model, g, {horizon, true});
  return {r.tape.scalar(r.meta_loss), std::move(r.steps)};
}

}  // namespace qmeta::train
