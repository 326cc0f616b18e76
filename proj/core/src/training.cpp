#include "qmeta/training.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qmeta/io.hpp"
#include "qmeta/optimizers.hpp"
#include "qmeta/parallel.hpp"
#include "qmeta/rng.hpp"
#include "qmeta/rollout.hpp"

namespace qmeta::train {

namespace {

// Gradients (or accumulators) shaped like the model's groups/tensors.
using TensorSet = std::vector<std::vector<std::vector<double>>>;

TensorSet zeros_like(const models::MetaOptimizer& model) {
  TensorSet set;
  for (const auto& group : model.groups()) {
    std::vector<std::vector<double>> tensors;
    for (const auto& t : group.tensors)
      tensors.emplace_back(t.data.size(), 0.0);
    set.push_back(std::move(tensors));
  }
  return set;
}

TensorSet extract_grads(const models::MetaOptimizer& model, Rollout& rollout) {
  rollout.tape.backward(rollout.meta_loss);
  TensorSet grads;
  for (std::size_t gi = 0; gi < model.groups().size(); ++gi) {
    std::vector<std::vector<double>> tensors;
    for (std::size_t ti = 0; ti < model.groups()[gi].tensors.size(); ++ti)
      tensors.push_back(rollout.tape.grad(rollout.params.slots[gi][ti]));
    grads.push_back(std::move(tensors));
  }
  return grads;
}

}  // namespace

TrainLog train(models::MetaOptimizer& model,
               const std::vector<data::Instance>& dataset, const TrainConfig& cfg,
               const std::filesystem::path& checkpoint_path,
               const std::filesystem::path& log_path) {
  if (dataset.empty()) throw std::invalid_argument("train: dataset is empty");
  if (cfg.epochs < 1 || cfg.horizon < 1 || cfg.batch_size < 1)
    throw std::invalid_argument("train: epochs, horizon, batch_size must be >= 1");
  if (cfg.lr_core <= 0.0 || cfg.lr_fc_head <= 0.0)
    throw std::invalid_argument("train: learning rates must be positive");

  const int count = static_cast<int>(dataset.size());
  std::vector<int> order(count);
  for (int i = 0; i < count; ++i) order[i] = i;
  Rng shuffle_rng(cfg.seed);

  TensorSet accum = zeros_like(model);
  TrainLog log;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    const auto epoch_start = std::chrono::steady_clock::now();
    for (int i = count - 1; i >= 1; --i) {
      const int j = shuffle_rng.uniform_int(0, i);
      std::swap(order[i], order[j]);
    }

    double epoch_loss = 0.0;
    for (int batch_begin = 0; batch_begin < count; batch_begin += cfg.batch_size) {
      const int batch_len = std::min(cfg.batch_size, count - batch_begin);
      std::vector<double> losses(batch_len);
      std::vector<TensorSet> grads(batch_len);
      parallel_for(batch_len, cfg.workers, [&](int b) {
        Rollout rollout =
            run_rollout(model, dataset[order[batch_begin + b]].g, {cfg.horizon, true});
        losses[b] = rollout.tape.scalar(rollout.meta_loss);
        grads[b] = extract_grads(model, rollout);
      });

      // Reduction in batch order keeps results identical for any worker count.
      TensorSet mean = zeros_like(model);
      for (int b = 0; b < batch_len; ++b) {
        const auto& inst = dataset[order[batch_begin + b]];
        if (!std::isfinite(losses[b])) {
          std::ostringstream msg;
          msg << "train: non-finite meta-loss at epoch " << epoch + 1 << ", batch "
              << batch_begin / cfg.batch_size + 1 << ", graph " << inst.id;
          throw std::runtime_error(msg.str());
        }
        epoch_loss += losses[b];
        for (std::size_t gi = 0; gi < mean.size(); ++gi)
          for (std::size_t ti = 0; ti < mean[gi].size(); ++ti)
            for (std::size_t k = 0; k < mean[gi][ti].size(); ++k)
              mean[gi][ti][k] += grads[b][gi][ti][k] / batch_len;
      }

      if (cfg.clip_norm > 0.0) {
        double norm_sq = 0.0;
        for (const auto& group : mean)
          for (const auto& t : group)
            for (double g : t) norm_sq += g * g;
        const double norm = std::sqrt(norm_sq);
        if (norm > cfg.clip_norm) {
          const double factor = cfg.clip_norm / norm;
          for (auto& group : mean)
            for (auto& t : group)
              for (double& g : t) g *= factor;
        }
      }

      auto& groups = model.groups();
      for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const double lr =
            groups[gi].name == "fc_head" ? cfg.lr_fc_head : cfg.lr_core;
        for (std::size_t ti = 0; ti < groups[gi].tensors.size(); ++ti)
          autodiff::rmsprop_update(groups[gi].tensors[ti].data, mean[gi][ti],
                                   accum[gi][ti], lr);
      }
    }

    log.mean_loss.push_back(epoch_loss / count);
    log.seconds.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - epoch_start)
            .count());

    if (!checkpoint_path.empty()) model.save_checkpoint(checkpoint_path);
    if (!log_path.empty()) write_trainlog_csv(log, log_path);
  }
  return log;
}

void write_trainlog_csv(const TrainLog& log, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "epoch,mean_meta_loss,seconds\n";
  for (std::size_t e = 0; e < log.mean_loss.size(); ++e) {
    char loss[40];
    std::snprintf(loss, sizeof(loss), "%.17g", log.mean_loss[e]);
    char secs[40];
    std::snprintf(secs, sizeof(secs), "%.3f", log.seconds[e]);
    out << e + 1 << ',' << loss << ',' << secs << '\n';
  }
  io::atomic_write(path, out.str());
}

}  // namespace qmeta::train
