#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "qmeta/dataset.hpp"
#include "qmeta/models.hpp"

namespace qmeta::train {

struct TrainConfig {
  int epochs = 50;
  int horizon = 10;
  double lr_core = 6e-6;     // sequence-model learning rate
  double lr_fc_head = 1e-4;  // head learning rate, when the model has one
  int batch_size = 1;        // graphs per parameter update
  std::uint64_t seed = 0;
  double clip_norm = 0.0;  // optional global-norm gradient clip; <= 0 off
  int workers = 1;
};

struct TrainLog {
  std::vector<double> mean_loss;  // mean rollout meta-loss per epoch
  std::vector<double> seconds;    // wall clock per epoch (not reproducible)
};

// Meta-training: per epoch the dataset order is reshuffled (seeded
// Fisher-Yates), rollout losses are backpropagated through time, and
// RMSprop applies the per-group learning rates on the batch-mean gradient.
// Batch gradients reduce in batch order regardless of worker count. When
// paths are given, the checkpoint and log rewrite atomically after every
// epoch. Throws std::runtime_error on a non-finite loss, naming the epoch,
// batch, and graph.
TrainLog train(models::MetaOptimizer& model,
               const std::vector<data::Instance>& dataset, const TrainConfig& cfg,
               const std::filesystem::path& checkpoint_path = {},
               const std::filesystem::path& log_path = {});

// CSV: header `epoch,mean_meta_loss,seconds`, one row per epoch.
void write_trainlog_csv(const TrainLog& log, const std::filesystem::path& path);

}  // namespace qmeta::train
