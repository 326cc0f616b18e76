#pragma once

#include <vector>

namespace qmeta::autodiff {

// p <- p - lr g. Throws std::invalid_argument on shape mismatch.
void sgd_step(std::vector<double>& params, const std::vector<double>& grads,
              double lr);

// One RMSprop update on a flat parameter vector:
//   v <- alpha v + (1 - alpha) g^2
//   p <- p - lr g / (sqrt(v) + eps)
// `accum` is the per-parameter squared-gradient state; resized to zeros on
// first use.
void rmsprop_update(std::vector<double>& params, const std::vector<double>& grads,
                    std::vector<double>& accum, double lr, double alpha = 0.99,
                    double eps = 1e-8);

}  // namespace qmeta::autodiff
