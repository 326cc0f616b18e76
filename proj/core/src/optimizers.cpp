#include "qmeta/optimizers.hpp"

#include <cmath>
#include <stdexcept>

namespace qmeta::autodiff {

void sgd_step(std::vector<double>& params, const std::vector<double>& grads,
              double lr) {
  if (params.size() != grads.size())
    throw std::invalid_argument("sgd_step: shape mismatch");
  for (std::size_t i = 0; i < params.size(); ++i) params[i] -= lr * grads[i];
}

void rmsprop_update(std::vector<double>& params, const std::vector<double>& grads,
                    std::vector<double>& accum, double lr, double alpha,
                    double eps) {
  if (params.size() != grads.size())
    throw std::invalid_argument("rmsprop_update: shape mismatch");
  if (accum.empty()) accum.assign(params.size(), 0.0);
  if (accum.size() != params.size())
    throw std::invalid_argument("rmsprop_update: accumulator shape mismatch");
  for (std::size_t i = 0; i < params.size(); ++i) {
    accum[i] = alpha * accum[i] + (1.0 - alpha) * grads[i] * grads[i];
    params[i] -= lr * grads[i] / (std::sqrt(accum[i]) + eps);
  }
}

}  // namespace qmeta::autodiff
