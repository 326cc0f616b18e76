#pragma once

#include <vector>

#include "qmeta/models.hpp"
#include "qmeta/rng.hpp"

namespace qmeta::models::detail {

// All classical weights and variational angles initialize elementwise from
// uniform(-0.1, 0.1), drawn in tensor declaration order.
inline std::vector<double> uniform_init(Rng& rng, std::size_t count) {
  std::vector<double> v(count);
  for (auto& x : v) x = -0.1 + 0.2 * rng.uniform();
  return v;
}

inline Tensor init_tensor(Rng& rng, std::string name, std::size_t count) {
  return Tensor{std::move(name), uniform_init(rng, count)};
}

}  // namespace qmeta::models::detail
