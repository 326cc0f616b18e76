#pragma once

#include <functional>
#include <initializer_list>
#include <vector>

namespace qmeta::autodiff {

// Handle to a node on a Tape.
struct Slot {
  int id = -1;
  bool valid() const { return id >= 0; }
};

// Reverse-mode tape over small dense vectors. Nodes are recorded in
// creation order, which is topological by construction; one backward pass
// visits each node once, accumulating gradients additively at fan-out.
// A tape is single-owner: it is not shared across concurrent rollouts.
class Tape {
 public:
  // Leaf holding a value; trainable parameters and constants alike.
  Slot leaf(std::vector<double> value);
  Slot leaf(std::initializer_list<double> value);

  Slot add(Slot a, Slot b);                    // elementwise, equal length
  Slot scale(Slot a, double k);                // constant scalar multiple
  Slot mul(Slot a, Slot b);                    // elementwise product
  Slot scalar_mul(Slot v, Slot s);             // s is a length-1 node
  Slot matvec(Slot w, Slot x, int rows, int cols);  // w row-major rows x cols
  Slot dot(Slot a, Slot b);                    // scalar product
  Slot outer(Slot a, Slot b);                  // row-major |a| x |b|
  Slot concat(Slot a, Slot b);
  Slot slice(Slot a, int offset, int len);
  Slot sigmoid(Slot a);
  Slot tanh(Slot a);

  // Node with externally supplied value and jacobians evaluated at the
  // recorded point: jacobians[k] is row-major |value| x |inputs[k]|,
  // d value / d inputs[k]. Used to splice circuit expectations into the
  // tape.
  Slot custom(std::vector<Slot> inputs, std::vector<double> value,
              std::vector<std::vector<double>> jacobians);

  const std::vector<double>& value(Slot s) const;
  double scalar(Slot s) const;  // value of a length-1 node

  // Seeds d loss / d loss = 1 and runs the reverse pass. `loss` must be
  // scalar. May be called once per tape.
  void backward(Slot loss);

  // d loss / d node, defined after backward(); zero for nodes the loss
  // does not reach.
  const std::vector<double>& grad(Slot s) const;

  int size() const { return static_cast<int>(nodes_.size()); }

 private:
  struct Node {
    std::vector<double> value;
    std::vector<double> grad;
    std::function<void(Tape&, const Node&)> pull;  // empty for leaves
  };

  Slot push(std::vector<double> value, std::function<void(Tape&, const Node&)> pull);
  const Node& at(Slot s) const;
  std::vector<double>& grad_buf(int id) { return nodes_[id].grad; }

  std::vector<Node> nodes_;
  bool ran_backward_ = false;
};

}  // namespace qmeta::autodiff
