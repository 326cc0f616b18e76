#include "qmeta/tape.hpp"

#include <cmath>
#include <stdexcept>

namespace qmeta::autodiff {

namespace {
void check_len(const std::vector<double>& v, std::size_t len, const char* what) {
  if (v.size() != len) throw std::invalid_argument(what);
}
}  // namespace

Slot Tape::push(std::vector<double> value,
                std::function<void(Tape&, const Node&)> pull) {
  if (ran_backward_)
    throw std::logic_error("Tape: cannot record after backward()");
  nodes_.push_back(Node{std::move(value), {}, std::move(pull)});
  return Slot{static_cast<int>(nodes_.size()) - 1};
}

const Tape::Node& Tape::at(Slot s) const {
  if (!s.valid() || s.id >= static_cast<int>(nodes_.size()))
    throw std::invalid_argument("Tape: invalid slot");
  return nodes_[s.id];
}

Slot Tape::leaf(std::vector<double> value) { return push(std::move(value), {}); }

Slot Tape::leaf(std::initializer_list<double> value) {
  return leaf(std::vector<double>(value));
}

Slot Tape::add(Slot a, Slot b) {
  const auto& va = at(a).value;
  const auto& vb = at(b).value;
  check_len(vb, va.size(), "Tape::add: length mismatch");
  std::vector<double> out(va.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = va[i] + vb[i];
  return push(std::move(out), [a, b](Tape& t, const Node& n) {
    auto& ga = t.grad_buf(a.id);
    auto& gb = t.grad_buf(b.id);
    for (std::size_t i = 0; i < n.grad.size(); ++i) {
      ga[i] += n.grad[i];
      gb[i] += n.grad[i];
    }
  });
}

Slot Tape::scale(Slot a, double k) {
  const auto& va = at(a).value;
  std::vector<double> out(va.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = k * va[i];
  return push(std::move(out), [a, k](Tape& t, const Node& n) {
    auto& ga = t.grad_buf(a.id);
    for (std::size_t i = 0; i < n.grad.size(); ++i) ga[i] += k * n.grad[i];
  });
}

Slot Tape::mul(Slot a, Slot b) {
  const auto& va = at(a).value;
  const auto& vb = at(b).value;
  check_len(vb, va.size(), "Tape::mul: length mismatch");
  std::vector<double> out(va.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = va[i] * vb[i];
  return push(std::move(out), [a, b](Tape& t, const Node& n) {
    const auto& va = t.nodes_[a.id].value;
    const auto& vb = t.nodes_[b.id].value;
    auto& ga = t.grad_buf(a.id);
    auto& gb = t.grad_buf(b.id);
    for (std::size_t i = 0; i < n.grad.size(); ++i) {
      ga[i] += n.grad[i] * vb[i];
      gb[i] += n.grad[i] * va[i];
    }
  });
}

Slot Tape::scalar_mul(Slot v, Slot s) {
  const auto& vv = at(v).value;
  const auto& vs = at(s).value;
  check_len(vs, 1, "Tape::scalar_mul: scalar operand must have length 1");
  std::vector<double> out(vv.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = vv[i] * vs[0];
  return push(std::move(out), [v, s](Tape& t, const Node& n) {
    const auto& vv = t.nodes_[v.id].value;
    const double sv = t.nodes_[s.id].value[0];
    auto& gv = t.grad_buf(v.id);
    auto& gs = t.grad_buf(s.id);
    for (std::size_t i = 0; i < n.grad.size(); ++i) {
      gv[i] += n.grad[i] * sv;
      gs[0] += n.grad[i] * vv[i];
    }
  });
}

Slot Tape::matvec(Slot w, Slot x, int rows, int cols) {
  const auto& vw = at(w).value;
  const auto& vx = at(x).value;
  if (rows < 1 || cols < 1)
    throw std::invalid_argument("Tape::matvec: bad shape");
  check_len(vw, static_cast<std::size_t>(rows) * cols, "Tape::matvec: matrix length mismatch");
  check_len(vx, static_cast<std::size_t>(cols), "Tape::matvec: vector length mismatch");
  std::vector<double> out(rows, 0.0);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) out[r] += vw[r * cols + c] * vx[c];
  return push(std::move(out), [w, x, rows, cols](Tape& t, const Node& n) {
    const auto& vw = t.nodes_[w.id].value;
    const auto& vx = t.nodes_[x.id].value;
    auto& gw = t.grad_buf(w.id);
    auto& gx = t.grad_buf(x.id);
    for (int r = 0; r < rows; ++r) {
      const double g = n.grad[r];
      for (int c = 0; c < cols; ++c) {
        gw[r * cols + c] += g * vx[c];
        gx[c] += g * vw[r * cols + c];
      }
    }
  });
}

Slot Tape::dot(Slot a, Slot b) {
  return matvec(a, b, 1, static_cast<int>(at(a).value.size()));
}

Slot Tape::outer(Slot a, Slot b) {
  const auto& va = at(a).value;
  const auto& vb = at(b).value;
  std::vector<double> out(va.size() * vb.size());
  for (std::size_t i = 0; i < va.size(); ++i)
    for (std::size_t j = 0; j < vb.size(); ++j) out[i * vb.size() + j] = va[i] * vb[j];
  return push(std::move(out), [a, b](Tape& t, const Node& n) {
    const auto& va = t.nodes_[a.id].value;
    const auto& vb = t.nodes_[b.id].value;
    auto& ga = t.grad_buf(a.id);
    auto& gb = t.grad_buf(b.id);
    for (std::size_t i = 0; i < va.size(); ++i)
      for (std::size_t j = 0; j < vb.size(); ++j) {
        const double g = n.grad[i * vb.size() + j];
        ga[i] += g * vb[j];
        gb[j] += g * va[i];
      }
  });
}

Slot Tape::concat(Slot a, Slot b) {
  const auto& va = at(a).value;
  const auto& vb = at(b).value;
  std::vector<double> out;
  out.reserve(va.size() + vb.size());
  out.insert(out.end(), va.begin(), va.end());
  out.insert(out.end(), vb.begin(), vb.end());
  const std::size_t split = va.size();
  return push(std::move(out), [a, b, split](Tape& t, const Node& n) {
    auto& ga = t.grad_buf(a.id);
    auto& gb = t.grad_buf(b.id);
    for (std::size_t i = 0; i < split; ++i) ga[i] += n.grad[i];
    for (std::size_t i = split; i < n.grad.size(); ++i) gb[i - split] += n.grad[i];
  });
}

Slot Tape::slice(Slot a, int offset, int len) {
  const auto& va = at(a).value;
  if (offset < 0 || len < 1 || offset + len > static_cast<int>(va.size()))
    throw std::invalid_argument("Tape::slice: range out of bounds");
  std::vector<double> out(va.begin() + offset, va.begin() + offset + len);
  return push(std::move(out), [a, offset](Tape& t, const Node& n) {
    auto& ga = t.grad_buf(a.id);
    for (std::size_t i = 0; i < n.grad.size(); ++i) ga[offset + i] += n.grad[i];
  });
}

Slot Tape::sigmoid(Slot a) {
  const auto& va = at(a).value;
  std::vector<double> out(va.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = 1.0 / (1.0 + std::exp(-va[i]));
  return push(std::move(out), [a](Tape& t, const Node& n) {
    auto& ga = t.grad_buf(a.id);
    for (std::size_t i = 0; i < n.grad.size(); ++i)
      ga[i] += n.grad[i] * n.value[i] * (1.0 - n.value[i]);
  });
}

Slot Tape::tanh(Slot a) {
  const auto& va = at(a).value;
  std::vector<double> out(va.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::tanh(va[i]);
  return push(std::move(out), [a](Tape& t, const Node& n) {
    auto& ga = t.grad_buf(a.id);
    for (std::size_t i = 0; i < n.grad.size(); ++i)
      ga[i] += n.grad[i] * (1.0 - n.value[i] * n.value[i]);
  });
}

Slot Tape::custom(std::vector<Slot> inputs, std::vector<double> value,
                  std::vector<std::vector<double>> jacobians) {
  if (inputs.size() != jacobians.size())
    throw std::invalid_argument("Tape::custom: one jacobian per input required");
  for (std::size_t k = 0; k < inputs.size(); ++k)
    check_len(jacobians[k], value.size() * at(inputs[k]).value.size(),
              "Tape::custom: jacobian shape mismatch");
  return push(std::move(value),
              [inputs = std::move(inputs), jac = std::move(jacobians)](
                  Tape& t, const Node& n) {
                for (std::size_t k = 0; k < inputs.size(); ++k) {
                  auto& gin = t.grad_buf(inputs[k].id);
                  const auto& J = jac[k];
                  const std::size_t in_len = gin.size();
                  for (std::size_t o = 0; o < n.grad.size(); ++o) {
                    const double g = n.grad[o];
                    if (g == 0.0) continue;
                    for (std::size_t i = 0; i < in_len; ++i)
                      gin[i] += g * J[o * in_len + i];
                  }
                }
              });
}

const std::vector<double>& Tape::value(Slot s) const { return at(s).value; }

double Tape::scalar(Slot s) const {
  const auto& v = at(s).value;
  check_len(v, 1, "Tape::scalar: node is not scalar");
  return v[0];
}

void Tape::backward(Slot loss) {
  const auto& ln = at(loss);
  if (ln.value.size() != 1)
    throw std::invalid_argument("Tape::backward: loss must be scalar");
  if (ran_backward_)
    throw std::logic_error("Tape::backward: already ran on this tape");
  ran_backward_ = true;

  for (auto& n : nodes_) n.grad.assign(n.value.size(), 0.0);
  nodes_[loss.id].grad[0] = 1.0;
  for (int i = loss.id; i >= 0; --i)
    if (nodes_[i].pull) nodes_[i].pull(*this, nodes_[i]);
}

const std::vector<double>& Tape::grad(Slot s) const {
  if (!ran_backward_)
    throw std::logic_error("Tape::grad: backward() has not run");
  return at(s).grad;
}

}  // namespace qmeta::autodiff
