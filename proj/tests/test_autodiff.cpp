#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qmeta/optimizers.hpp"
#include "qmeta/tape.hpp"

using namespace qmeta;
using autodiff::Slot;
using autodiff::Tape;

namespace {

std::vector<double> random_vec(Rng& rng, std::size_t n, double scale = 2.0) {
  std::vector<double> v(n);
  for (auto& x : v) x = scale * (rng.uniform() - 0.5);
  return v;
}

}  // namespace

TEST_CASE("backward on scalar reference cases") {
  SUBCASE("loss = x^2 at x = 3") {
    Tape t;
    const Slot x = t.leaf({3.0});
    const Slot loss = t.mul(x, x);
    t.backward(loss);
    CHECK(t.grad(x)[0] == doctest::Approx(6.0).epsilon(1e-14));
  }
  SUBCASE("loss = sigmoid(x) at x = 0") {
    Tape t;
    const Slot x = t.leaf({0.0});
    const Slot loss = t.sigmoid(x);
    t.backward(loss);
    CHECK(t.grad(x)[0] == doctest::Approx(0.25).epsilon(1e-14));
  }
  SUBCASE("non-scalar loss is rejected") {
    Tape t;
    const Slot x = t.leaf({1.0, 2.0});
    CHECK_THROWS_AS(t.backward(x), std::invalid_argument);
  }
  SUBCASE("unreachable leaves get zero gradient") {
    Tape t;
    const Slot x = t.leaf({3.0});
    const Slot unused = t.leaf({1.0, 1.0});
    const Slot loss = t.mul(x, x);
    t.backward(loss);
    CHECK(t.grad(unused) == std::vector<double>{0.0, 0.0});
  }
  SUBCASE("fan-out accumulates additively") {
    Tape t;
    const Slot x = t.leaf({2.0});
    const Slot loss = t.add(t.mul(x, x), t.scale(x, 3.0));  // x^2 + 3x
    t.backward(loss);
    CHECK(t.grad(x)[0] == doctest::Approx(7.0).epsilon(1e-14));
  }
}

TEST_CASE("every primitive matches central finite differences") {
  Rng rng(101);

  struct Case {
    std::vector<std::size_t> lens;
    std::function<Slot(Tape&, const std::vector<Slot>&)> build;
  };
  const std::vector<Case> cases{
      {{4, 4}, [](Tape& t, const std::vector<Slot>& in) { return t.add(in[0], in[1]); }},
      {{4}, [](Tape& t, const std::vector<Slot>& in) { return t.scale(in[0], -1.7); }},
      {{4, 4}, [](Tape& t, const std::vector<Slot>& in) { return t.mul(in[0], in[1]); }},
      {{4, 1}, [](Tape& t, const std::vector<Slot>& in) { return t.scalar_mul(in[0], in[1]); }},
      {{6, 3}, [](Tape& t, const std::vector<Slot>& in) { return t.matvec(in[0], in[1], 2, 3); }},
      {{3, 3}, [](Tape& t, const std::vector<Slot>& in) { return t.dot(in[0], in[1]); }},
      {{2, 3}, [](Tape& t, const std::vector<Slot>& in) { return t.outer(in[0], in[1]); }},
      {{2, 3}, [](Tape& t, const std::vector<Slot>& in) { return t.concat(in[0], in[1]); }},
      {{5}, [](Tape& t, const std::vector<Slot>& in) { return t.slice(in[0], 1, 3); }},
      {{4}, [](Tape& t, const std::vector<Slot>& in) { return t.sigmoid(in[0]); }},
      {{4}, [](Tape& t, const std::vector<Slot>& in) { return t.tanh(in[0]); }},
      // composite: sigmoid(W [a; b]) . c  exercises chaining
      {{6, 2, 1},
       [](Tape& t, const std::vector<Slot>& in) {
         const Slot v = t.concat(in[1], in[2]);
         return t.sigmoid(t.matvec(in[0], v, 2, 3));
       }},
  };

  for (const auto& c : cases) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<std::vector<double>> inputs;
      for (auto len : c.lens) inputs.push_back(random_vec(rng, len));

      // Scalarize by dotting the output with fixed random weights.
      const std::vector<double> probe =
          random_vec(rng, [&] {
            Tape t;
            std::vector<Slot> leaves;
            for (const auto& v : inputs) leaves.push_back(t.leaf(v));
            return t.value(c.build(t, leaves)).size();
          }());

      auto eval = [&](const std::vector<double>& flat) {
        Tape t;
        std::vector<Slot> leaves;
        std::size_t off = 0;
        for (auto len : c.lens) {
          leaves.push_back(t.leaf(std::vector<double>(flat.begin() + off,
                                                      flat.begin() + off + len)));
          off += len;
        }
        const auto& out = t.value(c.build(t, leaves));
        double total = 0.0;
        for (std::size_t i = 0; i < out.size(); ++i) total += probe[i] * out[i];
        return total;
      };

      std::vector<double> flat;
      for (const auto& v : inputs) flat.insert(flat.end(), v.begin(), v.end());
      const auto fd = oracles::fd_gradient(eval, flat, 1e-6);

      Tape t;
      std::vector<Slot> leaves;
      for (const auto& v : inputs) leaves.push_back(t.leaf(v));
      const Slot out = c.build(t, leaves);
      const Slot loss = t.dot(t.leaf(probe), out);
      t.backward(loss);
      std::vector<double> got;
      for (const auto& leaf : leaves) {
        const auto& g = t.grad(leaf);
        got.insert(got.end(), g.begin(), g.end());
      }
      CHECK(oracles::rel_vec_error(got, fd) < 1e-5);
    }
  }
}

TEST_CASE("custom nodes honor the jacobian contract") {
  Rng rng(113);
  // y = [sin(a0 b0 + b1), cos(a1)] as a custom node with hand jacobians.
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_vec(rng, 2);
    const auto b = random_vec(rng, 2);

    auto eval = [](const std::vector<double>& av, const std::vector<double>& bv) {
      return std::vector<double>{std::sin(av[0] * bv[0] + bv[1]), std::cos(av[1])};
    };
    auto build = [&](Tape& t, Slot sa, Slot sb) {
      const auto& av = t.value(sa);
      const auto& bv = t.value(sb);
      const auto y = eval(av, bv);
      const double c0 = std::cos(av[0] * bv[0] + bv[1]);
      std::vector<double> ja{c0 * bv[0], 0.0, 0.0, -std::sin(av[1])};
      std::vector<double> jb{c0 * av[0], c0, 0.0, 0.0};
      return t.custom({sa, sb}, y, {ja, jb});
    };

    const std::vector<double> probe = random_vec(rng, 2);
    auto scalarized = [&](const std::vector<double>& flat) {
      const auto y = eval({flat[0], flat[1]}, {flat[2], flat[3]});
      return probe[0] * y[0] + probe[1] * y[1];
    };
    const auto fd = oracles::fd_gradient(scalarized, {a[0], a[1], b[0], b[1]}, 1e-6);

    Tape t;
    const Slot sa = t.leaf(a);
    const Slot sb = t.leaf(b);
    const Slot loss = t.dot(t.leaf(probe), build(t, sa, sb));
    t.backward(loss);
    std::vector<double> got = t.grad(sa);
    const auto& gb = t.grad(sb);
    got.insert(got.end(), gb.begin(), gb.end());
    CHECK(oracles::rel_vec_error(got, fd) < 1e-5);
  }
}

TEST_CASE("identical tapes produce identical gradients") {
  auto run = [] {
    Tape t;
    const Slot w = t.leaf({0.3, -0.2, 0.5, 0.1, -0.4, 0.2});
    const Slot x = t.leaf({1.0, -2.0, 0.5});
    const Slot loss = t.dot(t.sigmoid(t.matvec(w, x, 2, 3)),
                            t.tanh(t.matvec(w, x, 2, 3)));
    t.backward(loss);
    return t.grad(w);
  };
  CHECK(run() == run());
}

TEST_CASE("sgd_step") {
  std::vector<double> p{1.0};
  autodiff::sgd_step(p, {2.0}, 1e-3);
  CHECK(p[0] == doctest::Approx(0.998).epsilon(1e-15));

  std::vector<double> q{5.0, -3.0};
  autodiff::sgd_step(q, {0.0, 0.0}, 0.1);
  CHECK(q == std::vector<double>{5.0, -3.0});

  CHECK_THROWS_AS(autodiff::sgd_step(q, {1.0}, 0.1), std::invalid_argument);

  // repeated descent on loss = p^2 decreases monotonically toward 0
  double x = 1.0;
  double prev = x * x;
  for (int i = 0; i < 200; ++i) {
    std::vector<double> xs{x};
    autodiff::sgd_step(xs, {2.0 * x}, 0.05);
    x = xs[0];
    CHECK(x * x <= prev + 1e-15);
    prev = x * x;
  }
  CHECK(prev < 1e-4);
}

TEST_CASE("rmsprop_update") {
  SUBCASE("zero gradient leaves parameters unchanged") {
    std::vector<double> p{0.7, -0.2};
    std::vector<double> v;
    autodiff::rmsprop_update(p, {0.0, 0.0}, v, 6e-6);
    CHECK(p == std::vector<double>{0.7, -0.2});
  }
  SUBCASE("first-step magnitude from the update formula") {
    // v = 0.01, step = lr / (sqrt(0.01) + 1e-8) ~= 6.0e-5
    std::vector<double> p{0.0};
    std::vector<double> v;
    autodiff::rmsprop_update(p, {1.0}, v, 6e-6, 0.99, 1e-8);
    CHECK(p[0] == doctest::Approx(-6e-6 / (0.1 + 1e-8)).epsilon(1e-12));
    CHECK(v[0] == doctest::Approx(0.01).epsilon(1e-12));
  }
  SUBCASE("two groups scale linearly with their learning rates") {
    std::vector<double> a{0.0}, b{0.0};
    std::vector<double> va, vb;
    autodiff::rmsprop_update(a, {0.5}, va, 6e-6);
    autodiff::rmsprop_update(b, {0.5}, vb, 1e-4);
    CHECK(b[0] / a[0] == doctest::Approx(1e-4 / 6e-6).epsilon(1e-12));
  }
  SUBCASE("shape mismatch") {
    std::vector<double> p{1.0};
    std::vector<double> v;
    CHECK_THROWS_AS(autodiff::rmsprop_update(p, {1.0, 2.0}, v, 1e-3),
                    std::invalid_argument);
  }
  SUBCASE("accumulator stays non-negative") {
    Rng rng(7);
    std::vector<double> p{0.1, 0.2, 0.3};
    std::vector<double> v;
    for (int i = 0; i < 100; ++i) {
      autodiff::rmsprop_update(p, random_vec(rng, 3), v, 1e-3);
      for (double acc : v) CHECK(acc >= 0.0);
    }
  }
}
