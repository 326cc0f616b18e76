#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qmeta/circuit.hpp"
#include "qmeta/kernel.hpp"
#include "qmeta/qaoa.hpp"

using namespace qmeta;
using sim::Gate;
using sim::StateVector;

namespace {
constexpr double kPi = std::numbers::pi;

std::array<double, 2> random_theta(Rng& rng) {
  return {2.0 * kPi * rng.uniform() - kPi, kPi * rng.uniform() - kPi / 2.0};
}
}  // namespace

TEST_CASE("plus state amplitudes") {
  const auto s1 = StateVector::plus_state(1);
  CHECK(s1.amp[0].real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  const auto s2 = StateVector::plus_state(2);
  for (const auto& a : s2.amp) {
    CHECK(a.real() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(a.imag() == 0.0);
  }
  const auto s13 = StateVector::plus_state(13);
  REQUIRE(s13.amp.size() == 8192);
  for (const auto& a : s13.amp)
    CHECK(std::norm(a) == doctest::Approx(std::pow(2.0, -13)).epsilon(1e-12));
  CHECK_THROWS_AS(StateVector::plus_state(0), std::length_error);
  CHECK_THROWS_AS(StateVector::plus_state(17), std::length_error);
}

TEST_CASE("basis convention: qubit 0 is the most significant bit") {
  // X on qubit 0 of |00> must set the high bit: index 2 of a 2-qubit state.
  auto s = StateVector::zero_state(2);
  apply_gate(s, Gate::rx(0, kPi));  // RX(pi) = -i X
  CHECK(std::norm(s.amp[2]) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(StateVector::qubit_bit(2, 2, 0) == 1);
  CHECK(StateVector::qubit_bit(2, 2, 1) == 0);
}

TEST_CASE("gate identities") {
  Rng rng(1);
  auto s = StateVector::plus_state(3);
  for (auto& a : s.amp) a *= std::complex<double>(rng.uniform(), rng.uniform());
  const double norm = std::sqrt(s.norm_sq());
  for (auto& a : s.amp) a /= norm;

  SUBCASE("RX(0) is the identity") {
    auto t = s;
    apply_gate(t, Gate::rx(1, 0.0));
    for (std::size_t i = 0; i < s.amp.size(); ++i)
      CHECK(std::abs(t.amp[i] - s.amp[i]) < 1e-15);
  }
  SUBCASE("H twice is the identity") {
    auto t = StateVector::zero_state(3);
    apply_gate(t, Gate::h(0));
    apply_gate(t, Gate::h(0));
    CHECK(std::abs(t.amp[0] - 1.0) < 1e-14);
  }
  SUBCASE("index range errors") {
    auto t = StateVector::zero_state(3);
    CHECK_THROWS_AS(apply_gate(t, Gate::h(3)), std::invalid_argument);
    CHECK_THROWS_AS(apply_gate(t, Gate::cnot(1, 1)), std::invalid_argument);
  }
}

TEST_CASE("RZZ(pi) phases match the hand-built diagonal") {
  // exp(-i pi/2 Z(x)Z) = diag(e^{-i pi/2}, e^{+i pi/2}, e^{+i pi/2}, e^{-i pi/2})
  const std::complex<double> minus_i(0.0, -1.0);
  const std::complex<double> plus_i(0.0, 1.0);

  for (std::size_t basis = 0; basis < 4; ++basis) {
    auto s = StateVector::zero_state(2);
    s.amp[0] = 0.0;
    s.amp[basis] = 1.0;
    apply_gate(s, Gate::rzz(0, 1, kPi));
    const auto expect = (basis == 0 || basis == 3) ? minus_i : plus_i;
    CHECK(std::abs(s.amp[basis] - expect) < 1e-14);
  }
}

TEST_CASE("norm preserved through a 1000-gate random circuit") {
  Rng rng(77);
  auto s = StateVector::plus_state(6);
  for (int i = 0; i < 1000; ++i) {
    const int q = rng.uniform_int(0, 5);
    const double angle = 4.0 * kPi * rng.uniform() - 2.0 * kPi;
    switch (rng.uniform_int(0, 5)) {
      case 0: apply_gate(s, Gate::h(q)); break;
      case 1: apply_gate(s, Gate::rx(q, angle)); break;
      case 2: apply_gate(s, Gate::ry(q, angle)); break;
      case 3: apply_gate(s, Gate::rz(q, angle)); break;
      case 4: apply_gate(s, Gate::cnot(q, (q + 1) % 6)); break;
      default: apply_gate(s, Gate::rzz(q, (q + 1) % 6, angle)); break;
    }
  }
  CHECK(std::abs(s.norm_sq() - 1.0) < 1e-9);
}

TEST_CASE("expect_cut on reference states") {
  Rng rng(5);
  const auto g = oracles::random_graph(rng, 5);

  SUBCASE("uniform superposition cuts half the edges") {
    CHECK(sim::expect_cut(StateVector::plus_state(g.n), g) ==
          doctest::Approx(g.edge_count() / 2.0).epsilon(1e-12));
  }
  SUBCASE("computational basis states give their cut value") {
    for (std::size_t b : {std::size_t{0}, std::size_t{9}, std::size_t{21}}) {
      auto s = StateVector::zero_state(g.n);
      s.amp[0] = 0.0;
      s.amp[b] = 1.0;
      CHECK(sim::expect_cut(s, g) ==
            doctest::Approx(oracles::basis_cut(g, b)).epsilon(1e-12));
    }
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(sim::expect_cut(StateVector::plus_state(4), g),
                    std::invalid_argument);
  }
}

TEST_CASE("expect_cut equals the dense diagonal contraction") {
  const auto g = oracles::k_n(3);
  Rng rng(13);
  auto s = StateVector::zero_state(3);
  for (auto& a : s.amp) a = {rng.uniform() - 0.5, rng.uniform() - 0.5};
  const double norm = std::sqrt(s.norm_sq());
  for (auto& a : s.amp) a /= norm;

  const auto h = oracles::dense_cost_hamiltonian(g);
  Eigen::VectorXcd psi(8);
  for (int i = 0; i < 8; ++i) psi(i) = s.amp[i];
  const double want = (psi.adjoint() * h * psi)(0, 0).real();
  CHECK(sim::expect_cut(s, g) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("qaoa_state matches the dense matrix-exponential oracle") {
  const auto g = oracles::single_edge();
  for (double gamma : {-1.1, 0.0, 0.4, 2.2})
    for (double beta : {-0.7, 0.0, 0.3, 1.9}) {
      auto s = sim::qaoa_state(g, gamma, beta);
      // Restore the global phase the cost layer drops.
      const std::complex<double> phase =
          std::exp(std::complex<double>(0.0, -gamma * g.edge_count() / 2.0));
      const auto want = oracles::dense_qaoa_state(g, gamma, beta);
      for (int i = 0; i < 4; ++i)
        CHECK(std::abs(phase * s.amp[i] - want(i)) < 1e-10);
    }
}

TEST_CASE("qaoa_cost anchors and oracle value") {
  Rng rng(19);
  const auto g = oracles::random_graph(rng, 6);
  const double half = g.edge_count() / 2.0;
  CHECK(sim::qaoa_cost(g, 0.0, 0.0) == doctest::Approx(half).epsilon(1e-12));
  CHECK(sim::qaoa_cost(g, 0.0, 0.77) == doctest::Approx(half).epsilon(1e-12));
  CHECK(sim::qaoa_cost(g, 1.3, 0.0) == doctest::Approx(half).epsilon(1e-12));

  const auto k3 = oracles::k_n(3);
  CHECK(sim::qaoa_cost(k3, 0.7, 0.3) ==
        doctest::Approx(oracles::dense_qaoa_cost(k3, 0.7, 0.3)).epsilon(1e-10));
}

TEST_CASE("qaoa_cost is pi-periodic in beta on unweighted graphs") {
  Rng rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = oracles::random_graph(rng, 6);
    const auto theta = random_theta(rng);
    CHECK(sim::qaoa_cost(g, theta[0], theta[1]) ==
          doctest::Approx(sim::qaoa_cost(g, theta[0], theta[1] + kPi))
              .epsilon(1e-10));
  }
}

TEST_CASE("qaoa_cost stays within [0, c_max]") {
  Rng rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = oracles::random_graph(rng, 6);
    const int c_max = graph::max_cut_bruteforce(g).c_max;
    const auto theta = random_theta(rng);
    const double cost = sim::qaoa_cost(g, theta[0], theta[1]);
    CHECK(cost >= -1e-12);
    CHECK(cost <= c_max + 1e-12);
  }
}

TEST_CASE("qaoa_grad matches central finite differences") {
  Rng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = oracles::random_graph(rng, rng.uniform_int(4, 7));
    const auto theta = random_theta(rng);
    const auto grad = sim::qaoa_grad(g, theta[0], theta[1]);
    const auto fd = oracles::fd_gradient(
        [&](const std::vector<double>& t) { return sim::qaoa_cost(g, t[0], t[1]); },
        {theta[0], theta[1]});
    CHECK(oracles::rel_vec_error({grad[0], grad[1]}, fd, 1e-3) < 1e-6);
  }
}

TEST_CASE("qaoa_grad vanishes where symmetry demands it") {
  // K3 is vertex-transitive: at (0, 0) the gamma derivative vanishes.
  const auto k3 = oracles::k_n(3);
  const auto grad0 = sim::qaoa_grad(k3, 0.0, 0.0);
  CHECK(std::abs(grad0[0]) < 1e-10);

  // Single edge: locate the optimum on a grid, refine by ascent, and check
  // the gradient norm there.
  const auto edge = oracles::single_edge();
  double best_g = 0, best_b = 0, best = -1;
  for (int gi = 0; gi <= 60; ++gi)
    for (int bi = 0; bi <= 60; ++bi) {
      const double gamma = -kPi + gi * (2 * kPi / 60);
      const double beta = -kPi / 2 + bi * (kPi / 60);
      const double c = sim::qaoa_cost(edge, gamma, beta);
      if (c > best) {
        best = c;
        best_g = gamma;
        best_b = beta;
      }
    }
  for (int it = 0; it < 4000; ++it) {
    const auto grad = sim::qaoa_grad(edge, best_g, best_b);
    best_g += 0.05 * grad[0];
    best_b += 0.05 * grad[1];
  }
  const auto grad = sim::qaoa_grad(edge, best_g, best_b);
  CHECK(std::hypot(grad[0], grad[1]) < 1e-6);
  CHECK(sim::qaoa_cost(edge, best_g, best_b) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("fidelity kernel properties") {
  const sim::KernelCircuitSpec spec{4, 1};
  Rng rng(53);

  SUBCASE("self-kernel is one; symmetry; range") {
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> a(4), b(4), w(4);
      for (int i = 0; i < 4; ++i) {
        a[i] = 4.0 * rng.uniform() - 2.0;
        b[i] = 4.0 * rng.uniform() - 2.0;
        w[i] = 2.0 * rng.uniform() - 1.0;
      }
      const double self = sim::fidelity_kernel(a, a, w, spec);
      CHECK(std::abs(self - 1.0) < 1e-10);
      const double ab = sim::fidelity_kernel(a, b, w, spec);
      const double ba = sim::fidelity_kernel(b, a, w, spec);
      CHECK(std::abs(ab - ba) < 1e-12);
      CHECK(ab >= 0.0);
      CHECK(ab <= 1.0 + 1e-12);
    }
  }

  SUBCASE("matches an independent dense evaluation") {
    // Product encoding: kappa = prod_k cos^2(w_k (a_k - b_k) / 2).
    const std::vector<double> a{0.3, -0.7, 1.1, 0.2};
    const std::vector<double> b{-0.4, 0.5, 0.9, -1.3};
    const std::vector<double> w{1.0, 0.8, -0.6, 0.4};
    double want = 1.0;
    for (int k = 0; k < 4; ++k) {
      const double c = std::cos(0.5 * w[k] * (a[k] - b[k]));
      want *= c * c;
    }
    CHECK(sim::fidelity_kernel(a, b, w, spec) ==
          doctest::Approx(want).epsilon(1e-12));
  }

  SUBCASE("dimension mismatch") {
    const std::vector<double> a{1, 2, 3};
    const std::vector<double> w{1, 1, 1, 1};
    CHECK_THROWS_AS(sim::fidelity_kernel(a, a, w, spec), std::invalid_argument);
  }
}

TEST_CASE("fidelity kernel with entangling layers still matches a dense oracle") {
  const sim::KernelCircuitSpec spec{4, 2};
  const std::vector<double> a{0.3, -0.7, 1.1, 0.2};
  const std::vector<double> b{-0.4, 0.5, 0.9, -1.3};
  const std::vector<double> w{1.0, 0.8, -0.6, 0.4};

  // Independent route: build both encoded states gate by gate with Eigen.
  auto encode = [&](const std::vector<double>& x) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(16);
    v(0) = 1.0;
    auto ry = [&](int q, double t) {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(16, 16);
      // build RY(t) on qubit q as a dense matrix
      Eigen::Matrix2cd r;
      r << std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2);
      Eigen::MatrixXcd full = Eigen::MatrixXcd::Identity(1, 1);
      for (int k = 0; k < 4; ++k) {
        if (k == q)
          full = Eigen::kroneckerProduct(full, r).eval();
        else
          full = Eigen::kroneckerProduct(full, Eigen::Matrix2cd::Identity()).eval();
      }
      v = full * v;
      (void)m;
    };
    auto cnot = [&](int c, int t) {
      Eigen::VectorXcd out = Eigen::VectorXcd::Zero(16);
      for (int idx = 0; idx < 16; ++idx) {
        int j = idx;
        if ((idx >> (3 - c)) & 1) j = idx ^ (1 << (3 - t));
        out(j) += v(idx);
      }
      v = out;
    };
    for (int q = 0; q < 4; ++q) ry(q, w[q] * x[q]);
    for (int q = 0; q < 4; ++q) cnot(q, (q + 1) % 4);
    for (int q = 0; q < 4; ++q) ry(q, w[q] * x[q]);
    return v;
  };
  const Eigen::VectorXcd sa = encode(a);
  const Eigen::VectorXcd sb = encode(b);
  const double want = std::norm((sb.adjoint() * sa)(0, 0));
  CHECK(sim::fidelity_kernel(a, b, w, spec) == doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("landscape grid") {
  Rng rng(61);
  const auto g = oracles::random_graph(rng, 5);
  const int c_max = graph::max_cut_bruteforce(g).c_max;

  const auto grid = sim::landscape_grid(g, {0.0, 1.0}, {0.0, 1.0}, 5);
  REQUIRE(grid.cost.size() == 25);
  CHECK(grid.cost[0] == doctest::Approx(g.edge_count() / 2.0).epsilon(1e-12));
  for (double c : grid.cost) CHECK(c <= c_max + 1e-12);

  // gamma-major ordering: entry [gi * res + bi]
  CHECK(grid.cost[7] ==
        doctest::Approx(sim::qaoa_cost(g, grid.gammas[1], grid.betas[2]))
            .epsilon(1e-12));

  CHECK_THROWS_AS(sim::landscape_grid(g, {0, 1}, {0, 1}, 1), std::invalid_argument);

  const auto par = sim::landscape_grid(g, {0.0, 1.0}, {0.0, 1.0}, 5, 4);
  for (std::size_t i = 0; i < grid.cost.size(); ++i)
    CHECK(par.cost[i] == grid.cost[i]);
}
