#include "qmeta/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qmeta/io.hpp"
#include "qmeta/parallel.hpp"
#include "qmeta/qaoa.hpp"
#include "qmeta/rollout.hpp"

namespace qmeta::eval {

std::string to_string(Phase p) { return p == Phase::model ? "model" : "sgd"; }

namespace {

double clamped_ratio(const data::Instance& inst, double expected_cut) {
  if (inst.opt.c_max <= 0)
    throw std::invalid_argument("metrics require c_max > 0");
  const double ratio = expected_cut / inst.opt.c_max;
  return std::clamp(ratio, 0.0, 1.0);
}

TrajectoryPoint make_point(const data::Instance& inst, int iteration,
                           std::array<double, 2> theta, double cost, Phase phase) {
  TrajectoryPoint p;
  p.iteration = iteration;
  p.gamma = theta[0];
  p.beta = theta[1];
  p.expected_cut = cost;
  p.relative_error = 1.0 - clamped_ratio(inst, cost);
  p.phase = phase;
  return p;
}

}  // namespace

double approx_ratio(const data::Instance& inst, std::array<double, 2> theta) {
  return clamped_ratio(inst, sim::qaoa_cost(inst.g, theta[0], theta[1]));
}

double relative_error(const data::Instance& inst, std::array<double, 2> theta) {
  return 1.0 - approx_ratio(inst, theta);
}

Trajectory phase1(const models::MetaOptimizer& model, const data::Instance& inst,
                  int horizon) {
  const auto rollout = train::run_rollout(model, inst.g, {horizon, false});
  Trajectory traj;
  traj.graph_id = inst.id;
  traj.series = to_string(model.kind());
  traj.points.reserve(horizon);
  for (int t = 0; t < horizon; ++t)
    traj.points.push_back(make_point(inst, t + 1, rollout.steps[t].theta,
                                     rollout.steps[t].cost, Phase::model));
  return traj;
}

Trajectory phase2(const data::Instance& inst, std::array<double, 2> theta_seed,
                  int iterations, double lr, int first_iteration) {
  if (iterations < 1)
    throw std::invalid_argument("phase2: iterations must be >= 1");
  Trajectory traj;
  traj.graph_id = inst.id;
  traj.series = "sgd";
  traj.points.reserve(iterations);
  std::array<double, 2> theta = theta_seed;
  for (int j = 0; j < iterations; ++j) {
    // Ascent on the expected cut == descent on f = -<H_C>.
    const auto grad = sim::qaoa_grad(inst.g, theta[0], theta[1]);
    theta[0] += lr * grad[0];
    theta[1] += lr * grad[1];
    const double cost = sim::qaoa_cost(inst.g, theta[0], theta[1]);
    traj.points.push_back(
        make_point(inst, first_iteration + j, theta, cost, Phase::sgd));
  }
  return traj;
}

Trajectory two_phase(const models::MetaOptimizer& model, const data::Instance& inst,
                     int total_iterations, double lr, int horizon) {
  if (total_iterations <= horizon)
    throw std::invalid_argument("two_phase: need more iterations than the horizon");
  Trajectory traj = phase1(model, inst, horizon);
  const std::array<double, 2> seed{traj.points.back().gamma,
                                   traj.points.back().beta};
  Trajectory tail =
      phase2(inst, seed, total_iterations - horizon, lr, horizon + 1);
  traj.points.insert(traj.points.end(), tail.points.begin(), tail.points.end());
  return traj;
}

std::array<double, 2> draw_baseline_theta(RandomSource& rng) {
  return {2.0 * std::numbers::pi * rng.uniform(), std::numbers::pi * rng.uniform()};
}

Trajectory baseline_from(const data::Instance& inst, int iterations,
                         std::array<double, 2> theta0, double lr) {
  Trajectory traj = phase2(inst, theta0, iterations, lr, 1);
  traj.series = "random";
  return traj;
}

Trajectory baseline_random(const data::Instance& inst, int iterations,
                           RandomSource& rng, double lr) {
  return baseline_from(inst, iterations, draw_baseline_theta(rng), lr);
}

AggregateCurve aggregate(const std::vector<Trajectory>& trajectories) {
  if (trajectories.empty())
    throw std::invalid_argument("aggregate: no trajectories");
  const std::size_t len = trajectories.front().points.size();
  for (const auto& t : trajectories)
    if (t.points.size() != len)
      throw std::invalid_argument("aggregate: trajectory length mismatch");

  AggregateCurve curve;
  curve.n_instances = static_cast<int>(trajectories.size());
  curve.mean_rel_err.resize(len);
  curve.ci_halfwidth.resize(len);
  curve.phase.resize(len);
  const double n = curve.n_instances;
  for (std::size_t j = 0; j < len; ++j) {
    double mean = 0.0;
    for (const auto& t : trajectories) mean += t.points[j].relative_error;
    mean /= n;
    double var = 0.0;
    if (curve.n_instances > 1) {
      for (const auto& t : trajectories) {
        const double d = t.points[j].relative_error - mean;
        var += d * d;
      }
      var /= (n - 1.0);
    }
    curve.mean_rel_err[j] = mean;
    curve.ci_halfwidth[j] = 1.96 * std::sqrt(var / n);
    curve.phase[j] = trajectories.front().points[j].phase;
  }
  return curve;
}

int convergence_iteration(const std::vector<double>& mean_curve, double epsilon) {
  if (mean_curve.size() < 2)
    throw std::invalid_argument("convergence_iteration: curve length must be >= 2");
  for (std::size_t j = 0; j + 1 < mean_curve.size(); ++j)
    if (std::abs(mean_curve[j + 1] - mean_curve[j]) <= epsilon)
      return static_cast<int>(j) + 1;
  return static_cast<int>(mean_curve.size());
}

SuiteResult run_suite(
    const std::vector<std::pair<std::string, const models::MetaOptimizer*>>& models,
    const std::vector<data::Instance>& instances, const SuiteConfig& cfg) {
  if (instances.empty()) throw std::invalid_argument("run_suite: no instances");

  SuiteResult result;
  for (const auto& [name, model] : models) {
    if (model == nullptr)
      throw std::invalid_argument("run_suite: null model for series " + name);
    result.series.push_back(name);
  }
  result.series.push_back("random");

  std::set<int> sizes;
  for (const auto& inst : instances) sizes.insert(inst.g.n);
  result.node_sizes.assign(sizes.begin(), sizes.end());

  const int count = static_cast<int>(instances.size());

  // Baseline draws happen serially in dataset order so worker count never
  // changes the draw sequence.
  Rng rng(cfg.seed);
  std::vector<std::array<double, 2>> baseline_theta0(count);
  for (int i = 0; i < count; ++i) baseline_theta0[i] = draw_baseline_theta(rng);

  for (const auto& name : result.series) {
    const models::MetaOptimizer* model = nullptr;
    for (const auto& [mname, m] : models)
      if (mname == name) model = m;

    std::vector<Trajectory> trajs(count);
    parallel_for(count, cfg.workers, [&](int i) {
      if (model != nullptr) {
        trajs[i] = two_phase(*model, instances[i], cfg.iterations, cfg.sgd_lr,
                             cfg.horizon);
        trajs[i].series = name;
      } else {
        trajs[i] = baseline_from(instances[i], cfg.iterations,
                                 baseline_theta0[i], cfg.sgd_lr);
      }
    });

    for (int n : result.node_sizes) {
      std::vector<Trajectory> of_size;
      for (int i = 0; i < count; ++i)
        if (instances[i].g.n == n) of_size.push_back(trajs[i]);

      AggregateCurve curve = aggregate(of_size);
      result.convergence[name][n] = convergence_iteration(curve.mean_rel_err);

      double conv_sum = 0.0;
      for (const auto& t : of_size) {
        std::vector<double> rel;
        rel.reserve(t.points.size());
        for (const auto& p : t.points) rel.push_back(p.relative_error);
        conv_sum += convergence_iteration(rel);
      }
      result.convergence_per_instance[name][n] =
          conv_sum / static_cast<double>(of_size.size());

      std::set<int> stat_iters{std::min(10, cfg.iterations),
                               std::min(20, cfg.iterations), cfg.iterations};
      for (int j : stat_iters) {
        double mean = 0.0;
        for (const auto& t : of_size) mean += 1.0 - t.points[j - 1].relative_error;
        mean /= static_cast<double>(of_size.size());
        double var = 0.0;
        if (of_size.size() > 1) {
          for (const auto& t : of_size) {
            const double d = (1.0 - t.points[j - 1].relative_error) - mean;
            var += d * d;
          }
          var /= static_cast<double>(of_size.size() - 1);
        }
        result.ratios[name][n][j] = RatioStat{mean, std::sqrt(var)};
      }

      result.curves[name][n] = std::move(curve);
      result.trajectories[name][n] = std::move(of_size);
    }
  }
  return result;
}

void write_suite_csvs(const SuiteResult& result,
                      const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);

  {
    std::ostringstream t2;
    t2 << "n,model,convergence_iteration\n";
    for (int n : result.node_sizes)
      for (const auto& name : result.series)
        t2 << n << ',' << name << ',' << result.convergence.at(name).at(n) << '\n';
    io::atomic_write(out_dir / "table2.csv", t2.str());
  }
  {
    std::ostringstream t2w;
    t2w << "n";
    for (const auto& name : result.series) t2w << ',' << name;
    t2w << '\n';
    for (int n : result.node_sizes) {
      t2w << n;
      for (const auto& name : result.series)
        t2w << ',' << result.convergence.at(name).at(n);
      t2w << '\n';
    }
    io::atomic_write(out_dir / "table2_wide.csv", t2w.str());
  }
  {
    std::ostringstream t2i;
    t2i << "n,model,mean_convergence_iteration\n";
    for (int n : result.node_sizes)
      for (const auto& name : result.series)
        t2i << n << ',' << name << ','
            << io::fmt6(result.convergence_per_instance.at(name).at(n)) << '\n';
    io::atomic_write(out_dir / "table2_per_instance.csv", t2i.str());
  }
  {
    std::ostringstream t3;
    t3 << "n,model,phase,mean_ratio,std_ratio\n";
    for (int n : result.node_sizes)
      for (const auto& name : result.series)
        for (const auto& [iter, stat] : result.ratios.at(name).at(n))
          t3 << n << ',' << name << ",iter" << iter << ','
             << io::fmt6(stat.mean) << ',' << io::fmt6(stat.stddev) << '\n';
    io::atomic_write(out_dir / "table3.csv", t3.str());
  }
  for (const auto& name : result.series) {
    for (int n : result.node_sizes) {
      const auto& curve = result.curves.at(name).at(n);
      std::ostringstream cs;
      cs << "iteration,mean_rel_err,ci_halfwidth,phase\n";
      for (std::size_t j = 0; j < curve.mean_rel_err.size(); ++j)
        cs << j + 1 << ',' << io::fmt6(curve.mean_rel_err[j]) << ','
           << io::fmt6(curve.ci_halfwidth[j]) << ','
           << to_string(curve.phase[j]) << '\n';
      std::ostringstream fname;
      fname << "curves_" << name << "_" << n << ".csv";
      io::atomic_write(out_dir / fname.str(), cs.str());
    }
  }
}

}  // namespace qmeta::eval
