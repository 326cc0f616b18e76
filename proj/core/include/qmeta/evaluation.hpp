#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qmeta/dataset.hpp"
#include "qmeta/models.hpp"
#include "qmeta/rng.hpp"

namespace qmeta::eval {

enum class Phase { model, sgd };
std::string to_string(Phase p);

struct TrajectoryPoint {
  int iteration = 0;  // contiguous from 1
  double gamma = 0.0;
  double beta = 0.0;
  double expected_cut = 0.0;
  double relative_error = 0.0;
  Phase phase = Phase::sgd;
};

struct Trajectory {
  std::string graph_id;
  std::string series;  // model name, or "random" for the baseline
  std::vector<TrajectoryPoint> points;
};

// Expected cut over the optimum, clamped to [0, 1] against floating-point
// drift; relative_error = 1 - approx_ratio exactly.
double approx_ratio(const data::Instance& inst, std::array<double, 2> theta);
double relative_error(const data::Instance& inst, std::array<double, 2> theta);

// Phase I: `horizon` model steps from theta_0 = (0, 0); the final theta
// seeds Phase II.
Trajectory phase1(const models::MetaOptimizer& model, const data::Instance& inst,
                  int horizon = 10);

// Phase II: plain SGD on -expected cut from the given seed.
// `first_iteration` numbers the emitted records.
Trajectory phase2(const data::Instance& inst, std::array<double, 2> theta_seed,
                  int iterations, double lr = 1e-3, int first_iteration = 11);

// Phase I + Phase II stitched to `total_iterations` records.
Trajectory two_phase(const models::MetaOptimizer& model, const data::Instance& inst,
                     int total_iterations, double lr = 1e-3, int horizon = 10);

// Standard-QAOA baseline: theta_0 drawn once (gamma ~ U[0, 2pi),
// beta ~ U[0, pi)), then the same SGD path as phase2 for every iteration.
std::array<double, 2> draw_baseline_theta(RandomSource& rng);
Trajectory baseline_random(const data::Instance& inst, int iterations,
                           RandomSource& rng, double lr = 1e-3);
Trajectory baseline_from(const data::Instance& inst, int iterations,
                         std::array<double, 2> theta0, double lr = 1e-3);

struct AggregateCurve {
  std::vector<double> mean_rel_err;   // per iteration, mean over instances
  std::vector<double> ci_halfwidth;   // 1.96 * sample std / sqrt(N)
  std::vector<Phase> phase;
  int n_instances = 0;
};

AggregateCurve aggregate(const std::vector<Trajectory>& trajectories);

// Smallest j (1-based) with |curve[j+1] - curve[j]| <= epsilon; the curve
// length if never satisfied. Requires length >= 2.
int convergence_iteration(const std::vector<double>& mean_curve,
                          double epsilon = 1e-4);

struct SuiteConfig {
  int iterations = 300;
  int horizon = 10;
  double sgd_lr = 1e-3;
  std::uint64_t seed = 0;
  int workers = 1;
};

struct RatioStat {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation
};

struct SuiteResult {
  std::vector<std::string> series;  // model names, then "random"
  std::vector<int> node_sizes;      // ascending
  // keyed by series name, then node size
  std::map<std::string, std::map<int, AggregateCurve>> curves;
  std::map<std::string, std::map<int, int>> convergence;  // mean-curve statistic
  std::map<std::string, std::map<int, double>> convergence_per_instance;
  // ratios at fixed global iterations (10, 20, final)
  std::map<std::string, std::map<int, std::map<int, RatioStat>>> ratios;
  std::map<std::string, std::map<int, std::vector<Trajectory>>> trajectories;
};

// Runs every model plus the random-seed baseline over all instances.
// Per-graph evaluations parallelize; aggregation folds in dataset order.
SuiteResult run_suite(
    const std::vector<std::pair<std::string, const models::MetaOptimizer*>>& models,
    const std::vector<data::Instance>& instances, const SuiteConfig& cfg);

// Emits table2.csv, table2_wide.csv, table2_per_instance.csv, table3.csv,
// and curves_<series>_<n>.csv into out_dir. Floats at 6 significant digits.
void write_suite_csvs(const SuiteResult& result,
                      const std::filesystem::path& out_dir);

}  // namespace qmeta::eval
