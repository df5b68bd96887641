#pragma once

#include <cstdint>
#include <map>

#include "flexmm/plan.hpp"

namespace flexmm {

/// Exponential per-unit delay model: one U x U by U x U block
/// multiplication takes Exp(mean = unit_mean) seconds, a task of c units
/// takes the sum of c independent draws (Erlang).
struct LatencyModel {
  std::size_t unit_granule = 1;  // U, in matrix entries per block edge
  double unit_mean = 0.1;        // seconds per unit multiplication
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
};

struct LatencyReport {
  std::vector<double> samples;        // completion latency per trial
  std::vector<std::size_t> winners;   // winning R_hat per trial
  double mean = 0;
  std::map<std::size_t, std::size_t> wins;  // winning R_hat -> trial count
};

/// Completion when, for some R_hat in [R, N], the R_hat quickest servers
/// have finished their first tasks_required(R_hat) tasks; the overall
/// latency of a trial is the minimum over R_hat.
LatencyReport simulate(const SchemePlan& plan, const LatencyModel& model);

/// Fixed EP baseline: one task per server, completion is the R-th order
/// statistic of the task finish times.
LatencyReport simulate_ep(std::size_t n_servers, std::size_t r, const PartitionParams& params,
                          const MatrixDims& dims, const LatencyModel& model);

/// Shared engine: task_units[k] is the unit count of task k+1 and
/// required(r_hat) the number of tasks each of r_hat servers must finish.
LatencyReport simulate_generic(std::size_t n_servers, std::size_t r_min,
                               const std::vector<std::uint64_t>& task_units,
                               const std::vector<std::size_t>& required_per_rhat,
                               const LatencyModel& model);

/// Unit counts of each task of a plan under granule U; dims must divide
/// into U-blocks.
std::vector<std::uint64_t> task_unit_counts(const SchemePlan& plan, std::size_t unit_granule);

/// Empirical CDF on a uniform grid of `resolution` rows.
std::vector<std::pair<double, double>> emit_cdf(const LatencyReport& report,
                                                std::size_t resolution);

}  // namespace flexmm
