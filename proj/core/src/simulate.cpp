#include "flexmm/simulate.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace flexmm {

std::vector<std::uint64_t> task_unit_counts(const SchemePlan& plan, std::size_t unit_granule) {
  std::vector<std::uint64_t> units;
  units.reserve(plan.total_tasks());
  for (std::size_t k = 1; k <= plan.total_tasks(); ++k) {
    auto [layer, delta] = plan.task_location(k);
    Shape a = plan.source_shape_a(layer, delta);
    Shape b = plan.source_shape_b(layer, delta);
    const auto& part = plan.layer(layer).partition;
    const std::size_t rows = a.rows / part.m;
    const std::size_t inner = a.cols / part.p;
    const std::size_t cols = b.cols / part.n;
    if (rows % unit_granule || inner % unit_granule || cols % unit_granule)
      throw ShapeError("task " + std::to_string(k) + " dimensions do not divide into " +
                       std::to_string(unit_granule) + "-blocks");
    units.push_back(static_cast<std::uint64_t>(rows / unit_granule) * (inner / unit_granule) *
                    (cols / unit_granule));
  }
  return units;
}

LatencyReport simulate_generic(std::size_t n_servers, std::size_t r_min,
                               const std::vector<std::uint64_t>& task_units,
                               const std::vector<std::size_t>& required_per_rhat,
                               const LatencyModel& model) {
  if (model.unit_mean <= 0) throw ShapeError("unit mean must be positive");
  LatencyReport report;
  report.samples.reserve(model.trials);

  const std::size_t n_tasks = task_units.size();
  std::vector<std::vector<double>> finish(n_servers, std::vector<double>(n_tasks));
  std::vector<double> scenario(n_servers);

  for (std::size_t trial = 0; trial < model.trials; ++trial) {
    // Independent per-trial substream so trial order (and threading, if any
    // caller shards trials) cannot change results.
    std::seed_seq seq{model.seed, static_cast<std::uint64_t>(trial)};
    std::mt19937_64 rng(seq);
    for (std::size_t i = 0; i < n_servers; ++i) {
      double t = 0;
      for (std::size_t k = 0; k < n_tasks; ++k) {
        std::gamma_distribution<double> erlang(static_cast<double>(task_units[k]),
                                               model.unit_mean);
        t += erlang(rng);
        finish[i][k] = t;
      }
    }

    double best = 0;
    std::size_t best_rhat = 0;
    for (std::size_t r_hat = r_min; r_hat <= n_servers; ++r_hat) {
      const std::size_t tau = required_per_rhat[r_hat - r_min];
      for (std::size_t i = 0; i < n_servers; ++i) scenario[i] = finish[i][tau - 1];
      std::nth_element(scenario.begin(), scenario.begin() + (r_hat - 1), scenario.end());
      const double t = scenario[r_hat - 1];
      if (best_rhat == 0 || t < best) {
        best = t;
        best_rhat = r_hat;
      }
    }
    report.samples.push_back(best);
    report.winners.push_back(best_rhat);
    ++report.wins[best_rhat];
  }

  double sum = 0;
  for (double s : report.samples) sum += s;
  report.mean = report.samples.empty() ? 0 : sum / static_cast<double>(report.samples.size());
  return report;
}

LatencyReport simulate(const SchemePlan& plan, const LatencyModel& model) {
  const auto units = task_unit_counts(plan, model.unit_granule);
  const std::size_t r = plan.profile().final();
  std::vector<std::size_t> required;
  for (std::size_t r_hat = r; r_hat <= plan.n_servers(); ++r_hat)
    required.push_back(tasks_required(plan, r_hat));
  return simulate_generic(plan.n_servers(), r, units, required, model);
}

LatencyReport simulate_ep(std::size_t n_servers, std::size_t r, const PartitionParams& params,
                          const MatrixDims& dims, const LatencyModel& model) {
  if (params.recovery_threshold() != r)
    throw ShapeError("EP partition threshold does not match R");
  const std::size_t u = model.unit_granule;
  if (dims.rows_a % (params.m * u) || dims.inner % (params.p * u) || dims.cols_b % (params.n * u))
    throw ShapeError("EP task dimensions do not divide into unit blocks");
  const std::uint64_t units = static_cast<std::uint64_t>(dims.rows_a / params.m / u) *
                              (dims.inner / params.p / u) * (dims.cols_b / params.n / u);
  // The fixed code has a single scenario: R servers finish their one task.
  std::vector<std::size_t> required(n_servers - r + 1, 1);
  std::vector<std::uint64_t> task_units{units};
  LatencyReport full = simulate_generic(n_servers, r, task_units, required, model);
  // All scenarios share the same task, so the minimum is attained at the
  // R-th order statistic; re-label the wins accordingly.
  LatencyReport report;
  report.samples = std::move(full.samples);
  report.winners.assign(report.samples.size(), r);
  report.mean = full.mean;
  report.wins[r] = report.samples.size();
  return report;
}

std::vector<std::pair<double, double>> emit_cdf(const LatencyReport& report,
                                                std::size_t resolution) {
  if (report.samples.empty()) throw ShapeError("cannot build a CDF from an empty report");
  if (resolution == 0) throw ShapeError("CDF resolution must be positive");
  std::vector<double> sorted = report.samples;
  std::sort(sorted.begin(), sorted.end());
  const double lo = sorted.front();
  const double hi = sorted.back();
  std::vector<std::pair<double, double>> cdf;
  cdf.reserve(resolution);
  for (std::size_t i = 0; i < resolution; ++i) {
    const double x =
        resolution == 1 ? hi : lo + (hi - lo) * static_cast<double>(i) / (resolution - 1);
    const auto count = std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
    cdf.emplace_back(x, static_cast<double>(count) / static_cast<double>(sorted.size()));
  }
  return cdf;
}

}  // namespace flexmm
