#include "flexmm/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace flexmm {

namespace {

// Balanced split: m*n = product and lambda*kappa*n = kappa*mu*m.
std::pair<double, double> balanced_mn(const ProblemDims& dims, double product) {
  double m = std::sqrt(product * dims.rows_a / dims.cols_b);
  double n = std::sqrt(product * dims.cols_b / dims.rows_a);
  return {m, n};
}

}  // namespace

double ep_min_storage(const ProblemDims& dims, double r) {
  return 4.0 * dims.inner * std::sqrt(dims.rows_a * dims.cols_b) / (1.0 + r);
}

EpRealOptimum ep_optimum(const ProblemDims& dims, double r, double storage_cap) {
  const double lk2m = dims.rows_a * dims.inner * dims.inner * dims.cols_b;
  const double disc = storage_cap * storage_cap * (r + 1) * (r + 1) - 16.0 * lk2m;
  if (disc < 0)
    throw InfeasibleError("storage " + std::to_string(storage_cap) + " below EP minimum",
                          ep_min_storage(dims, r));
  EpRealOptimum opt;
  opt.p = 0.5 * (r + 1) - 0.5 * std::sqrt((r + 1) * (r + 1) - 16.0 * lk2m /
                                          (storage_cap * storage_cap));
  opt.load = 2.0 * storage_cap * dims.direct_load() /
             (storage_cap * (r + 1) + std::sqrt(disc));
  std::tie(opt.m, opt.n) = balanced_mn(dims, (r + 1) / opt.p - 1.0);
  return opt;
}

double flex2_min_storage(const ProblemDims& dims, double r1, double r2) {
  return 4.0 * dims.inner * std::sqrt(dims.rows_a * dims.cols_b) * (2 * r1 - r2 + 1) /
         ((1 + r2) * (1 + r1));
}

Flex2RealOptimum flex2_optimum(const ProblemDims& dims, double r1, double r2,
                               double storage_cap) {
  const double lk2m = dims.rows_a * dims.inner * dims.inner * dims.cols_b;
  const double c2 = storage_cap * storage_cap;
  const double spread = 2 * r1 - r2 + 1;
  const double disc = c2 * (r1 + 1) * (r1 + 1) * (r2 + 1) * (r2 + 1) -
                      16.0 * lk2m * spread * spread;
  if (disc < 0)
    throw InfeasibleError("storage " + std::to_string(storage_cap) +
                              " below the 2-layer flexible minimum",
                          flex2_min_storage(dims, r1, r2));
  Flex2RealOptimum opt;
  opt.p2 = (r2 + 1) / 2.0;
  opt.m2 = 1;
  opt.n2 = 1;
  opt.p1 = 0.5 * (r1 + 1) -
           0.5 * std::sqrt((r1 + 1) * (r1 + 1) -
                           16.0 * lk2m * spread * spread / (c2 * (r2 + 1) * (r2 + 1)));
  opt.load = 2.0 * storage_cap * (r2 + 1) * dims.direct_load() /
             (storage_cap * (r1 + 1) * (r2 + 1) + std::sqrt(disc));
  std::tie(opt.m1, opt.n1) = balanced_mn(dims, (r1 + 1) / opt.p1 - 1.0);
  return opt;
}

double best_r1_one_round(const ProblemDims& dims, double r2, double storage_cap,
                         double n_servers) {
  const double lk2m = dims.rows_a * dims.inner * dims.inner * dims.cols_b;
  const double hi = 8.0 * dims.inner * std::sqrt(dims.rows_a * dims.cols_b) / (r2 + 1);
  const double lo = 8.0 * dims.inner / (r2 + 1) * std::sqrt(dims.rows_a * dims.cols_b / 3.0);
  if (storage_cap >= hi) return n_servers;
  if (storage_cap <= lo) return r2;
  const double c2r2 = storage_cap * storage_cap * (r2 + 1) * (r2 + 1);
  const double stationary =
      (c2r2 * (r2 + 3) + 64.0 * lk2m * (r2 - 1)) / (2.0 * (64.0 * lk2m - c2r2));
  return std::clamp(stationary, r2, n_servers);
}

MultiRoundOptimum multi_round_optimum(const ProblemDims& dims,
                                      const std::vector<double>& thresholds,
                                      double storage_cap) {
  MultiRoundOptimum opt;
  opt.layer1 = ep_optimum(dims, thresholds.front(), storage_cap);
  opt.layer_loads.push_back(opt.layer1.load);
  const double r1 = thresholds.front();
  for (std::size_t j = 1; j < thresholds.size(); ++j) {
    opt.layer_loads.push_back(r1 * (thresholds[j - 1] - thresholds[j]) /
                              (thresholds[j - 1] * thresholds[j]) * opt.layer1.load);
  }
  return opt;
}

bool ladder_condition(std::size_t n_servers, const StragglerDist& dist) {
  dist.validate();
  double rhs = 0;
  for (std::size_t j = 1; j < dist.probs.size(); ++j)
    rhs += dist.probs[j] / static_cast<double>(n_servers - j);
  return dist.probs[0] > rhs;
}

double multi_round_expected_load(std::size_t n_servers, std::size_t r, std::size_t r1,
                                 const StragglerDist& dist, const ProblemDims& dims,
                                 double storage_cap) {
  const double lk2m = dims.rows_a * dims.inner * dims.inner * dims.cols_b;
  const double inner = 1.0 - 16.0 * lk2m / (storage_cap * storage_cap * (1.0 + r1) * (1.0 + r1));
  if (inner < 0)
    throw InfeasibleError("storage below EP minimum for R_1 = " + std::to_string(r1),
                          ep_min_storage(dims, static_cast<double>(r1)));
  const double eta = 2.0 / (1.0 + std::sqrt(inner));
  double h = 0;
  for (std::size_t j = 0; j + r <= n_servers; ++j) {
    if (j + r1 < n_servers) {
      h += dist.probs[j] / (1.0 + r1);
    } else {
      h += dist.probs[j] * static_cast<double>(r1) /
           (static_cast<double>(n_servers - j) * (1.0 + r1));
    }
  }
  return dims.direct_load() * eta * h;
}

R1Choice best_r1_multi_round(std::size_t n_servers, std::size_t r, const StragglerDist& dist,
                             const ProblemDims& dims, double storage_cap) {
  R1Choice choice;
  choice.condition_held = ladder_condition(n_servers, dist);
  if (choice.condition_held) {
    choice.r1 = n_servers;
    choice.expected_load =
        multi_round_expected_load(n_servers, r, n_servers, dist, dims, storage_cap);
    return choice;
  }
  bool found = false;
  for (std::size_t r1 = r; r1 <= n_servers; ++r1) {
    double e;
    try {
      e = multi_round_expected_load(n_servers, r, r1, dist, dims, storage_cap);
    } catch (const InfeasibleError&) {
      continue;
    }
    if (!found || e < choice.expected_load) {
      choice.r1 = r1;
      choice.expected_load = e;
      found = true;
    }
  }
  if (!found)
    throw InfeasibleError("no feasible R_1 for the given storage",
                          ep_min_storage(dims, static_cast<double>(n_servers)));
  return choice;
}

namespace {

// All (p, m, n) with p*m*n + p - 1 = r, ordered lexicographically.
std::vector<PartitionParams> partitions_for_threshold(std::size_t r) {
  std::vector<PartitionParams> out;
  for (std::size_t p = 1; p <= r; ++p) {
    if ((r + 1) % p != 0) continue;
    const std::size_t mn = (r + 1) / p - 1;
    if (mn == 0) continue;
    for (std::size_t m = 1; m <= mn; ++m) {
      if (mn % m != 0) continue;
      out.push_back(PartitionParams{p, m, mn / m});
    }
  }
  return out;
}

std::vector<RealLayer> to_real(const std::vector<std::size_t>& thresholds,
                               const std::vector<PartitionParams>& parts) {
  std::vector<RealLayer> layers;
  for (std::size_t j = 0; j < thresholds.size(); ++j)
    layers.push_back(RealLayer{static_cast<double>(thresholds[j]),
                               static_cast<double>(parts[j].p), static_cast<double>(parts[j].m),
                               static_cast<double>(parts[j].n)});
  return layers;
}

// Tie-break: expected load, then storage, then p_1, then lexicographic.
bool better(const IntCandidate& a, const IntCandidate& b) {
  constexpr double kTol = 1e-12;
  if (a.expected_load < b.expected_load - kTol) return true;
  if (a.expected_load > b.expected_load + kTol) return false;
  if (a.storage_used < b.storage_used - kTol) return true;
  if (a.storage_used > b.storage_used + kTol) return false;
  if (a.partitions[0].p != b.partitions[0].p) return a.partitions[0].p < b.partitions[0].p;
  for (std::size_t j = 0; j < std::min(a.partitions.size(), b.partitions.size()); ++j) {
    if (!(a.partitions[j] == b.partitions[j])) {
      auto ta = std::make_tuple(a.partitions[j].p, a.partitions[j].m, a.partitions[j].n);
      auto tb = std::make_tuple(b.partitions[j].p, b.partitions[j].m, b.partitions[j].n);
      return ta < tb;
    }
  }
  return a.partitions.size() < b.partitions.size();
}

void consider(std::optional<IntCandidate>& slot, IntCandidate cand) {
  if (!slot || better(cand, *slot)) slot = std::move(cand);
}

}  // namespace

OptimizationReport integer_search(const ProblemDims& dims, std::size_t n_servers, std::size_t r,
                                  double storage_cap, CommModel model, const StragglerDist& dist,
                                  std::size_t max_layers) {
  dist.validate();
  if (dist.probs.size() != n_servers - r + 1)
    throw ShapeError("straggler distribution must cover 0.." + std::to_string(n_servers - r) +
                     " stragglers");
  OptimizationReport report;
  report.min_storage_required = ep_min_storage(dims, static_cast<double>(r));

  constexpr double kSlack = 1e-9;

  // Single-layer (fixed EP) candidates.
  for (const auto& part : partitions_for_threshold(r)) {
    std::vector<std::size_t> thresholds{r};
    std::vector<PartitionParams> parts{part};
    auto layers = to_real(thresholds, parts);
    const double used = storage(dims, layers, model);
    if (used > storage_cap + kSlack) continue;
    const double load = dims.direct_load() / (part.p * part.m * part.n);
    consider(report.ep_choice, IntCandidate{thresholds, parts, load, load, used});
  }

  if (model == CommModel::one_round) {
    // 2-layer flexible candidates, R_1 > R.
    for (std::size_t r1 = r + 1; r1 <= n_servers && max_layers >= 2; ++r1) {
      for (const auto& p1 : partitions_for_threshold(r1)) {
        for (const auto& p2 : partitions_for_threshold(r)) {
          std::vector<std::size_t> thresholds{r1, r};
          std::vector<PartitionParams> parts{p1, p2};
          auto layers = to_real(thresholds, parts);
          const double used = storage(dims, layers, CommModel::one_round);
          if (used > storage_cap + kSlack) continue;
          const double expected = expected_load(dims, layers, n_servers, dist);
          const double approx = dims.direct_load() / (p1.p * p1.m * p1.n);
          consider(report.flex_choice, IntCandidate{thresholds, parts, expected, approx, used});
        }
      }
    }
  } else {
    // Ladder profiles (R_1, R_1 - 1, ..., R); only layer 1 binds storage.
    for (std::size_t r1 = r + 1; r1 <= n_servers; ++r1) {
      if (r1 - r + 1 > max_layers) break;
      std::vector<std::size_t> thresholds;
      for (std::size_t t = r1; t + 1 > r; --t) thresholds.push_back(t);
      for (const auto& p1 : partitions_for_threshold(r1)) {
        std::vector<PartitionParams> parts{p1};
        for (std::size_t j = 1; j < thresholds.size(); ++j)
          parts.push_back(PartitionParams{1, thresholds[j], 1});
        auto layers = to_real(thresholds, parts);
        const double used = storage(dims, layers, CommModel::multi_round);
        if (used > storage_cap + kSlack) continue;
        const double expected = expected_load(dims, layers, n_servers, dist);
        const double approx = dims.direct_load() / (p1.p * p1.m * p1.n);
        consider(report.flex_choice, IntCandidate{thresholds, parts, expected, approx, used});
      }
    }
  }

  report.best = report.ep_choice;
  if (report.flex_choice && (!report.best || better(*report.flex_choice, *report.best)))
    report.best = report.flex_choice;

  if (!report.best) {
    report.kind = OptimizationReport::Kind::infeasible;
    return report;
  }
  report.kind = report.best->thresholds.size() > 1 ? OptimizationReport::Kind::flexible
                                                   : OptimizationReport::Kind::fixed_ep;

  try {
    report.ep_real = ep_optimum(dims, static_cast<double>(r), storage_cap);
  } catch (const InfeasibleError&) {
  }
  if (report.best->thresholds.size() > 1 && model == CommModel::one_round) {
    try {
      report.flex_real = flex2_optimum(dims, static_cast<double>(report.best->thresholds[0]),
                                       static_cast<double>(r), storage_cap);
    } catch (const InfeasibleError&) {
    }
  }
  return report;
}

}  // namespace flexmm
