// End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "flexmm/decode.hpp"
#include "flexmm/optimize.hpp"
#include "flexmm/simulate.hpp"

using namespace flexmm;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool ok, const std::string& detail = "") {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << number << ": " << name;
  if (!detail.empty()) std::cout << " (" << detail << ")";
  std::cout << std::endl;
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

SchemePlan make_plan(std::size_t n, std::vector<std::size_t> thresholds,
                     std::vector<PartitionParams> parts, MatrixDims dims) {
  return build_plan(n, RecoveryProfile{std::move(thresholds)}, parts, dims, PrimeField(101));
}

// ---- criterion 1: exhaustive decode over all server subsets ----

bool exhaustive_decode(const SchemePlan& plan, std::uint64_t seed, std::string& detail) {
  std::mt19937_64 rng(seed);
  FieldMatrix a = FieldMatrix::random(plan.dims().rows_a, plan.dims().inner, plan.field(), rng);
  FieldMatrix b = FieldMatrix::random(plan.dims().inner, plan.dims().cols_b, plan.field(), rng);
  FieldMatrix expect = a.multiply(b);
  EncodingOutput enc = generate_shares(plan, a, b);
  const std::size_t n = plan.n_servers();
  const std::size_t r = plan.profile().final();
  for (std::size_t mask = 1; mask < (1u << n); ++mask) {
    std::set<std::size_t> available;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) available.insert(i + 1);
    if (available.size() < r) continue;
    const std::size_t needed = tasks_required(plan, available.size());
    std::vector<TaskResult> results;
    for (std::size_t id : available) {
      auto part = compute_tasks(enc.shares[id - 1], needed);
      results.insert(results.end(), part.begin(), part.end());
    }
    if (!(decode(plan, results, available) == expect)) {
      detail = "wrong product for a subset of size " + std::to_string(available.size());
      return false;
    }
    // One fewer task per server must not suffice.
    std::vector<TaskResult> short_results;
    for (const auto& t : results)
      if (t.task_index < needed) short_results.push_back(t);
    bool failed = false;
    try {
      decode(plan, short_results, available);
    } catch (const DecodeError&) {
      failed = true;
    }
    if (!failed) {
      detail = "decode succeeded with a missing task, subset size " +
               std::to_string(available.size());
      return false;
    }
  }
  return true;
}

void criterion_1() {
  auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = exhaustive_decode(
      make_plan(5, {5, 3}, {{3, 1, 1}, {2, 1, 1}}, MatrixDims{6, 6, 6}), 101, detail);
  ok = ok && exhaustive_decode(make_plan(5, {5, 3, 2}, {{3, 1, 1}, {2, 1, 1}, {1, 2, 1}},
                                         MatrixDims{6, 6, 6}),
                               102, detail);
  // The stated 6-server plan carries profile top 5: partition (2, 1, 2)
  // has threshold 2*1*2 + 2 - 1 = 5, and a layer threshold must equal its
  // partition's. The build must reject the inconsistent pairing with 6.
  bool rejects = false;
  try {
    make_plan(6, {6, 4}, {{2, 1, 2}, {1, 2, 2}}, MatrixDims{6, 6, 6});
  } catch (const ShapeError&) {
    rejects = true;
  }
  if (!rejects) detail = "inconsistent 6-server profile was accepted";
  ok = ok && rejects;
  ok = ok && exhaustive_decode(
                 make_plan(6, {5, 4}, {{2, 1, 2}, {1, 2, 2}}, MatrixDims{6, 6, 6}), 103, detail);
  const double t = seconds_since(start);
  if (t >= 60) detail = "took " + std::to_string(t) + " s";
  report(1, "exhaustive decode equals direct multiplication", ok && t < 60, detail);
}

// ---- criterion 2: Example 1 load table ----

void criterion_2() {
  SchemePlan plan = make_plan(5, {5, 3}, {{3, 1, 1}, {2, 1, 1}}, MatrixDims{6, 6, 6});
  std::mt19937_64 rng(7);
  FieldMatrix a = FieldMatrix::random(6, 6, plan.field(), rng);
  FieldMatrix b = FieldMatrix::random(6, 6, plan.field(), rng);
  EncodingOutput enc = generate_shares(plan, a, b);
  const std::uint64_t L = 6ull * 6 * 6;
  auto counted = [&](std::size_t r_hat) {
    std::uint64_t total = 0;
    for (const auto& t : compute_tasks(enc.shares[0], tasks_required(plan, r_hat)))
      total += t.mults;
    return total;
  };
  bool ok = counted(5) == L / 3 && counted(4) == L / 2 && counted(3) == 2 * L / 3;
  report(2, "per-server loads are L/3, L/2, 2L/3", ok);
}

// ---- criterion 3: storage formulas ----

void criterion_3() {
  ProblemDims unit{1, 1, 1};
  std::vector<RealLayer> ex1{{5, 3, 1, 1}, {3, 2, 1, 1}};
  // lambda*kappa and kappa*mu are both 1 here, so the target is 4/3.
  bool ok1 = std::abs(storage(unit, ex1, CommModel::one_round) - 4.0 / 3) < 1e-15;
  std::vector<RealLayer> ex2{{8, 1, 2, 4}, {7, 4, 1, 1}};
  bool ok2 = std::abs(storage(unit, ex2, CommModel::one_round) - 15.0 / 16) < 1e-15;
  report(3, "storage equals 2/3 + 2/3 and 15/16 exactly", ok1 && ok2);
}

// ---- criterion 4: latency distribution reproduction ----

void criterion_4() {
  auto start = std::chrono::steady_clock::now();
  SchemePlan plan = make_plan(5, {5, 3}, {{3, 1, 1}, {2, 1, 1}}, MatrixDims{6, 6, 6});
  LatencyModel model{1, 0.1, 100000, 2024};
  LatencyReport flex = simulate(plan, model);
  LatencyReport ep = simulate_ep(5, 3, PartitionParams{2, 1, 1}, MatrixDims{6, 6, 6}, model);
  const double saving = (ep.mean - flex.mean) / ep.mean;
  const double t = seconds_since(start);
  bool ok = std::abs(ep.mean - 10.79) < 0.05 && std::abs(flex.mean - 8.20) < 0.05 &&
            std::abs(saving - 0.24) < 0.01 && t < 30;
  char detail[160];
  std::snprintf(detail, sizeof(detail), "means %.3f / %.3f, saving %.1f%%, %.1f s", ep.mean,
                flex.mean, 100 * saving, t);
  report(4, "latency means 10.79 and 8.20, saving 24%", ok, detail);
}

// ---- criterion 5: storage sweep reproduction ----

void criterion_5() {
  auto start = std::chrono::steady_clock::now();
  ProblemDims d{1, 1, 1};
  const std::size_t n = 16, r = 11;
  auto dist = truncated_binomial(n, r, 0.05);
  bool ok = true;
  std::string detail;

  double first_feasible = -1, first_flexible = -1;
  for (double c = 0.30; c <= 1.0 + 1e-9; c += 0.01) {
    auto rep = integer_search(d, n, r, c, CommModel::one_round, dist);
    if (rep.kind != OptimizationReport::Kind::infeasible && first_feasible < 0)
      first_feasible = c;
    if (rep.kind == OptimizationReport::Kind::flexible && first_flexible < 0) first_flexible = c;
  }
  if (std::abs(first_feasible - 0.34) > 0.0151) {
    ok = false;
    detail = "feasibility starts at " + std::to_string(first_feasible);
  }
  if (std::abs(first_flexible - 0.45) > 0.0151) {
    ok = false;
    detail = "flexible starts winning at " + std::to_string(first_flexible);
  }

  auto at09 = integer_search(d, n, r, 0.9, CommModel::one_round, dist);
  if (!at09.ep_choice || !(at09.ep_choice->partitions[0] == PartitionParams{2, 1, 5}) ||
      std::abs(at09.ep_choice->expected_load - 0.1) > 1e-12) {
    ok = false;
    detail = "wrong fixed-code point at C = 0.9";
  }
  if (!at09.flex_choice || at09.flex_choice->thresholds != std::vector<std::size_t>{15, 11} ||
      !(at09.flex_choice->partitions[0] == PartitionParams{1, 3, 5}) ||
      std::abs(at09.flex_choice->expected_load - 0.069) > 0.001 ||
      std::abs(at09.flex_choice->approx_load - 0.067) > 0.001) {
    ok = false;
    detail = "wrong flexible point at C = 0.9";
  }
  const double t = seconds_since(start);
  if (t >= 60) {
    ok = false;
    detail = "took " + std::to_string(t) + " s";
  }
  report(5, "storage sweep matches the published operating points", ok, detail);
}

// ---- criterion 6: closed forms vs oracles ----

// Smallest p with storage(p) <= cap, found by bisection on the decreasing
// branch (storage falls until p = (r + 1) / 2). Load lkm/(r + 1 - p) grows
// with p, so this boundary is the optimum.
double boundary_p(const std::function<double(double)>& storage_of, double cap, double p_mid) {
  if (storage_of(p_mid) > cap) return -1;  // infeasible
  double lo = 1e-12, hi = p_mid;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (storage_of(mid) > cap ? lo : hi) = mid;
  }
  return hi;
}

void criterion_6() {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> dim_dist(1.0, 8.0);
  bool ok = true;
  std::string detail;
  for (int i = 0; i < 100 && ok; ++i) {
    ProblemDims d{dim_dist(rng), dim_dist(rng), dim_dist(rng)};
    const double r2 = std::uniform_int_distribution<int>(3, 25)(rng);
    const double r1 = r2 + std::uniform_int_distribution<int>(0, 10)(rng);
    const double lkm = d.inner * std::sqrt(d.rows_a * d.cols_b);

    // Single layer at threshold r2.
    auto ep_store = [&](double p) { return 2 * lkm / std::sqrt(p * (r2 + 1 - p)); };
    double cap0 = ep_min_storage(d, r2) * std::uniform_real_distribution<double>(1.01, 3.0)(rng);
    double p0 = boundary_p(ep_store, cap0, (r2 + 1) / 2);
    double oracle0 = d.direct_load() / (r2 + 1 - p0);
    EpRealOptimum ep = ep_optimum(d, r2, cap0);
    if (std::abs(ep.load - oracle0) > 1e-6 * oracle0) {
      ok = false;
      detail = "single-layer mismatch on instance " + std::to_string(i);
    }

    // Two layers (r1, r2) with the optimal p2 = (r2 + 1) / 2 in layer 2.
    auto flex_store = [&](double p) {
      return (1 + (r1 - r2) / ((r2 + 1) / 2)) * 2 * lkm / std::sqrt(p * (r1 + 1 - p));
    };
    double cap1 = flex2_min_storage(d, r1, r2) *
                  std::uniform_real_distribution<double>(1.01, 3.0)(rng);
    double p1 = boundary_p(flex_store, cap1, (r1 + 1) / 2);
    double oracle1 = d.direct_load() / (r1 + 1 - p1);
    Flex2RealOptimum fl = flex2_optimum(d, r1, r2, cap1);
    if (std::abs(fl.load - oracle1) > 1e-6 * oracle1) {
      ok = false;
      detail = "two-layer mismatch on instance " + std::to_string(i);
    }

    // Degenerate two-layer equals single-layer.
    double cap2 = ep_min_storage(d, r2) * 1.5;
    if (std::abs(flex2_optimum(d, r2, r2, cap2).load - ep_optimum(d, r2, cap2).load) >
        1e-12 * d.direct_load()) {
      ok = false;
      detail = "equal thresholds do not reduce to one layer";
    }
  }
  report(6, "closed-form optima match bisection oracles to 1e-6", ok, detail);
}

// ---- criterion 7: full-ladder condition ----

void criterion_7() {
  const std::size_t n = 50, r = 40;
  bool holds_073 = ladder_condition(n, truncated_binomial(n, r, 0.073));
  bool holds_075 = ladder_condition(n, truncated_binomial(n, r, 0.075));
  ProblemDims d{1, 1, 1};
  const double cap = ep_min_storage(d, static_cast<double>(n)) * 1.5;
  R1Choice choice = best_r1_multi_round(n, r, truncated_binomial(n, r, 0.073), d, cap);
  bool ok = holds_073 && !holds_075 && choice.condition_held && choice.r1 == n;
  report(7, "the full-ladder condition flips between 7.3% and 7.5%", ok);
}

// ---- criterion 8: extra layers never hurt ----

void criterion_8() {
  std::mt19937_64 rng(888);
  ProblemDims d{1, 1, 1};
  bool ok = true;
  std::string detail;
  for (int trial = 0; trial < 50 && ok; ++trial) {
    // Random strictly decreasing profile, p = 1 everywhere.
    std::vector<double> thresholds{
        static_cast<double>(std::uniform_int_distribution<int>(10, 24)(rng))};
    while (thresholds.back() > 3 && thresholds.size() < 4) {
      double gap = std::uniform_int_distribution<int>(2, 4)(rng);
      if (thresholds.back() - gap < 2) break;
      thresholds.push_back(thresholds.back() - gap);
    }
    auto layers_of = [](const std::vector<double>& ts) {
      std::vector<RealLayer> layers;
      for (double t : ts) layers.push_back({t, 1, t, 1});
      return layers;
    };
    auto base = layers_of(thresholds);
    // Insert an intermediate threshold into every gap.
    for (std::size_t j = 1; j < thresholds.size() && ok; ++j) {
      if (thresholds[j - 1] - thresholds[j] < 2) continue;
      for (double add = thresholds[j] + 1; add < thresholds[j - 1]; ++add) {
        auto extended = thresholds;
        extended.insert(extended.begin() + static_cast<std::ptrdiff_t>(j), add);
        auto more = layers_of(extended);
        for (double r_hat = thresholds.back(); r_hat <= thresholds.front(); ++r_hat) {
          if (total_load(d, more, r_hat) > total_load(d, base, r_hat) + 1e-12) {
            ok = false;
            detail = "extra layer raised the load at R_hat = " + std::to_string(r_hat);
            break;
          }
        }
        if (!ok) break;
      }
    }
  }
  report(8, "inserting a layer never increases the load", ok, detail);
}

// ---- criterion 9: expected load of the 8-server example ----

void criterion_9() {
  ProblemDims d{1, 1, 1};
  std::vector<RealLayer> layers{{8, 1, 2, 4}, {7, 4, 1, 1}};
  StragglerDist dist;
  dist.probs = {0.9, 0.1};
  const double e = expected_load(d, layers, 8, dist);
  report(9, "expected load is 0.128 at a 10% straggler rate",
         std::abs(e - 0.128) < 1e-3, "got " + std::to_string(e));
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (failures) {
    std::cout << failures << " criteria failed" << std::endl;
    return 1;
  }
  std::cout << "all criteria passed" << std::endl;
  return 0;
}
