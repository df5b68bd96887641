#pragma once

#include <optional>

#include "flexmm/cost.hpp"

namespace flexmm {

/// Real-relaxation optimum for a fixed EP code with threshold R.
struct EpRealOptimum {
  double p = 0, m = 0, n = 0;
  double load = 0;
};

EpRealOptimum ep_optimum(const ProblemDims& dims, double r, double storage_cap);
/// Smallest storage for which ep_optimum is feasible: 4k*sqrt(lm)/(1+R).
double ep_min_storage(const ProblemDims& dims, double r);

/// Real-relaxation optimum of the 2-layer flexible construction, one-round.
struct Flex2RealOptimum {
  double p1 = 0, m1 = 0, n1 = 0;
  double p2 = 0, m2 = 1, n2 = 1;
  double load = 0;  // approximate objective: layer-1 load only
};

Flex2RealOptimum flex2_optimum(const ProblemDims& dims, double r1, double r2, double storage_cap);
double flex2_min_storage(const ProblemDims& dims, double r1, double r2);

/// Closed-form best R_1 for the one-round 2-layer construction (real
/// valued, clamped to [R_2, N]).
double best_r1_one_round(const ProblemDims& dims, double r2, double storage_cap, double n_servers);

/// Multi-round per-layer optimum: layer 1 is the EP optimum at R_1; layers
/// j >= 2 take p_j = 1, m_j n_j = R_j (integer witness m_j = R_j, n_j = 1).
struct MultiRoundOptimum {
  EpRealOptimum layer1;
  std::vector<double> layer_loads;  // L_j*, j = 1..a
};

MultiRoundOptimum multi_round_optimum(const ProblemDims& dims,
                                      const std::vector<double>& thresholds, double storage_cap);

/// q_0 > sum_{j>=1} q_j / (N - j): when true, R_1* = N with the full
/// ladder profile.
bool ladder_condition(std::size_t n_servers, const StragglerDist& dist);

struct R1Choice {
  std::size_t r1 = 0;
  double expected_load = 0;
  bool condition_held = false;
};

R1Choice best_r1_multi_round(std::size_t n_servers, std::size_t r, const StragglerDist& dist,
                             const ProblemDims& dims, double storage_cap);
/// The objective the sweep minimizes (lambda*kappa*mu * eta * h), exposed
/// for direct evaluation in tests.
double multi_round_expected_load(std::size_t n_servers, std::size_t r, std::size_t r1,
                                 const StragglerDist& dist, const ProblemDims& dims,
                                 double storage_cap);

/// One integer candidate scheme found by the exhaustive search.
struct IntCandidate {
  std::vector<std::size_t> thresholds;        // R_1..R_a
  std::vector<PartitionParams> partitions;    // per layer
  double expected_load = 0;
  double approx_load = 0;  // layer-1 load only
  double storage_used = 0;
};

struct OptimizationReport {
  enum class Kind { infeasible, fixed_ep, flexible };
  Kind kind = Kind::infeasible;
  double min_storage_required = 0;
  std::optional<IntCandidate> ep_choice;    // best single-layer candidate
  std::optional<IntCandidate> flex_choice;  // best multi-layer candidate, if any
  std::optional<IntCandidate> best;         // overall winner
  std::optional<EpRealOptimum> ep_real;
  std::optional<Flex2RealOptimum> flex_real;
};

/// Exhaustive enumeration of integer parameters meeting the threshold and
/// storage constraints, scored by expected load under dist. One-round
/// search considers up to 2 layers; multi-round uses ladder profiles
/// (R_1, R_1 - 1, ..., R).
OptimizationReport integer_search(const ProblemDims& dims, std::size_t n_servers, std::size_t r,
                                  double storage_cap, CommModel model, const StragglerDist& dist,
                                  std::size_t max_layers = 64);

}  // namespace flexmm
