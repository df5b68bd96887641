#pragma once

#include <cstddef>
#include <vector>

#include "flexmm/plan.hpp"

namespace flexmm {

/// Analytic dimensions. Real-valued on purpose: the optimization treats
/// partition parameters and dimensions as reals, integrality lives in the
/// integer search.
struct ProblemDims {
  double rows_a = 0;  // lambda
  double inner = 0;   // kappa
  double cols_b = 0;  // mu

  double direct_load() const { return rows_a * inner * cols_b; }
};

enum class CommModel { one_round, multi_round };

/// One layer of a (possibly relaxed) flexible construction.
struct RealLayer {
  double threshold = 0;  // R_j
  double p = 1;
  double m = 1;
  double n = 1;
};

std::vector<RealLayer> real_layers(const SchemePlan& plan);

/// Probabilities q_0..q_{N-R} of straggler counts.
struct StragglerDist {
  std::vector<double> probs;

  void validate() const;
  std::size_t max_stragglers() const { return probs.size() - 1; }
};

/// Truncated binomial: q_j proportional to C(N,j)(1-eps)^{N-j} eps^j for
/// j <= N-R, renormalized.
StragglerDist truncated_binomial(std::size_t n_servers, std::size_t r, double eps);
/// The untruncated mass kept by the truncation (theta).
double binomial_truncation_mass(std::size_t n_servers, std::size_t r, double eps);

/// Per-layer loads L_j: L_1 = lambda*kappa*mu/(p1 m1 n1),
/// L_j = (R_{j-1}-R_j)/(p_j m_j n_j) * sum_{J<j} L_J.
std::vector<double> layer_loads(const ProblemDims& dims, const std::vector<RealLayer>& layers);

/// L_flex(R_hat): total per-server load to finish with R_hat servers.
double total_load(const ProblemDims& dims, const std::vector<RealLayer>& layers, double available);

/// Corollary form for p_j = 1 (j >= 2): R_1(R_j + R_{j-1} - R_hat) /
/// (R_{j-1} R_j) * L_1 in the band R_j <= R_hat < R_{j-1}.
double total_load_special(const ProblemDims& dims, const std::vector<double>& thresholds,
                          const PartitionParams& layer1, double available);

/// Per-layer storage pairs (C_{j,A}, C_{j,B}).
std::vector<std::pair<double, double>> storage_layers(const ProblemDims& dims,
                                                      const std::vector<RealLayer>& layers);
/// One-round: sum of all layers. Multi-round: the first pair only.
double storage(const ProblemDims& dims, const std::vector<RealLayer>& layers, CommModel model);

/// Sum_j q_j * L_flex(N - j).
double expected_load(const ProblemDims& dims, const std::vector<RealLayer>& layers,
                     std::size_t n_servers, const StragglerDist& dist);

}  // namespace flexmm
