#include "flexmm/cost.hpp"

#include <cmath>
#include <string>

namespace flexmm {

std::vector<RealLayer> real_layers(const SchemePlan& plan) {
  std::vector<RealLayer> out;
  for (const auto& l : plan.layers()) {
    out.push_back(RealLayer{static_cast<double>(l.threshold), static_cast<double>(l.partition.p),
                            static_cast<double>(l.partition.m),
                            static_cast<double>(l.partition.n)});
  }
  return out;
}

void StragglerDist::validate() const {
  if (probs.empty()) throw ShapeError("straggler distribution is empty");
  double sum = 0;
  for (double q : probs) {
    if (q < 0) throw ShapeError("straggler probabilities must be nonnegative");
    sum += q;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw ShapeError("straggler probabilities sum to " + std::to_string(sum));
}

StragglerDist truncated_binomial(std::size_t n_servers, std::size_t r, double eps) {
  if (eps < 0 || eps >= 1) throw ShapeError("straggler probability must be in [0, 1)");
  StragglerDist dist;
  double theta = 0;
  std::vector<double> raw;
  for (std::size_t j = 0; j <= n_servers - r; ++j) {
    double term = std::exp(std::lgamma(n_servers + 1) - std::lgamma(j + 1) -
                           std::lgamma(n_servers - j + 1)) *
                  std::pow(1 - eps, static_cast<double>(n_servers - j)) *
                  std::pow(eps, static_cast<double>(j));
    raw.push_back(term);
    theta += term;
  }
  for (double& q : raw) q /= theta;
  dist.probs = std::move(raw);
  return dist;
}

double binomial_truncation_mass(std::size_t n_servers, std::size_t r, double eps) {
  double theta = 0;
  for (std::size_t j = 0; j <= n_servers - r; ++j) {
    theta += std::exp(std::lgamma(n_servers + 1) - std::lgamma(j + 1) -
                      std::lgamma(n_servers - j + 1)) *
             std::pow(1 - eps, static_cast<double>(n_servers - j)) *
             std::pow(eps, static_cast<double>(j));
  }
  return theta;
}

std::vector<double> layer_loads(const ProblemDims& dims, const std::vector<RealLayer>& layers) {
  std::vector<double> loads;
  double below = 0;
  for (std::size_t j = 0; j < layers.size(); ++j) {
    const auto& l = layers[j];
    double lj = (j == 0) ? dims.direct_load() / (l.p * l.m * l.n)
                         : (layers[j - 1].threshold - l.threshold) / (l.p * l.m * l.n) * below;
    loads.push_back(lj);
    below += lj;
  }
  return loads;
}

double total_load(const ProblemDims& dims, const std::vector<RealLayer>& layers,
                  double available) {
  if (available < layers.back().threshold)
    throw DecodeError("fewer available servers than the recovery threshold");
  const auto loads = layer_loads(dims, layers);
  if (available >= layers.front().threshold) return loads.front();
  std::size_t j = 1;
  while (available < layers[j].threshold) ++j;
  double below = 0;
  for (std::size_t i = 0; i < j; ++i) below += loads[i];
  const auto& l = layers[j];
  return (1.0 + (layers[j - 1].threshold - available) / (l.p * l.m * l.n)) * below;
}

double total_load_special(const ProblemDims& dims, const std::vector<double>& thresholds,
                          const PartitionParams& layer1, double available) {
  const double l1 = dims.direct_load() /
                    static_cast<double>(layer1.p * layer1.m * layer1.n);
  if (available >= thresholds.front()) return l1;
  if (available < thresholds.back())
    throw DecodeError("fewer available servers than the recovery threshold");
  std::size_t j = 1;
  while (available < thresholds[j]) ++j;
  const double r1 = thresholds.front();
  return r1 * (thresholds[j] + thresholds[j - 1] - available) /
         (thresholds[j - 1] * thresholds[j]) * l1;
}

std::vector<std::pair<double, double>> storage_layers(const ProblemDims& dims,
                                                      const std::vector<RealLayer>& layers) {
  std::vector<std::pair<double, double>> out;
  double sum_a = 0, sum_b = 0;
  for (std::size_t j = 0; j < layers.size(); ++j) {
    const auto& l = layers[j];
    double ca, cb;
    if (j == 0) {
      ca = dims.rows_a * dims.inner / (l.p * l.m);
      cb = dims.inner * dims.cols_b / (l.p * l.n);
    } else {
      double gap = layers[j - 1].threshold - l.threshold;
      ca = gap / (l.p * l.m) * sum_a;
      cb = gap / (l.p * l.n) * sum_b;
    }
    out.emplace_back(ca, cb);
    sum_a += ca;
    sum_b += cb;
  }
  return out;
}

double storage(const ProblemDims& dims, const std::vector<RealLayer>& layers, CommModel model) {
  const auto per_layer = storage_layers(dims, layers);
  if (model == CommModel::multi_round) return per_layer.front().first + per_layer.front().second;
  double total = 0;
  for (const auto& [ca, cb] : per_layer) total += ca + cb;
  return total;
}

double expected_load(const ProblemDims& dims, const std::vector<RealLayer>& layers,
                     std::size_t n_servers, const StragglerDist& dist) {
  dist.validate();
  double e = 0;
  for (std::size_t j = 0; j < dist.probs.size(); ++j)
    e += dist.probs[j] * total_load(dims, layers, static_cast<double>(n_servers - j));
  return e;
}

}  // namespace flexmm
