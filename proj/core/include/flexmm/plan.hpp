#pragma once

#include <cstddef>
#include <vector>

#include "flexmm/ep.hpp"

namespace flexmm {

/// Per-layer recovery thresholds, N >= R_1 > R_2 > ... > R_a = R.
struct RecoveryProfile {
  std::vector<std::size_t> thresholds;

  std::size_t layer_count() const { return thresholds.size(); }
  std::size_t r(std::size_t j) const { return thresholds[j - 1]; }  // 1-based
  std::size_t top() const { return thresholds.front(); }
  std::size_t final() const { return thresholds.back(); }

  void validate() const;
  bool operator==(const RecoveryProfile&) const = default;
};

/// Which lower-layer parity a task re-encodes: the t-th extra parity of
/// task delta_J in layer J.
struct TaskSource {
  std::size_t parity_index = 0;  // t, 1-based within [R_J - R_a]
  std::size_t source_layer = 0;  // J, 1-based
  std::size_t source_index = 0;  // delta_J, 1-based

  bool operator==(const TaskSource&) const = default;
};

struct LayerSpec {
  std::size_t threshold = 0;
  PartitionParams partition;
  std::size_t task_count = 0;  // gamma_j
};

struct MatrixDims {
  std::size_t rows_a = 0;  // lambda
  std::size_t inner = 0;   // kappa
  std::size_t cols_b = 0;  // mu
};

struct Shape {
  std::size_t rows = 0;
  std::size_t cols = 0;
  bool operator==(const Shape&) const = default;
};

/// [gamma_1, ..., gamma_a]: gamma_1 = 1,
/// gamma_j = (R_{j-1} - R_j) * sum_{J<j} gamma_J.
std::vector<std::size_t> gamma_counts(const RecoveryProfile& profile);

/// Per-layer routing tables. Entry list for layer j enumerates
/// (t, J, delta_J) with t ascending, then J, then delta_J; layer 1 is empty.
std::vector<std::vector<TaskSource>> enumerate_routing(const RecoveryProfile& profile);

/// Fully resolved scheme: thresholds, partitions, evaluation points, routing
/// and the shape of every coded matrix. Immutable once built.
class SchemePlan {
 public:
  SchemePlan(std::size_t n_servers, RecoveryProfile profile, std::vector<LayerSpec> layers,
             PrimeField field, std::vector<Residue> points,
             std::vector<std::vector<TaskSource>> routing, MatrixDims dims, MatrixDims padded,
             std::vector<std::vector<Shape>> shape_a, std::vector<std::vector<Shape>> shape_b);

  std::size_t n_servers() const { return n_; }
  const RecoveryProfile& profile() const { return profile_; }
  const std::vector<LayerSpec>& layers() const { return layers_; }
  const LayerSpec& layer(std::size_t j) const { return layers_[j - 1]; }  // 1-based
  const PrimeField& field() const { return field_; }
  const std::vector<Residue>& points() const { return points_; }
  Residue point(std::size_t i) const { return points_[i - 1]; }  // alpha_i, 1-based
  const std::vector<std::vector<TaskSource>>& routing() const { return routing_; }
  const TaskSource& source(std::size_t j, std::size_t delta) const {
    return routing_[j - 1][delta - 1];
  }
  const MatrixDims& dims() const { return dims_; }
  const MatrixDims& padded_dims() const { return padded_; }

  /// Shape of the pre-encoding source matrix A^{(j,delta)} / B^{(j,delta)}.
  Shape source_shape_a(std::size_t j, std::size_t delta) const {
    return shape_a_[j - 1][delta - 1];
  }
  Shape source_shape_b(std::size_t j, std::size_t delta) const {
    return shape_b_[j - 1][delta - 1];
  }
  /// Shape of one task result f_j * g_j for task (j, delta).
  Shape task_result_shape(std::size_t j, std::size_t delta) const;
  /// Shape of the reassembled product A^{(j,delta)} * B^{(j,delta)}.
  Shape task_product_shape(std::size_t j, std::size_t delta) const;

  std::size_t total_tasks() const { return total_tasks_; }
  /// First global task index (1-based) of layer j.
  std::size_t layer_offset(std::size_t j) const;
  /// Global task index (1-based) -> (layer, delta).
  std::pair<std::size_t, std::size_t> task_location(std::size_t k) const;

 private:
  std::size_t n_;
  RecoveryProfile profile_;
  std::vector<LayerSpec> layers_;
  PrimeField field_;
  std::vector<Residue> points_;
  std::vector<std::vector<TaskSource>> routing_;
  MatrixDims dims_;
  MatrixDims padded_;
  std::vector<std::vector<Shape>> shape_a_;
  std::vector<std::vector<Shape>> shape_b_;
  std::size_t total_tasks_;
};

/// Validate everything and resolve the scheme. The field must supply
/// N + R_1 - R_a distinct points.
SchemePlan build_plan(std::size_t n_servers, const RecoveryProfile& profile,
                      const std::vector<PartitionParams>& partitions, const MatrixDims& dims,
                      const PrimeField& field);

/// Number of tasks each of R_hat available servers must complete.
std::size_t tasks_required(const SchemePlan& plan, std::size_t available);

}  // namespace flexmm
