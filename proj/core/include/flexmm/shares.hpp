#pragma once

#include <utility>
#include <vector>

#include "flexmm/plan.hpp"

namespace flexmm {

/// One server's coded matrices, ordered layer-major then delta ascending,
/// i.e. exactly the order the server computes them.
struct ServerShare {
  std::size_t server_id = 0;  // 1-based
  std::vector<std::pair<FieldMatrix, FieldMatrix>> coded_pairs;
};

struct TaskResult {
  std::size_t server_id = 0;
  std::size_t task_index = 0;  // 1-based, global across layers
  FieldMatrix value;
  std::uint64_t mults = 0;  // scalar multiplications spent on this task
};

/// Extra parities kept for introspection: pair (j, delta, t) maps to
/// (f_j(alpha_{N+t}; A^{(j,delta)}), g_j(alpha_{N+t}; B^{(j,delta)})).
class ParityStore {
 public:
  explicit ParityStore(std::vector<std::vector<std::vector<std::pair<FieldMatrix, FieldMatrix>>>> data)
      : data_(std::move(data)) {}

  const std::pair<FieldMatrix, FieldMatrix>& at(std::size_t layer, std::size_t delta,
                                                std::size_t t) const {
    return data_[layer - 1][delta - 1][t - 1];
  }
  std::size_t parity_count(std::size_t layer) const {
    return data_[layer - 1].empty() ? 0 : data_[layer - 1][0].size();
  }

 private:
  std::vector<std::vector<std::vector<std::pair<FieldMatrix, FieldMatrix>>>> data_;
};

struct EncodingOutput {
  std::vector<ServerShare> shares;
  ParityStore parities;
};

/// Encode A (lambda x kappa) and B (kappa x mu) into per-server shares plus
/// the extra-parity store. Inputs are zero-padded to the plan's padded dims.
EncodingOutput generate_shares(const SchemePlan& plan, const FieldMatrix& A, const FieldMatrix& B);

/// The first up_to products of a share, in order, with exact multiplication
/// counts.
std::vector<TaskResult> compute_tasks(const ServerShare& share, std::size_t up_to);

}  // namespace flexmm
