#pragma once

#include <map>
#include <set>

#include "flexmm/shares.hpp"

namespace flexmm {

/// Recover A*B from the task results of the available servers. Each
/// available server must have supplied its first tasks_required(plan, R_hat)
/// results. Layers are decoded top-down; each decoded task turns into an
/// extra evaluation of the lower-layer polynomial it re-encodes.
FieldMatrix decode(const SchemePlan& plan, const std::vector<TaskResult>& results,
                   const std::set<std::size_t>& available);

/// (layer, task) -> evaluation-point indices (the alpha subscripts N+t)
/// recovered from higher layers when R_hat servers are available.
std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> extra_evaluation_ledger(
    const SchemePlan& plan, std::size_t available_count);

}  // namespace flexmm
