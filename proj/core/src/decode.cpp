#include "flexmm/decode.hpp"

#include <string>

namespace flexmm {

namespace {

std::size_t active_layer(const SchemePlan& plan, std::size_t available) {
  if (available >= plan.profile().top()) return 1;
  std::size_t j = 2;
  while (available < plan.profile().r(j)) ++j;
  return j;
}

}  // namespace

FieldMatrix decode(const SchemePlan& plan, const std::vector<TaskResult>& results,
                   const std::set<std::size_t>& available) {
  const std::size_t r_hat = available.size();
  if (r_hat < plan.profile().final())
    throw DecodeError("need at least " + std::to_string(plan.profile().final()) +
                      " servers, have " + std::to_string(r_hat));
  for (std::size_t id : available) {
    if (id < 1 || id > plan.n_servers())
      throw ShapeError("server id " + std::to_string(id) + " out of range");
  }

  const std::size_t needed = tasks_required(plan, r_hat);

  std::map<std::pair<std::size_t, std::size_t>, const FieldMatrix*> by_key;
  for (const auto& r : results) by_key[{r.server_id, r.task_index}] = &r.value;

  auto server_samples = [&](std::size_t k, Shape shape) {
    std::vector<Sample> samples;
    samples.reserve(r_hat);
    for (std::size_t id : available) {
      auto it = by_key.find({id, k});
      if (it == by_key.end())
        throw DecodeError("server " + std::to_string(id) + " is missing task " +
                          std::to_string(k));
      if (it->second->rows() != shape.rows || it->second->cols() != shape.cols)
        throw ShapeError("task " + std::to_string(k) + " from server " + std::to_string(id) +
                         " has the wrong shape");
      samples.emplace_back(plan.point(id), *it->second);
    }
    return samples;
  };

  const std::size_t top = active_layer(plan, r_hat);
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Sample>> extras;

  for (std::size_t layer = top; layer >= 2; --layer) {
    const auto& part = plan.layer(layer).partition;
    const std::size_t offset = plan.layer_offset(layer);
    for (std::size_t delta = 1; delta <= plan.layer(layer).task_count; ++delta) {
      const std::size_t k = offset + delta - 1;
      if (k > needed) break;  // uncomputed tail of the top active layer
      auto samples = server_samples(k, plan.task_result_shape(layer, delta));
      auto it = extras.find({layer, delta});
      if (it != extras.end())
        samples.insert(samples.end(), it->second.begin(), it->second.end());
      Shape out = plan.task_product_shape(layer, delta);
      FieldMatrix product = ep_decode(samples, part, out.rows, out.cols);
      // This product equals Gamma_{J,delta_J}(alpha_{N+t}) of the source.
      const TaskSource& src = plan.source(layer, delta);
      extras[{src.source_layer, src.source_index}].emplace_back(
          plan.point(plan.n_servers() + src.parity_index), std::move(product));
    }
  }

  auto samples = server_samples(1, plan.task_result_shape(1, 1));
  auto it = extras.find({std::size_t{1}, std::size_t{1}});
  if (it != extras.end()) samples.insert(samples.end(), it->second.begin(), it->second.end());
  return ep_decode(samples, plan.layer(1).partition, plan.dims().rows_a, plan.dims().cols_b);
}

std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> extra_evaluation_ledger(
    const SchemePlan& plan, std::size_t available_count) {
  if (available_count < plan.profile().final())
    throw DecodeError("need at least " + std::to_string(plan.profile().final()) + " servers");
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> ledger;
  if (available_count >= plan.profile().top()) return ledger;

  const std::size_t needed = tasks_required(plan, available_count);
  const std::size_t top = active_layer(plan, available_count);
  for (std::size_t layer = top; layer >= 2; --layer) {
    const std::size_t offset = plan.layer_offset(layer);
    for (std::size_t delta = 1; delta <= plan.layer(layer).task_count; ++delta) {
      if (offset + delta - 1 > needed) break;
      const TaskSource& src = plan.source(layer, delta);
      ledger[{src.source_layer, src.source_index}].push_back(plan.n_servers() + src.parity_index);
    }
  }
  return ledger;
}

}  // namespace flexmm
