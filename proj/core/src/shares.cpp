#include "flexmm/shares.hpp"

#include <string>

namespace flexmm {

EncodingOutput generate_shares(const SchemePlan& plan, const FieldMatrix& A, const FieldMatrix& B) {
  const auto& dims = plan.dims();
  if (A.rows() != dims.rows_a || A.cols() != dims.inner)
    throw ShapeError("A is " + std::to_string(A.rows()) + "x" + std::to_string(A.cols()) +
                     ", plan expects " + std::to_string(dims.rows_a) + "x" +
                     std::to_string(dims.inner));
  if (B.rows() != dims.inner || B.cols() != dims.cols_b)
    throw ShapeError("B is " + std::to_string(B.rows()) + "x" + std::to_string(B.cols()) +
                     ", plan expects " + std::to_string(dims.inner) + "x" +
                     std::to_string(dims.cols_b));
  if (A.field() != plan.field() || B.field() != plan.field())
    throw FieldError("input matrices are not over the plan's field");

  const auto& padded = plan.padded_dims();
  const std::size_t n = plan.n_servers();
  const std::size_t a_layers = plan.layers().size();
  const std::size_t ra = plan.profile().final();

  // Source matrices A^{(j,delta)} partitioned into the layer-j grid, plus
  // the extra parities each layer emits for the layers above it.
  std::vector<std::vector<std::pair<BlockGrid, BlockGrid>>> grids(a_layers);
  std::vector<std::vector<std::vector<std::pair<FieldMatrix, FieldMatrix>>>> parities(a_layers);

  for (std::size_t j = 1; j <= a_layers; ++j) {
    const auto& part = plan.layer(j).partition;
    const std::size_t n_parities = plan.profile().r(j) - ra;
    for (std::size_t delta = 1; delta <= plan.layer(j).task_count; ++delta) {
      std::pair<FieldMatrix, FieldMatrix> source = [&] {
        if (j == 1) {
          Shape sa{padded.rows_a, padded.inner};
          Shape sb{padded.inner, padded.cols_b};
          FieldMatrix ap = FieldMatrix::zero(sa.rows, sa.cols, plan.field());
          FieldMatrix bp = FieldMatrix::zero(sb.rows, sb.cols, plan.field());
          for (std::size_t r = 0; r < A.rows(); ++r)
            for (std::size_t c = 0; c < A.cols(); ++c) ap.set(r, c, A.at(r, c));
          for (std::size_t r = 0; r < B.rows(); ++r)
            for (std::size_t c = 0; c < B.cols(); ++c) bp.set(r, c, B.at(r, c));
          return std::make_pair(std::move(ap), std::move(bp));
        }
        const TaskSource& src = plan.source(j, delta);
        return parities[src.source_layer - 1][src.source_index - 1][src.parity_index - 1];
      }();

      BlockGrid ga = partition(source.first, part.m, part.p);
      BlockGrid gb = partition(source.second, part.p, part.n);

      std::vector<std::pair<FieldMatrix, FieldMatrix>> task_parities;
      task_parities.reserve(n_parities);
      for (std::size_t t = 1; t <= n_parities; ++t) {
        Residue pt = plan.point(n + t);
        task_parities.emplace_back(encode_a(ga, part, pt), encode_b(gb, part, pt));
      }
      parities[j - 1].push_back(std::move(task_parities));
      grids[j - 1].emplace_back(std::move(ga), std::move(gb));
    }
  }

  std::vector<ServerShare> shares;
  shares.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    ServerShare share{i, {}};
    share.coded_pairs.reserve(plan.total_tasks());
    const Residue alpha = plan.point(i);
    for (std::size_t j = 1; j <= a_layers; ++j) {
      const auto& part = plan.layer(j).partition;
      for (const auto& [ga, gb] : grids[j - 1])
        share.coded_pairs.emplace_back(encode_a(ga, part, alpha), encode_b(gb, part, alpha));
    }
    shares.push_back(std::move(share));
  }

  return EncodingOutput{std::move(shares), ParityStore(std::move(parities))};
}

std::vector<TaskResult> compute_tasks(const ServerShare& share, std::size_t up_to) {
  if (up_to > share.coded_pairs.size())
    throw ShapeError("share of server " + std::to_string(share.server_id) + " holds " +
                     std::to_string(share.coded_pairs.size()) + " tasks, asked for " +
                     std::to_string(up_to));
  std::vector<TaskResult> results;
  results.reserve(up_to);
  for (std::size_t k = 1; k <= up_to; ++k) {
    const auto& [a, b] = share.coded_pairs[k - 1];
    results.push_back(TaskResult{share.server_id, k, a.multiply(b),
                                 FieldMatrix::mult_count(a.rows(), a.cols(), b.cols())});
  }
  return results;
}

}  // namespace flexmm
