#include "flexmm/ep.hpp"

#include <string>

namespace flexmm {

FieldMatrix BlockGrid::assemble() const {
  const FieldMatrix& b0 = blocks_.front();
  FieldMatrix out(block_rows_ * b0.rows(), block_cols_ * b0.cols(), b0.field());
  for (std::size_t u = 0; u < block_rows_; ++u) {
    for (std::size_t v = 0; v < block_cols_; ++v) {
      const FieldMatrix& b = block(u, v);
      for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
          out.set(u * b0.rows() + i, v * b0.cols() + j, b.at(i, j));
    }
  }
  return out;
}

BlockGrid partition(const FieldMatrix& M, std::size_t block_rows, std::size_t block_cols) {
  if (block_rows == 0 || block_cols == 0) throw ShapeError("block counts must be positive");
  const std::size_t br = (M.rows() + block_rows - 1) / block_rows;
  const std::size_t bc = (M.cols() + block_cols - 1) / block_cols;
  std::vector<FieldMatrix> blocks;
  blocks.reserve(block_rows * block_cols);
  for (std::size_t u = 0; u < block_rows; ++u)
    for (std::size_t v = 0; v < block_cols; ++v) blocks.push_back(M.block(u * br, v * bc, br, bc));
  return BlockGrid(block_rows, block_cols, std::move(blocks));
}

FieldMatrix encode_a(const BlockGrid& a_grid, const PartitionParams& params, Residue point) {
  if (a_grid.block_rows() != params.m || a_grid.block_cols() != params.p)
    throw ShapeError("A grid is " + std::to_string(a_grid.block_rows()) + "x" +
                     std::to_string(a_grid.block_cols()) + ", expected " +
                     std::to_string(params.m) + "x" + std::to_string(params.p));
  const PrimeField& field = a_grid.block(0, 0).field();
  FieldMatrix acc = FieldMatrix::zero(a_grid.block(0, 0).rows(), a_grid.block(0, 0).cols(), field);
  for (std::size_t u = 0; u < params.m; ++u)
    for (std::size_t v = 0; v < params.p; ++v)
      acc = acc.add_scaled(a_grid.block(u, v),
                           field.pow(point, static_cast<Residue>(v + params.p * u)));
  return acc;
}

FieldMatrix encode_b(const BlockGrid& b_grid, const PartitionParams& params, Residue point) {
  if (b_grid.block_rows() != params.p || b_grid.block_cols() != params.n)
    throw ShapeError("B grid is " + std::to_string(b_grid.block_rows()) + "x" +
                     std::to_string(b_grid.block_cols()) + ", expected " +
                     std::to_string(params.p) + "x" + std::to_string(params.n));
  const PrimeField& field = b_grid.block(0, 0).field();
  FieldMatrix acc = FieldMatrix::zero(b_grid.block(0, 0).rows(), b_grid.block(0, 0).cols(), field);
  for (std::size_t u = 0; u < params.p; ++u)
    for (std::size_t v = 0; v < params.n; ++v)
      acc = acc.add_scaled(
          b_grid.block(u, v),
          field.pow(point, static_cast<Residue>(params.p - 1 - u + params.p * params.m * v)));
  return acc;
}

FieldMatrix ep_decode(const std::vector<Sample>& samples, const PartitionParams& params,
                      std::size_t out_rows, std::size_t out_cols) {
  const std::size_t threshold = params.recovery_threshold();
  if (samples.size() < threshold)
    throw DecodeError("need " + std::to_string(threshold) + " evaluations to decode, got " +
                      std::to_string(samples.size()));
  MatrixPoly product = interpolate(samples, threshold);
  std::vector<FieldMatrix> blocks;
  blocks.reserve(params.m * params.n);
  for (std::size_t u = 0; u < params.m; ++u)
    for (std::size_t v = 0; v < params.n; ++v)
      blocks.push_back(product.coeffs[product_exponent(params, u, v)]);
  BlockGrid grid(params.m, params.n, std::move(blocks));
  return grid.assemble().cropped(out_rows, out_cols);
}

}  // namespace flexmm
