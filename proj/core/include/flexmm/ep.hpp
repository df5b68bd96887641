#pragma once

#include <vector>

#include "flexmm/poly.hpp"

namespace flexmm {

/// Partition parameters of one entangled-polynomial layer: p splits the
/// contraction dimension, m the rows of A, n the columns of B.
struct PartitionParams {
  std::size_t p = 1;
  std::size_t m = 1;
  std::size_t n = 1;

  std::size_t recovery_threshold() const { return p * m * n + p - 1; }
  bool operator==(const PartitionParams&) const = default;
};

/// Equal-shaped blocks of a (zero-padded) matrix, row-major.
class BlockGrid {
 public:
  BlockGrid(std::size_t block_rows, std::size_t block_cols, std::vector<FieldMatrix> blocks)
      : block_rows_(block_rows), block_cols_(block_cols), blocks_(std::move(blocks)) {}

  std::size_t block_rows() const { return block_rows_; }
  std::size_t block_cols() const { return block_cols_; }
  const FieldMatrix& block(std::size_t u, std::size_t v) const {
    return blocks_[u * block_cols_ + v];
  }

  /// Glue the blocks back together (padded dimensions).
  FieldMatrix assemble() const;

 private:
  std::size_t block_rows_;
  std::size_t block_cols_;
  std::vector<FieldMatrix> blocks_;
};

/// Split M into block_rows x block_cols equal blocks, zero-padding M first
/// so the dimensions divide evenly.
BlockGrid partition(const FieldMatrix& M, std::size_t block_rows, std::size_t block_cols);

/// f_j: sum over blocks A_(u,v) * x^{(v-1) + p(u-1)}, grid shape m x p.
FieldMatrix encode_a(const BlockGrid& a_grid, const PartitionParams& params, Residue point);

/// g_j: sum over blocks B_(u,v) * x^{(p-u) + pm(v-1)}, grid shape p x n.
FieldMatrix encode_b(const BlockGrid& b_grid, const PartitionParams& params, Residue point);

/// Exponent where block (u, v) of the product sits in f*g (0-based u, v).
inline std::size_t product_exponent(const PartitionParams& params, std::size_t u, std::size_t v) {
  return params.p - 1 + params.p * u + params.p * params.m * v;
}

/// Decode all blocks of A*B from >= R evaluations of f*g at distinct points
/// and reassemble, cropping to out_rows x out_cols.
FieldMatrix ep_decode(const std::vector<Sample>& samples, const PartitionParams& params,
                      std::size_t out_rows, std::size_t out_cols);

}  // namespace flexmm
