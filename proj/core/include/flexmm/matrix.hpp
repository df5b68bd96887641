#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "flexmm/field.hpp"

namespace flexmm {

/// Dense row-major matrix over a prime field. Immutable in spirit: the
/// library never mutates a matrix after it is built, and all operations
/// return fresh values.
class FieldMatrix {
 public:
  FieldMatrix(std::size_t rows, std::size_t cols, PrimeField field)
      : rows_(rows), cols_(cols), field_(field), data_(rows * cols, 0) {}

  static FieldMatrix zero(std::size_t rows, std::size_t cols, PrimeField field) {
    return FieldMatrix(rows, cols, field);
  }

  template <typename Rng>
  static FieldMatrix random(std::size_t rows, std::size_t cols, PrimeField field, Rng& rng) {
    FieldMatrix m(rows, cols, field);
    std::uniform_int_distribution<Residue> dist(0, field.modulus() - 1);
    for (auto& e : m.data_) e = dist(rng);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const PrimeField& field() const { return field_; }

  Residue at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Residue v) { data_[r * cols_ + c] = v; }
  const std::vector<Residue>& data() const { return data_; }

  bool same_shape(const FieldMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }
  bool operator==(const FieldMatrix& o) const = default;

  FieldMatrix add(const FieldMatrix& o) const;
  FieldMatrix sub(const FieldMatrix& o) const;
  /// this + s * o, elementwise. The workhorse of every encoder.
  FieldMatrix add_scaled(const FieldMatrix& o, Residue s) const;
  FieldMatrix scale(Residue s) const;
  FieldMatrix multiply(const FieldMatrix& o) const;

  /// Submatrix copy [r0, r0+nr) x [c0, c0+nc); reads past the edge as zero.
  FieldMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  FieldMatrix cropped(std::size_t nr, std::size_t nc) const { return block(0, 0, nr, nc); }

  bool is_zero() const;

  /// Scalar multiplications a product with this shape costs.
  static std::uint64_t mult_count(std::size_t r, std::size_t k, std::size_t c) {
    return static_cast<std::uint64_t>(r) * k * c;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  PrimeField field_;
  std::vector<Residue> data_;
};

}  // namespace flexmm
