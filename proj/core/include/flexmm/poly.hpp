#pragma once

#include <utility>
#include <vector>

#include "flexmm/matrix.hpp"

namespace flexmm {

/// Polynomial with matrix coefficients, index = exponent.
/// All coefficients share one shape.
struct MatrixPoly {
  std::vector<FieldMatrix> coeffs;

  std::size_t size() const { return coeffs.size(); }
  const FieldMatrix& operator[](std::size_t i) const { return coeffs[i]; }
};

using Sample = std::pair<Residue, FieldMatrix>;

/// Horner evaluation at a scalar point.
FieldMatrix poly_eval(const MatrixPoly& poly, Residue point);

/// Lagrange interpolation in coefficient form. Uses the first degree_bound
/// samples to build the unique polynomial of degree < degree_bound, then
/// checks every extra sample against it; a mismatch throws CorruptionError
/// (it signals a corrupted task result upstream).
MatrixPoly interpolate(const std::vector<Sample>& samples, std::size_t degree_bound);

}  // namespace flexmm
