#include "flexmm/poly.hpp"

#include <set>
#include <string>

namespace flexmm {

FieldMatrix poly_eval(const MatrixPoly& poly, Residue point) {
  if (poly.coeffs.empty()) throw ShapeError("cannot evaluate an empty polynomial");
  FieldMatrix acc = poly.coeffs.back();
  for (std::size_t i = poly.coeffs.size() - 1; i-- > 0;) {
    acc = poly.coeffs[i].add_scaled(acc, point);
  }
  return acc;
}

MatrixPoly interpolate(const std::vector<Sample>& samples, std::size_t degree_bound) {
  if (degree_bound == 0) throw ShapeError("degree_bound must be positive");
  if (samples.size() < degree_bound)
    throw DecodeError("interpolation needs " + std::to_string(degree_bound) + " samples, got " +
                      std::to_string(samples.size()));

  const PrimeField& field = samples.front().second.field();
  const std::size_t rows = samples.front().second.rows();
  const std::size_t cols = samples.front().second.cols();

  std::set<Residue> seen;
  for (const auto& [x, v] : samples) {
    if (!seen.insert(x).second)
      throw CorruptionError("duplicate interpolation point " + std::to_string(x));
    if (v.rows() != rows || v.cols() != cols)
      throw ShapeError("interpolation samples have mixed shapes");
  }

  const std::size_t k = degree_bound;

  // Master polynomial P(x) = prod_{i<k} (x - x_i), low-order first.
  std::vector<Residue> master(k + 1, 0);
  master[0] = 1;
  for (std::size_t i = 0; i < k; ++i) {
    Residue neg_x = field.neg(samples[i].first);
    for (std::size_t t = i + 1; t-- > 0;) {
      master[t + 1] = field.add(master[t + 1], master[t]);
      master[t] = field.mul(master[t], neg_x);
    }
  }

  MatrixPoly result;
  result.coeffs.assign(k, FieldMatrix::zero(rows, cols, field));

  std::vector<Residue> basis(k);
  for (std::size_t i = 0; i < k; ++i) {
    const Residue xi = samples[i].first;
    // Synthetic division of the master polynomial by (x - x_i).
    Residue carry = master[k];
    for (std::size_t t = k; t-- > 0;) {
      basis[t] = carry;
      carry = field.add(master[t], field.mul(xi, carry));
    }
    Residue denom = 1;
    for (std::size_t j = 0; j < k; ++j) {
      if (j != i) denom = field.mul(denom, field.sub(xi, samples[j].first));
    }
    const Residue w = field.inv(denom);
    for (std::size_t t = 0; t < k; ++t) {
      Residue c = field.mul(basis[t], w);
      if (c != 0) result.coeffs[t] = result.coeffs[t].add_scaled(samples[i].second, c);
    }
  }

  // Extra samples must lie on the same polynomial.
  for (std::size_t i = k; i < samples.size(); ++i) {
    if (!(poly_eval(result, samples[i].first) == samples[i].second))
      throw CorruptionError("oversampled interpolation is inconsistent at point " +
                            std::to_string(samples[i].first));
  }
  return result;
}

}  // namespace flexmm
