#pragma once

#include <cstdint>
#include <vector>

#include "flexmm/errors.hpp"

namespace flexmm {

using Residue = std::uint64_t;

/// Prime field GF(p). Residues are plain uint64_t values in [0, p).
/// The modulus is checked for primality at construction.
class PrimeField {
 public:
  explicit PrimeField(Residue modulus);

  Residue modulus() const { return p_; }

  Residue add(Residue a, Residue b) const {
    Residue s = a + b;
    return s >= p_ || s < a ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const { return a >= b ? a - b : a + (p_ - b); }
  Residue neg(Residue a) const { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const {
    return static_cast<Residue>((static_cast<unsigned __int128>(a) * b) % p_);
  }
  Residue pow(Residue base, Residue exp) const;
  Residue inv(Residue a) const;

  Residue reduce_signed(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += static_cast<long long>(p_);
    return static_cast<Residue>(r);
  }

  bool operator==(const PrimeField&) const = default;

  /// Deterministic Miller-Rabin, valid for the full 64-bit range.
  static bool is_prime(Residue n);
  /// Smallest prime >= n.
  static Residue next_prime(Residue n);

 private:
  Residue p_;
};

/// Deterministic evaluation points alpha_i = i - 1 (1-based i).
/// Throws FieldError if the field has fewer than n_points elements.
std::vector<Residue> eval_points(std::size_t n_points, const PrimeField& field);

}  // namespace flexmm
