#include "flexmm/field.hpp"

#include <array>

namespace flexmm {

namespace {

Residue mulmod(Residue a, Residue b, Residue m) {
  return static_cast<Residue>((static_cast<unsigned __int128>(a) * b) % m);
}

Residue powmod(Residue base, Residue exp, Residue m) {
  Residue r = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

}  // namespace

bool PrimeField::is_prime(Residue n) {
  if (n < 2) return false;
  for (Residue q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  Residue d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These witnesses are sufficient for all n < 2^64.
  for (Residue a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    Residue x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i < s - 1; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Residue PrimeField::next_prime(Residue n) {
  if (n <= 2) return 2;
  if (n % 2 == 0) ++n;
  while (!is_prime(n)) n += 2;
  return n;
}

PrimeField::PrimeField(Residue modulus) : p_(modulus) {
  if (!is_prime(modulus)) {
    throw FieldError("modulus " + std::to_string(modulus) + " is not prime");
  }
}

Residue PrimeField::pow(Residue base, Residue exp) const {
  return powmod(base, exp, p_);
}

Residue PrimeField::inv(Residue a) const {
  if (a == 0) throw FieldError("division by zero in GF(" + std::to_string(p_) + ")");
  return powmod(a, p_ - 2, p_);
}

std::vector<Residue> eval_points(std::size_t n_points, const PrimeField& field) {
  if (n_points > field.modulus()) {
    throw FieldError("field GF(" + std::to_string(field.modulus()) + ") too small for " +
                     std::to_string(n_points) + " distinct evaluation points");
  }
  std::vector<Residue> pts(n_points);
  for (std::size_t i = 0; i < n_points; ++i) pts[i] = static_cast<Residue>(i);
  return pts;
}

}  // namespace flexmm
