#pragma once

#include <string>
#include <vector>

#include "ncert/matrix.hpp"

namespace ncert::cyclo {

/// Element of Z[zeta_n] for an odd prime n, stored canonically on the power
/// basis 1, zeta, ..., zeta^{n-2} (coefficients alpha_0 .. alpha_{n-2}).
class CycInt {
 public:
  /// coeffs must have exactly n-1 entries; n must be an odd prime.
  CycInt(int n, std::vector<Int> coeffs);

  static CycInt zero(int n);
  static CycInt one(int n);

  int n() const { return n_; }
  const std::vector<Int>& coeffs() const { return coeffs_; }
  bool is_zero() const;

  bool operator==(const CycInt& o) const = default;

 private:
  int n_ = 0;
  std::vector<Int> coeffs_;
};

/// Exact integer norm of a cyclotomic integer (always computed through the
/// structured determinant; see norm()).
struct NormValue {
  Int value;
  bool operator==(const NormValue& o) const = default;
};

/// Canonicalizes raw power-basis coefficients (any length, exponents taken
/// modulo n) using zeta^{n-1} = -1 - zeta - ... - zeta^{n-2}.
CycInt reduce_poly(int n, const std::vector<Int>& raw);

CycInt add(const CycInt& x, const CycInt& y);
CycInt sub(const CycInt& x, const CycInt& y);
CycInt neg(const CycInt& x);

/// Canonical product (schoolbook polynomial product reduced canonically).
CycInt mul(const CycInt& x, const CycInt& y);

/// Image of x under the field automorphism zeta -> zeta^k, gcd(k, n) = 1.
CycInt conjugate(const CycInt& x, long k);

/// The (n-1) x (n-1) integer matrix whose determinant is the norm of x:
/// first column alpha_0..alpha_{n-2}; for j >= 2, entry (i, j) equals
/// a^[(i-j) mod n] - a^[n-j] where a^[t] extends the coefficients by
/// a^[n-1] = 0. Exposed separately so its layout can be pinned in tests.
IMatrix norm_matrix(const CycInt& x);

/// Field norm as the determinant of norm_matrix(x). Agrees with the full
/// conjugate product and is multiplicative. norm(0) = 0 by convention.
NormValue norm(const CycInt& x);

/// Independent norm route: the product of all n-1 conjugates, which must
/// canonicalize to a rational integer.
Int norm_conjugate_product(const CycInt& x);

/// Ring evaluation zeta -> r reduced mod p (p > 1). Requires r^n = 1 mod p,
/// the necessary condition for the map to respect the zeta relations; note
/// the map is multiplicative precisely when p divides 1 + r + ... + r^{n-1},
/// which holds for every r of exact order n used by this library.
Int eval_mod(const CycInt& x, const Int& r, const Int& p);

/// Exact integer evaluation sum alpha_i r^i (no reduction).
Int eval_at(const CycInt& x, const Int& r);

/// gcd of all coefficients; 0 for the zero element.
Int content(const CycInt& x);

/// Parses expressions such as "1 + z + z^4", "-1 + 2*z^3", "7". The symbol
/// z denotes zeta_n; exponents >= n-1 are folded canonically.
CycInt parse_cyc(int n, const std::string& text);

/// Canonical rendering, inverse to parse_cyc ("0" for the zero element).
std::string to_text(const CycInt& x);

}  // namespace ncert::cyclo
