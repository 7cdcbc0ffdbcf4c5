#pragma once

#include <gmpxx.h>

#include <string>
#include <tuple>
#include <vector>

namespace ncert {

/// Arbitrary-precision integer. All arithmetic in this library is exact.
using Int = mpz_class;

/// Nonnegative gcd; gcd(0, 0) = 0.
Int gcd(const Int& a, const Int& b);

/// Nonnegative gcd of a vector; 0 for an empty or all-zero vector.
Int gcd_all(const std::vector<Int>& v);

/// Extended gcd: returns (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0.
/// The coefficients are the small canonical pair produced by the backing
/// library (|s| <= |b|/(2g), |t| <= |a|/(2g) in the generic case).
std::tuple<Int, Int, Int> egcd(const Int& a, const Int& b);

/// num / den, throwing ConsistencyError unless den divides num exactly.
Int exact_div(const Int& num, const Int& den);

/// base^e over the integers (e >= 0); 0^0 = 1.
Int pow_ui(const Int& base, unsigned long e);

/// base^e mod m for m > 0; result normalized to [0, m).
Int pow_mod(const Int& base, const Int& e, const Int& m);

/// Canonical residue of a modulo m > 0, in [0, m).
Int mod_pos(const Int& a, const Int& m);

/// Deterministic primality test (trial division for word-sized inputs,
/// strong pseudoprime testing beyond).
bool is_prime(const Int& p);

/// True when n is an odd prime (the only conductors this library supports).
bool is_odd_prime(const Int& n);

/// Conversion helpers; to_long throws PreconditionError when out of range.
long to_long(const Int& a);
std::string to_string(const Int& a);

}  // namespace ncert
