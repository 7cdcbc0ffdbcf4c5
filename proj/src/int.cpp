#include "ncert/int.hpp"

#include "ncert/errors.hpp"

namespace ncert {

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int gcd_all(const std::vector<Int>& v) {
  Int g = 0;
  for (const Int& x : v) g = gcd(g, x);
  return g;
}

std::tuple<Int, Int, Int> egcd(const Int& a, const Int& b) {
  Int g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return {g, s, t};
}

Int exact_div(const Int& num, const Int& den) {
  if (den == 0 || mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()) == 0) {
    throw ConsistencyError("exact_div: " + to_string(den) +
                           " does not divide " + to_string(num));
  }
  Int q;
  mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

Int pow_ui(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Int pow_mod(const Int& base, const Int& e, const Int& m) {
  if (m <= 0) throw PreconditionError("pow_mod: modulus must be positive");
  if (e < 0) throw PreconditionError("pow_mod: exponent must be nonnegative");
  Int r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int mod_pos(const Int& a, const Int& m) {
  if (m <= 0) throw PreconditionError("mod_pos: modulus must be positive");
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

bool is_prime(const Int& p) {
  if (p < 2) return false;
  if (mpz_fits_slong_p(p.get_mpz_t()) != 0) {
    long n = mpz_get_si(p.get_mpz_t());
    if (n < 4) return n == 2 || n == 3;
    if (n % 2 == 0) return false;
    for (long d = 3; d <= n / d; d += 2) {
      if (n % d == 0) return false;
    }
    return true;
  }
  return mpz_probab_prime_p(p.get_mpz_t(), 40) >= 1;
}

bool is_odd_prime(const Int& n) { return n > 2 && is_prime(n); }

long to_long(const Int& a) {
  if (mpz_fits_slong_p(a.get_mpz_t()) == 0) {
    throw PreconditionError("to_long: value out of range: " + to_string(a));
  }
  return mpz_get_si(a.get_mpz_t());
}

std::string to_string(const Int& a) { return a.get_str(); }

}  // namespace ncert
