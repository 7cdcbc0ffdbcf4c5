#include "ncert/cyclotomic.hpp"

#include <cctype>
#include <sstream>

#include "ncert/errors.hpp"
#include "ncert/linalg.hpp"

namespace ncert::cyclo {

namespace {

void require_odd_prime(int n, const char* op) {
  if (!is_odd_prime(Int(n))) {
    throw PreconditionError(std::string(op) + ": n = " + std::to_string(n) +
                            " is not an odd prime");
  }
}

void require_same_n(const CycInt& x, const CycInt& y, const char* op) {
  if (x.n() != y.n()) {
    throw PreconditionError(std::string(op) + ": mismatched conductors " +
                            std::to_string(x.n()) + " and " +
                            std::to_string(y.n()));
  }
}

}  // namespace

CycInt::CycInt(int n, std::vector<Int> coeffs)
    : n_(n), coeffs_(std::move(coeffs)) {
  require_odd_prime(n, "CycInt");
  if (coeffs_.size() != static_cast<size_t>(n - 1)) {
    throw PreconditionError("CycInt: expected " + std::to_string(n - 1) +
                            " coefficients, got " +
                            std::to_string(coeffs_.size()));
  }
}

CycInt CycInt::zero(int n) {
  return CycInt(n, std::vector<Int>(static_cast<size_t>(n - 1), Int(0)));
}

CycInt CycInt::one(int n) {
  std::vector<Int> c(static_cast<size_t>(n - 1), Int(0));
  c[0] = 1;
  return CycInt(n, std::move(c));
}

bool CycInt::is_zero() const {
  for (const Int& c : coeffs_) {
    if (c != 0) return false;
  }
  return true;
}

CycInt reduce_poly(int n, const std::vector<Int>& raw) {
  require_odd_prime(n, "reduce_poly");
  // Fold exponents modulo n (zeta^n = 1), then eliminate the zeta^{n-1}
  // bucket via zeta^{n-1} = -(1 + zeta + ... + zeta^{n-2}).
  std::vector<Int> folded(static_cast<size_t>(n), Int(0));
  for (size_t t = 0; t < raw.size(); ++t) {
    folded[t % static_cast<size_t>(n)] += raw[t];
  }
  const Int top = folded[static_cast<size_t>(n - 1)];
  std::vector<Int> canonical(static_cast<size_t>(n - 1));
  for (int i = 0; i < n - 1; ++i) {
    canonical[static_cast<size_t>(i)] = folded[static_cast<size_t>(i)] - top;
  }
  return CycInt(n, std::move(canonical));
}

CycInt add(const CycInt& x, const CycInt& y) {
  require_same_n(x, y, "add");
  std::vector<Int> c(x.coeffs());
  for (size_t i = 0; i < c.size(); ++i) c[i] += y.coeffs()[i];
  return CycInt(x.n(), std::move(c));
}

CycInt sub(const CycInt& x, const CycInt& y) {
  require_same_n(x, y, "sub");
  std::vector<Int> c(x.coeffs());
  for (size_t i = 0; i < c.size(); ++i) c[i] -= y.coeffs()[i];
  return CycInt(x.n(), std::move(c));
}

CycInt neg(const CycInt& x) {
  std::vector<Int> c(x.coeffs());
  for (Int& v : c) v = -v;
  return CycInt(x.n(), std::move(c));
}

CycInt mul(const CycInt& x, const CycInt& y) {
  require_same_n(x, y, "mul");
  const size_t d = x.coeffs().size();
  std::vector<Int> raw(2 * d - 1, Int(0));
  for (size_t i = 0; i < d; ++i) {
    if (x.coeffs()[i] == 0) continue;
    for (size_t j = 0; j < d; ++j) {
      if (y.coeffs()[j] != 0) raw[i + j] += x.coeffs()[i] * y.coeffs()[j];
    }
  }
  return reduce_poly(x.n(), raw);
}

CycInt conjugate(const CycInt& x, long k) {
  const int n = x.n();
  const long kn = ((k % n) + n) % n;
  if (kn == 0) {
    throw PreconditionError("conjugate: k must be coprime to n");
  }
  std::vector<Int> raw(static_cast<size_t>(n), Int(0));
  for (size_t i = 0; i < x.coeffs().size(); ++i) {
    raw[(i * static_cast<size_t>(kn)) % static_cast<size_t>(n)] +=
        x.coeffs()[i];
  }
  return reduce_poly(n, raw);
}

IMatrix norm_matrix(const CycInt& x) {
  const int n = x.n();
  const int d = n - 1;
  // Coefficients extended by a^[n-1] = 0.
  std::vector<Int> ext(x.coeffs());
  ext.push_back(0);
  IMatrix m(d, d);
  for (int i = 1; i <= d; ++i) {
    m.at(i - 1, 0) = x.coeffs()[static_cast<size_t>(i - 1)];
    for (int j = 2; j <= d; ++j) {
      const int idx = ((i - j) % n + n) % n;
      m.at(i - 1, j - 1) =
          ext[static_cast<size_t>(idx)] - ext[static_cast<size_t>(n - j)];
    }
  }
  return m;
}

NormValue norm(const CycInt& x) { return NormValue{linalg::det(norm_matrix(x))}; }

Int norm_conjugate_product(const CycInt& x) {
  const int n = x.n();
  CycInt acc = conjugate(x, 1);
  for (long k = 2; k <= n - 1; ++k) acc = mul(acc, conjugate(x, k));
  for (size_t i = 1; i < acc.coeffs().size(); ++i) {
    if (acc.coeffs()[i] != 0) {
      throw ConsistencyError(
          "norm_conjugate_product: product is not a rational integer");
    }
  }
  return acc.coeffs()[0];
}

Int eval_mod(const CycInt& x, const Int& r, const Int& p) {
  if (p <= 1) throw PreconditionError("eval_mod: modulus must exceed 1");
  if (pow_mod(r, Int(x.n()), p) != 1) {
    throw PreconditionError("eval_mod: r^n != 1 mod p, map undefined");
  }
  const Int rm = mod_pos(r, p);
  Int acc = 0;
  for (size_t i = x.coeffs().size(); i-- > 0;) {
    acc = mod_pos(acc * rm + x.coeffs()[i], p);
  }
  return acc;
}

Int eval_at(const CycInt& x, const Int& r) {
  Int acc = 0;
  for (size_t i = x.coeffs().size(); i-- > 0;) {
    acc = acc * r + x.coeffs()[i];
  }
  return acc;
}

Int content(const CycInt& x) { return gcd_all(x.coeffs()); }

namespace {

// Single term of a cyclotomic expression: coefficient (possibly implicit)
// and exponent (0 for a constant term).
struct Term {
  Int coeff;
  long exp;
};

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  std::vector<Term> parse() {
    std::vector<Term> terms;
    skip_ws();
    if (eof()) throw ParseError("empty expression");
    bool first = true;
    while (!eof()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        throw ParseError("expected '+' or '-' before term at position " +
                         std::to_string(pos_));
      }
      Term t = parse_term();
      t.coeff *= sign;
      terms.push_back(std::move(t));
      skip_ws();
      first = false;
    }
    return terms;
  }

 private:
  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  Int parse_uint() {
    const size_t start = pos_;
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == start) {
      throw ParseError("expected a number at position " + std::to_string(start));
    }
    return Int(s_.substr(start, pos_ - start));
  }

  Term parse_term() {
    skip_ws();
    if (eof()) throw ParseError("dangling sign at end of expression");
    Int coeff = 1;
    bool saw_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = parse_uint();
      saw_coeff = true;
      skip_ws();
      if (!eof() && peek() == '*') {
        ++pos_;
        skip_ws();
        if (eof() || peek() != 'z') throw ParseError("expected 'z' after '*'");
      }
    }
    if (!eof() && peek() == 'z') {
      ++pos_;
      long exp = 1;
      skip_ws();
      if (!eof() && peek() == '^') {
        ++pos_;
        skip_ws();
        exp = to_long(parse_uint());
      }
      return Term{std::move(coeff), exp};
    }
    if (!saw_coeff) {
      throw ParseError("expected a coefficient or 'z' at position " +
                       std::to_string(pos_));
    }
    return Term{std::move(coeff), 0};
  }

  const std::string& s_;
  size_t pos_ = 0;
};

}  // namespace

CycInt parse_cyc(int n, const std::string& text) {
  require_odd_prime(n, "parse_cyc");
  const std::vector<Term> terms = Parser(text).parse();
  long max_exp = 0;
  for (const Term& t : terms) max_exp = std::max(max_exp, t.exp);
  std::vector<Int> raw(static_cast<size_t>(max_exp) + 1, Int(0));
  for (const Term& t : terms) raw[static_cast<size_t>(t.exp)] += t.coeff;
  return reduce_poly(n, raw);
}

std::string to_text(const CycInt& x) {
  std::ostringstream out;
  bool first = true;
  for (size_t i = 0; i < x.coeffs().size(); ++i) {
    const Int& c = x.coeffs()[i];
    if (c == 0) continue;
    const Int mag = c < 0 ? Int(-c) : c;
    if (first) {
      if (c < 0) out << '-';
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    if (i == 0) {
      out << mag.get_str();
    } else {
      if (mag != 1) out << mag.get_str() << '*';
      out << 'z';
      if (i > 1) out << '^' << i;
    }
  }
  if (first) return "0";
  return out.str();
}

}  // namespace ncert::cyclo
