#include "ncert/norm_search.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <thread>
#include <utility>

#include "ncert/errors.hpp"

namespace ncert::search {

namespace {

using cyclo::CycInt;

// ---------------------------------------------------------------------------
// Modular prefilter. For a word-sized prime P = 1 (mod q) and t of order q
// mod P, the norm of x is congruent mod P to the product of x(t^k) over
// k = 1..q-1. Candidates whose residue misses the target residue at two
// independent primes are discarded without an exact determinant.
// ---------------------------------------------------------------------------

struct NormFilter {
  long prime = 0;
  long target = 0;
  // pw[k-1][i] = t^{k*i} mod prime.
  std::vector<std::vector<long>> pw;

  bool passes(const std::vector<int>& support,
              const std::vector<long>& vals) const {
    long prod = 1 % prime;
    for (const auto& row : pw) {
      long s = 0;
      for (size_t j = 0; j < support.size(); ++j) {
        const long c = ((vals[j] % prime) + prime) % prime;
        s = (s + c * row[static_cast<size_t>(support[j])]) % prime;
      }
      prod = prod * s % prime;
      if (prod == 0) break;
    }
    return prod == target;
  }
};

NormFilter make_filter(int q, const Int& target, const Int& first_prime) {
  Int p = first_prime + mod_pos(1 - first_prime, Int(q));
  while (!is_prime(p)) p += q;
  const Int e = (p - 1) / q;
  Int t;
  for (Int g = 2;; ++g) {
    t = pow_mod(g, e, p);
    if (t != 1) break;
  }
  NormFilter f;
  f.prime = to_long(p);
  f.target = to_long(mod_pos(target, p));
  f.pw.assign(static_cast<size_t>(q - 1),
              std::vector<long>(static_cast<size_t>(q - 1)));
  for (int k = 1; k < q; ++k) {
    for (int i = 0; i <= q - 2; ++i) {
      f.pw[static_cast<size_t>(k - 1)][static_cast<size_t>(i)] =
          to_long(pow_mod(t, Int(static_cast<long>(k) * i), p));
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Candidate enumeration: support size ascending, then max magnitude tier
// ascending, then subsets in lexicographic order, then coefficient tuples in
// lexicographic order over the per-slot value sequence 1, -1, 2, -2, ...
// (tuples whose maximum magnitude falls short of the tier belong to an
// earlier tier and are skipped, not re-counted).
// ---------------------------------------------------------------------------

long seq_value(long index) {
  const long mag = index / 2 + 1;
  return (index % 2 == 0) ? mag : -mag;
}

bool next_subset(std::vector<int>& s, int d) {
  const int k = static_cast<int>(s.size());
  int i = k - 1;
  while (i >= 0 && s[static_cast<size_t>(i)] == d - k + i) --i;
  if (i < 0) return false;
  ++s[static_cast<size_t>(i)];
  for (int j = i + 1; j < k; ++j) {
    s[static_cast<size_t>(j)] = s[static_cast<size_t>(j - 1)] + 1;
  }
  return true;
}

struct Candidate {
  std::vector<int> support;
  std::vector<long> vals;
};

// Calls visit(support, vals) for every candidate in canonical order until
// the stream is exhausted or `budget` candidates have been produced.
template <typename F>
void enumerate_box(int d, long bound, long budget, F&& visit) {
  long count = 0;
  std::vector<long> idx;
  std::vector<long> vals;
  for (int s = 1; s <= d && count < budget; ++s) {
    for (long m = 1; m <= bound && count < budget; ++m) {
      std::vector<int> subset(static_cast<size_t>(s));
      std::iota(subset.begin(), subset.end(), 0);
      do {
        idx.assign(static_cast<size_t>(s), 0);
        vals.assign(static_cast<size_t>(s), 0);
        bool more = true;
        while (more && count < budget) {
          // Keep only tuples that actually reach magnitude m somewhere.
          bool at_tier = false;
          for (long ix : idx) at_tier = at_tier || ix >= 2 * (m - 1);
          if (at_tier) {
            for (size_t j = 0; j < idx.size(); ++j) {
              vals[j] = seq_value(idx[j]);
            }
            ++count;
            visit(subset, vals);
          }
          // Odometer increment, least significant slot last.
          int slot = s - 1;
          while (slot >= 0) {
            if (++idx[static_cast<size_t>(slot)] < 2 * m) break;
            idx[static_cast<size_t>(slot)] = 0;
            --slot;
          }
          more = slot >= 0;
        }
      } while (count < budget && next_subset(subset, d));
    }
  }
}

bool lex_less(const std::vector<Int>& a, const std::vector<Int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Smallest coefficient vector in the orbit of x under sign flips,
// multiplication by powers of zeta, and conjugation; a canonical orbit key.
std::vector<Int> orbit_key(const CycInt& x) {
  const int q = x.n();
  std::vector<Int> zc(static_cast<size_t>(q - 1), 0);
  zc[1] = 1;
  const CycInt zeta(q, zc);
  std::vector<Int> best;
  for (long k = 1; k < q; ++k) {
    CycInt y = cyclo::conjugate(x, k);
    for (int j = 0; j < q; ++j) {
      const CycInt m = cyclo::neg(y);
      if (best.empty() || lex_less(y.coeffs(), best)) best = y.coeffs();
      if (lex_less(m.coeffs(), best)) best = m.coeffs();
      y = cyclo::mul(y, zeta);
    }
  }
  return best;
}

CycInt from_candidate(int q, const std::vector<int>& support,
                      const std::vector<long>& vals) {
  std::vector<Int> coeffs(static_cast<size_t>(q - 1), 0);
  for (size_t j = 0; j < support.size(); ++j) {
    coeffs[static_cast<size_t>(support[j])] = vals[j];
  }
  return CycInt(q, std::move(coeffs));
}

long content_of(const std::vector<long>& vals) {
  long g = 0;
  for (long v : vals) g = std::gcd(g, v);
  return g;
}

}  // namespace

std::vector<CycInt> solve_norm_equation(int q, const Int& target,
                                        const SearchConfig& cfg, int jobs) {
  if (!is_odd_prime(Int(q))) {
    throw PreconditionError("solve_norm_equation: q must be an odd prime");
  }
  if (target == 0) {
    throw PreconditionError("solve_norm_equation: target must be nonzero");
  }
  if (cfg.coeff_bound < 1) {
    throw PreconditionError(
        "solve_norm_equation: coefficient bound must be at least 1");
  }
  std::vector<CycInt> out;
  if (target < 0) return out;  // norms of nonzero elements are positive

  const int d = q - 1;
  const long bound = to_long(cfg.coeff_bound);
  const bool prime_target = is_prime(target);
  const NormFilter f1 = make_filter(q, target, Int(10000));
  const NormFilter f2 = make_filter(q, target, Int(f1.prime + 1));
  if (jobs < 1) jobs = 1;

  std::set<std::vector<Int>> seen;
  std::vector<Candidate> batch;
  std::vector<char> hits;
  const size_t batch_cap = static_cast<size_t>(4096) * static_cast<size_t>(jobs);

  auto flush = [&]() {
    if (batch.empty()) return;
    hits.assign(batch.size(), 0);
    auto work = [&](size_t lo, size_t hi) {
      for (size_t i = lo; i < hi; ++i) {
        const Candidate& c = batch[i];
        if (prime_target && content_of(c.vals) > 1) continue;
        if (!f1.passes(c.support, c.vals) || !f2.passes(c.support, c.vals)) {
          continue;
        }
        if (cyclo::norm(from_candidate(q, c.support, c.vals)).value == target) {
          hits[i] = 1;
        }
      }
    };
    if (jobs == 1 || batch.size() < 2 * static_cast<size_t>(jobs)) {
      work(0, batch.size());
    } else {
      std::vector<std::thread> pool;
      const size_t chunk = (batch.size() + jobs - 1) / jobs;
      for (int t = 0; t < jobs; ++t) {
        const size_t lo = std::min(batch.size(), chunk * static_cast<size_t>(t));
        const size_t hi = std::min(batch.size(), lo + chunk);
        if (lo < hi) pool.emplace_back(work, lo, hi);
      }
      for (auto& th : pool) th.join();
    }
    for (size_t i = 0; i < batch.size(); ++i) {
      if (!hits[i]) continue;
      CycInt x = from_candidate(q, batch[i].support, batch[i].vals);
      if (cyclo::norm_conjugate_product(x) != target) {
        throw ConsistencyError(
            "solve_norm_equation: determinant and conjugate-product norms "
            "disagree on a solution");
      }
      if (cfg.dedupe && !seen.insert(orbit_key(x)).second) continue;
      out.push_back(std::move(x));
    }
    batch.clear();
  };

  enumerate_box(d, bound, cfg.max_candidates,
                [&](const std::vector<int>& support,
                    const std::vector<long>& vals) {
                  batch.push_back(Candidate{support, vals});
                  if (batch.size() >= batch_cap) flush();
                });
  flush();
  return out;
}

Int find_r(const Int& p, int q) {
  if (!is_odd_prime(Int(q))) {
    throw PreconditionError("find_r: q must be an odd prime");
  }
  if (!is_prime(p)) throw PreconditionError("find_r: p must be prime");
  if (mod_pos(p - 1, Int(q)) != 0) {
    throw PreconditionError(
        "find_r: q does not divide p - 1, so no element of order q exists");
  }
  for (Int r = 2; r < p; ++r) {
    if (pow_mod(r, Int(q), p) == 1) return r;
  }
  throw ConsistencyError("find_r: no element of order q below p");
}

int find_twist(const CycInt& x, const Int& r, const Int& p) {
  const int q = x.n();
  if (p < 2) throw PreconditionError("find_twist: modulus must exceed 1");
  if (pow_mod(r, Int(q), p) != 1 || mod_pos(r - 1, p) == 0) {
    throw PreconditionError("find_twist: r must have exact order q mod p");
  }
  if (cyclo::norm(x).value != p) {
    throw PreconditionError("find_twist: norm(x) != p");
  }
  for (int k = 1; k < q; ++k) {
    if (cyclo::eval_mod(x, pow_mod(r, Int(k), p), p) == 0) return k;
  }
  throw ConsistencyError(
      "find_twist: no twist found although norm(x) = p; some conjugate of x "
      "must generate each prime above p");
}

std::optional<WitnessAssembly> find_witness(const reduction::GroupSpec& spec,
                                            const SearchConfig& cfg,
                                            int jobs) {
  const std::vector<CycInt> sols =
      solve_norm_equation(spec.n, spec.mprime, cfg, jobs);
  for (int k = 1; k < spec.n; ++k) {
    for (const CycInt& x : sols) {
      const CycInt xk = cyclo::conjugate(x, k);
      const Int v = cyclo::eval_at(xk, spec.r);
      // Need a positive multiple of m' (the mirror candidate -x covers the
      // negative case in the same pass).
      if (v <= 0 || mod_pos(v, spec.mprime) != 0) continue;
      const Int a1 = exact_div(v, spec.mprime);
      // A joint common factor cannot be normalized away: dividing through
      // keeps the evaluation identity but drops the norm below m'.
      if (gcd(a1, cyclo::content(xk)) != 1) continue;
      reduction::Witness w{a1, xk.coeffs()};
      reduction::validate_witness(w, spec);
      return WitnessAssembly{spec, std::move(w), k};
    }
  }
  return std::nullopt;
}

FamilyInstance prime_power_family(int q, const Int& alpha, int k) {
  if (!is_odd_prime(Int(q))) {
    throw PreconditionError("prime_power_family: q must be an odd prime");
  }
  if (alpha < 1) {
    throw PreconditionError("prime_power_family: alpha must be positive");
  }
  if (mod_pos(alpha, Int(q)) == 0) {
    throw PreconditionError("prime_power_family: q must not divide alpha");
  }
  if (k < 2) {
    throw PreconditionError("prime_power_family: k must be at least 2");
  }
  const Int qk1 = pow_ui(Int(q), static_cast<unsigned long>(k - 1));
  const reduction::GroupSpec spec =
      reduction::make_group_spec(alpha * qk1 * q, q, alpha * qk1 + 1);
  if (spec.mprime != q) {
    throw ConsistencyError("prime_power_family: derived m' differs from q");
  }
  // Witness element zeta - 1 (norm q, since 1 - zeta has norm q and the
  // sign flips an even number of conjugates); its value at r is
  // r - 1 = alpha * q^{k-1} > 0, giving a1 = alpha * q^{k-2}.
  std::vector<Int> alphas(static_cast<size_t>(q - 1), 0);
  alphas[0] = -1;
  alphas[1] = 1;
  reduction::Witness w{alpha * pow_ui(Int(q), static_cast<unsigned long>(k - 2)),
                       std::move(alphas)};
  reduction::validate_witness(w, spec);
  return FamilyInstance{spec, std::move(w)};
}

const std::vector<ExampleRow>& builtin_examples() {
  static const std::vector<ExampleRow> rows = {
      {29, "5801", "1 + z + z^4"},      {29, "4931", "1 - z^2 + z^5"},
      {29, "7193", "1 + z^2 + z^5"},    {29, "9803", "-1 + z + z^4"},
      {29, "12413", "-1 + z^2 + z^5"},  {29, "18097", "1 + z + z^4"},
      {29, "18503", "1 - z + z^5"},     {29, "21577", "1 + z^2 + z^3"},
      {31, "5953", "-1 - z + z^3"},     {31, "6263", "1 - z + z^3"},
      {31, "11657", "1 + z + z^4"},     {31, "16741", "-1 - z + z^4"},
      {31, "20089", "-1 + z + z^6"},    {37, "32783", "1 - z + z^3"},
      {37, "68821", "-1 + z^2 + z^5"},  {37, "108929", "1 + z^2 + z^5"},
      {37, "132313", "-1 + z + z^4"},   {37, "172717", "-1 - z + z^4"},
      {37, "262553", "1 - z^3 + z^4"},  {41, "101107", "-1 - z + z^3"},
      {41, "337759", "1 + z + z^4"},    {41, "340793", "-1 + z^2 + z^5"},
      {41, "348911", "1 - z^2 + z^5"},  {41, "432059", "1 + z^2 + z^5"},
  };
  return rows;
}

namespace {

ExampleOutcome run_one(const ExampleRow& row) {
  ExampleOutcome o;
  o.record.q = row.q;
  o.record.p = Int(row.p);
  try {
    o.record.x = cyclo::parse_cyc(row.q, row.x);
    const Int nv = cyclo::norm(o.record.x).value;
    if (nv != o.record.p) {
      o.note =
          "norm is " + to_string(nv) + ", expected " + to_string(o.record.p);
      return o;
    }
    o.record.r = find_r(o.record.p, row.q);
    o.record.k = find_twist(o.record.x, o.record.r, o.record.p);
    CycInt xk = cyclo::conjugate(o.record.x, o.record.k);
    Int v = cyclo::eval_at(xk, o.record.r);
    if (v == 0) {
      o.note = "twisted element evaluates to zero at r";
      return o;
    }
    if (v < 0) {
      xk = cyclo::neg(xk);
      v = -v;
    }
    const reduction::GroupSpec spec =
        reduction::make_group_spec(o.record.p, row.q, o.record.r);
    const reduction::Witness w{exact_div(v, spec.mprime), xk.coeffs()};
    const reduction::ReductionTrace trace = reduction::run_reduction(spec, w);
    const reduction::Certificate cert = reduction::certify(trace, w, spec);
    o.record.verdict = cert.verdict;
    o.pivots = trace.pivots;
    o.final_entry = trace.final_entry;
    o.final_matrix = trace.intermediates.back();
    o.ok = cert.verdict == reduction::Verdict::Rational;
    if (!o.ok) {
      o.note = std::string("verdict ") +
               reduction::verdict_name(cert.verdict);
    }
  } catch (const std::exception& e) {
    o.ok = false;
    o.note = e.what();
  }
  return o;
}

}  // namespace

std::vector<ExampleOutcome> run_examples(std::optional<int> q_filter) {
  std::vector<ExampleOutcome> out;
  for (const ExampleRow& row : builtin_examples()) {
    if (q_filter && *q_filter != row.q) continue;
    out.push_back(run_one(row));
  }
  return out;
}

std::vector<TripleRecord> reproduce_examples() {
  std::vector<TripleRecord> records;
  for (const ExampleRow& row : builtin_examples()) {
    ExampleOutcome o = run_one(row);
    if (!o.ok) {
      throw ReducibilityError(
          "reproduce_examples: triple (q=" + std::to_string(o.record.q) +
          ", p=" + to_string(o.record.p) + ", x=" + cyclo::to_text(o.record.x) +
          ") failed: " + o.note);
    }
    records.push_back(std::move(o.record));
  }
  return records;
}

namespace {

std::string csv_row(const TripleRecord& t, const std::string& verdict,
                    bool have_r, bool have_k) {
  std::string out = std::to_string(t.q) + "," + to_string(t.p) + "," +
                    cyclo::to_text(t.x) + ",";
  if (have_r) out += to_string(t.r);
  out += ",";
  if (have_k) out += std::to_string(t.k);
  out += "," + verdict + "\n";
  return out;
}

}  // namespace

std::string to_csv(const std::vector<ExampleOutcome>& outcomes) {
  std::string out = "q,p,x,r,k,verdict\n";
  for (const ExampleOutcome& o : outcomes) {
    const bool certified = o.final_matrix.has_value();
    out += csv_row(o.record,
                   certified ? reduction::verdict_name(o.record.verdict)
                             : "error",
                   o.record.r != 0, o.record.k != 0);
  }
  return out;
}

std::string to_csv(const std::vector<TripleRecord>& records) {
  std::string out = "q,p,x,r,k,verdict\n";
  for (const TripleRecord& t : records) {
    out += csv_row(t, reduction::verdict_name(t.verdict), true, true);
  }
  return out;
}

}  // namespace ncert::search
