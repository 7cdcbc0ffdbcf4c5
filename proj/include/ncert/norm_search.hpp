#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ncert/cyclotomic.hpp"
#include "ncert/int.hpp"
#include "ncert/reduction.hpp"

/// Witness search: bounded norm-equation solving over coefficient boxes,
/// twist discovery, the prime-power family, and the bundled dataset of
/// (q, p, x) triples together with the harness that re-certifies them
/// end to end.
namespace ncert::search {

/// Knobs for the bounded coefficient-box search.
struct SearchConfig {
  /// Half-width B of the coefficient box [-B, B].
  Int coeff_bound = 2;
  /// Upper bound on the number of enumerated candidate vectors.
  long max_candidates = 1000000;
  /// When set, keep only the first representative of each orbit under
  /// sign flips, powers of zeta, and conjugation.
  bool dedupe = false;
};

/// One dataset row after the full pipeline: element x of norm p, an element
/// r of order q mod p, the twist exponent k that aligns x with r, and the
/// verdict of the resulting certificate.
struct TripleRecord {
  int q = 0;
  Int p;
  cyclo::CycInt x = cyclo::CycInt::zero(3);
  Int r;
  int k = 0;
  reduction::Verdict verdict = reduction::Verdict::Invalid;
};

/// Finds every x in the box [-B, B]^{q-1} with norm exactly `target`.
///
/// Enumeration order is deterministic: increasing support size, then
/// increasing max |coefficient|, then subsets in ascending lexicographic
/// order, then coefficient tuples ordered by magnitude with the positive
/// sign first (1, -1, 2, -2, ...). When `target` is prime, vectors with
/// content > 1 are skipped since their norm has a (q-1)-th power factor.
/// Every hit is re-verified against the conjugate-product norm before it
/// is returned. `jobs` shards the candidate stream across threads; the
/// result is identical for every jobs value.
std::vector<cyclo::CycInt> solve_norm_equation(int q, const Int& target,
                                               const SearchConfig& cfg,
                                               int jobs = 1);

/// Smallest r >= 2 of exact multiplicative order q modulo the prime p.
/// Requires q | p - 1.
Int find_r(const Int& p, int q);

/// Smallest k in [1, q-1] such that x evaluated at r^k vanishes mod p.
/// Requires norm(x) = p and r of exact order q mod p; under those
/// hypotheses a twist always exists, so a fruitless scan is an internal
/// error rather than a search failure.
int find_twist(const cyclo::CycInt& x, const Int& r, const Int& p);

/// A witness bundled with the spec it certifies and the twist exponent
/// that produced it.
struct WitnessAssembly {
  reduction::GroupSpec spec;
  reduction::Witness witness;
  int twist_k = 1;
};

/// Searches for a witness for `spec`: enumerates norm-m' elements from
/// solve_norm_equation, then for each twist k = 1..n-1 in turn checks
/// whether some candidate's k-th conjugate evaluates at r to a positive
/// multiple of m' with joint gcd one. Candidates whose joint gcd exceeds
/// one are rejected: dividing through keeps the evaluation identity but
/// shrinks the norm strictly below m'. Returns nothing if the box is
/// exhausted (inconclusive, not a disproof).
std::optional<WitnessAssembly> find_witness(const reduction::GroupSpec& spec,
                                            const SearchConfig& cfg,
                                            int jobs = 1);

/// A generated spec together with its canonical witness.
struct FamilyInstance {
  reduction::GroupSpec spec;
  reduction::Witness witness;
};

/// The prime-power family: m = alpha * q^k, r = alpha * q^{k-1} + 1, which
/// always has m' = q, with witness built from zeta - 1 (norm q). Requires
/// q an odd prime, alpha >= 1 not divisible by q, and k >= 2.
FamilyInstance prime_power_family(int q, const Int& alpha, int k);

/// One row of the bundled dataset: conductor q, target prime p, element
/// text in the grammar accepted by cyclo::parse_cyc.
struct ExampleRow {
  int q;
  const char* p;
  const char* x;
};

/// The 24 bundled (q, p, x) rows, reproduced verbatim from the dataset
/// (one row fails its own norm check; run_examples reports it honestly).
const std::vector<ExampleRow>& builtin_examples();

/// Outcome of one dataset row: the filled record on success, or a
/// diagnostic note on failure. The pivot list, final entry and final
/// matrix of the completed trace are kept (rather than the full trace,
/// whose intermediate chain is bulky) so callers can re-check the
/// certificate formula and run the sigma conjugation.
struct ExampleOutcome {
  TripleRecord record;
  bool ok = false;
  std::string note;
  std::vector<Int> pivots;
  Int final_entry;
  std::optional<IMatrix> final_matrix;
};

/// Runs the full pipeline (norm check, find_r, find_twist, witness
/// assembly, reduction, certification) on every bundled row matching the
/// optional conductor filter. Never throws on a failing row; the failure
/// is recorded in the outcome instead.
std::vector<ExampleOutcome> run_examples(std::optional<int> q_filter = {});

/// Strict variant: returns the 24 records and throws ReducibilityError
/// naming the first failing triple if any row does not certify Rational.
std::vector<TripleRecord> reproduce_examples();

/// CSV with header q,p,x,r,k,verdict. Failed rows (from run_examples)
/// carry the verdict column "error" and empty r/k cells.
std::string to_csv(const std::vector<ExampleOutcome>& outcomes);
std::string to_csv(const std::vector<TripleRecord>& records);

}  // namespace ncert::search
