#pragma once

#include <utility>
#include <vector>

#include "ncert/cyclotomic.hpp"
#include "ncert/matrix.hpp"

namespace ncert::reduction {

/// Parameters of the metacyclic group C_m x|_r C_n together with the derived
/// effective modulus m' = m / gcd(m, r - 1).
struct GroupSpec {
  Int m;
  int n = 0;
  Int r;
  Int mprime;
  bool operator==(const GroupSpec& o) const = default;
};

/// Validates m >= 3, n an odd prime, r in [2, m-1], r^n = 1 mod m and
/// r != 1 mod m, then derives m'.
GroupSpec make_group_spec(const Int& m, int n, const Int& r);

/// Integer data (a1; alpha_0 .. alpha_{n-2}) with a1 >= 1 satisfying
/// a1 * m' = sum alpha_i r^i and gcd(a1, alpha_0, ..., alpha_{n-2}) = 1.
struct Witness {
  Int a1;
  std::vector<Int> alphas;
  bool operator==(const Witness& o) const = default;
};

/// Checks the witness invariants against a spec; throws PreconditionError
/// with a precise message on the first violated condition.
void validate_witness(const Witness& w, const GroupSpec& spec);

/// The cyclotomic integer sum alpha_i zeta_n^i described by a witness.
cyclo::CycInt witness_element(const Witness& w, int n);

/// The (n-1) x (n-1) matrix of the monomial lattice action: first column
/// (r, m', 0, ...), unit band below the second row, last column
/// (-x_{n-1}/m', -x_{n-2}, ..., -x_1) with x_j = 1 + r + ... + r^j.
/// Satisfies delta^n = I, det delta = 1 and characteristic polynomial
/// X^{n-1} + ... + X + 1.
IMatrix build_delta(const GroupSpec& spec);

/// The chain a_1 .. a_{n-1}: a_{n-1} = alpha_{n-2}, a_i = alpha_{i-1} +
/// r * a_{i+1} for 2 <= i <= n-2, and a_1 taken from the witness. Its gcd is
/// always 1 for a valid witness (enforced; a violation is an internal error).
std::vector<Int> derive_a_chain(const Witness& w, const GroupSpec& spec);

/// A determinant-one matrix together with its exact integer inverse,
/// produced by construction (both factors of every elementary step are
/// tracked, so no inversion is ever performed after the fact).
struct Unimodular {
  IMatrix mat;
  IMatrix inv;
};

/// Determinant-one completion with prescribed first column v (gcd 1),
/// built recursively from extended-gcd steps; deterministic. The returned
/// inverse is exact and verified (mat * inv = I) before returning.
Unimodular sl_completion(const std::vector<Int>& v);

/// Completion matrix only (first column v, determinant exactly 1).
IMatrix sl_with_first_column(const std::vector<Int>& v);

/// One pivot step at 1-based step index k: extracts the positive gcd e of
/// the active subcolumn (entries below row k in column k), embeds the
/// completion of subcolumn/e, and conjugates.
struct StepResult {
  Int e;
  Unimodular p;
  IMatrix bnext;
};
StepResult reduce_step(const IMatrix& b, int k);

/// Final 2x2 Bezout step on the two-entry active subcolumn in column n-3.
struct FinalResult {
  Unimodular p;
  IMatrix bfinal;
};
FinalResult final_step(const IMatrix& b);

/// Complete record of one reduction run. Conjugator inverses are carried
/// alongside (same indexing) so every conjugation in the chain is performed
/// and checked in exact integer arithmetic.
struct ReductionTrace {
  IMatrix delta;
  std::vector<Int> a_chain;
  std::vector<IMatrix> conjugators;       // P_0 .. P_{n-3}
  std::vector<IMatrix> conjugator_invs;   // exact inverses, same order
  std::vector<IMatrix> intermediates;     // B_1 .. B_{n-2}
  std::vector<Int> pivots;                // e_1 .. e_{n-3}
  Int final_entry;                        // b = (B_{n-2})_{n-1, n-2}
};

/// Runs the full conjugation chain: B_1 = P_0^{-1} delta P_0 from the
/// a-chain completion, then one pivot step per column and the final Bezout
/// step, validating the expected zero pattern throughout. Every link is an
/// exact verified conjugation by a determinant-one matrix, so the final
/// matrix has delta's order n without recomputation. For n = 3 the chain
/// degenerates to the single conjugation by P_0.
ReductionTrace run_reduction(const GroupSpec& spec, const Witness& w);

enum class Verdict { Rational, FormulaHoldsButNotUnit, Invalid };
const char* verdict_name(Verdict v);

/// Certified outcome: the pivot/final-entry data of the trace, the norm of
/// the witness element (computed by determinant and cross-checked against
/// the conjugate product), and the verdict.
struct Certificate {
  GroupSpec spec;
  Witness witness;
  ReductionTrace trace;
  cyclo::NormValue norm_check;
  Verdict verdict;
};

/// Verifies the determinant-entry formula
///   b * m' * e_1^{n-2} * e_2^{n-3} * ... * e_{n-3}^2 = norm(x)
/// exactly (a violation is an internal error), then issues the verdict:
/// Rational iff every pivot and the final entry equal 1, otherwise
/// FormulaHoldsButNotUnit. (Invalid is reserved for certificates that fail
/// re-verification after deserialization.)
Certificate certify(const ReductionTrace& trace, const Witness& w,
                    const GroupSpec& spec);

/// The d x d target pattern: unit subdiagonal, last column all -1, zero
/// elsewhere (d = n - 1).
IMatrix sigma_matrix(int d);

/// For gamma with unit subdiagonal, zeros below it and gamma^{d+1} = I:
/// the bottom-up elimination sweep producing det-one P with
/// P^{-1} gamma P = sigma_matrix(d). Returns (P, sigma). A gamma of the
/// right shape but wrong order is reported as a precondition error when
/// the sweep fails to land on the target pattern (sweep success is an
/// exact proof of the order, so no matrix power is ever computed).
std::pair<IMatrix, IMatrix> conjugate_to_sigma(const IMatrix& gamma);

}  // namespace ncert::reduction
