#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ncert::fuzz {

/// Seed used when the caller (or the environment) does not supply one.
inline constexpr std::uint64_t kDefaultFuzzSeed = 1729;

/// Outcome of a randomized identity check. Reports with the same name,
/// trial count, dimension range and seed are identical run to run; the
/// per-trial generator is seeded from (seed, trial index), so splitting the
/// trial range across threads cannot change what any trial sees.
struct FuzzReport {
  std::string name;
  long trials = 0;
  int dim_lo = 0;
  int dim_hi = 0;
  std::uint64_t seed = kDefaultFuzzSeed;
  long failures = 0;
  long first_fail_index = -1;   ///< -1 when every trial passed
  std::string first_fail_dump;  ///< offending inputs and both side values

  bool passed() const { return failures == 0; }
};

/// Names of the supported identities, in canonical order: laplace,
/// cauchy-binet, deleted-block, row-op-minor, compound, conjugation-minor,
/// wedge-contract.
const std::vector<std::string>& identity_names();

/// Default dimension range (inclusive) for the named identity.
/// Throws PreconditionError for an unknown name.
std::pair<int, int> default_dims(const std::string& name);

/// Runs `trials` randomized checks of the named identity on inputs whose
/// dimension is drawn uniformly from [dim_lo, dim_hi]. A trial fails when
/// the two sides of the identity disagree or evaluating them throws; the
/// first failing trial's inputs are serialized into the report. Throws
/// PreconditionError for an unknown name, a negative trial count, or a
/// dimension range that is empty or below the identity's minimum.
FuzzReport fuzz_identity(const std::string& name, long trials, int dim_lo,
                         int dim_hi, std::uint64_t seed, int jobs = 1);

}  // namespace ncert::fuzz
