#include "ncert/fuzz.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <thread>

#include "ncert/errors.hpp"
#include "ncert/linalg.hpp"
#include "ncert/matrix.hpp"
#include "ncert/rng.hpp"

namespace ncert::fuzz {

namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string values_line(const Int& lhs, const Int& rhs) {
  return "lhs: " + to_string(lhs) + "\nrhs: " + to_string(rhs) + "\n";
}

std::string index_set_text(const std::vector<int>& s) {
  std::string out = "{";
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out += " ";
    out += std::to_string(s[i]);
  }
  return out + "}";
}

// Random ordered partition of {1..n} into nonempty ascending blocks.
std::vector<std::vector<int>> random_partition(Rng& rng, int n) {
  std::vector<int> perm(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i + 1;
  for (int i = n - 1; i > 0; --i) {
    std::swap(perm[static_cast<size_t>(i)],
              perm[static_cast<size_t>(rng.uniform(0, i))]);
  }
  std::vector<std::vector<int>> blocks;
  blocks.emplace_back();
  for (int i = 0; i < n; ++i) {
    if (!blocks.back().empty() && rng.uniform(0, 1) == 1) blocks.emplace_back();
    blocks.back().push_back(perm[static_cast<size_t>(i)]);
  }
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  return blocks;
}

// Random ascending subset of {1..n} of the given size.
std::vector<int> random_subset(Rng& rng, int n, int size) {
  std::vector<int> pool(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) pool[static_cast<size_t>(i)] = i + 1;
  for (int i = 0; i < size; ++i) {
    std::swap(pool[static_cast<size_t>(i)],
              pool[static_cast<size_t>(rng.uniform(i, n - 1))]);
  }
  std::vector<int> s(pool.begin(), pool.begin() + size);
  std::sort(s.begin(), s.end());
  return s;
}

using Trial = std::function<std::optional<std::string>(Rng&, int, int)>;

std::optional<std::string> trial_laplace(Rng& rng, int lo, int hi) {
  const int n = static_cast<int>(rng.uniform(lo, hi));
  const IMatrix m = random_matrix(rng, n, n);
  const auto partition = random_partition(rng, n);
  const Int lhs = linalg::laplace_det(m, partition);
  const Int rhs = linalg::det(m);
  if (lhs == rhs) return std::nullopt;
  std::string dump = values_line(lhs, rhs) + "matrix:\n" + m.to_string();
  dump += "row partition:";
  for (const auto& b : partition) dump += " " + index_set_text(b);
  return dump + "\n";
}

std::optional<std::string> trial_cauchy_binet(Rng& rng, int lo, int hi) {
  const int a_dim = static_cast<int>(rng.uniform(lo, hi));
  const int b_dim = static_cast<int>(rng.uniform(lo, hi));
  const int m = std::min(a_dim, b_dim);
  const int n = std::max(a_dim, b_dim);
  const IMatrix a = random_matrix(rng, m, n);
  const IMatrix b = random_matrix(rng, n, m);
  const Int lhs = linalg::cauchy_binet(a, b);
  const Int rhs = linalg::det(a * b);
  if (lhs == rhs) return std::nullopt;
  return values_line(lhs, rhs) + "A:\n" + a.to_string() + "B:\n" +
         b.to_string();
}

std::optional<std::string> trial_deleted_block(Rng& rng, int lo, int hi) {
  const int n = static_cast<int>(rng.uniform(lo, hi));
  const IMatrix p = random_matrix(rng, n, n);
  const IMatrix product = linalg::deleted_block_product(p);
  const IMatrix q = linalg::adjugate(p);
  IMatrix expected = linalg::det(p) * IMatrix::identity(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) expected.at(i, j) -= p.at(i, 0) * q.at(0, j);
  }
  if (product == expected) return std::nullopt;
  return "matrix:\n" + p.to_string() + "product:\n" + product.to_string() +
         "expected:\n" + expected.to_string();
}

std::optional<std::string> trial_row_op_minor(Rng& rng, int lo, int hi) {
  const int n = static_cast<int>(rng.uniform(lo, hi));
  std::vector<Int> a(static_cast<size_t>(n));
  for (Int& v : a) v = rng.uniform(-5, 5);
  const IMatrix b = random_matrix(rng, n, n - 1);
  const auto [lhs, rhs] = linalg::row_op_minor_identity(a, b);
  if (lhs == rhs) return std::nullopt;
  std::string dump = values_line(lhs, rhs) + "a:";
  for (const Int& v : a) dump += " " + to_string(v);
  return dump + "\nB:\n" + b.to_string();
}

std::optional<std::string> trial_compound(Rng& rng, int lo, int hi) {
  const int n = static_cast<int>(rng.uniform(lo, hi));
  const IMatrix a = random_matrix(rng, n, n);
  const std::vector<int> rows = random_subset(rng, n, n - 2);
  const std::vector<int> cols = random_subset(rng, n, n - 2);
  const auto [lhs, rhs] = linalg::compound_identity(a, rows, cols);
  if (lhs == rhs) return std::nullopt;
  return values_line(lhs, rhs) + "matrix:\n" + a.to_string() +
         "rows: " + index_set_text(rows) + "\ncols: " + index_set_text(cols) +
         "\n";
}

std::optional<std::string> trial_conjugation_minor(Rng& rng, int lo, int hi) {
  const int n = static_cast<int>(rng.uniform(lo, hi));
  const IMatrix a = random_matrix(rng, n, n);
  const IMatrix p = random_unimodular(rng, n);
  const auto [lhs, rhs] = linalg::conjugation_minor_identity(a, p);
  if (lhs == -rhs) return std::nullopt;
  return values_line(lhs, rhs) + "A:\n" + a.to_string() + "P:\n" +
         p.to_string();
}

std::optional<std::string> trial_wedge_contract(Rng& rng, int lo, int hi) {
  const int n = static_cast<int>(rng.uniform(lo, hi));
  const IMatrix omega = random_matrix(rng, n, n - 1);
  const IMatrix v = random_matrix(rng, n, 1);
  const std::vector<Int> w = linalg::wedge(omega);
  Int lhs = 0;
  for (int i = 0; i < n; ++i) lhs += w[static_cast<size_t>(i)] * v.at(i, 0);
  IMatrix augmented(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n - 1; ++j) augmented.at(i, j) = omega.at(i, j);
    augmented.at(i, n - 1) = v.at(i, 0);
  }
  const Int rhs = linalg::det(augmented);
  if (lhs == rhs) return std::nullopt;
  return values_line(lhs, rhs) + "omega:\n" + omega.to_string() + "v:\n" +
         v.to_string();
}

struct IdentitySpec {
  const char* name;
  int min_dim;
  int default_lo;
  int default_hi;
  Trial trial;
};

const std::vector<IdentitySpec>& identity_table() {
  static const std::vector<IdentitySpec> table = {
      {"laplace", 1, 3, 6, trial_laplace},
      {"cauchy-binet", 1, 2, 5, trial_cauchy_binet},
      {"deleted-block", 2, 3, 6, trial_deleted_block},
      {"row-op-minor", 2, 3, 6, trial_row_op_minor},
      {"compound", 3, 3, 6, trial_compound},
      {"conjugation-minor", 3, 3, 5, trial_conjugation_minor},
      {"wedge-contract", 2, 2, 6, trial_wedge_contract},
  };
  return table;
}

const IdentitySpec& lookup(const std::string& name) {
  for (const IdentitySpec& s : identity_table()) {
    if (name == s.name) return s;
  }
  throw PreconditionError("fuzz_identity: unknown identity '" + name + "'");
}

}  // namespace

const std::vector<std::string>& identity_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const IdentitySpec& s : identity_table()) out.emplace_back(s.name);
    return out;
  }();
  return names;
}

std::pair<int, int> default_dims(const std::string& name) {
  const IdentitySpec& s = lookup(name);
  return {s.default_lo, s.default_hi};
}

FuzzReport fuzz_identity(const std::string& name, long trials, int dim_lo,
                         int dim_hi, std::uint64_t seed, int jobs) {
  const IdentitySpec& spec = lookup(name);
  if (trials < 0) {
    throw PreconditionError("fuzz_identity: trial count must not be negative");
  }
  if (dim_lo > dim_hi) {
    throw PreconditionError("fuzz_identity: empty dimension range");
  }
  if (dim_lo < spec.min_dim) {
    throw PreconditionError("fuzz_identity: identity '" + name +
                            "' needs dimension at least " +
                            std::to_string(spec.min_dim));
  }
  FuzzReport report;
  report.name = name;
  report.trials = trials;
  report.dim_lo = dim_lo;
  report.dim_hi = dim_hi;
  report.seed = seed;
  if (trials == 0) return report;

  if (jobs < 1) jobs = 1;
  jobs = static_cast<int>(std::min<long>(jobs, trials));

  struct Shard {
    long failures = 0;
    long first_fail_index = -1;
    std::string first_fail_dump;
  };
  std::vector<Shard> shards(static_cast<size_t>(jobs));

  auto work = [&](int shard_id) {
    Shard& sh = shards[static_cast<size_t>(shard_id)];
    for (long i = shard_id; i < trials; i += jobs) {
      Rng rng(mix(seed, static_cast<std::uint64_t>(i)));
      std::optional<std::string> dump;
      try {
        dump = spec.trial(rng, dim_lo, dim_hi);
      } catch (const std::exception& e) {
        dump = std::string("exception: ") + e.what() + "\n";
      }
      if (!dump) continue;
      ++sh.failures;
      if (sh.first_fail_index < 0) {
        sh.first_fail_index = i;
        sh.first_fail_dump = "identity: " + name + "\ntrial: " +
                             std::to_string(i) + "\n" + *dump;
      }
    }
  };

  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  for (const Shard& sh : shards) {
    report.failures += sh.failures;
    if (sh.first_fail_index >= 0 &&
        (report.first_fail_index < 0 ||
         sh.first_fail_index < report.first_fail_index)) {
      report.first_fail_index = sh.first_fail_index;
      report.first_fail_dump = sh.first_fail_dump;
    }
  }
  return report;
}

}  // namespace ncert::fuzz
