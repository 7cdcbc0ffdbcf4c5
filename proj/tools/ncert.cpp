#include <cctype>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ncert/cyclotomic.hpp"
#include "ncert/errors.hpp"
#include "ncert/fuzz.hpp"
#include "ncert/json_io.hpp"
#include "ncert/norm_search.hpp"
#include "ncert/reduction.hpp"

namespace {

using ncert::Int;
namespace cyclo = ncert::cyclo;
namespace fuzz = ncert::fuzz;
namespace jsonio = ncert::jsonio;
namespace reduction = ncert::reduction;
namespace search = ncert::search;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInconclusive = 2;

Int parse_flag_int(const std::string& text, const std::string& flag) {
  try {
    return Int(text);
  } catch (const std::invalid_argument&) {
    throw ncert::ParseError(flag + ": not a decimal integer: '" + text + "'");
  }
}

std::pair<int, int> parse_dims(const std::string& text) {
  const auto sep = text.find("..");
  if (sep == std::string::npos) {
    throw ncert::ParseError("--dims: expected the form a..b, got '" + text +
                            "'");
  }
  try {
    const int lo = std::stoi(text.substr(0, sep));
    const int hi = std::stoi(text.substr(sep + 2));
    return {lo, hi};
  } catch (const std::exception&) {
    throw ncert::ParseError("--dims: expected the form a..b, got '" + text +
                            "'");
  }
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag_seed) {
  if (flag_seed) return *flag_seed;
  if (const char* env = std::getenv("NOETHER_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw ncert::ParseError(std::string("NOETHER_SEED: not an integer: '") +
                              env + "'");
    }
  }
  return fuzz::kDefaultFuzzSeed;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

struct Timer {
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

void emit_report(const std::string& path, jsonio::RunReport report,
                 const Timer& timer) {
  if (path.empty()) return;
  report.wall_ms = timer.ms();
  write_file(path, jsonio::report_to_json(report));
}

// --------------------------------------------------------------------------
// Subcommand drivers. Each returns the process exit code.
// --------------------------------------------------------------------------

int run_norm(int q, const std::string& x_text, const std::string& report_path) {
  const Timer timer;
  const cyclo::CycInt x = cyclo::parse_cyc(q, x_text);
  const Int value = cyclo::norm(x).value;
  std::cout << ncert::to_string(value) << "\n";
  jsonio::RunReport report;
  report.command = "norm";
  report.inputs = {{"q", std::to_string(q)}, {"x", x_text}};
  report.outcome = "ok";
  report.payload_json =
      nlohmann::json{{"norm", ncert::to_string(value)}}.dump(2);
  emit_report(report_path, report, timer);
  return kExitOk;
}

int run_solve_norm(int q, const std::string& target_text,
                   const std::string& bound_text, long max_candidates,
                   bool dedupe, int jobs, const std::string& report_path) {
  const Timer timer;
  const Int target = parse_flag_int(target_text, "--target");
  search::SearchConfig cfg;
  cfg.coeff_bound = parse_flag_int(bound_text, "--bound");
  cfg.max_candidates = max_candidates;
  cfg.dedupe = dedupe;
  const std::vector<cyclo::CycInt> sols =
      search::solve_norm_equation(q, target, cfg, jobs);
  nlohmann::json listing = nlohmann::json::array();
  for (const cyclo::CycInt& x : sols) {
    const std::string text = cyclo::to_text(x);
    std::cout << text << "\n";
    listing.push_back(text);
  }
  const bool found = !sols.empty();
  if (!found) {
    std::cerr << "no solutions with coefficients bounded by "
              << ncert::to_string(cfg.coeff_bound)
              << " (existence beyond the box is undecided)\n";
  }
  jsonio::RunReport report;
  report.command = "solve-norm";
  report.inputs = {{"q", std::to_string(q)},
                   {"target", target_text},
                   {"dedupe", dedupe ? "true" : "false"}};
  report.bounds = {{"coeff_bound", ncert::to_string(cfg.coeff_bound)},
                   {"max_candidates", std::to_string(cfg.max_candidates)}};
  report.outcome = found ? "ok" : "inconclusive";
  report.payload_json =
      nlohmann::json{{"count", sols.size()}, {"solutions", listing}}.dump(2);
  emit_report(report_path, report, timer);
  return found ? kExitOk : kExitInconclusive;
}

int run_certify(const std::string& m_text, int n, const std::string& r_text,
                const std::string& bound_text, long max_candidates, int jobs,
                const std::string& out_path, const std::string& report_path) {
  const Timer timer;
  jsonio::RunReport report;
  report.command = "certify";
  report.inputs = {{"m", m_text}, {"n", std::to_string(n)}, {"r", r_text}};
  report.bounds = {{"coeff_bound", bound_text},
                   {"max_candidates", std::to_string(max_candidates)}};

  reduction::GroupSpec spec;
  try {
    spec = reduction::make_group_spec(parse_flag_int(m_text, "--m"), n,
                                      parse_flag_int(r_text, "--r"));
  } catch (const ncert::PreconditionError& e) {
    std::cerr << "invalid spec: " << e.what() << "\n";
    report.outcome = "error";
    report.payload_json = nlohmann::json{{"error", e.what()}}.dump(2);
    emit_report(report_path, report, timer);
    return kExitError;
  }

  search::SearchConfig cfg;
  cfg.coeff_bound = parse_flag_int(bound_text, "--bound");
  cfg.max_candidates = max_candidates;
  const std::optional<search::WitnessAssembly> assembly =
      search::find_witness(spec, cfg, jobs);
  if (!assembly) {
    std::cerr << "no witness with norm " << ncert::to_string(spec.mprime)
              << " found within coefficient bound "
              << ncert::to_string(cfg.coeff_bound)
              << "; raise --bound to keep searching\n";
    report.outcome = "inconclusive";
    report.payload_json = nlohmann::json{{"witness", nullptr}}.dump(2);
    emit_report(report_path, report, timer);
    return kExitInconclusive;
  }

  const reduction::ReductionTrace trace =
      reduction::run_reduction(assembly->spec, assembly->witness);
  const reduction::Certificate cert =
      reduction::certify(trace, assembly->witness, assembly->spec);
  const std::string cert_json = jsonio::certificate_to_json(cert);
  write_file(out_path, cert_json);
  std::cout << "verdict: " << reduction::verdict_name(cert.verdict) << "\n";
  std::cerr << "certificate written to " << out_path << " (twist k = "
            << assembly->twist_k << ")\n";
  report.outcome =
      cert.verdict == reduction::Verdict::Rational ? "ok" : "inconclusive";
  report.payload_json = cert_json;
  emit_report(report_path, report, timer);
  return cert.verdict == reduction::Verdict::Rational ? kExitOk
                                                      : kExitInconclusive;
}

int run_family(int q, const std::string& alpha_text, int k,
               const std::string& out_path, const std::string& report_path) {
  const Timer timer;
  const Int alpha = parse_flag_int(alpha_text, "--alpha");
  const search::FamilyInstance inst = search::prime_power_family(q, alpha, k);
  const reduction::ReductionTrace trace =
      reduction::run_reduction(inst.spec, inst.witness);
  const reduction::Certificate cert =
      reduction::certify(trace, inst.witness, inst.spec);
  std::cout << "m=" << ncert::to_string(inst.spec.m) << " n=" << inst.spec.n
            << " r=" << ncert::to_string(inst.spec.r)
            << " mprime=" << ncert::to_string(inst.spec.mprime) << "\n"
            << "verdict: " << reduction::verdict_name(cert.verdict) << "\n";
  const std::string cert_json = jsonio::certificate_to_json(cert);
  if (!out_path.empty()) {
    write_file(out_path, cert_json);
    std::cerr << "certificate written to " << out_path << "\n";
  }
  jsonio::RunReport report;
  report.command = "family";
  report.inputs = {{"q", std::to_string(q)},
                   {"alpha", alpha_text},
                   {"k", std::to_string(k)}};
  report.outcome =
      cert.verdict == reduction::Verdict::Rational ? "ok" : "error";
  report.payload_json = cert_json;
  emit_report(report_path, report, timer);
  return cert.verdict == reduction::Verdict::Rational ? kExitOk : kExitError;
}

int run_examples(const std::optional<int>& q_filter,
                 const std::string& csv_path, const std::string& report_path) {
  const Timer timer;
  const std::vector<search::ExampleOutcome> outcomes =
      search::run_examples(q_filter);
  const std::string csv = search::to_csv(outcomes);
  std::cout << csv;
  if (!csv_path.empty()) write_file(csv_path, csv);

  std::string first_failure;
  int failed = 0;
  for (const search::ExampleOutcome& o : outcomes) {
    if (o.ok) continue;
    ++failed;
    if (first_failure.empty()) {
      first_failure = "triple (q=" + std::to_string(o.record.q) +
                      ", p=" + ncert::to_string(o.record.p) +
                      ", x=" + cyclo::to_text(o.record.x) +
                      ") failed: " + o.note;
    }
  }
  if (outcomes.empty()) {
    std::cerr << "warning: no built-in rows match the filter; "
                 "nothing was checked\n";
  } else if (failed > 0) {
    std::cerr << first_failure << "\n"
              << failed << " of " << outcomes.size() << " rows failed\n";
  }
  jsonio::RunReport report;
  report.command = "examples";
  report.inputs = {
      {"q", q_filter ? std::to_string(*q_filter) : std::string("all")}};
  report.outcome = failed == 0 ? "ok" : "error";
  report.payload_json = nlohmann::json{{"rows", outcomes.size()},
                                       {"failed", failed},
                                       {"first_failure", first_failure}}
                            .dump(2);
  emit_report(report_path, report, timer);
  return failed == 0 ? kExitOk : kExitError;
}

int run_fuzz(const std::string& id, long trials,
             const std::optional<std::string>& dims_text,
             const std::optional<std::uint64_t>& seed_flag, int jobs,
             const std::string& report_path) {
  const Timer timer;
  auto [lo, hi] = fuzz::default_dims(id);
  if (dims_text) std::tie(lo, hi) = parse_dims(*dims_text);
  const std::uint64_t seed = resolve_seed(seed_flag);
  const fuzz::FuzzReport result = fuzz::fuzz_identity(id, trials, lo, hi,
                                                      seed, jobs);

  jsonio::RunReport report;
  report.command = "fuzz";
  report.inputs = {{"id", id},
                   {"trials", std::to_string(trials)},
                   {"dims", std::to_string(lo) + ".." + std::to_string(hi)},
                   {"seed", std::to_string(seed)}};
  report.outcome = result.passed() ? "ok" : "error";
  report.payload_json =
      nlohmann::json{{"identity", result.name},
                     {"trials", result.trials},
                     {"dim_lo", result.dim_lo},
                     {"dim_hi", result.dim_hi},
                     {"seed", result.seed},
                     {"failures", result.failures},
                     {"first_fail_index", result.first_fail_index},
                     {"first_fail_dump", result.first_fail_dump}}
          .dump(2);
  const std::string text = jsonio::report_to_json(report);
  std::cout << text;
  if (!report_path.empty()) write_file(report_path, text);
  if (trials == 0) {
    std::cerr << "warning: 0 trials requested; the pass is vacuous\n";
    return kExitOk;
  }
  if (!result.passed()) {
    std::cerr << "identity '" << id << "' failed " << result.failures
              << " of " << result.trials << " trials; first at index "
              << result.first_fail_index << "\n"
              << result.first_fail_dump;
    return kExitError;
  }
  return kExitOk;
}

int run_reduce(const std::string& m_text, int n, const std::string& r_text,
               const std::string& a1_text, const std::string& alphas_text,
               const std::string& bound_text, long max_candidates,
               const std::string& out_path) {
  const reduction::GroupSpec spec = reduction::make_group_spec(
      parse_flag_int(m_text, "--m"), n, parse_flag_int(r_text, "--r"));

  reduction::Witness witness;
  if (!a1_text.empty() || !alphas_text.empty()) {
    if (a1_text.empty() || alphas_text.empty()) {
      throw ncert::PreconditionError(
          "reduce: --a1 and --alphas must be given together");
    }
    witness.a1 = parse_flag_int(a1_text, "--a1");
    std::string item;
    for (size_t i = 0; i <= alphas_text.size(); ++i) {
      if (i == alphas_text.size() || alphas_text[i] == ',') {
        if (!item.empty()) {
          witness.alphas.push_back(parse_flag_int(item, "--alphas"));
        }
        item.clear();
      } else if (!std::isspace(static_cast<unsigned char>(alphas_text[i]))) {
        item += alphas_text[i];
      }
    }
    reduction::validate_witness(witness, spec);
  } else {
    search::SearchConfig cfg;
    cfg.coeff_bound = parse_flag_int(bound_text, "--bound");
    cfg.max_candidates = max_candidates;
    const std::optional<search::WitnessAssembly> assembly =
        search::find_witness(spec, cfg);
    if (!assembly) {
      std::cerr << "no witness found within coefficient bound "
                << ncert::to_string(cfg.coeff_bound) << "\n";
      return kExitInconclusive;
    }
    witness = assembly->witness;
  }

  const reduction::ReductionTrace trace =
      reduction::run_reduction(spec, witness);
  const std::string text = jsonio::trace_to_json(spec, witness, trace);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_file(out_path, text);
    std::cerr << "trace written to " << out_path << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "exact norms, witness search and unimodular-reduction certificates "
      "for metacyclic group specs"};
  app.require_subcommand(1);

  // norm
  auto* norm_cmd = app.add_subcommand("norm", "norm of a cyclotomic integer");
  int norm_q = 0;
  std::string norm_x;
  std::string norm_report;
  norm_cmd->add_option("--q", norm_q, "odd prime conductor")->required();
  norm_cmd->add_option("--x", norm_x, "element, e.g. \"1 + z + z^4\"")
      ->required();
  norm_cmd->add_option("--report", norm_report, "write a run report here");

  // solve-norm
  auto* solve_cmd =
      app.add_subcommand("solve-norm", "find elements of a given norm");
  int solve_q = 0;
  std::string solve_target;
  std::string solve_bound = "2";
  long solve_max = 1000000;
  bool solve_dedupe = false;
  int solve_jobs = 1;
  std::string solve_report;
  solve_cmd->add_option("--q", solve_q, "odd prime conductor")->required();
  solve_cmd->add_option("--target", solve_target, "norm value to hit")
      ->required();
  solve_cmd->add_option("--bound", solve_bound, "coefficient box half-width");
  solve_cmd->add_option("--max-candidates", solve_max,
                        "stop after this many candidates");
  solve_cmd->add_flag("--dedupe", solve_dedupe,
                      "collapse conjugate/unit-shift orbits");
  solve_cmd->add_option("--jobs", solve_jobs, "worker threads");
  solve_cmd->add_option("--report", solve_report, "write a run report here");

  // certify
  auto* certify_cmd = app.add_subcommand(
      "certify", "search for a witness and emit a reduction certificate");
  std::string certify_m, certify_r;
  int certify_n = 0;
  std::string certify_bound = "2";
  long certify_max = 1000000;
  int certify_jobs = 1;
  std::string certify_out = "certificate.json";
  std::string certify_report;
  certify_cmd->add_option("--m", certify_m, "modulus m")->required();
  certify_cmd->add_option("--n", certify_n, "odd prime n")->required();
  certify_cmd->add_option("--r", certify_r, "twist r of order n mod m")
      ->required();
  certify_cmd->add_option("--bound", certify_bound,
                          "witness-search coefficient bound");
  certify_cmd->add_option("--max-candidates", certify_max,
                          "candidate cap for the witness search");
  certify_cmd->add_option("--jobs", certify_jobs, "worker threads");
  certify_cmd->add_option("--out", certify_out, "certificate output path");
  certify_cmd->add_option("--report", certify_report,
                          "write a run report here");

  // family
  auto* family_cmd = app.add_subcommand(
      "family", "certify a prime-power family instance (m = alpha q^k)");
  int family_q = 0, family_k = 0;
  std::string family_alpha = "1";
  std::string family_out, family_report;
  family_cmd->add_option("--q", family_q, "odd prime q")->required();
  family_cmd->add_option("--alpha", family_alpha, "cofactor alpha (q ∤ alpha)");
  family_cmd->add_option("--k", family_k, "exponent k >= 2")->required();
  family_cmd->add_option("--out", family_out, "certificate output path");
  family_cmd->add_option("--report", family_report, "write a run report here");

  // examples
  auto* examples_cmd = app.add_subcommand(
      "examples", "re-certify the built-in example triples (CSV)");
  int examples_q = 0;
  std::string examples_csv, examples_report;
  examples_cmd->add_option("--q", examples_q, "restrict to one conductor");
  examples_cmd->add_option("--csv", examples_csv, "also write the CSV here");
  examples_cmd->add_option("--report", examples_report,
                           "write a run report here");

  // fuzz
  auto* fuzz_cmd =
      app.add_subcommand("fuzz", "randomized determinant-identity checks");
  std::string fuzz_id;
  long fuzz_trials = 0;
  std::string fuzz_dims;
  std::uint64_t fuzz_seed = 0;
  int fuzz_jobs = 1;
  std::string fuzz_report;
  fuzz_cmd->add_option("--id", fuzz_id, "identity name")->required();
  fuzz_cmd->add_option("--trials", fuzz_trials, "number of trials")
      ->required();
  auto* dims_opt =
      fuzz_cmd->add_option("--dims", fuzz_dims, "dimension range a..b");
  auto* seed_opt = fuzz_cmd->add_option(
      "--seed", fuzz_seed, "seed (default: NOETHER_SEED env or 1729)");
  fuzz_cmd->add_option("--jobs", fuzz_jobs, "worker threads");
  fuzz_cmd->add_option("--report", fuzz_report, "write the report here too");

  // reduce
  auto* reduce_cmd = app.add_subcommand(
      "reduce", "dump the full reduction trace for a spec and witness");
  std::string reduce_m, reduce_r, reduce_a1, reduce_alphas;
  int reduce_n = 0;
  std::string reduce_bound = "2";
  long reduce_max = 1000000;
  std::string reduce_out;
  reduce_cmd->add_option("--m", reduce_m, "modulus m")->required();
  reduce_cmd->add_option("--n", reduce_n, "odd prime n")->required();
  reduce_cmd->add_option("--r", reduce_r, "twist r of order n mod m")
      ->required();
  reduce_cmd->add_option("--a1", reduce_a1, "witness a1 (with --alphas)");
  reduce_cmd->add_option("--alphas", reduce_alphas,
                         "witness alphas, comma-separated");
  reduce_cmd->add_option("--bound", reduce_bound,
                         "witness-search bound when no witness is given");
  reduce_cmd->add_option("--max-candidates", reduce_max,
                         "candidate cap for the witness search");
  reduce_cmd->add_option("--out", reduce_out, "trace output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (norm_cmd->parsed()) return run_norm(norm_q, norm_x, norm_report);
    if (solve_cmd->parsed()) {
      return run_solve_norm(solve_q, solve_target, solve_bound, solve_max,
                            solve_dedupe, solve_jobs, solve_report);
    }
    if (certify_cmd->parsed()) {
      return run_certify(certify_m, certify_n, certify_r, certify_bound,
                         certify_max, certify_jobs, certify_out,
                         certify_report);
    }
    if (family_cmd->parsed()) {
      return run_family(family_q, family_alpha, family_k, family_out,
                        family_report);
    }
    if (examples_cmd->parsed()) {
      std::optional<int> filter;
      if (examples_cmd->count("--q") > 0) filter = examples_q;
      return run_examples(filter, examples_csv, examples_report);
    }
    if (fuzz_cmd->parsed()) {
      std::optional<std::string> dims;
      if (dims_opt->count() > 0) dims = fuzz_dims;
      std::optional<std::uint64_t> seed;
      if (seed_opt->count() > 0) seed = fuzz_seed;
      return run_fuzz(fuzz_id, fuzz_trials, dims, seed, fuzz_jobs,
                      fuzz_report);
    }
    if (reduce_cmd->parsed()) {
      return run_reduce(reduce_m, reduce_n, reduce_r, reduce_a1, reduce_alphas,
                        reduce_bound, reduce_max, reduce_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  std::cerr << "error: no subcommand selected\n";
  return kExitError;
}
