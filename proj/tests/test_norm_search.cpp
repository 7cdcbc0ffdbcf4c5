#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "ncert/cyclotomic.hpp"
#include "ncert/errors.hpp"
#include "ncert/norm_search.hpp"
#include "ncert/reduction.hpp"

using ncert::Int;
namespace cyclo = ncert::cyclo;
namespace red = ncert::reduction;
namespace search = ncert::search;
using cyclo::CycInt;

namespace {

CycInt cyc(int n, std::initializer_list<long> coeffs) {
  std::vector<Int> c;
  for (long v : coeffs) c.emplace_back(v);
  return CycInt(n, std::move(c));
}

}  // namespace

TEST_CASE("norm equation solutions come back in the canonical order") {
  search::SearchConfig cfg;
  cfg.coeff_bound = 2;
  const std::vector<CycInt> sols = search::solve_norm_equation(3, Int(7), cfg);
  REQUIRE(sols.size() == 4);
  CHECK(sols[0] == cyc(3, {1, -2}));
  CHECK(sols[1] == cyc(3, {-1, 2}));
  CHECK(sols[2] == cyc(3, {2, -1}));
  CHECK(sols[3] == cyc(3, {-2, 1}));
}

TEST_CASE("deduplication keeps one representative per orbit") {
  search::SearchConfig cfg;
  cfg.coeff_bound = 2;
  cfg.dedupe = true;
  const std::vector<CycInt> sols = search::solve_norm_equation(3, Int(7), cfg);
  REQUIRE(sols.size() == 1);
  CHECK(sols[0] == cyc(3, {1, -2}));
}

TEST_CASE("sharded search returns exactly the sequential result") {
  search::SearchConfig cfg;
  cfg.coeff_bound = 2;
  const auto sequential = search::solve_norm_equation(3, Int(7), cfg, 1);
  const auto sharded = search::solve_norm_equation(3, Int(7), cfg, 4);
  CHECK(sequential == sharded);
}

TEST_CASE("one minus zeta solves the norm equation for the conductor itself") {
  search::SearchConfig cfg;
  cfg.coeff_bound = 1;
  for (int q : {3, 5, 7}) {
    const std::vector<CycInt> sols =
        search::solve_norm_equation(q, Int(q), cfg);
    bool found = false;
    for (const CycInt& x : sols) {
      std::vector<Int> expect(static_cast<size_t>(q - 1), 0);
      expect[0] = 1;
      expect[1] = -1;
      found = found || x.coeffs() == expect;
    }
    CHECK(found);
  }
}

TEST_CASE("a bundled element is found within the unit coefficient box") {
  search::SearchConfig cfg;
  cfg.coeff_bound = 1;
  cfg.max_candidates = 2000;
  const std::vector<CycInt> sols =
      search::solve_norm_equation(29, Int(5801), cfg);
  const CycInt target = cyclo::parse_cyc(29, "1 + z + z^4");
  bool found = false;
  for (const CycInt& x : sols) found = found || x == target;
  CHECK(found);
}

TEST_CASE("norm search validates its inputs") {
  search::SearchConfig cfg;
  CHECK_THROWS_AS(search::solve_norm_equation(4, Int(7), cfg),
                  ncert::PreconditionError);
  CHECK_THROWS_AS(search::solve_norm_equation(3, Int(0), cfg),
                  ncert::PreconditionError);
  cfg.coeff_bound = 0;
  CHECK_THROWS_AS(search::solve_norm_equation(3, Int(7), cfg),
                  ncert::PreconditionError);
  cfg.coeff_bound = 2;
  // Norms of nonzero elements are positive, so a negative target is empty.
  CHECK(search::solve_norm_equation(3, Int(-7), cfg).empty());
}

TEST_CASE("smallest order-q residue matches frozen values") {
  CHECK(search::find_r(Int(5801), 29) == 674);
  CHECK(search::find_r(Int(4931), 29) == 95);
  CHECK(search::find_r(Int(32783), 37) == 2819);
  CHECK(search::find_r(Int(101107), 41) == 9283);
  CHECK_THROWS_AS(search::find_r(Int(5802), 29), ncert::PreconditionError);
  // 5 does not divide 7 - 1.
  CHECK_THROWS_AS(search::find_r(Int(7), 5), ncert::PreconditionError);
}

TEST_CASE("twist search finds the congruence exponent") {
  const CycInt x = cyclo::parse_cyc(29, "1 + z + z^4");
  CHECK(search::find_twist(x, Int(674), Int(5801)) == 14);
  // r of the wrong multiplicative order is rejected.
  CHECK_THROWS_AS(search::find_twist(x, Int(2), Int(5801)),
                  ncert::PreconditionError);
  // Element of the wrong norm is rejected.
  CHECK_THROWS_AS(search::find_twist(cyclo::parse_cyc(29, "1"), Int(674),
                                     Int(5801)),
                  ncert::PreconditionError);
}

TEST_CASE("witness assembly picks the first twist that evaluates cleanly") {
  const red::GroupSpec spec = red::make_group_spec(Int(7), 3, Int(2));
  search::SearchConfig cfg;
  cfg.coeff_bound = 2;
  const auto a2 = search::find_witness(spec, cfg);
  REQUIRE(a2.has_value());
  CHECK(a2->spec == spec);
  CHECK(a2->witness.a1 == 1);
  CHECK(a2->witness.alphas == std::vector<Int>{Int(3), Int(2)});
  CHECK(a2->twist_k == 2);

  cfg.coeff_bound = 3;
  const auto a3 = search::find_witness(spec, cfg);
  REQUIRE(a3.has_value());
  CHECK(a3->witness.a1 == 1);
  CHECK(a3->witness.alphas == std::vector<Int>{Int(1), Int(3)});
  CHECK(a3->twist_k == 1);
}

TEST_CASE("witness assembly reports an exhausted box as empty") {
  // Norm-13 elements at conductor 3 need a coefficient of magnitude 3+.
  const red::GroupSpec spec = red::make_group_spec(Int(13), 3, Int(3));
  search::SearchConfig cfg;
  cfg.coeff_bound = 2;
  CHECK_FALSE(search::find_witness(spec, cfg).has_value());
}

TEST_CASE("assembled witnesses always validate and certify") {
  search::SearchConfig cfg;
  for (const auto& [m, n, r] : std::vector<std::tuple<long, int, long>>{
           {7, 3, 2}, {9, 3, 4}, {25, 5, 6}, {11, 5, 3}}) {
    const red::GroupSpec spec = red::make_group_spec(Int(m), n, Int(r));
    const auto found = search::find_witness(spec, cfg);
    REQUIRE(found.has_value());
    CHECK(found->spec == spec);
    CHECK_NOTHROW(red::validate_witness(found->witness, spec));
    const red::Certificate cert = red::certify(
        red::run_reduction(spec, found->witness), found->witness, spec);
    CHECK(cert.verdict == red::Verdict::Rational);
  }
}

TEST_CASE("prime power family instances match the frozen table") {
  const std::vector<std::tuple<int, long, int, long, long>> table = {
      {3, 1, 2, 9, 4},     {3, 1, 3, 27, 10},  {3, 2, 2, 18, 7},
      {3, 2, 3, 54, 19},   {5, 1, 2, 25, 6},   {5, 1, 3, 125, 26},
      {5, 2, 2, 50, 11},   {5, 2, 3, 250, 51}, {7, 1, 2, 49, 8},
      {7, 1, 3, 343, 50},  {7, 2, 2, 98, 15},  {7, 2, 3, 686, 99},
  };
  for (const auto& [q, alpha, k, m, r] : table) {
    const search::FamilyInstance inst =
        search::prime_power_family(q, Int(alpha), k);
    CHECK(inst.spec.m == m);
    CHECK(inst.spec.r == r);
    CHECK(inst.spec.mprime == q);
    CHECK_NOTHROW(red::validate_witness(inst.witness, inst.spec));
    CHECK(cyclo::norm(red::witness_element(inst.witness, q)).value == q);
  }
}

TEST_CASE("prime power family rejects out-of-range parameters") {
  CHECK_THROWS_AS(search::prime_power_family(4, Int(1), 2),
                  ncert::PreconditionError);
  CHECK_THROWS_AS(search::prime_power_family(3, Int(0), 2),
                  ncert::PreconditionError);
  CHECK_THROWS_AS(search::prime_power_family(3, Int(6), 2),
                  ncert::PreconditionError);  // q divides alpha
  CHECK_THROWS_AS(search::prime_power_family(3, Int(1), 1),
                  ncert::PreconditionError);
}

TEST_CASE("the built-in table lists all twenty-four rows") {
  const auto& rows = search::builtin_examples();
  CHECK(rows.size() == 24);
  int q29 = 0, q31 = 0, q37 = 0, q41 = 0;
  for (const auto& row : rows) {
    if (row.q == 29) ++q29;
    if (row.q == 31) ++q31;
    if (row.q == 37) ++q37;
    if (row.q == 41) ++q41;
  }
  CHECK(q29 == 8);
  CHECK(q31 == 5);
  CHECK(q37 == 6);
  CHECK(q41 == 5);
}

TEST_CASE("conductor-29 rows certify except the known bad record") {
  const auto outcomes = search::run_examples(29);
  REQUIRE(outcomes.size() == 8);
  int ok = 0;
  for (const auto& o : outcomes) {
    if (o.ok) {
      ++ok;
      CHECK(o.record.verdict == red::Verdict::Rational);
      CHECK(o.final_entry == 1);
      REQUIRE(o.pivots.size() == 26);
      for (const Int& e : o.pivots) CHECK(e == 1);
      CHECK(o.final_matrix.has_value());
    }
  }
  CHECK(ok == 7);
  // The sixth row claims norm 18097 but its element has norm 5801.
  const auto& bad = outcomes[5];
  CHECK_FALSE(bad.ok);
  CHECK(bad.record.p == 18097);
  CHECK(bad.note == "norm is 5801, expected 18097");

  const std::string csv = search::to_csv(outcomes);
  CHECK(csv.find("q,p,x,r,k,verdict\n") == 0);
  CHECK(csv.find("29,5801,1 + z + z^4,674,14,Rational\n") !=
        std::string::npos);
  CHECK(csv.find("29,18097,1 + z + z^4,,,error\n") != std::string::npos);
}

TEST_CASE("an unknown conductor filter selects nothing") {
  CHECK(search::run_examples(43).empty());
}

TEST_CASE("strict reproduction stops at the first failing row") {
  CHECK_THROWS_WITH_AS(
      search::reproduce_examples(),
      "reproduce_examples: triple (q=29, p=18097, x=1 + z + z^4) failed: "
      "norm is 5801, expected 18097",
      ncert::ReducibilityError);
}
