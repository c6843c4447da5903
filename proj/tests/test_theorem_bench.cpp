#include <doctest.h>

#include <cmath>
#include <vector>

#include "stochord/errors.hpp"
#include "stochord/theorem_bench.hpp"

using namespace stochord;

namespace {

TheoremScenario scenario(TheoremId id, std::size_t count, std::uint64_t seed = 1) {
  TheoremScenario s;
  s.id = id;
  s.count = count;
  s.seed = seed;
  return s;
}

}  // namespace

TEST_CASE("theorem ids round-trip") {
  for (auto id : kAllTheorems) CHECK(parse_theorem_id(to_string(id)) == id);
  CHECK_FALSE(parse_theorem_id("T9.9"));
  CHECK(parse_hypothesis("pn") == Hypothesis::pn_membership);
  CHECK_FALSE(parse_hypothesis("gamma"));
}

TEST_CASE("scenario validation") {
  CHECK_THROWS_AS(run_scenario(scenario(TheoremId::T3_1, 0)), UsageError);
  auto s = scenario(TheoremId::T3_1, 2);
  s.grid_count = 8;
  CHECK_THROWS_AS(run_scenario(s), UsageError);
  CHECK_THROWS_AS(counterexample_probe(scenario(TheoremId::T3_5, 2), Hypothesis::pn_membership), UsageError);
}

TEST_CASE("worked example: W-G fixture") {
  auto s = scenario(TheoremId::T3_1, 1);
  s.want_curve = true;
  const auto r = run_scenario(s);
  CHECK(r.all_passed());
  CHECK(r.failures.empty());
  REQUIRE(r.curve);
  CHECK(r.curve->x.size() == 2048);
  for (double d : r.curve->diff) CHECK(d >= 0.0);
}

TEST_CASE("identity transform gives margin exactly zero") {
  auto s = scenario(TheoremId::T3_1, 1);
  s.fixture_transform = 1.0;
  const auto r = run_scenario(s);
  CHECK(r.all_passed());
  CHECK(r.worst_margin == 0.0);
}

TEST_CASE("worked example: GM fixture is independent of lambda") {
  std::vector<Curve> curves;
  for (double lambda : {0.1, 1.0, 10.0}) {
    auto s = scenario(TheoremId::T4_1, 1);
    s.fixture_lambda = lambda;
    s.grid_x_max = 0.7;
    s.want_curve = true;
    const auto r = run_scenario(s);
    CHECK(r.all_passed());
    REQUIRE(r.curve);
    curves.push_back(*r.curve);
  }
  for (std::size_t k = 0; k < curves[0].diff.size(); ++k) {
    CHECK(std::abs(curves[1].diff[k] - curves[0].diff[k]) <= 1e-12);
    CHECK(std::abs(curves[2].diff[k] - curves[0].diff[k]) <= 1e-12);
  }
}

TEST_CASE("randomized scenarios that hold") {
  for (auto id : {TheoremId::T3_1, TheoremId::T3_2, TheoremId::T3_3, TheoremId::T3_5, TheoremId::T4_1,
                  TheoremId::T4_2, TheoremId::T4_3, TheoremId::T4_4, TheoremId::T4_5}) {
    CAPTURE(to_string(id));
    const auto r = run_scenario(scenario(id, 25, 11));
    CHECK(r.run == 25);
    CHECK(r.passed == 25);
    CHECK(r.implication_violations == 0);
    CHECK(r.all_passed());
  }
}

TEST_CASE("report invariants") {
  // T3.4 as stated fails on weakly submajorized pairs with a strictly smaller
  // sum; its report must carry a witness for every failure.
  for (auto id : kAllTheorems) {
    const auto r = run_scenario(scenario(id, 6, 3));
    CHECK(r.passed <= r.run);
    CHECK(r.passed + r.failures.size() == r.run);
    for (const auto& f : r.failures) {
      CHECK_FALSE(f.parameters.empty());
      CHECK(f.witness_x.has_value());
    }
  }
}

TEST_CASE("seeded determinism") {
  for (auto id : kAllTheorems) {
    auto s = scenario(id, 8, 99);
    s.want_curve = true;
    const auto a = run_scenario(s);
    const auto b = run_scenario(s);
    CHECK(a == b);
    s.exec = Execution::serial;
    CHECK(run_scenario(s) == a);
    CHECK(counterexample_probe(s, Hypothesis::none) == a);
  }
  CHECK_FALSE(run_scenario(scenario(TheoremId::T3_2, 4, 1)) == run_scenario(scenario(TheoremId::T3_2, 4, 2)));
}

TEST_CASE("preconditions that cannot be met raise a scenario error") {
  auto s = scenario(TheoremId::T3_2, 3);
  s.fixed_beta = 1.0;
  CHECK_THROWS_AS(run_scenario(s), ScenarioError);
}

TEST_CASE("counterexample probes report without asserting") {
  auto pn = scenario(TheoremId::T3_1, 40, 5);
  const auto r1 = counterexample_probe(pn, Hypothesis::pn_membership);
  CHECK(r1.run == 40);
  CHECK(r1.dropped == Hypothesis::pn_membership);

  const auto r2 = counterexample_probe(scenario(TheoremId::T3_1, 40, 5), Hypothesis::beta_at_least_two);
  CHECK(r2.run == 40);

  auto fixed = scenario(TheoremId::T3_1, 40, 5);
  fixed.fixed_beta = 1.0;
  const auto r3 = counterexample_probe(fixed, Hypothesis::beta_at_least_two);
  CHECK(r3.run == 40);
  MESSAGE("T3.1 with beta = 1: " << r3.failures.size() << " of 40 instances violate the conclusion");

  const auto r4 = counterexample_probe(scenario(TheoremId::T4_3, 20, 5), Hypothesis::prefix_screening);
  CHECK(r4.run == 20);
}

TEST_CASE("report formatting") {
  const auto r = run_scenario(scenario(TheoremId::T4_2, 3));
  const auto text = format_report(r);
  CHECK(text.find("theorem T4.2") != std::string::npos);
  CHECK(text.find("result: PASS") != std::string::npos);
}

TEST_CASE("parallel W-G reversed hazard under weak majorization of alpha") {
  // The reversed hazard is c(x) * sum g(alpha_i) with g decreasing and convex,
  // so it is order-reversing for weak supermajorization. Equal sums (plain
  // majorization) satisfy both weak forms and keep X <=rh Y.
  const auto parallel = [](std::span<const double> alphas) {
    SystemSpec s{{}, Structure::parallel};
    for (double a : alphas) s.components.emplace_back(WeibullGParams{a, 2.5, 1.3, Baseline::exponential()});
    return s;
  };
  const std::vector<double> even{2, 2}, spread{1, 3};
  CHECK(certify_rh(parallel(even), parallel(spread), grid_for(parallel(even), parallel(spread))).holds);

  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto p = generate_hypothesis_pair(4, PairKind::weak_super, seed);
    const auto x = parallel(p.a);
    const auto y = parallel(p.b);
    CHECK(certify_rh(x, y, grid_for(x, y, 512)).holds);
  }

  // weak submajorization with a smaller total reverses the conclusion
  const std::vector<double> small{1, 1}, large{1, 2};
  const auto x = parallel(small);
  const auto y = parallel(large);
  CHECK(majorize_check(small, large, MajorizationKind::weak_sub));
  CHECK_FALSE(certify_rh(x, y, grid_for(x, y)).holds);
  CHECK(certify_rh(y, x, grid_for(x, y)).holds);
}
