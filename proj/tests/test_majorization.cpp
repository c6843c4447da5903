#include <doctest.h>

#include <algorithm>
#include <vector>

#include "stochord/errors.hpp"
#include "stochord/majorization.hpp"
#include "stochord/random.hpp"

using namespace stochord;

namespace {

using Kind = MajorizationKind;

ParamMatrix m2(double a, double b, double c, double d) {
  const double top[] = {a, b};
  const double bottom[] = {c, d};
  return ParamMatrix(top, bottom);
}

}  // namespace

TEST_CASE("majorize_check basics") {
  const std::vector<double> a{2, 2}, b{3, 1};
  CHECK(majorize_check(a, b, Kind::plain));
  CHECK_FALSE(majorize_check(b, a, Kind::plain));

  const std::vector<double> c{1, 2, 3}, d{0, 2, 4};
  CHECK(majorize_check(c, d, Kind::plain));
  for (auto k : {Kind::plain, Kind::weak_sub, Kind::weak_super}) CHECK(majorize_check(c, c, k));

  const std::vector<double> shorter{1, 2};
  CHECK_THROWS_AS(majorize_check(c, shorter, Kind::plain), UsageError);
  CHECK_THROWS_AS(majorize_check(std::vector<double>{}, std::vector<double>{}, Kind::plain), UsageError);
}

TEST_CASE("weak forms without plain majorization") {
  const std::vector<double> a{1, 1}, b{1, 2};
  auto r = implication_suite(a, b);
  CHECK(r.weak_sub);
  CHECK_FALSE(r.plain);

  const std::vector<double> c{2, 2};
  r = implication_suite(c, b);
  CHECK(r.weak_super);
  CHECK_FALSE(r.plain);
}

TEST_CASE("tolerance absorbs rounding but not real violations") {
  const std::vector<double> a{0.1 + 0.2, 0.3}, b{0.3, 0.3};
  CHECK(majorize_check(a, b, Kind::plain));
  const std::vector<double> c{1.0, 1.0 + 1e-9}, d{1.0, 1.0};
  CHECK_FALSE(majorize_check(c, d, Kind::weak_sub));
}

TEST_CASE("T-transform on the worked example") {
  const auto star = m2(4.8, 3.4, 2.5, 1.6);
  const auto out = apply_t_transform(star, {0.45, 0, 1});
  CHECK(std::abs(out(0, 0) - 4.03) <= 1e-12);
  CHECK(std::abs(out(0, 1) - 4.17) <= 1e-12);
  CHECK(std::abs(out(1, 0) - 2.005) <= 1e-12);
  CHECK(std::abs(out(1, 1) - 2.095) <= 1e-12);

  CHECK(apply_t_transform(star, {1.0, 0, 1}) == star);
  CHECK(apply_t_transform(star, {0.0, 0, 1}) == m2(3.4, 4.8, 1.6, 2.5));
  CHECK_THROWS_AS(apply_t_transform(star, {0.5, 0, 2}), UsageError);
  CHECK_THROWS_AS(apply_t_transform(star, {1.5, 0, 1}), UsageError);
  CHECK_THROWS_AS(apply_t_transform(star, {0.5, 1, 1}), UsageError);
}

TEST_CASE("T-transform leaves other columns and agrees with the dense matrix") {
  const double top[] = {1, 2, 3, 4};
  const double bottom[] = {5, 6, 7, 8};
  const ParamMatrix m(top, bottom);
  const TTransform t{0.3, 1, 3};
  const auto out = apply_t_transform(m, t);
  CHECK(out(0, 0) == 1);
  CHECK(out(1, 2) == 7);
  const Eigen::MatrixXd dense = m.values() * t_transform_matrix(4, t);
  CHECK((dense - out.values()).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("chain solve") {
  const auto star = m2(4.8, 3.4, 2.5, 1.6);
  const auto plain = m2(4.03, 4.17, 2.005, 2.095);
  const auto l = chain_majorize_solve_2x2(star, plain);
  REQUIRE(l);
  CHECK(std::abs(*l - 0.45) <= 1e-9);
  CHECK(chain_majorize_solve_2x2(star, star) == 1.0);
  CHECK_FALSE(chain_majorize_solve_2x2(m2(1, 2, 1, 2), m2(0.5, 2.5, 0.5, 2.5)));
  // different lambdas per row: no single transform
  CHECK_FALSE(chain_majorize_solve_2x2(star, m2(4.03, 4.17, 2.5, 1.6)));
}

TEST_CASE("ParamMatrix validation") {
  CHECK_THROWS_AS(m2(1, 0, 1, 1), UsageError);
  CHECK_THROWS_AS(m2(1, -2, 1, 1), UsageError);
  const double one[] = {1};
  CHECK_THROWS_AS(ParamMatrix(one, one), UsageError);
}

TEST_CASE("doubly stochastic") {
  CHECK(doubly_stochastic_check(Eigen::MatrixXd::Identity(4, 4)));
  Eigen::MatrixXd q(2, 2);
  q << 0.5, 0.6, 0.5, 0.4;
  CHECK_FALSE(doubly_stochastic_check(q));

  auto rng = make_engine(17);
  Eigen::MatrixXd prod = Eigen::MatrixXd::Identity(5, 5);
  for (int k = 0; k < 3; ++k) {
    TTransform t{uniform01(rng), uniform_index(rng, 0, 4), 0};
    t.j = (t.i + 1 + uniform_index(rng, 0, 3)) % 5;
    prod *= t_transform_matrix(5, t);
  }
  CHECK(doubly_stochastic_check(prod));
}

TEST_CASE("P_n membership") {
  CHECK(pn_membership(m2(4.8, 3.4, 2.5, 1.6)));
  CHECK_FALSE(pn_membership(m2(4.8, 3.4, 1.6, 2.5)));
  const double top[] = {2, 2, 2};
  const double bottom[] = {3, 1, 2};
  CHECK(pn_membership(ParamMatrix(top, bottom)));
}

TEST_CASE("generator") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto sub = generate_hypothesis_pair(4, PairKind::weak_sub, seed);
    CHECK(majorize_check(sub.a, sub.b, Kind::weak_sub));
    const auto super = generate_hypothesis_pair(4, PairKind::weak_super, seed);
    CHECK(majorize_check(super.a, super.b, Kind::weak_super));

    GeneratorOptions one;
    one.transforms = 1;
    const auto chain = generate_hypothesis_pair(2, PairKind::chain_via_transforms, seed, one);
    REQUIRE(chain.matrix_a);
    REQUIRE(chain.matrix_b);
    CHECK(pn_membership(*chain.matrix_b));
    CHECK(chain_majorize_solve_2x2(*chain.matrix_b, *chain.matrix_a));
  }

  const auto a = generate_hypothesis_pair(2, PairKind::chain_via_transforms, 42);
  const auto b = generate_hypothesis_pair(2, PairKind::chain_via_transforms, 42);
  CHECK(a.matrix_a == b.matrix_a);
  CHECK(a.matrix_b == b.matrix_b);
  CHECK(a.transforms.size() == b.transforms.size());
  CHECK_THROWS_AS(generate_hypothesis_pair(1, PairKind::weak_sub, 1), UsageError);
}

TEST_CASE("generator screens chain prefixes on request") {
  GeneratorOptions opts;
  opts.transforms = 3;
  opts.screen_intermediates = true;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto p = generate_hypothesis_pair(4, PairKind::chain_via_transforms, seed, opts);
    ParamMatrix cur = *p.matrix_b;
    for (std::size_t k = 0; k + 1 < p.transforms.size(); ++k) {
      cur = apply_t_transform(cur, p.transforms[k]);
      CHECK(pn_membership(cur));
    }
    CHECK(apply_t_transform(cur, p.transforms.back()) == *p.matrix_a);
  }
}
